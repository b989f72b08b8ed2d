#pragma once

// Classical kicked-rotor maps. Every variant kicks first and then drifts with the
// post-kick momentum. Positions are kept unwrapped; wrap only for display.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "kickchain/rng.hpp"

namespace kickchain {

struct ClassicalState {
  double x = 0.0;
  double p = 0.0;

  /// x reduced to [0, 2 pi).
  double wrapped_x() const;
};

/// p' = p - K sin x;  x' = x + p'
struct StandardMap {
  double K = 0.0;
};

/// Kick pair with drifts eps and tau between kicks.
struct DoubleKickMap {
  double K = 0.0;
  double eps = 1.0;
  double tau = 1.0;
};

/// DoubleKickMap in units p -> p eps, K -> K eps, tau -> tau / eps.
struct RescaledDoubleKickMap {
  double K_eps = 0.0;
  double tau_eps = 1.0;
};

/// Rescaled pair whose long drift is replaced by a fresh uniform position.
struct RescaledDoubleKickRandomMap {
  double K_eps = 0.0;
  std::uint64_t seed = 0;
};

/// Kick potential -(K1 cos x + K2 cos 2x):  p' = p - K1 sin x - 2 K2 sin 2x;  x' = x + p'
struct DoubleWellMap {
  double K1 = 0.0;
  double K2 = 0.0;
};

using MapSpec = std::variant<StandardMap, DoubleKickMap, RescaledDoubleKickMap, RescaledDoubleKickRandomMap, DoubleWellMap>;

void validate(const MapSpec& spec);
bool is_random(const MapSpec& spec);
std::string map_name(const MapSpec& spec);

inline constexpr std::size_t kEnsembleSizeCap = 1'000'000;

/// One full period (one kick pair for double-kick variants). The random variant
/// requires `stream` and returns x at the second kick of the pair, since the
/// long drift is replaced by the next draw.
ClassicalState map_step(const ClassicalState& state, const MapSpec& spec, RandomStream* stream = nullptr);

struct EnsembleSeries {
  std::vector<long> steps;
  std::vector<double> mean_p;
  std::vector<double> var_p;
  /// Mean squared displacement <(p - p_initial)^2>.
  std::vector<double> msd_p;
  std::vector<double> final_p;
  /// Largest |p| visited by each trajectory, including the initial point.
  std::vector<double> max_abs_p;
};

/// Random variants draw trajectory i from RandomStream(seed, i). Records step 0,
/// every `record_every` steps and the final step.
EnsembleSeries iterate_ensemble(std::span<const ClassicalState> initials, const MapSpec& spec, long n_steps,
                                long record_every = 1);

/// Post-step points, x wrapped, one entry per full period.
std::vector<std::vector<ClassicalState>> surface_of_section(std::span<const ClassicalState> initials,
                                                            const MapSpec& spec, long n_steps);

enum class Stability { Stable, Unstable, Marginal };
std::string_view to_string(Stability s);

struct FixedPoint {
  double x = 0.0;  ///< in [0, 2 pi)
  double p = 0.0;
  Stability stability = Stability::Marginal;
  double trace = 0.0;  ///< 2 - V''(x)
};

/// Period-1 fixed points on p = 0 of StandardMap or DoubleWellMap, ascending in x.
FixedPoint classify_fixed_point(const MapSpec& spec, double x);
std::vector<FixedPoint> fixed_point_stability(const MapSpec& spec);

/// Uniform positions on [0, 2 pi) drawn from RandomStream(seed, 0), all at momentum p.
std::vector<ClassicalState> uniform_line(std::size_t count, double p, std::uint64_t seed);

}  // namespace kickchain
