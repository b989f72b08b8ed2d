#pragma once

// Floquet propagation of one-magnon states under pulsed parabolic fields.
//
// One period of each schedule, acting right to left:
//   SingleKick        U = P(B_Q) X(T0)
//   DoubleKick        U = P(B_tau) X(T0) P(B_eps) X(T0)
//   DoubleKickRandom  U = R X(T0) P(B_eps) X(T0)
// where X(T0) is free exchange evolution (diagonal in k), P(B) multiplies site s
// by e^{-i (B/2) (s - n0)^2} and R applies fresh i.i.d. phases in [0, 2 pi).

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "kickchain/chain.hpp"
#include "kickchain/fft.hpp"
#include "kickchain/rng.hpp"

namespace kickchain {

struct SingleKick {
  double B_Q = 0.0;
  double T0 = 1.0;
};

struct DoubleKick {
  double B_eps = 0.0;
  double B_tau = 0.0;
  double T0 = 1.0;
};

struct DoubleKickRandom {
  double B_eps = 0.0;
  double T0 = 1.0;
  std::uint64_t seed = 0;
};

using KickSchedule = std::variant<SingleKick, DoubleKick, DoubleKickRandom>;

/// Throws std::invalid_argument for negative fields or non-positive T0.
void validate(const KickSchedule& schedule);

/// Exchange period T0 of any schedule.
double period_length(const KickSchedule& schedule);

inline constexpr std::size_t kDenseSizeCap = 4096;
inline constexpr std::size_t kTransformSizeCap = std::size_t{1} << 20;

struct Snapshot {
  long period = 0;
  std::vector<double> distribution;
};

struct PropagationRecord {
  std::vector<Snapshot> snapshots;
  MagnonState final_state;
  std::vector<std::string> warnings;
};

MagnonState apply_exchange(const MagnonState& state, const ChainConfig& config, double T0);
MagnonState apply_parabolic_kick(const MagnonState& state, double B, std::size_t n0);
MagnonState apply_random_kick(const MagnonState& state, RandomStream& stream);

/// Phase (B/2) d^2 reduced to [0, 2 pi), evaluated in extended precision.
double parabolic_phase(double B, long d);

/// Reusable one-period propagator; caches the transform plan and phase tables.
class FloquetPropagator {
 public:
  /// `stream_id` names the random stream for DoubleKickRandom schedules.
  FloquetPropagator(ChainConfig config, KickSchedule schedule, std::uint64_t stream_id = 0);

  void step(MagnonState& state);
  void step(std::span<complex> amplitudes);

  const ChainConfig& config() const noexcept { return config_; }
  const KickSchedule& schedule() const noexcept { return schedule_; }

 private:
  void exchange(std::span<complex> a);
  static void multiply(std::span<complex> a, const std::vector<complex>& phases);
  void random_kick(std::span<complex> a);

  ChainConfig config_;
  KickSchedule schedule_;
  Dft dft_;
  std::vector<complex> exchange_phases_;  // includes the 1/N normalization
  std::vector<complex> first_kick_;
  std::vector<complex> second_kick_;      // empty for SingleKick / random
  std::optional<RandomStream> stream_;
};

PropagationRecord evolve(const MagnonState& state, const ChainConfig& config, const KickSchedule& schedule,
                         long n_periods, long snapshot_every, std::uint64_t stream_id = 0);

/// Dense one-period Floquet matrix assembled from the real-space kernel by direct
/// summation over the wavenumber grid. Independent of the transform path.
Eigen::MatrixXcd build_floquet(const ChainConfig& config, const KickSchedule& schedule,
                               std::size_t size_cap = kDenseSizeCap);

/// Quantum kicked rotor in a truncated momentum basis of `n_basis` states.
/// Basis index j holds momentum l = initial_momentum + j - n_basis/2. Each period
/// applies the free phase e^{-i hbar l^2 / 2} and then the kick e^{i (K/hbar) cos x}.
/// Snapshots follow the same schedule as evolve(); leakage into the outer
/// n_basis/32 states beyond 1e-6 is reported in `warnings`.
PropagationRecord qkr_evolve(long initial_momentum, double K, double hbar, long n_periods, std::size_t n_basis,
                             long snapshot_every = 1);

}  // namespace kickchain
