#pragma once

// One-magnon sector of a periodic Heisenberg chain.
//
// Basis state |s> has the spin at site s flipped and all others up. Energies are
// in units with hbar = 1; the ground-state energy and the uniform static field
// only contribute a global phase and are dropped throughout.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace kickchain {

using complex = std::complex<double>;

enum class DispersionModel {
  Ferromagnet,      ///< E(k) = J1 (1 - cos k)
  NNNLadder,        ///< E(k) = J1 + J2 - J1 cos k - J2 cos 2k
  AntiferroLinear,  ///< E(k) = J1 |sin k|
};

std::string_view to_string(DispersionModel model);
/// Accepts "ferromagnet", "nnn_ladder", "antiferro_linear".
DispersionModel parse_dispersion_model(std::string_view name);

struct ChainConfig {
  std::size_t N = 0;
  double J1 = 1.0;
  double J2 = 0.0;
  std::size_t n0 = 0;  ///< parabolic-field center
  DispersionModel model = DispersionModel::Ferromagnet;

  /// Throws std::invalid_argument describing the first violated invariant.
  void validate() const;

  /// Ferromagnet of length N centered at floor(N/2).
  static ChainConfig ferromagnet(std::size_t N, double J1 = 1.0);
};

/// Normalized amplitude vector over chain sites.
class MagnonState {
 public:
  MagnonState() = default;

  /// Wraps amplitudes without renormalizing; throws if the norm is off by more than 1e-9.
  explicit MagnonState(std::vector<complex> amplitudes);

  /// Spin flipped at `site`.
  static MagnonState delta(std::size_t N, std::size_t site);

  std::size_t size() const noexcept { return amplitudes_.size(); }
  std::span<const complex> amplitudes() const noexcept { return amplitudes_; }
  std::span<complex> amplitudes() noexcept { return amplitudes_; }
  const complex& operator[](std::size_t s) const { return amplitudes_[s]; }

  double norm_squared() const noexcept;
  std::vector<double> probabilities() const;

 private:
  std::vector<complex> amplitudes_;
};

struct RotorImageParams {
  double K = 0.0;         ///< stochasticity parameter J1 T0 B_Q
  double hbar_eff = 0.0;  ///< equals B_Q
};

/// k_m = 2 pi m / N for m = -floor(N/2)+1 .. floor(N/2), ascending.
std::vector<double> wavenumber_grid(std::size_t N);

/// Smallest and largest valid m for wavenumber_grid(N).
std::pair<long, long> wavenumber_index_range(std::size_t N);

double dispersion(const ChainConfig& config, double k);

/// Plane-wave magnon |m> with amplitudes e^{i j k_m} / sqrt(N).
MagnonState magnon_state(std::size_t N, long m);

/// Parameters of the kicked rotor whose dynamics the kicked ferromagnet mirrors.
RotorImageParams rotor_image(const ChainConfig& config, double T0, double B_Q);

/// Signed cyclic distance from `origin` to `site` on a ring of N sites, in [-N/2, N/2).
long cyclic_displacement(std::size_t site, std::size_t origin, std::size_t N);

}  // namespace kickchain
