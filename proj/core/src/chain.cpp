#include "kickchain/chain.hpp"
#include "kickchain/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kickchain {

std::string_view to_string(DispersionModel model) {
  switch (model) {
    case DispersionModel::Ferromagnet:
      return "ferromagnet";
    case DispersionModel::NNNLadder:
      return "nnn_ladder";
    case DispersionModel::AntiferroLinear:
      return "antiferro_linear";
  }
  return "unknown";
}

DispersionModel parse_dispersion_model(std::string_view name) {
  if (name == "ferromagnet") return DispersionModel::Ferromagnet;
  if (name == "nnn_ladder") return DispersionModel::NNNLadder;
  if (name == "antiferro_linear") return DispersionModel::AntiferroLinear;
  throw std::invalid_argument("unknown dispersion model '" + std::string(name) +
                              "' (expected ferromagnet, nnn_ladder or antiferro_linear)");
}

void ChainConfig::validate() const {
  if (N < 2) throw std::invalid_argument("chain length N must be at least 2");
  if (n0 >= N) throw std::invalid_argument("field center n0 must lie in [0, N)");
  if (!std::isfinite(J1) || !std::isfinite(J2)) throw std::invalid_argument("exchange couplings must be finite");
  switch (model) {
    case DispersionModel::Ferromagnet:
      if (!(J1 > 0.0)) throw std::invalid_argument("ferromagnet requires J1 > 0");
      if (J2 != 0.0) throw std::invalid_argument("ferromagnet requires J2 = 0");
      break;
    case DispersionModel::NNNLadder:
      if (!(J1 > 0.0)) throw std::invalid_argument("nnn_ladder requires J1 > 0");
      if (J2 == 0.0) throw std::invalid_argument("nnn_ladder requires J2 != 0");
      break;
    case DispersionModel::AntiferroLinear:
      break;
  }
}

ChainConfig ChainConfig::ferromagnet(std::size_t N, double J1) {
  ChainConfig c;
  c.N = N;
  c.J1 = J1;
  c.J2 = 0.0;
  c.n0 = N / 2;
  c.model = DispersionModel::Ferromagnet;
  return c;
}

MagnonState::MagnonState(std::vector<complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) throw std::invalid_argument("magnon state must have at least one site");
  if (std::abs(norm_squared() - 1.0) > 1e-9) throw std::invalid_argument("magnon state amplitudes are not normalized");
}

MagnonState MagnonState::delta(std::size_t N, std::size_t site) {
  if (site >= N) throw std::invalid_argument("delta site outside the chain");
  std::vector<complex> a(N, complex{0.0, 0.0});
  a[site] = 1.0;
  return MagnonState(std::move(a));
}

double MagnonState::norm_squared() const noexcept {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return sum;
}

std::vector<double> MagnonState::probabilities() const {
  std::vector<double> p(amplitudes_.size());
  for (std::size_t s = 0; s < p.size(); ++s) p[s] = std::norm(amplitudes_[s]);
  return p;
}

std::pair<long, long> wavenumber_index_range(std::size_t N) {
  if (N < 2) throw std::invalid_argument("wavenumber grid needs N >= 2");
  const long half = static_cast<long>(N / 2);
  // N odd: m runs -half .. half; N even: -half+1 .. half.
  const long lo = (N % 2 == 0) ? -half + 1 : -half;
  return {lo, half};
}

std::vector<double> wavenumber_grid(std::size_t N) {
  const auto [lo, hi] = wavenumber_index_range(N);
  std::vector<double> k;
  k.reserve(N);
  for (long m = lo; m <= hi; ++m) k.push_back(2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(N));
  return k;
}

double dispersion(const ChainConfig& config, double k) {
  switch (config.model) {
    case DispersionModel::Ferromagnet:
      return config.J1 * (1.0 - std::cos(k));
    case DispersionModel::NNNLadder:
      return config.J1 + config.J2 - config.J1 * std::cos(k) - config.J2 * std::cos(2.0 * k);
    case DispersionModel::AntiferroLinear:
      return config.J1 * std::abs(std::sin(k));
  }
  return 0.0;
}

MagnonState magnon_state(std::size_t N, long m) {
  const auto [lo, hi] = wavenumber_index_range(N);
  if (m < lo || m > hi) throw std::invalid_argument("magnon index m outside the wavenumber grid");
  const double k = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(N);
  const double amp = 1.0 / std::sqrt(static_cast<double>(N));
  std::vector<complex> a(N);
  for (std::size_t j = 0; j < N; ++j) a[j] = std::polar(amp, k * static_cast<double>(j));
  return MagnonState(std::move(a));
}

RotorImageParams rotor_image(const ChainConfig& config, double T0, double B_Q) {
  if (config.model != DispersionModel::Ferromagnet)
    throw UnsupportedError("rotor image mapping is defined for the ferromagnet dispersion only");
  if (!(T0 > 0.0)) throw std::invalid_argument("T0 must be positive");
  if (!(B_Q >= 0.0)) throw std::invalid_argument("B_Q must be non-negative");
  return {config.J1 * T0 * B_Q, B_Q};
}

long cyclic_displacement(std::size_t site, std::size_t origin, std::size_t N) {
  const long n = static_cast<long>(N);
  long d = (static_cast<long>(site) - static_cast<long>(origin)) % n;
  if (d < 0) d += n;
  if (d >= (n + 1) / 2) d -= n;
  return d;
}

}  // namespace kickchain
