#include "kickchain/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "kickchain/errors.hpp"

namespace kickchain {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Wavenumber of FFT output index j, folded into (-pi, pi].
double fft_wavenumber(std::size_t j, std::size_t N) {
  long m = static_cast<long>(j);
  if (2 * j > N) m -= static_cast<long>(N);
  return kTwoPi * static_cast<double>(m) / static_cast<double>(N);
}

std::vector<complex> exchange_phase_table(const ChainConfig& config, double T0) {
  const std::size_t N = config.N;
  const double scale = 1.0 / static_cast<double>(N);
  std::vector<complex> phases(N);
  for (std::size_t j = 0; j < N; ++j) {
    const double E = dispersion(config, fft_wavenumber(j, N));
    phases[j] = std::polar(scale, -std::fmod(E * T0, kTwoPi));
  }
  return phases;
}

std::vector<complex> kick_phase_table(double B, std::size_t n0, std::size_t N) {
  std::vector<complex> phases(N);
  for (std::size_t s = 0; s < N; ++s) {
    const long d = static_cast<long>(s) - static_cast<long>(n0);
    phases[s] = std::polar(1.0, -parabolic_phase(B, d));
  }
  return phases;
}

void check_transform_size(std::size_t N) {
  if (N > kTransformSizeCap) {
    std::ostringstream os;
    os << "chain length " << N << " exceeds the transform-path cap of " << kTransformSizeCap << " sites";
    throw ResourceLimitError("transform_size", os.str());
  }
}

void check_state(const MagnonState& state, const ChainConfig& config) {
  if (state.size() != config.N) throw std::invalid_argument("state length does not match chain length N");
}

struct ScheduleChecker {
  void operator()(const SingleKick& s) const {
    if (!(s.T0 > 0.0)) throw std::invalid_argument("schedule.T0 must be positive");
    if (!(s.B_Q >= 0.0)) throw std::invalid_argument("schedule.B_Q must be non-negative");
  }
  void operator()(const DoubleKick& s) const {
    if (!(s.T0 > 0.0)) throw std::invalid_argument("schedule.T0 must be positive");
    if (!(s.B_eps >= 0.0)) throw std::invalid_argument("schedule.B_eps must be non-negative");
    if (!(s.B_tau >= 0.0)) throw std::invalid_argument("schedule.B_tau must be non-negative");
  }
  void operator()(const DoubleKickRandom& s) const {
    if (!(s.T0 > 0.0)) throw std::invalid_argument("schedule.T0 must be positive");
    if (!(s.B_eps >= 0.0)) throw std::invalid_argument("schedule.B_eps must be non-negative");
  }
};

std::size_t checked_size(const ChainConfig& config) {
  config.validate();
  check_transform_size(config.N);
  return config.N;
}

bool should_snapshot(long period, long n_periods, long every) {
  return period == 0 || period == n_periods || period % every == 0;
}

}  // namespace

void validate(const KickSchedule& schedule) {
  std::visit(ScheduleChecker{}, schedule);
}

double period_length(const KickSchedule& schedule) {
  return std::visit([](const auto& s) { return s.T0; }, schedule);
}

double parabolic_phase(double B, long d) {
  const long double d2 = static_cast<long double>(d) * static_cast<long double>(d);
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  long double phase = std::fmod(static_cast<long double>(B) * 0.5L * d2, two_pi);
  if (phase < 0) phase += two_pi;
  return static_cast<double>(phase);
}

MagnonState apply_exchange(const MagnonState& state, const ChainConfig& config, double T0) {
  config.validate();
  check_state(state, config);
  check_transform_size(config.N);
  MagnonState out = state;
  if (T0 == 0.0) return out;
  Dft dft(config.N);
  const auto phases = exchange_phase_table(config, T0);
  auto a = out.amplitudes();
  dft.forward(a);
  for (std::size_t j = 0; j < a.size(); ++j) a[j] *= phases[j];
  dft.backward(a);
  return out;
}

MagnonState apply_parabolic_kick(const MagnonState& state, double B, std::size_t n0) {
  if (n0 >= state.size()) throw std::invalid_argument("field center n0 outside the chain");
  MagnonState out = state;
  if (B == 0.0) return out;
  auto a = out.amplitudes();
  for (std::size_t s = 0; s < a.size(); ++s) {
    const long d = static_cast<long>(s) - static_cast<long>(n0);
    a[s] *= std::polar(1.0, -parabolic_phase(B, d));
  }
  return out;
}

MagnonState apply_random_kick(const MagnonState& state, RandomStream& stream) {
  MagnonState out = state;
  for (auto& a : out.amplitudes()) a *= std::polar(1.0, -stream.uniform_angle());
  return out;
}

FloquetPropagator::FloquetPropagator(ChainConfig config, KickSchedule schedule, std::uint64_t stream_id)
    : config_(std::move(config)), schedule_(std::move(schedule)), dft_(checked_size(config_)) {
  validate(schedule_);
  exchange_phases_ = exchange_phase_table(config_, period_length(schedule_));
  if (const auto* s = std::get_if<SingleKick>(&schedule_)) {
    first_kick_ = kick_phase_table(s->B_Q, config_.n0, config_.N);
  } else if (const auto* d = std::get_if<DoubleKick>(&schedule_)) {
    first_kick_ = kick_phase_table(d->B_eps, config_.n0, config_.N);
    second_kick_ = kick_phase_table(d->B_tau, config_.n0, config_.N);
  } else {
    const auto& r = std::get<DoubleKickRandom>(schedule_);
    first_kick_ = kick_phase_table(r.B_eps, config_.n0, config_.N);
    stream_.emplace(r.seed, stream_id);
  }
}

void FloquetPropagator::exchange(std::span<complex> a) {
  dft_.forward(a);
  multiply(a, exchange_phases_);
  dft_.backward(a);
}

void FloquetPropagator::multiply(std::span<complex> a, const std::vector<complex>& phases) {
  for (std::size_t s = 0; s < a.size(); ++s) a[s] *= phases[s];
}

void FloquetPropagator::random_kick(std::span<complex> a) {
  for (auto& x : a) x *= std::polar(1.0, -stream_->uniform_angle());
}

void FloquetPropagator::step(MagnonState& state) {
  check_state(state, config_);
  step(state.amplitudes());
}

void FloquetPropagator::step(std::span<complex> a) {
  exchange(a);
  multiply(a, first_kick_);
  if (std::holds_alternative<SingleKick>(schedule_)) return;
  exchange(a);
  if (stream_) {
    random_kick(a);
  } else {
    multiply(a, second_kick_);
  }
}

PropagationRecord evolve(const MagnonState& state, const ChainConfig& config, const KickSchedule& schedule,
                         long n_periods, long snapshot_every, std::uint64_t stream_id) {
  if (n_periods < 0) throw std::invalid_argument("n_periods must be non-negative");
  if (snapshot_every < 1) throw std::invalid_argument("snapshot_every must be at least 1");
  config.validate();
  check_state(state, config);

  FloquetPropagator propagator(config, schedule, stream_id);
  PropagationRecord record;
  record.final_state = state;
  record.snapshots.push_back({0, state.probabilities()});
  for (long t = 1; t <= n_periods; ++t) {
    propagator.step(record.final_state);
    if (should_snapshot(t, n_periods, snapshot_every)) record.snapshots.push_back({t, record.final_state.probabilities()});
  }
  return record;
}

Eigen::MatrixXcd build_floquet(const ChainConfig& config, const KickSchedule& schedule, std::size_t size_cap) {
  config.validate();
  validate(schedule);
  if (std::holds_alternative<DoubleKickRandom>(schedule))
    throw UnsupportedError("random-phase schedules have no fixed Floquet matrix");
  const std::size_t N = config.N;
  if (N > size_cap) {
    std::ostringstream os;
    os << "dense Floquet matrix of size " << N << " exceeds the cap of " << size_cap;
    throw ResourceLimitError("dense_size", os.str());
  }

  // Circulant exchange kernel c_d = (1/N) sum_m e^{i d k_m - i E(k_m) T0}.
  const double T0 = period_length(schedule);
  const auto grid = wavenumber_grid(N);
  std::vector<complex> kernel(N);
  for (std::size_t d = 0; d < N; ++d) {
    complex sum{0.0, 0.0};
    for (const double k : grid) {
      const double angle = std::fmod(k * static_cast<double>(d), kTwoPi) - std::fmod(dispersion(config, k) * T0, kTwoPi);
      sum += std::polar(1.0, angle);
    }
    kernel[d] = sum / static_cast<double>(N);
  }

  auto kicked_exchange = [&](double B) {
    Eigen::MatrixXcd U(N, N);
    for (std::size_t r = 0; r < N; ++r) {
      const complex kick = std::polar(1.0, -parabolic_phase(B, static_cast<long>(r) - static_cast<long>(config.n0)));
      for (std::size_t s = 0; s < N; ++s) U(r, s) = kick * kernel[(r + N - s) % N];
    }
    return U;
  };

  if (const auto* s = std::get_if<SingleKick>(&schedule)) return kicked_exchange(s->B_Q);
  const auto& d = std::get<DoubleKick>(schedule);
  return kicked_exchange(d.B_tau) * kicked_exchange(d.B_eps);
}

PropagationRecord qkr_evolve(long initial_momentum, double K, double hbar, long n_periods, std::size_t n_basis,
                             long snapshot_every) {
  if (n_basis < 2) throw std::invalid_argument("momentum basis needs at least 2 states");
  if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be positive");
  if (n_periods < 0) throw std::invalid_argument("n_periods must be non-negative");
  if (snapshot_every < 1) throw std::invalid_argument("snapshot_every must be at least 1");
  check_transform_size(n_basis);

  const std::size_t center = n_basis / 2;
  std::vector<complex> free_phase(n_basis);
  for (std::size_t j = 0; j < n_basis; ++j) {
    const long l = initial_momentum + static_cast<long>(j) - static_cast<long>(center);
    free_phase[j] = std::polar(1.0, -parabolic_phase(hbar, l));
  }
  // Angle grid x_m = 2 pi m / n_basis; the kick is even in x so the sign
  // convention of the transform pair does not matter.
  const double strength = K / hbar;
  std::vector<complex> kick(n_basis);
  for (std::size_t j = 0; j < n_basis; ++j)
    kick[j] = std::polar(1.0 / static_cast<double>(n_basis), strength * std::cos(fft_wavenumber(j, n_basis)));

  const std::size_t edge = std::max<std::size_t>(1, n_basis / 32);
  auto edge_mass = [&](std::span<const complex> a) {
    double sum = 0.0;
    for (std::size_t j = 0; j < edge; ++j) sum += std::norm(a[j]) + std::norm(a[n_basis - 1 - j]);
    return sum;
  };

  PropagationRecord record;
  record.final_state = MagnonState::delta(n_basis, center);
  record.snapshots.push_back({0, record.final_state.probabilities()});
  Dft dft(n_basis);
  bool leaked = false;
  for (long t = 1; t <= n_periods; ++t) {
    auto a = record.final_state.amplitudes();
    for (std::size_t j = 0; j < n_basis; ++j) a[j] *= free_phase[j];
    dft.forward(a);
    for (std::size_t j = 0; j < n_basis; ++j) a[j] *= kick[j];
    dft.backward(a);
    if (!leaked) {
      const double leak = edge_mass(a);
      if (leak > 1e-6) {
        leaked = true;
        std::ostringstream os;
        os << "truncation leakage: edge probability " << leak << " at period " << t;
        record.warnings.push_back(os.str());
      }
    }
    if (should_snapshot(t, n_periods, snapshot_every)) record.snapshots.push_back({t, record.final_state.probabilities()});
  }
  return record;
}

}  // namespace kickchain
