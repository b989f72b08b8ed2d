#include "kickchain/feasibility.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace kickchain {

FeasibilityReport feasibility(const FeasibilityInput& in) {
  if (!std::isfinite(in.b_range_au) || in.b_range_au < 0.0) throw std::invalid_argument("b_range_au must be >= 0");
  if (!std::isfinite(in.j_hz) || in.j_hz < 0.0) throw std::invalid_argument("j_hz must be >= 0");
  if (!std::isfinite(in.t0_s) || in.t0_s < 0.0) throw std::invalid_argument("t0_s must be >= 0");

  FeasibilityReport r;
  const double n = static_cast<double>(in.sites);
  const double inf = std::numeric_limits<double>::infinity();

  r.b_range_tesla = in.b_range_au * kTeslaPerAtomicFieldUnit;
  r.b_q_au = in.sites > 0 ? 2.0 * in.b_range_au / (n * n) : 0.0;
  r.j_au = in.j_hz * kAtomicTimeSeconds;

  const double phase_rate = n * n * r.b_q_au;  // = 2 B_range
  r.kick_phase_ok = phase_rate > 0.0;
  r.pulse_min_au = r.kick_phase_ok ? kStrongInequality / phase_rate : inf;
  r.pulse_max_au = r.j_au > 0.0 ? 1.0 / (kStrongInequality * 2.0 * r.j_au) : inf;
  r.pulse_min_s = r.pulse_min_au * kAtomicTimeSeconds;
  r.pulse_max_s = r.pulse_max_au * kAtomicTimeSeconds;
  r.pulse_window_ok = r.kick_phase_ok && r.pulse_min_au <= r.pulse_max_au;

  r.two_j_t0 = 2.0 * in.j_hz * in.t0_s;
  r.exchange_period_ok = r.two_j_t0 >= kStrongInequality;
  r.feasible = r.kick_phase_ok && r.pulse_window_ok && r.exchange_period_ok;

  if (!r.kick_phase_ok) r.notes.emplace_back("no parabolic field: the kick phase condition cannot be met");
  if (r.kick_phase_ok && !r.pulse_window_ok)
    r.notes.emplace_back("pulses long enough for the kick phase violate the short-pulse (split-operator) bound");
  if (!r.exchange_period_ok) r.notes.emplace_back("pulse period too short for appreciable exchange evolution");
  return r;
}

}  // namespace kickchain
