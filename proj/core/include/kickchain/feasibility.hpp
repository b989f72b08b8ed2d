#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace kickchain {

/// Field-unit conversion quoted for laboratory estimates: 1e-6 au of field ~ 0.47 T.
/// This is about half the CODATA atomic unit of magnetic flux density; kept as quoted.
inline constexpr double kTeslaPerAtomicFieldUnit = 0.47e6;
/// Atomic unit of time in seconds.
inline constexpr double kAtomicTimeSeconds = 2.4188843265857e-17;
/// Factor used for every "much greater than" condition.
inline constexpr double kStrongInequality = 100.0;

struct FeasibilityInput {
  double b_range_au = 0.0;   ///< peak-to-trough parabolic field across the chain
  std::size_t sites = 0;
  double j_hz = 0.0;         ///< exchange frequency
  double t0_s = 1e-6;        ///< pulse period
};

struct FeasibilityReport {
  double b_q_au = 0.0;               ///< field curvature 2 B_range / N^2
  double b_range_tesla = 0.0;
  double j_au = 0.0;
  double pulse_min_au = 0.0;         ///< from N^2 B_Q dt >= kStrongInequality
  double pulse_max_au = 0.0;         ///< from 2 J dt <= 1 / kStrongInequality
  double pulse_min_s = 0.0;
  double pulse_max_s = 0.0;
  double two_j_t0 = 0.0;
  bool kick_phase_ok = false;        ///< B_range > 0, so some dt satisfies the phase condition
  bool pulse_window_ok = false;      ///< pulse_min <= pulse_max
  bool exchange_period_ok = false;   ///< 2 J T0 >= kStrongInequality
  bool feasible = false;
  std::vector<std::string> notes;
};

/// Order-of-magnitude check of pulse durations for a pulsed parabolic field.
/// Non-positive field range or sites give an infeasible report, not an exception;
/// negative or non-finite inputs throw std::invalid_argument.
FeasibilityReport feasibility(const FeasibilityInput& input);

}  // namespace kickchain
