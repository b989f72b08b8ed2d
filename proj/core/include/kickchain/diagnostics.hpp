#pragma once

// Observables computed from site-probability snapshots. All displacements are
// cyclic (ring topology).

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "kickchain/evolution.hpp"

namespace kickchain {

struct DistributionStats {
  double variance = 0.0;            ///< sum_s d(s)^2 P(s), d cyclic distance from s0
  double participation_ratio = 1.0; ///< 1 / sum_s P(s)^2
};

/// Throws std::invalid_argument unless P sums to 1 within 1e-6.
DistributionStats distribution_stats(std::span<const double> P, std::size_t s0);

struct FitWindow {
  long d_min = 0;
  long d_max = 0;
};

/// Default window [L/2, 3L] around the estimate L = (J1 T0)^2 / 4, clipped to the ring.
FitWindow default_fit_window(double J1T0, std::size_t N);

struct LocalizationFit {
  double L = 0.0;         ///< -2 / slope; infinite when ln P does not decay
  double r_squared = 0.0; ///< mean over the fitted wings
  double slope = 0.0;
  bool exponential = false;
  std::size_t points = 0;
};

/// Least-squares fit of ln P against |d| on each wing of the window, slopes averaged.
/// Throws InsufficientDataError with fewer than 10 usable points (P > 1e-300).
LocalizationFit fit_localization_length(std::span<const double> P, std::size_t s0, FitWindow window);

struct Spike {
  long period = 0;
  long site = 0;       ///< chain site of the spike centroid
  double offset = 0.0; ///< centroid displacement from n0
  double mass = 0.0;   ///< probability within +-window of the peak
};

struct AcceleratorTracks {
  std::vector<Spike> left;   ///< d < 0
  std::vector<Spike> right;  ///< d > 0
  std::optional<double> speed_left;   ///< |velocity| in sites/period, >= 2 points
  std::optional<double> speed_right;

  bool empty() const { return left.empty() && right.empty(); }
  /// Mean of the available side speeds.
  std::optional<double> speed() const;
  /// Sum of left and right spike masses recorded for `period` (0 if none).
  double combined_mass(long period) const;
};

struct SpikeDetectorOptions {
  long mass_window = 10;
  double threshold_factor = 5.0;
  long min_period = 1;
  long max_period = -1;  ///< -1: no upper bound
};

/// Tracks the outermost probability spikes on each side of n0.
///
/// At period t the central remnant band is |d| < max(1, t) * pi / B_Q, half of
/// the distance an accelerator mode covers; a spike is the outermost local
/// maximum beyond that band whose probability exceeds threshold_factor times
/// the median inside the band.
AcceleratorTracks detect_accelerator_modes(const PropagationRecord& record, double B_Q, std::size_t n0,
                                           const SpikeDetectorOptions& options = {});

struct CellOccupancy {
  double occupancy = 0.0;
  bool cell_exceeds_chain = false;
};

/// Probability inside the trapping cell |d| < pi / B_eps around n0.
CellOccupancy cell_occupancy(std::span<const double> P, double B_eps, std::size_t n0);

/// Probability within +-half_width sites of `center`.
double mass_within(std::span<const double> P, std::size_t center, long half_width);

struct DistributionReport {
  std::size_t s0 = 0;
  double variance = 0.0;
  double participation_ratio = 1.0;
  std::optional<double> loc_length;
  std::optional<double> loc_fit_r2;
  std::vector<Spike> spikes;
  std::optional<double> cell_occupancy;
};

}  // namespace kickchain
