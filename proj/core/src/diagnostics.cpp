#include "kickchain/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "kickchain/errors.hpp"

namespace kickchain {

namespace {

constexpr double kLogFloor = 1e-300;

void require_normalized(std::span<const double> P) {
  if (P.empty()) throw std::invalid_argument("probability vector is empty");
  const double total = std::accumulate(P.begin(), P.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-6) throw std::invalid_argument("probability vector does not sum to 1");
}

std::size_t site_at(std::size_t origin, long d, std::size_t N) {
  const long n = static_cast<long>(N);
  long s = (static_cast<long>(origin) + d) % n;
  if (s < 0) s += n;
  return static_cast<std::size_t>(s);
}

struct LineFit {
  double slope = 0.0;
  double r_squared = 0.0;
};

LineFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  LineFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.r_squared = (sxx > 0.0 && syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 0.0;
  return fit;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(v.begin(), mid);
  return 0.5 * (lower + upper);
}

std::optional<double> fitted_speed(const std::vector<Spike>& track) {
  if (track.size() < 2) return std::nullopt;
  std::vector<double> t, d;
  for (const auto& s : track) {
    t.push_back(static_cast<double>(s.period));
    d.push_back(std::abs(s.offset));
  }
  return std::abs(least_squares(t, d).slope);
}

}  // namespace

DistributionStats distribution_stats(std::span<const double> P, std::size_t s0) {
  require_normalized(P);
  if (s0 >= P.size()) throw std::invalid_argument("s0 outside the chain");
  DistributionStats out;
  double variance = 0.0, ipr = 0.0;
  for (std::size_t s = 0; s < P.size(); ++s) {
    const double d = static_cast<double>(cyclic_displacement(s, s0, P.size()));
    variance += d * d * P[s];
    ipr += P[s] * P[s];
  }
  out.variance = variance;
  out.participation_ratio = std::clamp(1.0 / ipr, 1.0, static_cast<double>(P.size()));
  return out;
}

FitWindow default_fit_window(double J1T0, std::size_t N) {
  const double estimate = J1T0 * J1T0 / 4.0;
  const long limit = static_cast<long>(N / 2) - 1;
  FitWindow w;
  w.d_min = std::min(limit, static_cast<long>(std::ceil(estimate / 2.0)));
  w.d_max = std::min(limit, static_cast<long>(std::floor(3.0 * estimate)));
  return w;
}

LocalizationFit fit_localization_length(std::span<const double> P, std::size_t s0, FitWindow window) {
  const std::size_t N = P.size();
  if (s0 >= N) throw std::invalid_argument("s0 outside the chain");
  if (window.d_min < 0 || window.d_max < window.d_min || window.d_max >= static_cast<long>((N + 1) / 2))
    throw std::invalid_argument("fit window must satisfy 0 <= d_min <= d_max < N/2");

  LocalizationFit out;
  double slope_sum = 0.0, r2_sum = 0.0;
  int wings = 0;
  for (const int sign : {+1, -1}) {
    std::vector<double> xs, ys;
    for (long d = window.d_min; d <= window.d_max; ++d) {
      const double p = P[site_at(s0, sign * d, N)];
      if (p > kLogFloor) {
        xs.push_back(static_cast<double>(d));
        ys.push_back(std::log(p));
      }
    }
    out.points += xs.size();
    if (xs.size() < 3) continue;
    const LineFit fit = least_squares(xs, ys);
    slope_sum += fit.slope;
    r2_sum += fit.r_squared;
    ++wings;
  }
  if (out.points < 10 || wings == 0)
    throw InsufficientDataError("localization fit needs at least 10 sites with P > 1e-300 in the window");

  out.slope = slope_sum / wings;
  out.r_squared = r2_sum / wings;
  out.L = out.slope < 0.0 ? -2.0 / out.slope : std::numeric_limits<double>::infinity();
  out.exponential = out.slope < 0.0 && out.r_squared >= 0.5;
  return out;
}

std::optional<double> AcceleratorTracks::speed() const {
  if (speed_left && speed_right) return 0.5 * (*speed_left + *speed_right);
  if (speed_left) return speed_left;
  return speed_right;
}

double AcceleratorTracks::combined_mass(long period) const {
  double total = 0.0;
  for (const auto* track : {&left, &right})
    for (const auto& s : *track)
      if (s.period == period) total += s.mass;
  return total;
}

AcceleratorTracks detect_accelerator_modes(const PropagationRecord& record, double B_Q, std::size_t n0,
                                           const SpikeDetectorOptions& options) {
  if (!(B_Q > 0.0)) throw std::invalid_argument("B_Q must be positive for spike detection");
  AcceleratorTracks tracks;
  for (const auto& snap : record.snapshots) {
    if (snap.period < options.min_period) continue;
    if (options.max_period >= 0 && snap.period > options.max_period) continue;
    const auto& P = snap.distribution;
    const std::size_t N = P.size();
    if (n0 >= N) throw std::invalid_argument("n0 outside the chain");
    const long outer = static_cast<long>(N / 2) - 1;
    const double band = static_cast<double>(std::max<long>(1, snap.period)) * std::numbers::pi / B_Q;
    if (band >= static_cast<double>(outer)) continue;

    std::vector<double> central;
    for (long d = -outer; d <= outer; ++d)
      if (std::abs(static_cast<double>(d)) < band) central.push_back(P[site_at(n0, d, N)]);
    const double threshold = options.threshold_factor * median(std::move(central));
    if (!(threshold > 0.0)) continue;

    const long inner = static_cast<long>(std::ceil(band));
    for (const int sign : {+1, -1}) {
      auto at = [&](long d) { return P[site_at(n0, sign * d, N)]; };
      for (long d = outer; d >= inner; --d) {
        const double p = at(d);
        if (p <= threshold || p < at(d - 1) || p < at(d + 1)) continue;
        double mass = 0.0, moment = 0.0;
        for (long e = d - options.mass_window; e <= d + options.mass_window; ++e) {
          const double q = at(e);
          mass += q;
          moment += q * static_cast<double>(sign * e);
        }
        Spike spike;
        spike.period = snap.period;
        spike.offset = mass > 0.0 ? moment / mass : static_cast<double>(sign * d);
        spike.site = static_cast<long>(site_at(n0, std::lround(spike.offset), N));
        spike.mass = mass;
        (sign > 0 ? tracks.right : tracks.left).push_back(spike);
        break;
      }
    }
  }
  tracks.speed_left = fitted_speed(tracks.left);
  tracks.speed_right = fitted_speed(tracks.right);
  return tracks;
}

CellOccupancy cell_occupancy(std::span<const double> P, double B_eps, std::size_t n0) {
  if (!(B_eps > 0.0)) throw std::invalid_argument("B_eps must be positive");
  if (n0 >= P.size()) throw std::invalid_argument("n0 outside the chain");
  const double half = std::numbers::pi / B_eps;
  CellOccupancy out;
  if (2.0 * half >= static_cast<double>(P.size())) {
    out.occupancy = 1.0;
    out.cell_exceeds_chain = true;
    return out;
  }
  for (std::size_t s = 0; s < P.size(); ++s)
    if (std::abs(static_cast<double>(cyclic_displacement(s, n0, P.size()))) < half) out.occupancy += P[s];
  out.occupancy = std::clamp(out.occupancy, 0.0, 1.0);
  return out;
}

double mass_within(std::span<const double> P, std::size_t center, long half_width) {
  if (center >= P.size()) throw std::invalid_argument("center outside the chain");
  double total = 0.0;
  for (std::size_t s = 0; s < P.size(); ++s)
    if (std::labs(cyclic_displacement(s, center, P.size())) <= half_width) total += P[s];
  return total;
}

}  // namespace kickchain
