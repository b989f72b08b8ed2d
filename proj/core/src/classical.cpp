#include "kickchain/classical.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "kickchain/errors.hpp"

namespace kickchain {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kRootScanIntervals = 4096;
constexpr double kRootTolerance = 1e-12;
constexpr double kMarginalTolerance = 1e-9;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

ClassicalState kick_pair(double x0, double p0, double K, double eps, double tau) {
  const double p1 = p0 - K * std::sin(x0);
  const double x1 = x0 + p1 * eps;
  const double p2 = p1 - K * std::sin(x1);
  return {x1 + p2 * tau, p2};
}

// Trajectories are independent; chunk them across hardware threads.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(hw, std::max<std::size_t>(1, count / 64));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
}

// Kick force V'(x) and curvature V''(x) for single-kick maps.
struct KickPotential {
  double c1 = 0.0;  // coefficient of cos x in -V
  double c2 = 0.0;  // coefficient of cos 2x in -V
  double force(double x) const { return c1 * std::sin(x) + 2.0 * c2 * std::sin(2.0 * x); }
  double curvature(double x) const { return c1 * std::cos(x) + 4.0 * c2 * std::cos(2.0 * x); }
};

KickPotential potential_of(const MapSpec& spec) {
  if (const auto* s = std::get_if<StandardMap>(&spec)) return {s->K, 0.0};
  if (const auto* d = std::get_if<DoubleWellMap>(&spec)) return {d->K1, d->K2};
  throw UnsupportedError("fixed-point analysis needs a single-kick map (standard or double_well), got " +
                         map_name(spec));
}

}  // namespace

double ClassicalState::wrapped_x() const {
  double w = std::fmod(x, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

void validate(const MapSpec& spec) {
  std::visit(overloaded{
                 [](const StandardMap& m) {
                   if (!std::isfinite(m.K)) throw std::invalid_argument("map.K must be finite");
                 },
                 [](const DoubleKickMap& m) {
                   if (!std::isfinite(m.K)) throw std::invalid_argument("map.K must be finite");
                   if (!(m.eps > 0.0)) throw std::invalid_argument("map.eps must be positive");
                   if (!(m.tau > 0.0)) throw std::invalid_argument("map.tau must be positive");
                 },
                 [](const RescaledDoubleKickMap& m) {
                   if (!std::isfinite(m.K_eps)) throw std::invalid_argument("map.K_eps must be finite");
                   if (!(m.tau_eps > 0.0)) throw std::invalid_argument("map.tau_eps must be positive");
                 },
                 [](const RescaledDoubleKickRandomMap& m) {
                   if (!std::isfinite(m.K_eps)) throw std::invalid_argument("map.K_eps must be finite");
                 },
                 [](const DoubleWellMap& m) {
                   if (!std::isfinite(m.K1) || !std::isfinite(m.K2))
                     throw std::invalid_argument("map.K1 and map.K2 must be finite");
                 },
             },
             spec);
}

bool is_random(const MapSpec& spec) {
  return std::holds_alternative<RescaledDoubleKickRandomMap>(spec);
}

std::string map_name(const MapSpec& spec) {
  return std::visit(overloaded{
                        [](const StandardMap&) { return std::string("standard"); },
                        [](const DoubleKickMap&) { return std::string("double_kick"); },
                        [](const RescaledDoubleKickMap&) { return std::string("rescaled_double_kick"); },
                        [](const RescaledDoubleKickRandomMap&) { return std::string("rescaled_double_kick_random"); },
                        [](const DoubleWellMap&) { return std::string("double_well"); },
                    },
                    spec);
}

ClassicalState map_step(const ClassicalState& s, const MapSpec& spec, RandomStream* stream) {
  return std::visit(overloaded{
                        [&](const StandardMap& m) {
                          const double p = s.p - m.K * std::sin(s.x);
                          return ClassicalState{s.x + p, p};
                        },
                        [&](const DoubleKickMap& m) { return kick_pair(s.x, s.p, m.K, m.eps, m.tau); },
                        [&](const RescaledDoubleKickMap& m) { return kick_pair(s.x, s.p, m.K_eps, 1.0, m.tau_eps); },
                        [&](const RescaledDoubleKickRandomMap& m) {
                          if (!stream) throw std::invalid_argument("random map variant needs a random stream");
                          const double x0 = stream->uniform_angle();
                          const double p1 = s.p - m.K_eps * std::sin(x0);
                          const double x1 = x0 + p1;
                          return ClassicalState{x1, p1 - m.K_eps * std::sin(x1)};
                        },
                        [&](const DoubleWellMap& m) {
                          const double p = s.p - m.K1 * std::sin(s.x) - 2.0 * m.K2 * std::sin(2.0 * s.x);
                          return ClassicalState{s.x + p, p};
                        },
                    },
                    spec);
}

EnsembleSeries iterate_ensemble(std::span<const ClassicalState> initials, const MapSpec& spec, long n_steps,
                                long record_every) {
  if (initials.empty()) throw std::invalid_argument("ensemble must contain at least one trajectory");
  if (initials.size() > kEnsembleSizeCap) {
    std::ostringstream os;
    os << "ensemble of " << initials.size() << " trajectories exceeds the cap of " << kEnsembleSizeCap;
    throw ResourceLimitError("ensemble_size", os.str());
  }
  if (n_steps < 1) throw std::invalid_argument("n_steps must be at least 1");
  if (record_every < 1) throw std::invalid_argument("record_every must be at least 1");
  validate(spec);

  std::vector<long> steps;
  for (long t = 0; t <= n_steps; ++t)
    if (t == 0 || t == n_steps || t % record_every == 0) steps.push_back(t);

  const std::size_t n = initials.size();
  // momenta[r * n + i] = p of trajectory i at record r
  std::vector<double> momenta(steps.size() * n);
  EnsembleSeries out;
  out.steps = steps;
  out.final_p.resize(n);
  out.max_abs_p.resize(n);

  const std::uint64_t seed = is_random(spec) ? std::get<RescaledDoubleKickRandomMap>(spec).seed : 0;
  parallel_for(n, [&](std::size_t i) {
    RandomStream stream(seed, i);
    ClassicalState s = initials[i];
    double max_abs = std::abs(s.p);
    std::size_t r = 0;
    momenta[r++ * n + i] = s.p;
    for (long t = 1; t <= n_steps; ++t) {
      s = map_step(s, spec, &stream);
      max_abs = std::max(max_abs, std::abs(s.p));
      if (r < steps.size() && steps[r] == t) momenta[r++ * n + i] = s.p;
    }
    out.final_p[i] = s.p;
    out.max_abs_p[i] = max_abs;
  });

  for (std::size_t r = 0; r < steps.size(); ++r) {
    double mean = 0.0, msd = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double p = momenta[r * n + i];
      mean += p;
      const double dp = p - initials[i].p;
      msd += dp * dp;
    }
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dp = momenta[r * n + i] - mean;
      var += dp * dp;
    }
    out.mean_p.push_back(mean);
    out.var_p.push_back(var / static_cast<double>(n));
    out.msd_p.push_back(msd / static_cast<double>(n));
  }
  return out;
}

std::vector<std::vector<ClassicalState>> surface_of_section(std::span<const ClassicalState> initials,
                                                            const MapSpec& spec, long n_steps) {
  if (n_steps < 0) throw std::invalid_argument("n_steps must be non-negative");
  if (initials.size() > kEnsembleSizeCap) throw ResourceLimitError("ensemble_size", "too many section trajectories");
  validate(spec);
  const std::uint64_t seed = is_random(spec) ? std::get<RescaledDoubleKickRandomMap>(spec).seed : 0;
  std::vector<std::vector<ClassicalState>> sections(initials.size());
  parallel_for(initials.size(), [&](std::size_t i) {
    RandomStream stream(seed, i);
    auto& points = sections[i];
    points.reserve(static_cast<std::size_t>(n_steps));
    ClassicalState s = initials[i];
    for (long t = 0; t < n_steps; ++t) {
      s = map_step(s, spec, &stream);
      points.push_back({s.wrapped_x(), s.p});
    }
  });
  return sections;
}

std::string_view to_string(Stability s) {
  switch (s) {
    case Stability::Stable:
      return "stable";
    case Stability::Unstable:
      return "unstable";
    case Stability::Marginal:
      return "marginal";
  }
  return "unknown";
}

FixedPoint classify_fixed_point(const MapSpec& spec, double x) {
  const KickPotential V = potential_of(spec);
  const double curvature = V.curvature(x);
  FixedPoint fp;
  fp.x = ClassicalState{x, 0.0}.wrapped_x();
  fp.trace = 2.0 - curvature;
  if (std::abs(curvature) < kMarginalTolerance || std::abs(curvature - 4.0) < kMarginalTolerance)
    fp.stability = Stability::Marginal;
  else if (curvature > 0.0 && curvature < 4.0)
    fp.stability = Stability::Stable;
  else
    fp.stability = Stability::Unstable;
  return fp;
}

std::vector<FixedPoint> fixed_point_stability(const MapSpec& spec) {
  validate(spec);
  const KickPotential V = potential_of(spec);
  auto f = [&](double x) { return V.force(x); };
  // Zero force: every point on p = 0 is fixed, none isolated.
  if (V.c1 == 0.0 && V.c2 == 0.0) return {};

  std::vector<double> roots;
  auto add_root = [&](double r) {
    r = ClassicalState{r, 0.0}.wrapped_x();
    for (double existing : roots) {
      const double gap = std::abs(existing - r);
      if (std::min(gap, kTwoPi - gap) < 1e-8) return;
    }
    roots.push_back(r);
  };

  const double h = kTwoPi / kRootScanIntervals;
  // Terminate once the bracket is below kRootTolerance.
  auto tol = [](double lo, double hi) { return std::abs(hi - lo) <= kRootTolerance; };
  for (int i = 0; i < kRootScanIntervals; ++i) {
    const double a = i * h;
    const double b = (i + 1) * h;
    const double fa = f(a);
    const double fb = f(b);
    if (fa == 0.0) {
      add_root(a);
      continue;
    }
    if (fa * fb > 0.0 || fb == 0.0) continue;
    std::uintmax_t max_iter = 200;
    const auto [lo, hi] = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, max_iter);
    add_root(0.5 * (lo + hi));
  }
  std::sort(roots.begin(), roots.end());

  std::vector<FixedPoint> out;
  out.reserve(roots.size());
  for (double r : roots) out.push_back(classify_fixed_point(spec, r));
  return out;
}

std::vector<ClassicalState> uniform_line(std::size_t count, double p, std::uint64_t seed) {
  RandomStream stream(seed, 0);
  std::vector<ClassicalState> pts(count);
  for (auto& s : pts) s = {stream.uniform_angle(), p};
  return pts;
}

}  // namespace kickchain
