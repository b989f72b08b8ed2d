#include "kickchain/scenario.hpp"

#include <fmt/format.h>
#include <fmt/os.h>

#include <cmath>
#include <fstream>
#include <set>

#include "kickchain/diagnostics.hpp"
#include "kickchain/errors.hpp"

#ifndef KICKCHAIN_VERSION
#define KICKCHAIN_VERSION "dev"
#endif

namespace kickchain {

using nlohmann::json;

namespace {

// Reads one JSON object, remembering which keys were consumed so that
// leftovers can be rejected.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected a JSON object");
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json& required(const std::string& key) {
    if (!j_.contains(key)) throw ConfigError(field(key), "missing required field");
    seen_.insert(key);
    return j_.at(key);
  }

  const json* optional(const std::string& key) {
    if (!j_.contains(key)) return nullptr;
    seen_.insert(key);
    return &j_.at(key);
  }

  double number(const std::string& key) { return as_number(required(key), field(key)); }
  double number_or(const std::string& key, double fallback) {
    const json* v = optional(key);
    return v ? as_number(*v, field(key)) : fallback;
  }
  long integer(const std::string& key) { return as_integer(required(key), field(key)); }
  long integer_or(const std::string& key, long fallback) {
    const json* v = optional(key);
    return v ? as_integer(*v, field(key)) : fallback;
  }
  std::size_t count(const std::string& key) {
    const long v = integer(key);
    if (v < 0) throw ConfigError(field(key), "must be non-negative");
    return static_cast<std::size_t>(v);
  }
  std::string string(const std::string& key) {
    const json& v = required(key);
    if (!v.is_string()) throw ConfigError(field(key), "expected a string");
    return v.get<std::string>();
  }
  std::uint64_t seed(const std::string& key) {
    const json& v = required(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::uint64_t>(v.get<long long>());
    throw ConfigError(field(key), "expected a non-negative 64-bit integer");
  }

  void finish() const {
    for (const auto& [key, value] : j_.items())
      if (!seen_.count(key)) throw ConfigError(field(key), "unknown field");
  }

  static double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) throw ConfigError(where, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(where, "must be finite");
    return d;
  }
  static long as_integer(const json& v, const std::string& where) {
    if (!v.is_number_integer()) throw ConfigError(where, "expected an integer");
    return v.get<long>();
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

ScenarioKind parse_kind(const std::string& name) {
  if (name == "single_kick") return ScenarioKind::SingleKick;
  if (name == "double_kick") return ScenarioKind::DoubleKick;
  if (name == "double_kick_random") return ScenarioKind::DoubleKickRandom;
  if (name == "qkr") return ScenarioKind::Qkr;
  if (name == "classical_map") return ScenarioKind::ClassicalMap;
  if (name == "surface_of_section") return ScenarioKind::SurfaceOfSection;
  if (name == "feasibility") return ScenarioKind::Feasibility;
  throw ConfigError("scenario", "unknown scenario '" + name + "'");
}

bool is_chain_scenario(ScenarioKind k) {
  return k == ScenarioKind::SingleKick || k == ScenarioKind::DoubleKick || k == ScenarioKind::DoubleKickRandom;
}

ChainConfig parse_chain(ObjectReader& root) {
  ObjectReader r(root.required("chain"), "chain");
  ChainConfig c;
  c.N = r.count("N");
  c.J1 = r.number("J1");
  c.J2 = r.number_or("J2", 0.0);
  c.n0 = static_cast<std::size_t>(r.integer_or("n0", static_cast<long>(c.N / 2)));
  if (const json* m = r.optional("model")) {
    if (!m->is_string()) throw ConfigError("chain.model", "expected a string");
    try {
      c.model = parse_dispersion_model(m->get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError("chain.model", e.what());
    }
  }
  r.finish();
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("chain", e.what());
  }
  return c;
}

KickSchedule parse_schedule(ObjectReader& root, ScenarioKind kind, std::uint64_t seed) {
  ObjectReader r(root.required("schedule"), "schedule");
  KickSchedule s;
  switch (kind) {
    case ScenarioKind::SingleKick:
      s = SingleKick{r.number("B_Q"), r.number("T0")};
      break;
    case ScenarioKind::DoubleKick:
      s = DoubleKick{r.number("B_eps"), r.number("B_tau"), r.number("T0")};
      break;
    default:
      s = DoubleKickRandom{r.number("B_eps"), r.number("T0"), seed};
      break;
  }
  r.finish();
  try {
    validate(s);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("schedule", e.what());
  }
  return s;
}

QuantumStart parse_quantum_start(ObjectReader& root, const ChainConfig& chain) {
  ObjectReader r(root.required("initial"), "initial");
  const bool delta = r.has("delta_site");
  const bool magnon = r.has("magnon_m");
  if (delta == magnon) throw ConfigError("initial", "exactly one of delta_site or magnon_m is required");
  QuantumStart start;
  if (delta) {
    const long s = r.integer("delta_site");
    if (s < 0 || static_cast<std::size_t>(s) >= chain.N) throw ConfigError("initial.delta_site", "outside [0, N)");
    start = DeltaStart{static_cast<std::size_t>(s)};
  } else {
    const long m = r.integer("magnon_m");
    const auto [lo, hi] = wavenumber_index_range(chain.N);
    if (m < lo || m > hi) throw ConfigError("initial.magnon_m", "outside the wavenumber index range");
    start = MagnonStart{m};
  }
  r.finish();
  return start;
}

MapSpec parse_map(ObjectReader& root, std::uint64_t seed) {
  ObjectReader r(root.required("map"), "map");
  const std::string variant = r.string("variant");
  MapSpec spec;
  if (variant == "standard") {
    spec = StandardMap{r.number("K")};
  } else if (variant == "double_kick") {
    spec = DoubleKickMap{r.number("K"), r.number("eps"), r.number("tau")};
  } else if (variant == "rescaled_double_kick") {
    spec = RescaledDoubleKickMap{r.number("K_eps"), r.number("tau_eps")};
  } else if (variant == "rescaled_double_kick_random") {
    spec = RescaledDoubleKickRandomMap{r.number("K_eps"), seed};
  } else if (variant == "double_well") {
    spec = DoubleWellMap{r.number("K1"), r.number("K2")};
  } else {
    throw ConfigError("map.variant", "unknown map variant '" + variant + "'");
  }
  r.finish();
  try {
    validate(spec);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("map", e.what());
  }
  return spec;
}

void parse_classical_initial(ObjectReader& root, ScenarioConfig& c) {
  ObjectReader r(root.required("initial"), "initial");
  const bool points = r.has("points");
  const bool line = r.has("uniform_line");
  if (points == line) throw ConfigError("initial", "exactly one of points or uniform_line is required");
  if (points) {
    const json& list = r.required("points");
    if (!list.is_array() || list.empty()) throw ConfigError("initial.points", "expected a non-empty array of [x, p]");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "initial.points[" + std::to_string(i) + "]";
      const json& pt = list[i];
      if (!pt.is_array() || pt.size() != 2) throw ConfigError(where, "expected [x, p]");
      c.initial_points.push_back({ObjectReader::as_number(pt[0], where), ObjectReader::as_number(pt[1], where)});
    }
  } else {
    ObjectReader u(r.required("uniform_line"), "initial.uniform_line");
    const std::size_t count = u.count("count");
    if (count == 0) throw ConfigError("initial.uniform_line.count", "must be positive");
    const double p = u.number("p");
    u.finish();
    c.uniform_line = std::make_pair(count, p);
  }
  r.finish();
}

json schedule_json(const KickSchedule& s) {
  if (const auto* a = std::get_if<SingleKick>(&s)) return {{"B_Q", a->B_Q}, {"T0", a->T0}};
  if (const auto* b = std::get_if<DoubleKick>(&s)) return {{"B_eps", b->B_eps}, {"B_tau", b->B_tau}, {"T0", b->T0}};
  const auto& c = std::get<DoubleKickRandom>(s);
  return {{"B_eps", c.B_eps}, {"T0", c.T0}};
}

json map_json(const MapSpec& spec) {
  json j;
  j["variant"] = map_name(spec);
  if (const auto* m = std::get_if<StandardMap>(&spec)) j["K"] = m->K;
  if (const auto* m = std::get_if<DoubleKickMap>(&spec)) {
    j["K"] = m->K;
    j["eps"] = m->eps;
    j["tau"] = m->tau;
  }
  if (const auto* m = std::get_if<RescaledDoubleKickMap>(&spec)) {
    j["K_eps"] = m->K_eps;
    j["tau_eps"] = m->tau_eps;
  }
  if (const auto* m = std::get_if<RescaledDoubleKickRandomMap>(&spec)) j["K_eps"] = m->K_eps;
  if (const auto* m = std::get_if<DoubleWellMap>(&spec)) {
    j["K1"] = m->K1;
    j["K2"] = m->K2;
  }
  return j;
}

json optional_number(const std::optional<double>& v) {
  if (v && std::isfinite(*v)) return *v;
  return nullptr;
}

std::filesystem::path output_file(const std::string& prefix, const std::string& suffix) {
  std::filesystem::path p(prefix + suffix);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  return p;
}

void write_distribution_csv(const std::filesystem::path& path, const std::vector<Snapshot>& snapshots) {
  auto out = fmt::output_file(path.string());
  out.print("period,site,probability\n");
  for (const auto& snap : snapshots)
    for (std::size_t s = 0; s < snap.distribution.size(); ++s)
      out.print("{},{},{}\n", snap.period, s, snap.distribution[s]);
}

void write_json(const std::filesystem::path& path, const json& doc) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << doc.dump(2) << '\n';
}

json spikes_json(const std::vector<Spike>& spikes) {
  json arr = json::array();
  for (const auto& s : spikes)
    arr.push_back({{"period", s.period}, {"site", s.site}, {"offset", s.offset}, {"mass", s.mass}});
  return arr;
}

json report_json(const DistributionReport& r) {
  return {{"s0", r.s0},
          {"variance", r.variance},
          {"participation_ratio", r.participation_ratio},
          {"loc_length", optional_number(r.loc_length)},
          {"loc_fit_r2", optional_number(r.loc_fit_r2)},
          {"spikes", spikes_json(r.spikes)},
          {"cell_occupancy", optional_number(r.cell_occupancy)}};
}

json snapshot_stats_json(const std::vector<Snapshot>& snapshots, std::size_t s0) {
  json arr = json::array();
  for (const auto& snap : snapshots) {
    const auto st = distribution_stats(snap.distribution, s0);
    arr.push_back({{"period", snap.period}, {"variance", st.variance}, {"participation_ratio", st.participation_ratio}});
  }
  return arr;
}

RunResult run_chain(const ScenarioConfig& c) {
  RunResult result;
  const MagnonState start = std::holds_alternative<DeltaStart>(c.start)
                                ? MagnonState::delta(c.chain.N, std::get<DeltaStart>(c.start).site)
                                : magnon_state(c.chain.N, std::get<MagnonStart>(c.start).m);
  const std::size_t s0 = std::holds_alternative<DeltaStart>(c.start) ? std::get<DeltaStart>(c.start).site : c.chain.n0;

  if (const auto* d = std::get_if<DoubleKick>(&c.schedule); d && d->B_tau <= d->B_eps)
    result.warnings.push_back("double_kick: B_tau <= B_eps, outside the intended B_tau >> B_eps regime");

  const PropagationRecord record = evolve(start, c.chain, c.schedule, c.n_periods, c.snapshot_every);
  for (const auto& w : record.warnings) result.warnings.push_back(w);

  const auto& final_P = record.snapshots.back().distribution;
  DistributionReport rep;
  rep.s0 = s0;
  const auto stats = distribution_stats(final_P, s0);
  rep.variance = stats.variance;
  rep.participation_ratio = stats.participation_ratio;

  const double J1T0 = c.chain.J1 * period_length(c.schedule);
  try {
    const FitWindow window = c.analysis.fit_window.value_or(default_fit_window(J1T0, c.chain.N));
    const auto fit = fit_localization_length(final_P, s0, window);
    rep.loc_length = fit.L;
    rep.loc_fit_r2 = fit.r_squared;
  } catch (const InsufficientDataError&) {
  } catch (const std::invalid_argument&) {
  }

  json results;
  if (const auto* s = std::get_if<SingleKick>(&c.schedule); s && s->B_Q > 0.0) {
    SpikeDetectorOptions opts;
    opts.mass_window = c.analysis.spike_window;
    const auto tracks = detect_accelerator_modes(record, s->B_Q, c.chain.n0, opts);
    for (const auto* side : {&tracks.left, &tracks.right})
      rep.spikes.insert(rep.spikes.end(), side->begin(), side->end());
    results["accelerator"] = {{"speed_left", optional_number(tracks.speed_left)},
                              {"speed_right", optional_number(tracks.speed_right)},
                              {"expected_speed", 2.0 * std::numbers::pi / s->B_Q}};
  }
  const double B_eps = std::visit(
      [](const auto& s) -> double {
        if constexpr (requires { s.B_eps; }) return s.B_eps;
        return 0.0;
      },
      c.schedule);
  if (!std::holds_alternative<SingleKick>(c.schedule) && B_eps > 0.0) {
    const auto occ = cell_occupancy(final_P, B_eps, c.chain.n0);
    rep.cell_occupancy = occ.occupancy;
    if (occ.cell_exceeds_chain) result.warnings.push_back("trapping cell is wider than the chain");
  }

  results["final"] = report_json(rep);
  results["final"]["norm"] = record.final_state.norm_squared();
  results["snapshots"] = snapshot_stats_json(record.snapshots, s0);

  const auto dist = output_file(c.output, "_dist.csv");
  write_distribution_csv(dist, record.snapshots);
  result.files.push_back(dist);
  result.report["results"] = std::move(results);
  return result;
}

RunResult run_qkr(const ScenarioConfig& c) {
  RunResult result;
  const auto record =
      qkr_evolve(c.qkr.initial_momentum, c.qkr.K, c.qkr.hbar, c.n_periods, c.qkr.n_basis, c.snapshot_every);
  result.warnings = record.warnings;
  const std::size_t center = c.qkr.n_basis / 2;
  const auto stats = distribution_stats(record.snapshots.back().distribution, center);
  json results;
  results["basis_center_index"] = center;
  results["momentum_of_index"] = fmt::format("l = {} + index - {}", c.qkr.initial_momentum, center);
  results["final"] = {{"variance", stats.variance},
                      {"participation_ratio", stats.participation_ratio},
                      {"norm", record.final_state.norm_squared()}};
  results["snapshots"] = snapshot_stats_json(record.snapshots, center);
  const auto dist = output_file(c.output, "_dist.csv");
  write_distribution_csv(dist, record.snapshots);
  result.files.push_back(dist);
  result.report["results"] = std::move(results);
  return result;
}

std::vector<ClassicalState> classical_initials(const ScenarioConfig& c) {
  if (c.uniform_line) return uniform_line(c.uniform_line->first, c.uniform_line->second, *c.seed);
  return c.initial_points;
}

RunResult run_classical(const ScenarioConfig& c) {
  RunResult result;
  const auto initials = classical_initials(c);
  const auto series = iterate_ensemble(initials, c.map, c.n_steps, c.record_every);
  json results;
  results["trajectories"] = initials.size();
  results["steps"] = series.steps;
  results["mean_p"] = series.mean_p;
  results["var_p"] = series.var_p;
  results["msd_p"] = series.msd_p;
  constexpr std::size_t kPerTrajectoryLimit = 10000;
  if (initials.size() <= kPerTrajectoryLimit) {
    results["final_p"] = series.final_p;
    results["max_abs_p"] = series.max_abs_p;
  } else {
    result.warnings.push_back("per-trajectory momenta omitted from the report (more than 10000 trajectories)");
  }
  std::size_t inside = 0;
  for (double m : series.max_abs_p)
    if (m < std::numbers::pi) ++inside;
  results["fraction_never_beyond_pi"] = static_cast<double>(inside) / static_cast<double>(initials.size());
  result.report["results"] = std::move(results);
  return result;
}

RunResult run_section(const ScenarioConfig& c) {
  RunResult result;
  const auto initials = classical_initials(c);
  const auto sections = surface_of_section(initials, c.map, c.n_steps);
  const auto path = output_file(c.output, "_sos.csv");
  {
    auto out = fmt::output_file(path.string());
    out.print("trajectory,step,x,p\n");
    for (std::size_t i = 0; i < sections.size(); ++i)
      for (std::size_t t = 0; t < sections[i].size(); ++t)
        out.print("{},{},{},{}\n", i, t + 1, sections[i][t].x, sections[i][t].p);
  }
  result.files.push_back(path);
  json results;
  results["trajectories"] = sections.size();
  results["points_per_trajectory"] = c.n_steps;
  if (std::holds_alternative<StandardMap>(c.map) || std::holds_alternative<DoubleWellMap>(c.map)) {
    json fps = json::array();
    for (const auto& fp : fixed_point_stability(c.map))
      fps.push_back({{"x", fp.x}, {"p", fp.p}, {"stability", std::string(to_string(fp.stability))}, {"trace", fp.trace}});
    results["fixed_points"] = std::move(fps);
  }
  result.report["results"] = std::move(results);
  return result;
}

RunResult run_feasibility(const ScenarioConfig& c) {
  RunResult result;
  const auto r = feasibility(c.feasibility);
  json inf_safe = {
      {"b_q_au", r.b_q_au},
      {"b_range_tesla", r.b_range_tesla},
      {"j_au", r.j_au},
      {"pulse_min_au", optional_number(r.pulse_min_au)},
      {"pulse_max_au", optional_number(r.pulse_max_au)},
      {"pulse_min_s", optional_number(r.pulse_min_s)},
      {"pulse_max_s", optional_number(r.pulse_max_s)},
      {"two_j_t0", r.two_j_t0},
      {"kick_phase_ok", r.kick_phase_ok},
      {"pulse_window_ok", r.pulse_window_ok},
      {"exchange_period_ok", r.exchange_period_ok},
      {"feasible", r.feasible},
      {"notes", r.notes},
      {"tesla_per_au", kTeslaPerAtomicFieldUnit},
      {"strong_inequality_factor", kStrongInequality},
  };
  result.report["results"] = std::move(inf_safe);
  return result;
}

}  // namespace

std::string version_string() {
  return std::string("kickchain ") + KICKCHAIN_VERSION;
}

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::SingleKick:
      return "single_kick";
    case ScenarioKind::DoubleKick:
      return "double_kick";
    case ScenarioKind::DoubleKickRandom:
      return "double_kick_random";
    case ScenarioKind::Qkr:
      return "qkr";
    case ScenarioKind::ClassicalMap:
      return "classical_map";
    case ScenarioKind::SurfaceOfSection:
      return "surface_of_section";
    case ScenarioKind::Feasibility:
      return "feasibility";
  }
  return "unknown";
}

ScenarioConfig parse_scenario(const json& doc) {
  ObjectReader root(doc, "");
  ScenarioConfig c;
  c.kind = parse_kind(root.string("scenario"));
  if (c.kind != ScenarioKind::Feasibility) c.seed = root.seed("seed");
  if (const json* out = root.optional("output")) {
    if (!out->is_string() || out->get<std::string>().empty()) throw ConfigError("output", "expected a non-empty path prefix");
    c.output = out->get<std::string>();
  }
  const std::uint64_t seed = c.seed.value_or(0);

  if (is_chain_scenario(c.kind)) {
    c.chain = parse_chain(root);
    c.schedule = parse_schedule(root, c.kind, seed);
    c.start = parse_quantum_start(root, c.chain);
    c.n_periods = root.integer("n_periods");
    if (c.n_periods < 0) throw ConfigError("n_periods", "must be non-negative");
    c.snapshot_every = root.integer_or("snapshot_every", 1);
    if (c.snapshot_every < 1) throw ConfigError("snapshot_every", "must be at least 1");
    if (const json* a = root.optional("analysis")) {
      ObjectReader r(*a, "analysis");
      if (const json* w = r.optional("fit_window")) {
        if (!w->is_array() || w->size() != 2) throw ConfigError("analysis.fit_window", "expected [d_min, d_max]");
        c.analysis.fit_window = FitWindow{ObjectReader::as_integer((*w)[0], "analysis.fit_window"),
                                          ObjectReader::as_integer((*w)[1], "analysis.fit_window")};
      }
      c.analysis.spike_window = r.integer_or("spike_window", 10);
      if (c.analysis.spike_window < 0) throw ConfigError("analysis.spike_window", "must be non-negative");
      r.finish();
    }
  } else if (c.kind == ScenarioKind::Qkr) {
    ObjectReader r(root.required("qkr"), "qkr");
    c.qkr.K = r.number("K");
    c.qkr.hbar = r.number("hbar");
    if (!(c.qkr.hbar > 0.0)) throw ConfigError("qkr.hbar", "must be positive");
    c.qkr.initial_momentum = r.integer_or("initial_momentum", 0);
    c.qkr.n_basis = r.count("n_basis");
    if (c.qkr.n_basis < 2) throw ConfigError("qkr.n_basis", "must be at least 2");
    r.finish();
    c.n_periods = root.integer("n_periods");
    if (c.n_periods < 0) throw ConfigError("n_periods", "must be non-negative");
    c.snapshot_every = root.integer_or("snapshot_every", 1);
    if (c.snapshot_every < 1) throw ConfigError("snapshot_every", "must be at least 1");
  } else if (c.kind == ScenarioKind::ClassicalMap || c.kind == ScenarioKind::SurfaceOfSection) {
    c.map = parse_map(root, seed);
    c.n_steps = root.integer("n_steps");
    if (c.n_steps < 1) throw ConfigError("n_steps", "must be at least 1");
    if (c.kind == ScenarioKind::ClassicalMap) {
      c.record_every = root.integer_or("record_every", 1);
      if (c.record_every < 1) throw ConfigError("record_every", "must be at least 1");
    }
    parse_classical_initial(root, c);
  } else {
    ObjectReader r(root.required("feasibility"), "feasibility");
    c.feasibility.b_range_au = r.number("b_range_au");
    c.feasibility.sites = r.count("sites");
    c.feasibility.j_hz = r.number("j_hz");
    c.feasibility.t0_s = r.number_or("t0_s", 1e-6);
    r.finish();
  }
  root.finish();
  return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("<file>", "cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ConfigError("<file>", std::string("malformed JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

void override_seed(ScenarioConfig& c, std::uint64_t seed) {
  c.seed = seed;
  if (auto* r = std::get_if<DoubleKickRandom>(&c.schedule)) r->seed = seed;
  if (auto* m = std::get_if<RescaledDoubleKickRandomMap>(&c.map)) m->seed = seed;
}

json resolved_config(const ScenarioConfig& c) {
  json j;
  j["scenario"] = std::string(to_string(c.kind));
  if (c.seed) j["seed"] = *c.seed;
  j["output"] = c.output;
  if (is_chain_scenario(c.kind)) {
    j["chain"] = {{"N", c.chain.N},
                  {"J1", c.chain.J1},
                  {"J2", c.chain.J2},
                  {"n0", c.chain.n0},
                  {"model", std::string(to_string(c.chain.model))}};
    j["schedule"] = schedule_json(c.schedule);
    if (const auto* d = std::get_if<DeltaStart>(&c.start))
      j["initial"] = {{"delta_site", d->site}};
    else
      j["initial"] = {{"magnon_m", std::get<MagnonStart>(c.start).m}};
    j["n_periods"] = c.n_periods;
    j["snapshot_every"] = c.snapshot_every;
    const FitWindow w =
        c.analysis.fit_window.value_or(default_fit_window(c.chain.J1 * period_length(c.schedule), c.chain.N));
    j["analysis"] = {{"fit_window", {w.d_min, w.d_max}}, {"spike_window", c.analysis.spike_window}};
  } else if (c.kind == ScenarioKind::Qkr) {
    j["qkr"] = {{"K", c.qkr.K}, {"hbar", c.qkr.hbar}, {"initial_momentum", c.qkr.initial_momentum}, {"n_basis", c.qkr.n_basis}};
    j["n_periods"] = c.n_periods;
    j["snapshot_every"] = c.snapshot_every;
  } else if (c.kind == ScenarioKind::ClassicalMap || c.kind == ScenarioKind::SurfaceOfSection) {
    j["map"] = map_json(c.map);
    j["n_steps"] = c.n_steps;
    if (c.kind == ScenarioKind::ClassicalMap) j["record_every"] = c.record_every;
    if (c.uniform_line) {
      j["initial"] = {{"uniform_line", {{"count", c.uniform_line->first}, {"p", c.uniform_line->second}}}};
    } else {
      json pts = json::array();
      for (const auto& s : c.initial_points) pts.push_back({s.x, s.p});
      j["initial"] = {{"points", pts}};
    }
  } else {
    j["feasibility"] = {{"b_range_au", c.feasibility.b_range_au},
                        {"sites", c.feasibility.sites},
                        {"j_hz", c.feasibility.j_hz},
                        {"t0_s", c.feasibility.t0_s}};
  }
  return j;
}

RunResult run_scenario(const ScenarioConfig& c) {
  RunResult result;
  switch (c.kind) {
    case ScenarioKind::SingleKick:
    case ScenarioKind::DoubleKick:
    case ScenarioKind::DoubleKickRandom:
      result = run_chain(c);
      break;
    case ScenarioKind::Qkr:
      result = run_qkr(c);
      break;
    case ScenarioKind::ClassicalMap:
      result = run_classical(c);
      break;
    case ScenarioKind::SurfaceOfSection:
      result = run_section(c);
      break;
    case ScenarioKind::Feasibility:
      result = run_feasibility(c);
      break;
  }
  result.report["version"] = version_string();
  result.report["seed"] = c.seed ? json(*c.seed) : json(nullptr);
  result.report["config"] = resolved_config(c);
  result.report["warnings"] = result.warnings;
  const auto path = output_file(c.output, "_report.json");
  write_json(path, result.report);
  result.files.push_back(path);
  return result;
}

}  // namespace kickchain
