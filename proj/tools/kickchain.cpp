// kickchain: run scenario files, check configs, estimate laboratory feasibility.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "kickchain/errors.hpp"
#include "kickchain/scenario.hpp"

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kBadConfig = 2, kResourceCap = 3 };

int report_error(const std::exception& e) {
  if (const auto* ce = dynamic_cast<const kickchain::ConfigError*>(&e)) {
    std::cerr << "config error: " << ce->what() << '\n';
    return kBadConfig;
  }
  if (const auto* re = dynamic_cast<const kickchain::ResourceLimitError*>(&e)) {
    std::cerr << "resource limit '" << re->cap() << "' exceeded: " << re->what() << '\n';
    return kResourceCap;
  }
  if (dynamic_cast<const kickchain::UnsupportedError*>(&e)) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kBadConfig;
  }
  std::cerr << "error: " << e.what() << '\n';
  return kFailure;
}

int cmd_run(const std::string& path, std::optional<std::uint64_t> seed, std::optional<std::string> out) {
  auto config = kickchain::load_scenario(path);
  if (seed) kickchain::override_seed(config, *seed);
  if (out) config.output = *out;
  const auto result = kickchain::run_scenario(config);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
  for (const auto& f : result.files) std::cout << f.string() << '\n';
  return kOk;
}

int cmd_validate(const std::string& path) {
  const auto config = kickchain::load_scenario(path);
  std::cout << kickchain::resolved_config(config).dump(2) << '\n';
  return kOk;
}

int cmd_feasibility(double b_range, std::size_t sites, double j_hz, double t0) {
  kickchain::ScenarioConfig config;
  config.kind = kickchain::ScenarioKind::Feasibility;
  config.feasibility = {b_range, sites, j_hz, t0};
  const auto r = kickchain::feasibility(config.feasibility);
  nlohmann::json doc = {{"input", kickchain::resolved_config(config)["feasibility"]},
                        {"b_q_au", r.b_q_au},
                        {"b_range_tesla", r.b_range_tesla},
                        {"j_au", r.j_au},
                        {"pulse_min_au", r.pulse_min_au},
                        {"pulse_max_au", r.pulse_max_au},
                        {"pulse_min_s", r.pulse_min_s},
                        {"pulse_max_s", r.pulse_max_s},
                        {"two_j_t0", r.two_j_t0},
                        {"kick_phase_ok", r.kick_phase_ok},
                        {"pulse_window_ok", r.pulse_window_ok},
                        {"exchange_period_ok", r.exchange_period_ok},
                        {"feasible", r.feasible},
                        {"notes", r.notes}};
  std::cout << doc.dump(2) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kicked one-magnon spin chains and their classical maps"};
  app.set_version_flag("--version", kickchain::version_string());
  app.require_subcommand(1);

  std::string run_config;
  std::optional<std::uint64_t> run_seed;
  std::optional<std::string> run_out;
  auto* run = app.add_subcommand("run", "Run a scenario file and write CSV/JSON outputs");
  run->add_option("--config", run_config, "Scenario JSON")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", run_seed, "Override the scenario seed");
  run->add_option("--out", run_out, "Output prefix");

  double b_range = 0.0, j_hz = 0.0, t0 = 1e-6;
  std::size_t sites = 0;
  auto* feas = app.add_subcommand("feasibility", "Estimate pulse-duration window for a laboratory chain");
  feas->add_option("--b-range", b_range, "Field range across the chain (atomic units)")->required();
  feas->add_option("--sites", sites, "Number of sites")->required();
  feas->add_option("--j-hz", j_hz, "Exchange frequency (Hz)")->required();
  feas->add_option("--t0", t0, "Pulse period (s)")->capture_default_str();

  std::string validate_config;
  auto* val = app.add_subcommand("validate", "Check a scenario file and print the resolved config");
  val->add_option("--config", validate_config, "Scenario JSON")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(run_config, run_seed, run_out);
    if (*val) return cmd_validate(validate_config);
    if (*feas) return cmd_feasibility(b_range, sites, j_hz, t0);
  } catch (const std::exception& e) {
    return report_error(e);
  }
  return kFailure;
}
