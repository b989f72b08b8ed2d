#pragma once

// JSON scenario files and the runner behind the command-line tool.
//
// A scenario is a single JSON object. Unknown keys are rejected at every level
// so that the resolved configuration echoed into the report fully describes
// the run.

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "kickchain/chain.hpp"
#include "kickchain/classical.hpp"
#include "kickchain/diagnostics.hpp"
#include "kickchain/evolution.hpp"
#include "kickchain/feasibility.hpp"

namespace kickchain {

/// Schema violation; `field()` is the dotted path of the offending key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

enum class ScenarioKind { SingleKick, DoubleKick, DoubleKickRandom, Qkr, ClassicalMap, SurfaceOfSection, Feasibility };

std::string_view to_string(ScenarioKind kind);

struct DeltaStart {
  std::size_t site = 0;
};
struct MagnonStart {
  long m = 0;
};
using QuantumStart = std::variant<DeltaStart, MagnonStart>;

struct QkrParams {
  double K = 0.0;
  double hbar = 1.0;
  long initial_momentum = 0;
  std::size_t n_basis = 0;
};

struct AnalysisOptions {
  std::optional<FitWindow> fit_window;  // default: default_fit_window()
  long spike_window = 10;
};

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::SingleKick;
  std::optional<std::uint64_t> seed;  // required except for feasibility
  std::string output = "kickchain";

  // quantum chain scenarios
  ChainConfig chain;
  KickSchedule schedule;
  QuantumStart start;
  long n_periods = 0;
  long snapshot_every = 1;
  AnalysisOptions analysis;

  QkrParams qkr;

  // classical scenarios
  MapSpec map;
  long n_steps = 0;
  long record_every = 1;
  std::vector<ClassicalState> initial_points;
  std::optional<std::pair<std::size_t, double>> uniform_line;  // (count, p)

  FeasibilityInput feasibility;
};

/// Strict schema check; throws ConfigError naming the field.
ScenarioConfig parse_scenario(const nlohmann::json& doc);
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Canonical JSON of a parsed config with all defaults filled in.
nlohmann::json resolved_config(const ScenarioConfig& config);

/// Replace the seed (and the random streams derived from it).
void override_seed(ScenarioConfig& config, std::uint64_t seed);

struct RunResult {
  std::vector<std::filesystem::path> files;
  nlohmann::json report;
  std::vector<std::string> warnings;
};

/// Runs the scenario and writes its outputs next to `config.output`:
/// `<prefix>_dist.csv` (quantum), `<prefix>_sos.csv` (sections) and
/// `<prefix>_report.json` (always).
RunResult run_scenario(const ScenarioConfig& config);

std::string version_string();

}  // namespace kickchain
