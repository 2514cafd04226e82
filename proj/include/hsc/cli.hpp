#ifndef HSC_CLI_HPP_
#define HSC_CLI_HPP_

// Subcommands of the hscopt tool. Each returns a process exit code and
// writes its artifacts plus manifest.json into an output directory.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hsc/milp.hpp"
#include "hsc/scenario.hpp"

namespace hsc::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kIo = 2, kInfeasible = 3 };

struct ScenarioOverrides {
  std::optional<bool> retrofit;
  std::optional<WaterRestriction> water;
};

WaterRestriction parse_water(const std::string& text);
std::vector<double> parse_weights(const std::string& text);
// "NxM" -> (N, M).
std::pair<std::size_t, std::size_t> parse_grid(const std::string& text);

// Applies command-line overrides on top of the bundle options.
void apply(const ScenarioOverrides& o, Scenario& s);

struct OptimizeArgs {
  std::filesystem::path scenario;
  std::filesystem::path out = "out";
  ObjectiveKind objective = ObjectiveKind::kCost;
  ScenarioOverrides overrides;
  BnbOptions bnb;
  bool timestamps = false;
};

struct SweepArgs {
  std::filesystem::path scenario;
  std::filesystem::path out = "out";
  std::size_t n_ghg = 4;
  std::size_t n_risk = 4;
  std::vector<double> weights{1.0, 1.0, 1.0};
  bool classic = false;
  bool bi_objective = false;  // rank on (cost, ghg) only
  ScenarioOverrides overrides;
  BnbOptions bnb;
  bool timestamps = false;
};

struct RankArgs {
  std::filesystem::path input;  // CSV with cost, ghg and risk columns
  std::filesystem::path out = "out";
  std::vector<double> weights{1.0, 1.0, 1.0};
  bool classic = false;
  bool bi_objective = false;
};

struct ExportArgs {
  std::filesystem::path scenario;
  std::filesystem::path out;  // MPS file
  ObjectiveKind objective = ObjectiveKind::kCost;
  ScenarioOverrides overrides;
};

int cmd_validate(const std::filesystem::path& scenario, std::ostream& out, std::ostream& err);
int cmd_optimize(const OptimizeArgs& a, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err);
int cmd_rank(const RankArgs& a, std::ostream& out, std::ostream& err);
int cmd_report(const std::filesystem::path& scenario, const std::filesystem::path& dir,
               bool timestamps, std::ostream& out, std::ostream& err);
int cmd_export_mps(const ExportArgs& a, std::ostream& out, std::ostream& err);

// Parallel degree from HSCOPT_THREADS (0 when unset or invalid).
int threads_from_env();

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace hsc::cli

#endif  // HSC_CLI_HPP_
