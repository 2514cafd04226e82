#ifndef HSC_REPORT_HPP_
#define HSC_REPORT_HPP_

// CSV, JSON and SVG artifacts written by the command-line tool.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "hsc/demand.hpp"
#include "hsc/kpi.hpp"
#include "hsc/model.hpp"
#include "hsc/moo.hpp"
#include "hsc/topsis.hpp"

namespace hsc::report {

using Json = nlohmann::ordered_json;

std::uint64_t fnv1a(const std::string& bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t v);

// Hash over the relative names and contents of every regular file of a
// bundle, visited in sorted order.
std::string bundle_hash(const std::filesystem::path& dir);

std::string demand_csv(const Scenario& s, const DemandSurface& d);
std::string water_csv(const Scenario& s, const Kpi* kpi = nullptr);
std::string energy_csv(const Scenario& s);
// Nonzero variables by name.
std::string solution_csv(const HscModel& model, const std::vector<double>& x);

Json kpi_json(const Scenario& s, const Kpi& k, SolveStatus status, ObjectiveKind objective,
              double solver_objective);
std::string pareto_csv(const ParetoFront& front, const RankingResult& ranking);
Json ranking_json(const ParetoFront& front, const RankingResult& ranking,
                  const std::vector<std::string>& criteria);

// Cost-GHG and cost-risk projections side by side, compromise highlighted.
std::string pareto_svg(const ParetoFront& front, const RankingResult& ranking);
// Monthly demand per grid of the first period.
std::string profile_svg(const Scenario& s, const DemandSurface& d);

// Collects every file a command writes so the manifest can list them.
class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path dir);
  void write(const std::string& name, const std::string& content);
  void write(const std::string& name, const Json& content);
  const std::vector<std::string>& files() const { return files_; }
  const std::filesystem::path& path() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> files_;
};

struct ManifestInfo {
  std::filesystem::path scenario;
  std::string command;
  Json options = Json::object();
  Json solver = Json::object();
  bool timestamps = false;
  std::string started;
  std::string finished;
};

Json manifest_json(const ManifestInfo& info, const std::vector<std::string>& files);

// Writes manifest.json listing itself and every earlier file.
void write_manifest(OutputDir& out, ManifestInfo info);

std::string utc_now();

}  // namespace hsc::report

#endif  // HSC_REPORT_HPP_
