#include "hsc/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <omp.h>

#include "CLI11.hpp"

#include "hsc/error.hpp"
#include "hsc/kpi.hpp"
#include "hsc/model.hpp"
#include "hsc/moo.hpp"
#include "hsc/mps.hpp"
#include "hsc/report.hpp"
#include "hsc/solver.hpp"
#include "hsc/topsis.hpp"
#include "table_io.hpp"

namespace hsc::cli {

namespace fs = std::filesystem;

namespace {

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
}

// Loads, applies overrides and validates; prints violations.
std::optional<Scenario> load_valid(const fs::path& dir, const ScenarioOverrides& o,
                                   std::ostream& err) {
  Scenario s = load_scenario(dir);
  apply(o, s);
  const ValidationReport report = validate_scenario(s);
  if (report.empty()) return s;
  for (const Violation& v : report) err << v.rule << ": " << v.message << '\n';
  return std::nullopt;
}

report::Json overrides_json(const ScenarioOverrides& o) {
  report::Json j = report::Json::object();
  if (o.retrofit) j["retrofit"] = *o.retrofit;
  if (o.water) {
    j["water"] = *o.water == WaterRestriction::kOff      ? "off"
                 : *o.water == WaterRestriction::kCap0_1 ? "0.1"
                                                         : "0.05";
  }
  return j;
}

report::Json solver_json(const BnbOptions& b) {
  return {{"abs_gap", b.abs_gap},        {"rel_gap", b.rel_gap},
          {"node_limit", b.node_limit},  {"time_limit_s", b.time_limit_s},
          {"dive", b.dive},              {"integrality", b.tol.integrality}};
}

std::vector<std::string> criteria_names(bool bi_objective) {
  if (bi_objective) return {"cost", "ghg"};
  return {"cost", "ghg", "risk"};
}

std::vector<std::vector<double>> criteria_rows(const std::vector<ParetoPoint>& points,
                                               bool bi_objective) {
  std::vector<std::vector<double>> rows;
  for (const ParetoPoint& p : points) {
    if (bi_objective) {
      rows.push_back({p.cost, p.ghg});
    } else {
      rows.push_back({p.cost, p.ghg, p.risk});
    }
  }
  return rows;
}

std::vector<double> ranking_weights(const std::vector<double>& w, bool bi_objective) {
  if (!bi_objective) {
    if (w.size() != 3) throw ConfigError("expected three weights (cost, ghg, risk)");
    return w;
  }
  if (w.size() < 2) throw ConfigError("expected at least two weights (cost, ghg)");
  return {w[0], w[1]};
}

void print_infeasible(const MilpInstance& inst, const MilpSolution& sol, std::ostream& err) {
  err << "no feasible solution (" << to_string(sol.status) << ")\n";
  if (sol.infeasible_rows.empty()) {
    err << "the LP relaxation is feasible; integer requirements cannot be met\n";
    return;
  }
  err << "infeasibility certificate rows:\n";
  for (int r : sol.infeasible_rows) err << "  " << inst.rows[r].name << '\n';
}

}  // namespace

WaterRestriction parse_water(const std::string& text) {
  if (text == "off") return WaterRestriction::kOff;
  if (text == "0.1") return WaterRestriction::kCap0_1;
  if (text == "0.05") return WaterRestriction::kCap0_05;
  throw ConfigError("water restriction must be off, 0.1 or 0.05, got '" + text + "'");
}

std::vector<double> parse_weights(const std::string& text) {
  std::vector<double> out;
  for (const std::string& part : io::split(text, ',')) {
    out.push_back(io::parse_number(part, "--weights", 0, 0));
  }
  return out;
}

std::pair<std::size_t, std::size_t> parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw ConfigError("grid must look like NxM, got '" + text + "'");
  const double n = io::parse_number(text.substr(0, x), "--grid", 0, 0);
  const double m = io::parse_number(text.substr(x + 1), "--grid", 0, 0);
  if (n < 1 || m < 1 || n != std::floor(n) || m != std::floor(m)) {
    throw ConfigError("grid counts must be positive integers");
  }
  return {static_cast<std::size_t>(n), static_cast<std::size_t>(m)};
}

void apply(const ScenarioOverrides& o, Scenario& s) {
  if (o.retrofit) s.options.retrofit = *o.retrofit;
  if (o.water) {
    s.options.water = *o.water;
    s.water.max_cw = max_cw_for(*o.water);
  }
}

int cmd_validate(const fs::path& scenario, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario s = load_scenario(scenario);
    const ValidationReport report = validate_scenario(s);
    for (const Violation& v : report) out << v.rule << ": " << v.message << '\n';
    if (!report.empty()) {
      out << report.size() << " violation(s)\n";
      return static_cast<int>(kValidation);
    }
    out << "valid: " << s.sets.grids.size() << " grids, " << s.sets.periods.size()
        << " periods, " << s.sets.months.size() << " months\n";
    return static_cast<int>(kOk);
  });
}

int cmd_optimize(const OptimizeArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    report::ManifestInfo info;
    info.timestamps = a.timestamps;
    if (a.timestamps) info.started = report::utc_now();
    auto s = load_valid(a.scenario, a.overrides, err);
    if (!s) return static_cast<int>(kValidation);
    const HscModel model = assemble(*s, a.objective);
    out << "instance: " << model.inst.num_vars() << " variables (" << model.inst.num_integers()
        << " integer), " << model.inst.num_rows() << " rows\n";
    const MilpSolution sol = solve_milp(model.inst, a.bnb);
    if (sol.x.empty()) {
      print_infeasible(model.inst, sol, err);
      return static_cast<int>(kInfeasible);
    }
    const Kpi kpi = compute_kpi(model, *s, sol.x);
    report::OutputDir dir(a.out);
    dir.write("solution.csv", report::solution_csv(model, sol.x));
    dir.write("kpi.json", report::kpi_json(*s, kpi, sol.status, a.objective, sol.objective));
    dir.write("water_profile.csv", report::water_csv(*s, &kpi));
    info.scenario = a.scenario;
    info.command = "optimize";
    info.options = overrides_json(a.overrides);
    info.options["objective"] = to_string(a.objective);
    info.solver = solver_json(a.bnb);
    report::write_manifest(dir, info);
    out << "status " << to_string(sol.status) << ", objective " << io::format_number(sol.objective)
        << ", nodes " << sol.nodes << '\n';
    out << "TDC " << io::format_number(kpi.tdc) << " kEUR/day, LCOH "
        << io::format_number(kpi.lcoh) << " EUR/kg, GHG " << io::format_number(kpi.ghg)
        << " t/day, risk " << io::format_number(kpi.risk) << '\n';
    return static_cast<int>(kOk);
  });
}

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    report::ManifestInfo info;
    info.timestamps = a.timestamps;
    if (a.timestamps) info.started = report::utc_now();
    auto s = load_valid(a.scenario, a.overrides, err);
    if (!s) return static_cast<int>(kValidation);
    const auto weights = ranking_weights(a.weights, a.bi_objective);
    SweepOptions opts;
    opts.bnb = a.bnb;
    const ParetoFront front = epsilon_sweep(*s, a.n_ghg, a.n_risk, opts);
    if (front.points.empty()) throw InfeasibleError("no feasible sweep cell");
    const RankingResult ranking =
        mtopsis_rank(criteria_rows(front.points, a.bi_objective), weights,
                     a.classic ? RankingMethod::kClassic : RankingMethod::kModified);
    for (const std::string& w : ranking.warnings) err << "warning: " << w << '\n';
    report::OutputDir dir(a.out);
    dir.write("pareto.csv", report::pareto_csv(front, ranking));
    dir.write("ranking.json", report::ranking_json(front, ranking, criteria_names(a.bi_objective)));
    dir.write("pareto.svg", report::pareto_svg(front, ranking));
    info.scenario = a.scenario;
    info.command = "sweep";
    info.options = overrides_json(a.overrides);
    info.options["grid"] = std::to_string(a.n_ghg) + "x" + std::to_string(a.n_risk);
    info.options["weights"] = a.weights;
    info.options["method"] = a.classic ? "topsis" : "m-topsis";
    info.options["bi_objective"] = a.bi_objective;
    info.solver = solver_json(a.bnb);
    report::write_manifest(dir, info);
    const ParetoPoint& best = front.points[ranking.best()];
    out << front.points.size() << " nondominated points from " << front.cells.size()
        << " cells\ncompromise: cost " << io::format_number(best.cost) << " kEUR/day, ghg "
        << io::format_number(best.ghg) << " t/day, risk " << io::format_number(best.risk) << '\n';
    return static_cast<int>(kOk);
  });
}

int cmd_rank(const RankArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::ifstream in(a.input);
    if (!in) throw IoError("cannot read " + a.input.string());
    std::string line;
    if (!std::getline(in, line)) throw ParseError(a.input.string(), 1, 0, "empty file");
    const auto header = io::split(line, ',');
    auto column = [&](const std::string& name) {
      for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == name) return c;
      }
      throw ParseError(a.input.string(), 1, 0, "missing column '" + name + "'");
    };
    const auto names = criteria_names(a.bi_objective);
    std::vector<std::size_t> cols;
    for (const auto& n : names) cols.push_back(column(n));
    ParetoFront front;
    std::vector<std::vector<double>> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      const auto cells = io::split(line, ',');
      std::vector<double> row;
      for (std::size_t c : cols) {
        if (c >= cells.size()) throw ParseError(a.input.string(), lineno, 0, "short row");
        row.push_back(io::parse_number(cells[c], a.input.string(), lineno, static_cast<int>(c) + 1));
      }
      ParetoPoint p;
      p.cost = row[0];
      p.ghg = row[1];
      p.risk = a.bi_objective ? 0.0 : row[2];
      front.points.push_back(p);
      rows.push_back(std::move(row));
    }
    const RankingResult ranking =
        mtopsis_rank(rows, ranking_weights(a.weights, a.bi_objective),
                     a.classic ? RankingMethod::kClassic : RankingMethod::kModified);
    for (const std::string& w : ranking.warnings) err << "warning: " << w << '\n';
    report::OutputDir dir(a.out);
    dir.write("ranking.json", report::ranking_json(front, ranking, names));
    report::ManifestInfo info;
    info.scenario = a.input;
    info.command = "rank";
    info.options = {{"weights", a.weights}, {"classic", a.classic}, {"bi_objective", a.bi_objective}};
    report::write_manifest(dir, info);
    for (std::size_t k = 0; k < ranking.order.size(); ++k) {
      const auto& alt = ranking.alternatives[ranking.order[k]];
      out << alt.rank << ' ' << ranking.order[k] << ' ' << io::format_number(alt.score) << '\n';
    }
    return static_cast<int>(kOk);
  });
}

int cmd_report(const fs::path& scenario, const fs::path& dir_path, bool timestamps,
               std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    report::ManifestInfo info;
    info.timestamps = timestamps;
    if (timestamps) info.started = report::utc_now();
    auto s = load_valid(scenario, {}, err);
    if (!s) return static_cast<int>(kValidation);
    const DemandSurface d = demand_table(*s);
    report::OutputDir dir(dir_path);
    dir.write("demand_surface.csv", report::demand_csv(*s, d));
    dir.write("water_profile.csv", report::water_csv(*s));
    dir.write("energy_availability.csv", report::energy_csv(*s));
    dir.write("demand_profile.svg", report::profile_svg(*s, d));
    info.scenario = scenario;
    info.command = "report";
    report::write_manifest(dir, info);
    out << "wrote " << dir.files().size() << " files to " << dir.path().string() << '\n';
    return static_cast<int>(kOk);
  });
}

int cmd_export_mps(const ExportArgs& a, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto s = load_valid(a.scenario, a.overrides, err);
    if (!s) return static_cast<int>(kValidation);
    const HscModel model = assemble(*s, a.objective);
    export_mps(model.inst, a.out);
    report::ManifestInfo info;
    info.scenario = a.scenario;
    info.command = "export-mps";
    info.options = overrides_json(a.overrides);
    info.options["objective"] = to_string(a.objective);
    report::OutputDir dir(a.out.has_parent_path() ? a.out.parent_path() : fs::path("."));
    const std::string manifest_name = a.out.filename().string() + ".manifest.json";
    std::vector<std::string> files{a.out.filename().string(), manifest_name};
    dir.write(manifest_name, report::manifest_json(info, files));
    out << "wrote " << a.out.string() << " (" << model.inst.num_vars() << " columns, "
        << model.inst.num_rows() << " rows)\n";
    return static_cast<int>(kOk);
  });
}

int threads_from_env() {
  const char* v = std::getenv("HSCOPT_THREADS");
  if (!v) return 0;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (end == v || *end != '\0' || n < 1) return 0;
  return static_cast<int>(n);
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hydrogen supply chain optimizer"};
  app.require_subcommand(1);
  int threads = threads_from_env();
  app.add_option("--threads", threads, "parallel solves (default: HSCOPT_THREADS or all cores)");

  std::string scenario;
  std::string out_dir = "out";
  std::string objective = "cost";
  std::string water;
  bool retrofit = false;
  bool no_retrofit = false;
  bool timestamps = false;
  bool log = false;
  long node_limit = BnbOptions{}.node_limit;
  double time_limit = BnbOptions{}.time_limit_s;

  auto scenario_opts = [&](CLI::App* sub) {
    sub->add_option("scenario", scenario, "scenario bundle directory")->required();
  };
  auto model_opts = [&](CLI::App* sub) {
    sub->add_option("--objective", objective, "cost, ghg or risk")
        ->check(CLI::IsMember({"cost", "ghg", "risk"}));
    sub->add_flag("--retrofit", retrofit, "retrofitted hydrogen trucks");
    sub->add_flag("--no-retrofit", no_retrofit, "conventional trucks");
    sub->add_option("--water", water, "water restriction: off, 0.1 or 0.05")
        ->check(CLI::IsMember({"off", "0.1", "0.05"}));
  };
  auto solver_opts = [&](CLI::App* sub) {
    sub->add_option("--node-limit", node_limit, "branch-and-bound node limit");
    sub->add_option("--time-limit", time_limit, "seconds per solve");
    sub->add_flag("--log", log, "solver progress on stderr");
    sub->add_flag("--timestamps", timestamps, "record start/finish times in the manifest");
    sub->add_option("--out", out_dir, "output directory");
  };

  auto* validate = app.add_subcommand("validate", "check a scenario bundle");
  scenario_opts(validate);

  auto* optimize = app.add_subcommand("optimize", "single-objective solve");
  scenario_opts(optimize);
  model_opts(optimize);
  solver_opts(optimize);

  std::string grid = "4x4";
  std::string weights = "1,1,1";
  bool classic = false;
  bool bi_objective = false;
  auto* sweep = app.add_subcommand("sweep", "epsilon-constraint Pareto front and ranking");
  scenario_opts(sweep);
  model_opts(sweep);
  solver_opts(sweep);
  sweep->add_option("--grid", grid, "epsilon steps NxM for (ghg, risk)");
  sweep->add_option("--weights", weights, "ranking weights cost,ghg,risk");
  sweep->add_flag("--classic", classic, "closeness-coefficient TOPSIS");
  sweep->add_flag("--bi-objective", bi_objective, "rank on cost and ghg only");

  std::string input;
  auto* rank = app.add_subcommand("rank", "rank alternatives from a CSV");
  rank->add_option("input", input, "CSV with cost, ghg and risk columns")->required();
  rank->add_option("--weights", weights, "ranking weights cost,ghg,risk");
  rank->add_flag("--classic", classic, "closeness-coefficient TOPSIS");
  rank->add_flag("--bi-objective", bi_objective, "rank on cost and ghg only");
  rank->add_option("--out", out_dir, "output directory");

  auto* rep = app.add_subcommand("report", "demand, water and energy profiles");
  scenario_opts(rep);
  rep->add_option("--out", out_dir, "output directory");
  rep->add_flag("--timestamps", timestamps, "record start/finish times in the manifest");

  std::string mps_path;
  auto* exp = app.add_subcommand("export-mps", "write the MILP in MPS format");
  scenario_opts(exp);
  model_opts(exp);
  exp->add_option("output", mps_path, "MPS file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? static_cast<int>(kOk) : static_cast<int>(kValidation);
  }
  if (threads > 0) omp_set_num_threads(threads);

  ScenarioOverrides overrides;
  if (retrofit) overrides.retrofit = true;
  if (no_retrofit) overrides.retrofit = false;
  BnbOptions bnb;
  bnb.node_limit = node_limit;
  bnb.time_limit_s = time_limit;
  bnb.log = log;

  return guarded(err, [&] {
    if (!water.empty()) overrides.water = parse_water(water);
    if (*validate) return cmd_validate(scenario, out, err);
    if (*optimize) {
      OptimizeArgs a;
      a.scenario = scenario;
      a.out = out_dir;
      a.objective = parse_objective(objective);
      a.overrides = overrides;
      a.bnb = bnb;
      a.timestamps = timestamps;
      return cmd_optimize(a, out, err);
    }
    if (*sweep) {
      SweepArgs a;
      a.scenario = scenario;
      a.out = out_dir;
      std::tie(a.n_ghg, a.n_risk) = parse_grid(grid);
      a.weights = parse_weights(weights);
      a.classic = classic;
      a.bi_objective = bi_objective;
      a.overrides = overrides;
      a.bnb = bnb;
      a.timestamps = timestamps;
      return cmd_sweep(a, out, err);
    }
    if (*rank) {
      RankArgs a;
      a.input = input;
      a.out = out_dir;
      a.weights = parse_weights(weights);
      a.classic = classic;
      a.bi_objective = bi_objective;
      return cmd_rank(a, out, err);
    }
    if (*rep) return cmd_report(scenario, out_dir, timestamps, out, err);
    ExportArgs a;
    a.scenario = scenario;
    a.out = mps_path;
    a.objective = parse_objective(objective);
    a.overrides = overrides;
    return cmd_export_mps(a, out, err);
  });
}

}  // namespace hsc::cli
