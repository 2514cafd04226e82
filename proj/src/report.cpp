#include "hsc/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "hsc/error.hpp"
#include "hsc/resources.hpp"
#include "table_io.hpp"

namespace hsc::report {

namespace {

using io::format_number;

Json number(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : "-inf";
}

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string read_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Axis {
  double lo = 0.0, hi = 1.0;
  double px_lo = 0.0, px_hi = 1.0;
  double map(double v) const {
    return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo);
  }
};

Axis fit(const std::vector<double>& values, double px_lo, double px_hi) {
  Axis a;
  a.px_lo = px_lo;
  a.px_hi = px_hi;
  if (values.empty()) return a;
  a.lo = *std::min_element(values.begin(), values.end());
  a.hi = *std::max_element(values.begin(), values.end());
  const double pad = a.hi > a.lo ? 0.05 * (a.hi - a.lo) : std::max(1e-9, 0.05 * std::abs(a.lo));
  a.lo -= pad;
  a.hi += pad;
  return a;
}

void panel(std::ostringstream& svg, double x0, const std::string& ylabel,
           const std::vector<double>& xs, const std::vector<double>& ys, std::size_t marked) {
  const double w = 360, h = 300, left = 60, bottom = 40, top = 20;
  const Axis ax = fit(xs, x0 + left, x0 + w - 10);
  const Axis ay = fit(ys, h - bottom, top);
  svg << "<g>\n";
  svg << "<rect x=\"" << x0 + left << "\" y=\"" << top << "\" width=\"" << w - left - 10
      << "\" height=\"" << h - bottom - top << "\" fill=\"none\" stroke=\"#444\"/>\n";
  svg << "<text x=\"" << x0 + left + (w - left) / 2 << "\" y=\"" << h - 8
      << "\" text-anchor=\"middle\" font-size=\"12\">cost (kEUR/day)</text>\n";
  svg << "<text x=\"" << x0 + 14 << "\" y=\"" << h / 2 << "\" transform=\"rotate(-90 "
      << x0 + 14 << " " << h / 2 << ")\" text-anchor=\"middle\" font-size=\"12\">" << ylabel
      << "</text>\n";
  for (double v : {ax.lo, ax.hi}) {
    svg << "<text x=\"" << fixed(ax.map(v), 1) << "\" y=\"" << h - bottom + 14
        << "\" text-anchor=\"middle\" font-size=\"10\">" << fixed(v, 3) << "</text>\n";
  }
  for (double v : {ay.lo, ay.hi}) {
    svg << "<text x=\"" << x0 + left - 4 << "\" y=\"" << fixed(ay.map(v), 1)
        << "\" text-anchor=\"end\" font-size=\"10\">" << fixed(v, 3) << "</text>\n";
  }
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const bool mark = k == marked;
    svg << "<circle cx=\"" << fixed(ax.map(xs[k])) << "\" cy=\"" << fixed(ay.map(ys[k]))
        << "\" r=\"" << (mark ? 6 : 3.5) << "\" fill=\"" << (mark ? "#d62728" : "#1f77b4")
        << "\"/>\n";
  }
  svg << "</g>\n";
}

}  // namespace

std::uint64_t fnv1a(const std::string& bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string bundle_hash(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw IoError("not a scenario directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files.push_back(fs::relative(e.path(), dir));
  }
  std::sort(files.begin(), files.end());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& f : files) {
    h = fnv1a(f.generic_string() + '\0', h);
    h = fnv1a(read_bytes(dir / f) + '\0', h);
  }
  return hex64(h);
}

std::string demand_csv(const Scenario& s, const DemandSurface& d) {
  std::ostringstream os;
  os << "grid,year,month,kg_per_day\n";
  for (std::size_t g = 0; g < s.sets.grids.size(); ++g) {
    for (std::size_t t = 0; t < s.sets.periods.size(); ++t) {
      for (std::size_t m = 0; m < s.sets.months.size(); ++m) {
        os << s.sets.grids[g] << ',' << s.sets.periods[t] << ',' << s.sets.months[m] << ','
           << format_number(d.dh2(g, t, m)) << '\n';
      }
    }
  }
  return os.str();
}

std::string water_csv(const Scenario& s, const Kpi* kpi) {
  std::ostringstream os;
  os << "grid,year,month,intermediate_index,final_index,cap";
  if (kpi) os << ",m3_per_day,weighted";
  os << '\n';
  for (std::size_t g = 0; g < s.sets.grids.size(); ++g) {
    for (std::size_t t = 0; t < s.sets.periods.size(); ++t) {
      for (std::size_t m = 0; m < s.sets.months.size(); ++m) {
        const int month = s.sets.months[m];
        const WaterIndex wi = water_vulnerability(s, g, month);
        os << s.sets.grids[g] << ',' << s.sets.periods[t] << ',' << month << ','
           << format_number(wi.intermediate) << ',' << format_number(wi.final) << ','
           << format_number(water_bounds(s, g, t, month).hi);
        if (kpi) {
          for (const WaterCell& c : kpi->water) {
            if (c.grid == g && c.period == t && c.month == m) {
              os << ',' << format_number(c.m3_per_day) << ',' << format_number(c.weighted);
            }
          }
        }
        os << '\n';
      }
    }
  }
  return os.str();
}

std::string energy_csv(const Scenario& s) {
  std::ostringstream os;
  os << "grid,year,month,source,kwh_per_kw_day,kwh_day_at_capacity\n";
  for (std::size_t g = 0; g < s.sets.grids.size(); ++g) {
    for (std::size_t t = 0; t < s.sets.periods.size(); ++t) {
      for (int month : s.sets.months) {
        for (std::size_t e = 0; e < s.sets.sources.size(); ++e) {
          os << s.sets.grids[g] << ',' << s.sets.periods[t] << ',' << month << ','
             << s.sets.sources[e] << ',' << format_number(availability_per_kw(s, g, t, month, e))
             << ',' << format_number(renewable_availability(s, g, t, month, e)) << '\n';
        }
      }
    }
  }
  return os.str();
}

std::string solution_csv(const HscModel& model, const std::vector<double>& x) {
  std::ostringstream os;
  os << "variable,value\n";
  for (std::size_t j = 0; j < model.inst.vars.size(); ++j) {
    double v = x[j];
    if (model.inst.vars[j].is_integer()) v = std::round(v);
    if (std::abs(v) < 1e-9) continue;
    // Names carry commas inside their brackets.
    os << '"' << model.inst.vars[j].name << "\"," << format_number(v) << '\n';
  }
  return os.str();
}

Json kpi_json(const Scenario& s, const Kpi& k, SolveStatus status, ObjectiveKind objective,
              double solver_objective) {
  Json j;
  j["status"] = to_string(status);
  j["objective"] = to_string(objective);
  j["solver_objective"] = solver_objective;
  j["tdc_keur_per_day"] = k.tdc;
  j["lcoh_eur_per_kg"] = k.lcoh;
  j["ghg_t_per_day"] = k.ghg;
  j["risk"] = k.risk;
  j["capex_keur_per_day"] = k.capex;
  j["opex_keur_per_day"] = k.opex;
  Json sub = Json::object();
  for (int i = 0; i < kSubsystemCount; ++i) {
    sub[subsystem_name(static_cast<Subsystem>(i))] = {
        {"cost_keur_per_day", k.cost_by_subsystem[i]},
        {"cost_share", k.cost_share[i]},
        {"ghg_t_per_day", k.ghg_by_subsystem[i]},
        {"risk", k.risk_by_subsystem[i]}};
  }
  j["subsystems"] = sub;
  j["transport_ghg_t_per_day"] = k.transport_ghg;
  j["delivered_kg"] = k.delivered_kg;
  j["produced_kg"] = k.produced_kg;
  j["electrolyzer_hours_per_month"] = k.electrolyzer_hours;
  Json water = Json::array();
  for (const WaterCell& c : k.water) {
    water.push_back({{"grid", s.sets.grids[c.grid]},
                     {"year", s.sets.periods[c.period]},
                     {"month", s.sets.months[c.month]},
                     {"m3_per_day", c.m3_per_day},
                     {"weighted", c.weighted},
                     {"cap", number(c.cap)}});
  }
  j["water"] = water;
  return j;
}

std::string pareto_csv(const ParetoFront& front, const RankingResult& ranking) {
  std::ostringstream os;
  os << "cost,ghg,risk,lcoh,eps_ghg,eps_risk,rank,score\n";
  for (std::size_t k = 0; k < front.points.size(); ++k) {
    const ParetoPoint& p = front.points[k];
    const RankedAlternative* r =
        k < ranking.alternatives.size() ? &ranking.alternatives[k] : nullptr;
    os << format_number(p.cost) << ',' << format_number(p.ghg) << ',' << format_number(p.risk)
       << ',' << format_number(p.lcoh) << ',' << format_number(p.eps_ghg) << ','
       << format_number(p.eps_risk) << ',' << (r ? std::to_string(r->rank) : "") << ','
       << (r ? format_number(r->score) : "") << '\n';
  }
  return os.str();
}

Json ranking_json(const ParetoFront& front, const RankingResult& ranking,
                  const std::vector<std::string>& criteria) {
  Json j;
  j["method"] = ranking.method == RankingMethod::kModified ? "m-topsis" : "topsis";
  j["criteria"] = criteria;
  j["weights"] = ranking.weights;
  j["warnings"] = ranking.warnings;
  j["utopia"] = {number(front.utopia[0]), number(front.utopia[1]), number(front.utopia[2])};
  j["nadir"] = {number(front.nadir[0]), number(front.nadir[1]), number(front.nadir[2])};
  Json payoff = Json::array();
  for (const Anchor& a : front.payoff) {
    payoff.push_back({{"primary", to_string(a.primary)}, {"cost", a.cost}, {"ghg", a.ghg},
                      {"risk", a.risk}});
  }
  j["payoff"] = payoff;
  Json alts = Json::array();
  for (std::size_t k = 0; k < ranking.alternatives.size(); ++k) {
    const RankedAlternative& a = ranking.alternatives[k];
    Json row = {{"index", k}};
    if (k < front.points.size()) {
      row["cost"] = front.points[k].cost;
      row["ghg"] = front.points[k].ghg;
      row["risk"] = front.points[k].risk;
      row["lcoh"] = front.points[k].lcoh;
    }
    row["normalized"] = a.normalized;
    row["weighted"] = a.weighted;
    row["d_plus"] = a.d_plus;
    row["d_minus"] = a.d_minus;
    row["score"] = a.score;
    row["rank"] = a.rank;
    alts.push_back(row);
  }
  j["alternatives"] = alts;
  if (!ranking.order.empty()) j["compromise"] = ranking.best();
  return j;
}

std::string pareto_svg(const ParetoFront& front, const RankingResult& ranking) {
  std::vector<double> cost, ghg, risk;
  for (const ParetoPoint& p : front.points) {
    cost.push_back(p.cost);
    ghg.push_back(p.ghg);
    risk.push_back(p.risk);
  }
  const std::size_t marked = ranking.order.empty() ? cost.size() : ranking.best();
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"300\" "
         "font-family=\"sans-serif\">\n";
  panel(svg, 0, "GHG (t CO2e/day)", cost, ghg, marked);
  panel(svg, 360, "risk index", cost, risk, marked);
  svg << "</svg>\n";
  return svg.str();
}

std::string profile_svg(const Scenario& s, const DemandSurface& d) {
  const std::size_t nm = s.sets.months.size();
  std::vector<double> all;
  for (std::size_t g = 0; g < s.sets.grids.size(); ++g)
    for (std::size_t m = 0; m < nm; ++m) all.push_back(d.dh2(g, 0, m));
  all.push_back(0.0);
  std::vector<double> xs;
  for (int month : s.sets.months) xs.push_back(month);
  const Axis ax = fit(xs, 60, 560);
  const Axis ay = fit(all, 260, 20);
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"300\" "
         "font-family=\"sans-serif\">\n";
  svg << "<rect x=\"60\" y=\"20\" width=\"500\" height=\"240\" fill=\"none\" stroke=\"#444\"/>\n";
  svg << "<text x=\"310\" y=\"292\" text-anchor=\"middle\" font-size=\"12\">month</text>\n";
  svg << "<text x=\"14\" y=\"150\" transform=\"rotate(-90 14 150)\" text-anchor=\"middle\" "
         "font-size=\"12\">kg/day</text>\n";
  for (std::size_t g = 0; g < s.sets.grids.size(); ++g) {
    svg << "<polyline fill=\"none\" stroke=\"hsl(" << (g * 47) % 360
        << ",60%,45%)\" points=\"";
    for (std::size_t m = 0; m < nm; ++m) {
      svg << (m ? " " : "") << fixed(ax.map(xs[m])) << ',' << fixed(ay.map(d.dh2(g, 0, m)));
    }
    svg << "\"><title>" << s.sets.grids[g] << "</title></polyline>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

OutputDir::OutputDir(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec || !std::filesystem::is_directory(dir_)) {
    throw IoError("cannot create output directory " + dir_.string());
  }
}

void OutputDir::write(const std::string& name, const std::string& content) {
  const auto path = dir_ / name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  out.close();
  if (!out) throw IoError("cannot write " + path.string());
  if (std::find(files_.begin(), files_.end(), name) == files_.end()) files_.push_back(name);
}

void OutputDir::write(const std::string& name, const Json& content) {
  write(name, content.dump(2) + "\n");
}

Json manifest_json(const ManifestInfo& info, const std::vector<std::string>& files) {
  Json j;
  // The rank command reads a single CSV rather than a bundle.
  const std::string hash = std::filesystem::is_regular_file(info.scenario)
                               ? hex64(fnv1a(read_bytes(info.scenario)))
                               : bundle_hash(info.scenario);
  j["scenario"] = {{"path", info.scenario.generic_string()}, {"fnv1a", hash}};
  j["command"] = info.command;
  j["options"] = info.options;
  j["solver"] = info.solver;
  if (info.timestamps) {
    j["started"] = info.started;
    j["finished"] = info.finished;
  } else {
    j["started"] = nullptr;
    j["finished"] = nullptr;
  }
  j["outputs"] = files;
  return j;
}

void write_manifest(OutputDir& out, ManifestInfo info) {
  if (info.timestamps) info.finished = utc_now();
  std::vector<std::string> files = out.files();
  files.push_back("manifest.json");
  out.write("manifest.json", manifest_json(info, files));
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace hsc::report
