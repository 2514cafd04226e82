// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "desk_scenarios.hpp"
#include "hsc/demand.hpp"
#include "hsc/kpi.hpp"
#include "hsc/model.hpp"
#include "hsc/moo.hpp"
#include "hsc/mps.hpp"
#include "hsc/resources.hpp"
#include "hsc/scenario.hpp"
#include "hsc/solver.hpp"
#include "hsc/topsis.hpp"
#include "support/bundle.hpp"
#include "support/dense_lp.hpp"
#include "support/random_lp.hpp"

using namespace hsc;
using hsc::testing::kData;

namespace {

// Collects failures; the first few are printed under the criterion line.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    if (failures_.size() < 8) failures_.push_back(what);
    ++failed_;
  }
  bool ok() const { return failed_ == 0 && checks_ > 0; }
  std::string summary() const {
    std::ostringstream os;
    os << checks_ - failed_ << "/" << checks_ << " checks";
    return os.str();
  }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  int checks_ = 0;
  int failed_ = 0;
  std::vector<std::string> failures_;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// Water vulnerability: every printed cell of the island table.
void water_table(Tally& t) {
  const Scenario s = load_scenario(kData / "corsica");
  // (summer, winter) final index per grid; grid 1 is the reconstructed row.
  const double expect[9][2] = {{6, 3},   {2.2, 2.2}, {4, 2},   {6, 3}, {1.4, 1.4},
                               {2.4, 1.2}, {6, 3},   {1.8, 1.8}, {1, 1}};
  for (std::size_t g = 0; g < 9; ++g) {
    const double summer = water_vulnerability(s, g, 7).final;
    const double winter = water_vulnerability(s, g, 1).final;
    t.expect(std::abs(summer - expect[g][0]) <= 1e-12,
             "grid " + std::to_string(g + 1) + " summer " + num(summer));
    t.expect(std::abs(winter - expect[g][1]) <= 1e-12,
             "grid " + std::to_string(g + 1) + " winter " + num(winter));
  }
}

// Demand calibration against the island's per-grid annual means (kg/day).
void demand_table_check(Tally& t) {
  const Scenario s = load_scenario(kData / "corsica");
  const double cells[6][9] = {
      {382, 429, 370, 344, 260, 552, 647, 332, 327},
      {558, 626, 541, 502, 380, 806, 945, 484, 477},
      {854, 958, 827, 768, 582, 1233, 1446, 740, 729},
      {1282, 1439, 1242, 1153, 873, 1852, 2171, 1112, 1095},
      {1925, 2161, 1866, 1732, 1312, 2781, 3261, 1670, 1645},
      {2892, 3246, 2803, 2601, 1970, 4178, 4899, 2509, 2470}};
  const double totals[6] = {3643, 5319, 8137, 12219, 18353, 27568};
  for (std::size_t p = 0; p < 6; ++p) {
    for (std::size_t g = 0; g < 9; ++g) {
      const double v = annual_mean_demand(s, g, p);
      t.expect(std::abs(v - cells[p][g]) <= 0.05 * cells[p][g],
               "cell g" + std::to_string(g + 1) + " " + std::to_string(s.sets.periods[p]) + " " +
                   num(v));
    }
    const double total = annual_mean_total(s, p);
    t.expect(std::abs(total - totals[p]) <= 0.005 * totals[p],
             "total " + std::to_string(s.sets.periods[p]) + " " + num(total));
  }
}

void oracle_equivalence(Tally& t) {
  for (int k = 0; k < 20; ++k) {
    char name[8];
    std::snprintf(name, sizeof(name), "%02d", k);
    const Scenario s = load_scenario(kData / "desk" / "oracle" / name);
    const HscModel m = assemble(s, ObjectiveKind::kCost);
    t.expect(integer_domain_product(m.inst) <= 1e5, std::string(name) + " domain too large");
    const MilpSolution bb = solve_milp(m.inst);
    const MilpSolution brute = enumerate_oracle(m.inst, 1e5);
    t.expect(bb.status == brute.status, std::string(name) + " status differs");
    if (bb.status == SolveStatus::kOptimal && brute.status == SolveStatus::kOptimal) {
      t.expect(rel(bb.objective, brute.objective) <= 1e-6,
               std::string(name) + " " + num(bb.objective) + " vs " + num(brute.objective));
    }
  }
}

void lp_correctness(Tally& t) {
  const hsc::testing::DenseReference ref;
  for (std::uint32_t seed = 1001; seed <= 1100; ++seed) {
    hsc::testing::RandomLpShape shape;
    shape.rows = 5 + static_cast<int>(seed % 19);
    shape.cols = 6 + static_cast<int>(seed % 29);
    shape.infeasible = seed % 10 == 0;
    const MilpInstance inst = hsc::testing::random_lp(seed, shape);
    const LpSolution s = solve_lp(inst);
    const auto r = ref.solve(inst);
    const std::string tag = "seed " + std::to_string(seed);
    if (shape.infeasible) {
      t.expect(s.status == SolveStatus::kInfeasible && r.status == hsc::testing::RefStatus::kInfeasible,
               tag + " infeasibility");
      continue;
    }
    t.expect(s.status == SolveStatus::kOptimal && r.status == hsc::testing::RefStatus::kOptimal,
             tag + " status");
    t.expect(rel(s.objective, r.objective) <= 1e-7,
             tag + " " + num(s.objective) + " vs " + num(r.objective));

    hsc::testing::RandomLpShape mixed = shape;
    mixed.integers = 3;
    const std::string text = to_mps(hsc::testing::random_lp(seed, mixed));
    t.expect(to_mps(parse_mps(text)) == text, tag + " mps round trip");
  }
  const std::string text = to_mps(assemble(desk::reference(), ObjectiveKind::kCost).inst);
  t.expect(to_mps(parse_mps(text)) == text, "reference mps round trip");
}

void pareto_properties(Tally& t) {
  const Scenario s = load_scenario(kData / "desk" / "reference");
  const ParetoFront f = epsilon_sweep(s, 4, 4);
  t.expect(f.cells.size() == 16, "cell count");
  t.expect(!f.points.empty(), "empty front");
  for (const ParetoPoint& a : f.points) {
    for (const ParetoPoint& b : f.points) {
      const bool le = a.cost <= b.cost && a.ghg <= b.ghg && a.risk <= b.risk;
      const bool lt = a.cost < b.cost || a.ghg < b.ghg || a.risk < b.risk;
      t.expect(!(le && lt), "dominated point in the front");
    }
  }
  const HscModel m = assemble(s, ObjectiveKind::kCost);
  for (const ParetoPoint& p : f.points) {
    const double ghg = m.evaluate(ObjectiveKind::kGhg, p.x);
    const double risk = m.evaluate(ObjectiveKind::kRisk, p.x);
    t.expect(ghg <= p.eps_ghg + 1e-6 * (1 + std::abs(p.eps_ghg)), "ghg above bound " + num(ghg));
    t.expect(risk <= p.eps_risk + 1e-6 * (1 + std::abs(p.eps_risk)), "risk above bound " + num(risk));
    t.expect(m.inst.max_violation(p.x) <= 1e-6, "row violation");
  }
  // Along each slice a looser bound never costs more.
  auto at = [&](std::size_t g, std::size_t r) -> const SweepCell& { return f.cells[g * 4 + r]; };
  for (std::size_t fixed = 0; fixed < 4; ++fixed) {
    double by_ghg = std::numeric_limits<double>::infinity();
    double by_risk = std::numeric_limits<double>::infinity();
    for (std::size_t step = 0; step < 4; ++step) {
      const SweepCell& a = at(step, fixed);
      if (a.status == SolveStatus::kOptimal) {
        t.expect(a.cost <= by_ghg * (1 + 1e-9), "cost rises along ghg slice");
        by_ghg = a.cost;
      }
      const SweepCell& b = at(fixed, step);
      if (b.status == SolveStatus::kOptimal) {
        t.expect(b.cost <= by_risk * (1 + 1e-9), "cost rises along risk slice");
        by_risk = b.cost;
      }
    }
  }
}

std::vector<std::vector<double>> random_matrix(std::mt19937& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(1.0, 100.0);
  std::vector<std::vector<double>> rows(n, std::vector<double>(3));
  for (auto& r : rows)
    for (double& v : r) v = u(rng);
  return rows;
}

void topsis_behavior(Tally& t) {
  const std::vector<std::vector<double>> anchors{
      {61.4, 22.0, 51.6}, {84.8, 16.6, 263.9}, {76.9, 21.3, 49.1}};
  t.expect(mtopsis_rank(anchors, {1, 1, 1}).best() == 0, "cost anchor not first");

  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> factor(1e-3, 1e3);
  std::uniform_real_distribution<double> w(0.1, 5.0);
  for (int round = 0; round < 50; ++round) {
    auto rows = random_matrix(rng, 7);
    const std::vector<double> weights{w(rng), w(rng), w(rng)};
    const auto before = mtopsis_rank(rows, weights).order;
    for (std::size_t c = 0; c < 3; ++c) {
      const double k = factor(rng);
      for (auto& r : rows) r[c] *= k;
    }
    t.expect(mtopsis_rank(rows, weights).order == before, "scaling changed the order");
  }
  std::uniform_real_distribution<double> shrink(0.5, 0.99);
  std::uniform_int_distribution<int> pick(0, 2);
  for (int round = 0; round < 100; ++round) {
    auto rows = random_matrix(rng, 6);
    rows[5] = rows[2];
    rows[5][pick(rng)] *= shrink(rng);
    const RankingResult r = mtopsis_rank(rows, {w(rng), w(rng), w(rng)});
    t.expect(r.alternatives[5].rank < r.alternatives[2].rank, "dominating row ranked lower");
  }
}

Kpi solve_kpi(const Scenario& s) {
  const HscModel m = assemble(s, ObjectiveKind::kCost);
  const MilpSolution sol = solve_milp(m.inst);
  if (sol.status != SolveStatus::kOptimal) throw InfeasibleError("reference solve failed");
  return compute_kpi(m, s, sol.x);
}

void scenario_directions(Tally& t) {
  const Scenario base = load_scenario(kData / "desk" / "reference");
  const Kpi plain = solve_kpi(base);
  Scenario retro = base;
  retro.options.retrofit = true;
  const Kpi r = solve_kpi(retro);
  t.expect(r.transport_ghg < plain.transport_ghg,
           "transport ghg " + num(r.transport_ghg) + " vs " + num(plain.transport_ghg));
  t.expect(r.lcoh < plain.lcoh, "lcoh " + num(r.lcoh) + " vs " + num(plain.lcoh));

  auto with_cap = [&](WaterRestriction w) {
    Scenario s = base;
    s.options.water = w;
    s.water.max_cw = max_cw_for(w);
    return solve_kpi(s);
  };
  const Kpi loose = with_cap(WaterRestriction::kCap0_1);
  const Kpi tight = with_cap(WaterRestriction::kCap0_05);
  int binding = 0;
  for (std::size_t k = 0; k < tight.water.size(); ++k) {
    const WaterCell& c = tight.water[k];
    t.expect(c.weighted <= c.cap * (1 + 1e-9), "cap exceeded");
    if (c.weighted < c.cap * (1 - 1e-6)) continue;
    ++binding;
    t.expect(c.weighted <= loose.water[k].weighted * (1 + 1e-9),
             "capped cell rose: " + num(c.weighted) + " vs " + num(loose.water[k].weighted));
  }
  t.expect(binding > 0, "the tighter cap binds nowhere");
}

void lcoh_identity(Tally& t) {
  for (std::uint32_t seed = 1; seed <= 12; ++seed) {
    const Scenario s = desk::undiscounted(seed);
    const HscModel m = assemble(s, ObjectiveKind::kCost);
    const MilpSolution sol = solve_milp(m.inst);
    if (sol.status != SolveStatus::kOptimal) {
      t.expect(false, "seed " + std::to_string(seed) + " not solved");
      continue;
    }
    // Delivered kg over the horizon, from the demand formula and the calendar.
    double year_days = 0;
    for (int month : s.sets.months) year_days += s.month_days(month);
    double kg = 0, days = 0;
    for (std::size_t p = 0; p < s.sets.periods.size(); ++p) {
      for (int month : s.sets.months) {
        const double w = s.tech.years_per_period[p] * s.month_days(month) * 365.0 / year_days;
        days += w;
        for (std::size_t g = 0; g < s.sets.grids.size(); ++g) kg += w * hydrogen_demand(s, g, p, month);
      }
    }
    const double expect = sol.objective * 1000.0 * days / kg;
    const double got = levelized_cost(m, sol.x);
    t.expect(rel(got, expect) <= 1e-9,
             "seed " + std::to_string(seed) + " " + num(got) + " vs " + num(expect));
  }
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Tally&)> run;
  };
  const std::vector<Criterion> all{
      {"water vulnerability table", water_table},
      {"demand calibration table", demand_table_check},
      {"oracle equivalence", oracle_equivalence},
      {"lp correctness and mps round trip", lp_correctness},
      {"pareto front properties", pareto_properties},
      {"m-topsis behaviour", topsis_behavior},
      {"retrofit and water directions", scenario_directions},
      {"lcoh identity", lcoh_identity},
  };
  int failed = 0;
  for (std::size_t k = 0; k < all.size(); ++k) {
    Tally t;
    const auto start = std::chrono::steady_clock::now();
    try {
      all[k].run(t);
    } catch (const std::exception& e) {
      t.expect(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu %-36s %s  %s  %.2fs\n", k + 1, all[k].name, t.ok() ? "PASS" : "FAIL",
                t.summary().c_str(), secs);
    for (const std::string& f : t.failures()) std::printf("    %s\n", f.c_str());
    if (!t.ok()) ++failed;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
