#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "desk_scenarios.hpp"
#include "doctest.h"
#include "hsc/demand.hpp"
#include "hsc/error.hpp"
#include "hsc/kpi.hpp"
#include "hsc/model.hpp"
#include "hsc/resources.hpp"
#include "hsc/solver.hpp"
#include "json.hpp"

using namespace hsc;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int var_named(const MilpInstance& inst, const std::string& name) {
  for (std::size_t j = 0; j < inst.vars.size(); ++j) {
    if (inst.vars[j].name == name) return static_cast<int>(j);
  }
  FAIL("no variable " << name);
  return -1;
}

int row_named(const MilpInstance& inst, const std::string& name) {
  for (std::size_t r = 0; r < inst.rows.size(); ++r) {
    if (inst.rows[r].name == name) return static_cast<int>(r);
  }
  return -1;
}

bool row_holds(const MilpInstance& inst, int r, const std::vector<double>& x, double tol = 1e-9) {
  const Row& row = inst.rows[r];
  const double a = inst.activity(r, x);
  if (row.sense == Sense::kLe) return a <= row.rhs + tol;
  if (row.sense == Sense::kGe) return a >= row.rhs - tol;
  return std::abs(a - row.rhs) <= tol;
}

MilpSolution solve(const HscModel& m) {
  const MilpSolution s = solve_milp(m.inst);
  REQUIRE(s.status == SolveStatus::kOptimal);
  return s;
}

bool is_integer_family(Family f) {
  switch (f) {
    case Family::kNTU:
    case Family::kEPS:
    case Family::kXE:
    case Family::kNP:
    case Family::kIP:
    case Family::kNS:
    case Family::kNSNew:
    case Family::kNFS:
    case Family::kNFSNew:
      return true;
    default:
      return false;
  }
}

// Reference bundle with B unable to export, to produce before 2030, or to
// host the small size.
Scenario restricted() {
  Scenario s = desk::reference();
  s.geo.export_ban[1] = true;
  s.geo.first_production_period[1] = 1;
  s.geo.central[1] = false;
  s.geo.centralized_size = {false, true};
  return s;
}

}  // namespace

TEST_CASE("index: keys, names and integrality") {
  const HscModel m = assemble(desk::reference(), ObjectiveKind::kCost);
  std::set<std::string> names;
  for (std::size_t j = 0; j < m.inst.vars.size(); ++j) {
    const VarKey& key = m.index.key(static_cast<int>(j));
    CHECK(m.index.find(key) == static_cast<int>(j));
    CHECK(m.inst.vars[j].name.rfind(family_name(key.family), 0) == 0);
    CHECK(m.inst.vars[j].is_integer() == is_integer_family(key.family));
    names.insert(m.inst.vars[j].name);
  }
  CHECK(names.size() == m.inst.vars.size());
  CHECK(m.index.find(make_key(Family::kPR, {9, 9, 9, 9, 9, 9})) == -1);
  CHECK_THROWS_AS(m.index.at(make_key(Family::kPR, {9, 9, 9, 9, 9, 9})), IndexError);
  CHECK(std::string(family_name(Family::kNTU)) == "NTUGRID");
  CHECK(std::string(family_name(Family::kEPS)) == "EPSILON");
}

TEST_CASE("instance: structural invariants") {
  for (const Scenario& s : {desk::reference(), desk::oracle_candidate(8), desk::corsica()}) {
    const HscModel m = assemble(s, ObjectiveKind::kCost);
    CHECK_NOTHROW(m.inst.check());
    for (const Row& r : m.inst.rows) {
      CHECK(!r.idx.empty());
      for (double c : r.coef) CHECK(std::isfinite(c));
    }
    for (double c : m.inst.objective) CHECK(std::isfinite(c));
  }
}

TEST_CASE("production band arithmetic") {
  Scenario s = desk::reference();
  s.tech.production[0].elcf_max_h = 744;
  const ProductionBand b = production_bounds(s, 0, 0, 0, 7);
  CHECK(b.max_kg_day == doctest::Approx(138.4615).epsilon(1e-5));
  CHECK(b.min_kg_day == 0.0);
  s.tech.production[0].elcf_min_h = 744;
  const ProductionBand flat = production_bounds(s, 0, 0, 0, 7);
  CHECK(flat.min_kg_day == flat.max_kg_day);
  s.tech.production[0].gamma_kwh_per_kg = 0;
  CHECK_THROWS_AS(production_bounds(s, 0, 0, 0, 7), ConfigError);
}

TEST_CASE("capacity linking: stock telescopes and caps production") {
  const HscModel m = assemble(desk::reference(), ObjectiveKind::kCost);
  const MilpInstance& inst = m.inst;
  const int np0 = var_named(inst, "NP[PEM,mini,gas,A,2025]");
  const int ip1 = var_named(inst, "IP[PEM,mini,gas,A,2030]");
  const int np1 = var_named(inst, "NP[PEM,mini,gas,A,2030]");
  const int pr = var_named(inst, "PR[PEM,mini,gas,A,2030,7]");
  const int units = row_named(inst, "units_NP[PEM,mini,gas,A,2030]");
  const int cap = row_named(inst, "prod_max[PEM,mini,gas,A,2030,7]");
  REQUIRE(units >= 0);
  REQUIRE(cap >= 0);
  std::vector<double> x(inst.vars.size(), 0.0);
  x[ip1] = 1;
  CHECK_FALSE(row_holds(inst, units, x));
  x[np1] = 1;
  CHECK(row_holds(inst, units, x));
  x[np0] = 1;
  CHECK_FALSE(row_holds(inst, units, x));  // stock 1 + new 1 is not 1

  const double band = production_bounds(desk::reference(), 0, 0, 0, 7).max_kg_day;
  x[pr] = band;
  CHECK(row_holds(inst, cap, x, 1e-9));
  x[pr] = band * 1.001;
  CHECK_FALSE(row_holds(inst, cap, x));
  x[np1] = 0;
  x[pr] = 1e-3;
  CHECK_FALSE(row_holds(inst, cap, x));
}

TEST_CASE("capacity linking: no new units forbids production") {
  HscModel m = assemble(desk::reference(), ObjectiveKind::kCost);
  std::vector<double> lo, hi;
  for (const Variable& v : m.inst.vars) {
    lo.push_back(v.lo);
    hi.push_back(v.hi);
  }
  for (int v : m.index.of(Family::kIP)) hi[v] = 0;
  const LpSolution s = solve_lp(m.inst, lo, hi);
  CHECK(s.status == SolveStatus::kInfeasible);
}

TEST_CASE("transport linking: one full trip at the boundary") {
  const Scenario s = desk::reference();
  const HscModel m = assemble(s, ObjectiveKind::kCost);
  const MilpInstance& inst = m.inst;
  const TransportTech& tr = *s.transport(0, 0);
  const double km = s.tech.distance_km(0, 1);
  const double factor = (2 * km / tr.speed_kmh + tr.load_unload_h) / (tr.availability_h_day * tr.tcap_kg);
  const std::string cell = "[gas,tube_trailer,A,B,2025,1]";
  const int q = var_named(inst, "Q" + cell);
  const int ntu = var_named(inst, "NTUGRID" + cell);
  const int lo_row = row_named(inst, "trips_min" + cell);
  const int hi_row = row_named(inst, "trips_max" + cell);
  REQUIRE(lo_row >= 0);
  REQUIRE(hi_row >= 0);
  std::vector<double> x(inst.vars.size(), 0.0);
  x[q] = 1.0 / factor;
  x[ntu] = 1;
  CHECK(row_holds(inst, lo_row, x, 1e-9));
  CHECK(row_holds(inst, hi_row, x, 1e-9));
  x[ntu] = 0;
  CHECK_FALSE(row_holds(inst, lo_row, x));
  x[ntu] = 2;
  CHECK_FALSE(row_holds(inst, hi_row, x));
  // Nothing shipped, no trucks.
  x[q] = 0;
  x[ntu] = 0;
  CHECK(row_holds(inst, lo_row, x));
  CHECK(row_holds(inst, hi_row, x));
}

TEST_CASE("transport linking: both directions at once is infeasible") {
  const HscModel m = assemble(desk::reference(), ObjectiveKind::kCost);
  std::vector<double> lo, hi;
  for (const Variable& v : m.inst.vars) {
    lo.push_back(v.lo);
    hi.push_back(v.hi);
  }
  const int ab = var_named(m.inst, "XE[gas,tube_trailer,A,B,2025]");
  const int ba = var_named(m.inst, "XE[gas,tube_trailer,B,A,2025]");
  lo[ab] = hi[ab] = lo[ba] = hi[ba] = 1;
  const LpSolution s = solve_lp(m.inst, lo, hi);
  REQUIRE(s.status == SolveStatus::kInfeasible);
  bool named = false;
  for (int r : s.infeasible_rows) named = named || m.inst.rows[r].name.rfind("one_way", 0) == 0;
  CHECK(named);
}

TEST_CASE("transport linking: missing distance") {
  Scenario s = desk::reference();
  s.tech.distance_km(0, 1) = s.tech.distance_km(1, 0) = 0;
  CHECK_THROWS_AS(assemble(s, ObjectiveKind::kCost), ConfigError);
}

TEST_CASE("solution invariants on the reference bundle") {
  for (WaterRestriction w : {WaterRestriction::kOff, WaterRestriction::kCap0_05}) {
    Scenario s = desk::reference();
    s.options.water = w;
    s.water.max_cw = max_cw_for(w);
    const HscModel m = assemble(s, ObjectiveKind::kCost);
    const MilpSolution sol = solve(m);
    const auto& x = sol.x;
    CHECK(m.inst.max_violation(x) <= 1e-6);
    CHECK(m.inst.max_fractionality(x) <= 1e-6);
    const double re = m.evaluate(ObjectiveKind::kCost, x);
    CHECK(std::abs(re - sol.objective) <= 1e-6 * (1 + std::abs(re)));

    // Production band per unit count.
    for (int v : m.index.of(Family::kPR)) {
      const VarKey& k = m.index.key(v);
      const int np = m.index.find(make_key(Family::kNP, {k.sub[0], k.sub[1], k.sub[2], k.sub[3], k.sub[4]}));
      const ProductionBand b = production_bounds(s, k.sub[0], k.sub[1], k.sub[2], s.sets.months[k.sub[5]]);
      CHECK(x[v] <= b.max_kg_day * x[np] + 1e-6);
      CHECK(x[v] >= b.min_kg_day * x[np] - 1e-6);
    }
    // Station throughput meets demand in every cell.
    const DemandSurface d = demand_table(s);
    for (std::size_t g = 0; g < 2; ++g)
      for (std::size_t t = 0; t < 2; ++t)
        for (std::size_t mm = 0; mm < 2; ++mm) {
          double fr = 0;
          for (int v : m.index.of(Family::kFR)) {
            const VarKey& k = m.index.key(v);
            if (k.sub[3] == int(g) && k.sub[4] == int(t) && k.sub[5] == int(mm)) fr += x[v];
          }
          CHECK(fr == doctest::Approx(d.dh2(g, t, mm)).epsilon(1e-9));
        }
    // Weighted withdrawal within the cap.
    const Kpi k = compute_kpi(m, s, x);
    for (const WaterCell& c : k.water) {
      const WaterIndex wi = water_vulnerability(s, c.grid, s.sets.months[c.month]);
      CHECK(c.weighted == doctest::Approx(c.m3_per_day * s.month_days(s.sets.months[c.month]) * wi.final));
      if (w != WaterRestriction::kOff) CHECK(c.weighted <= c.cap * (1 + 1e-9));
    }
  }
}

TEST_CASE("geography: bans hold exactly in the optimum") {
  const Scenario s = restricted();
  const HscModel m = assemble(s, ObjectiveKind::kCost);
  const MilpSolution sol = solve(m);
  for (int v : m.index.of(Family::kIP)) {
    const VarKey& k = m.index.key(v);
    const bool early_b = k.sub[3] == 1 && k.sub[4] == 0;
    const bool small_b = k.sub[3] == 1 && k.sub[1] == 1;
    if (early_b || small_b) {
      CHECK(m.inst.vars[v].hi == 0.0);
      CHECK(sol.x[v] == 0.0);
    }
  }
  for (Family f : {Family::kQ, Family::kNTU}) {
    for (int v : m.index.of(f)) {
      if (m.index.key(v).sub[2] == 1) CHECK(sol.x[v] == 0.0);
    }
  }
}

TEST_CASE("balances: a grid that cannot produce imports everything") {
  Scenario s = desk::reference();
  s.geo.first_production_period[1] = 2;  // never
  const HscModel m = assemble(s, ObjectiveKind::kCost);
  const MilpSolution sol = solve(m);
  const DemandSurface d = demand_table(s);
  for (std::size_t t = 0; t < 2; ++t)
    for (std::size_t mm = 0; mm < 2; ++mm) {
      double in = 0;
      for (int v : m.index.of(Family::kQ)) {
        const VarKey& k = m.index.key(v);
        if (k.sub[3] == 1 && k.sub[4] == int(t) && k.sub[5] == int(mm)) in += sol.x[v];
      }
      CHECK(in == doctest::Approx(d.dh2(1, t, mm)).epsilon(1e-7));
    }
}

TEST_CASE("balances: single grid production equals demand") {
  const Scenario s = desk::oracle_candidate(2);
  REQUIRE(s.sets.grids.size() == 1);
  const HscModel m = assemble(s, ObjectiveKind::kCost);
  const MilpSolution sol = solve(m);
  double pr = 0;
  for (int v : m.index.of(Family::kPR)) pr += sol.x[v];
  CHECK(pr == doctest::Approx(demand_table(s).dh2(0, 0, 0)).epsilon(1e-9));
}

TEST_CASE("balances: too little energy is infeasible") {
  Scenario s = desk::oracle_candidate(2);
  for (double& v : s.energy.esp_cap.data()) v *= 1e-3;
  const HscModel m = assemble(s, ObjectiveKind::kCost);
  CHECK(solve_milp(m.inst).status == SolveStatus::kInfeasible);
}

TEST_CASE("objectives: one per instance and linear in their weights") {
  HscModel m = assemble(desk::reference(), ObjectiveKind::kCost);
  CHECK_THROWS_AS(set_objective(m, ObjectiveKind::kGhg), Error);

  Scenario clean = desk::reference();
  for (auto& r : clean.tech.production) r.ghg_kg_per_kg = r.ghg_kg_per_unit_day = 0;
  for (auto& r : clean.tech.storage) r.ghg_kg_per_kg = r.ghg_kg_per_unit_day = 0;
  for (auto& r : clean.tech.transport) r.ghg_kg_per_km = 0;
  for (double& e : clean.energy.emission_factor) e = 0;
  const HscModel zero = assemble(clean, ObjectiveKind::kGhg);
  const MilpSolution base = solve(m);
  CHECK(zero.evaluate(ObjectiveKind::kGhg, base.x) == 0.0);

  Scenario risky = desk::reference();
  for (auto& r : risky.tech.production) r.risk_per_unit *= 2, r.risk_per_kg *= 2;
  for (auto& r : risky.tech.storage) r.risk_per_unit *= 2, r.risk_per_kg *= 2;
  for (auto& r : risky.tech.transport) r.risk_per_unit *= 2, r.risk_per_kg *= 2;
  const HscModel doubled = assemble(risky, ObjectiveKind::kCost);
  CHECK(doubled.evaluate(ObjectiveKind::kRisk, base.x) ==
        doctest::Approx(2 * m.evaluate(ObjectiveKind::kRisk, base.x)));
}

TEST_CASE("objectives: ghg and risk are linear in the solution") {
  const HscModel m = assemble(desk::reference(), ObjectiveKind::kCost);
  const MilpSolution a = solve(m);
  const HscModel g = assemble(desk::reference(), ObjectiveKind::kGhg);
  const MilpSolution b = solve(g);
  std::vector<double> mix(a.x.size());
  for (std::size_t j = 0; j < mix.size(); ++j) mix[j] = 0.3 * a.x[j] + 0.7 * b.x[j];
  for (ObjectiveKind k : {ObjectiveKind::kGhg, ObjectiveKind::kRisk}) {
    CHECK(m.evaluate(k, mix) ==
          doctest::Approx(0.3 * m.evaluate(k, a.x) + 0.7 * m.evaluate(k, b.x)));
  }
}

TEST_CASE("levelized cost: zero-rate toy") {
  // capex 100, opex 10 EUR/day over 30 days, 1 kg/day delivered.
  HscModel m;
  const int fr = m.index.add(make_key(Family::kFR, {0, 0, 0, 0, 0, 0}));
  const int ip = m.index.add(make_key(Family::kIP, {0, 0, 0, 0, 0}));
  m.money.push_back({ip, 100.0, CostKind::kCapex, 0, -1});
  m.money.push_back({fr, 10.0 * 30, CostKind::kOpex, 0, 0});
  m.day_weight = {30};
  m.discount = {1};
  std::vector<double> x(2, 0.0);
  x[fr] = 1;
  x[ip] = 1;
  CHECK(levelized_cost(m, x) == doctest::Approx(400.0 / 30.0));
}

TEST_CASE("retrofit: same transport plan needs at least as much hydrogen") {
  const Scenario base_s = desk::reference();
  const HscModel base = assemble(base_s, ObjectiveKind::kCost);
  const MilpSolution sol = solve(base);
  const Kpi before = compute_kpi(base, base_s, sol.x);

  Scenario retro_s = base_s;
  retro_s.options.retrofit = true;
  HscModel retro = assemble(retro_s, ObjectiveKind::kCost);
  for (Family f : {Family::kQ, Family::kNTU, Family::kEPS, Family::kXE}) {
    for (int v : base.index.of(f)) {
      const int w = retro.index.at(base.index.key(v));
      retro.inst.vars[w].lo = retro.inst.vars[w].hi = sol.x[v];
    }
  }
  const MilpSolution rs = solve(retro);
  const Kpi after = compute_kpi(retro, retro_s, rs.x);
  CHECK(after.produced_kg >= before.produced_kg - 1e-6);
}

TEST_CASE("assemble: epsilon rows") {
  const Scenario s = desk::reference();
  const HscModel plain = assemble(s, ObjectiveKind::kCost);
  const HscModel open = assemble(s, ObjectiveKind::kCost, EpsilonPair{kInf, kInf});
  REQUIRE(open.inst.rows.size() == plain.inst.rows.size() + 2);
  for (std::size_t r = 0; r < plain.inst.rows.size(); ++r) CHECK(open.inst.rows[r] == plain.inst.rows[r]);
  CHECK(open.inst.epsilon_rows.size() == 2);
  CHECK(plain.inst.epsilon_rows.empty());

  const HscModel ghg = assemble(s, ObjectiveKind::kGhg, EpsilonPair{2.0, 50.0});
  std::vector<double> expect(ghg.inst.vars.size(), 0.0);
  for (const Term& t : ghg.ghg) expect[t.var] += t.coef;
  for (std::size_t j = 0; j < expect.size(); ++j) {
    CHECK(ghg.inst.objective[j] == doctest::Approx(expect[j]).epsilon(1e-14));
  }
  const auto sec = secondary_objectives(ObjectiveKind::kGhg);
  CHECK(sec[0] == ObjectiveKind::kCost);
  CHECK(sec[1] == ObjectiveKind::kRisk);
  CHECK(row_named(ghg.inst, "eps_cost") >= 0);
  CHECK(ghg.inst.rows[row_named(ghg.inst, "eps_risk")].rhs == 50.0);
}

TEST_CASE("dump: deterministic json") {
  const HscModel a = assemble(desk::reference(), ObjectiveKind::kRisk);
  const HscModel b = assemble(desk::reference(), ObjectiveKind::kRisk);
  const std::string text = dump_instance(a.inst);
  CHECK(text == dump_instance(b.inst));
  const auto j = nlohmann::json::parse(text);
  CHECK(j["variables"].size() == a.inst.vars.size());
  CHECK(j["rows"].size() == a.inst.rows.size());
  CHECK(j["objective_kind"] == "risk");
}
