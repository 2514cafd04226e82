#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <string>

#include "doctest.h"
#include "hsc/error.hpp"
#include "hsc/mps.hpp"
#include "hsc/solver.hpp"
#include "support/dense_lp.hpp"
#include "support/random_lp.hpp"

using namespace hsc;
using hsc::testing::DenseReference;
using hsc::testing::RandomLpShape;
using hsc::testing::RefStatus;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double rel_gap(double a, double b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

MilpInstance knapsack() {
  // max 5a + 4b + 3c s.t. 2a + 3b + c <= 4, written as a minimization.
  MilpInstance inst;
  for (const char* n : {"a", "b", "c"}) inst.add_var(n, 0, 1, VarType::kBinary);
  inst.objective = {-5, -4, -3};
  inst.add_row("cap", {0, 1, 2}, {2, 3, 1}, Sense::kLe, 4);
  return inst;
}

// Dual objective for a sign-feasible y; -inf when some bound is missing.
double dual_value(const MilpInstance& inst, const std::vector<double>& y) {
  std::vector<double> d = inst.objective;
  double v = inst.objective_constant;
  for (std::size_t r = 0; r < inst.rows.size(); ++r) {
    const Row& row = inst.rows[r];
    v += row.rhs * y[r];
    for (std::size_t k = 0; k < row.idx.size(); ++k) d[row.idx[k]] -= row.coef[k] * y[r];
  }
  for (std::size_t j = 0; j < inst.vars.size(); ++j) {
    const double bnd = d[j] > 0 ? inst.vars[j].lo : inst.vars[j].hi;
    if (d[j] == 0.0) continue;
    if (!std::isfinite(bnd)) return -kInf;
    v += d[j] * bnd;
  }
  return v;
}

}  // namespace

TEST_CASE("lp: single bound row") {
  MilpInstance inst;
  inst.add_var("x", 0, kInf);
  inst.objective = {1};
  inst.add_row("r", {0}, {1}, Sense::kGe, 3);
  const LpSolution s = solve_lp(inst);
  REQUIRE(s.status == SolveStatus::kOptimal);
  CHECK(s.x[0] == doctest::Approx(3));
  CHECK(s.objective == doctest::Approx(3));
}

TEST_CASE("lp: contradictory rows give a certificate") {
  MilpInstance inst;
  inst.add_var("x", -kInf, kInf);
  inst.objective = {1};
  inst.add_row("upper", {0}, {1}, Sense::kLe, 1);
  inst.add_row("lower", {0}, {1}, Sense::kGe, 2);
  const LpSolution s = solve_lp(inst);
  CHECK(s.status == SolveStatus::kInfeasible);
  CHECK(s.infeasible_rows.size() == 2);
}

TEST_CASE("lp: unbounded ray") {
  MilpInstance inst;
  inst.add_var("x", 0, kInf);
  inst.add_var("y", 0, kInf);
  inst.objective = {-1, 0};
  inst.add_row("r", {0, 1}, {1, -1}, Sense::kLe, 1);
  CHECK(solve_lp(inst).status == SolveStatus::kUnbounded);
}

TEST_CASE("lp: fixed columns and empty rows are presolved") {
  MilpInstance inst;
  inst.add_var("x", 2, 2);
  inst.add_var("y", 0, 10);
  inst.objective = {1, 1};
  inst.add_row("only_fixed", {0}, {1}, Sense::kLe, 2);
  inst.add_row("r", {0, 1}, {1, 1}, Sense::kGe, 5);
  const LpSolution s = solve_lp(inst);
  REQUIRE(s.status == SolveStatus::kOptimal);
  CHECK(s.objective == doctest::Approx(5));

  inst.rows[0].rhs = 1;
  const LpSolution bad = solve_lp(inst);
  CHECK(bad.status == SolveStatus::kInfeasible);
  CHECK(bad.infeasible_rows == std::vector<int>{0});
}

TEST_CASE("lp: random instances agree with the dense reference") {
  const DenseReference ref;
  for (std::uint32_t seed = 1; seed <= 40; ++seed) {
    RandomLpShape shape;
    shape.rows = 4 + static_cast<int>(seed % 17);
    shape.cols = 5 + static_cast<int>(seed % 26);
    shape.infeasible = seed % 9 == 0;
    const MilpInstance inst = hsc::testing::random_lp(seed, shape);
    const LpSolution s = solve_lp(inst);
    const auto r = ref.solve(inst);
    CAPTURE(seed);
    if (shape.infeasible) {
      CHECK(s.status == SolveStatus::kInfeasible);
      CHECK(r.status == RefStatus::kInfeasible);
      continue;
    }
    REQUIRE(r.status == RefStatus::kOptimal);
    REQUIRE(s.status == SolveStatus::kOptimal);
    CHECK(rel_gap(s.objective, r.objective) <= 1e-7);
    CHECK(inst.max_violation(s.x) <= 1e-7);
  }
}

TEST_CASE("lp: weak duality against perturbed duals") {
  std::mt19937 rng(7);
  std::normal_distribution<double> noise(0.0, 0.5);
  for (std::uint32_t seed = 100; seed < 120; ++seed) {
    const MilpInstance inst = hsc::testing::random_lp(seed, {12, 15, 0.5, false, 0});
    const LpSolution s = solve_lp(inst);
    REQUIRE(s.status == SolveStatus::kOptimal);
    // At the optimum the dual bound closes the gap.
    const double tight = dual_value(inst, s.duals);
    if (std::isfinite(tight)) CHECK(rel_gap(tight, s.objective) <= 1e-6);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> y = s.duals;
      for (std::size_t r = 0; r < y.size(); ++r) {
        y[r] += noise(rng);
        if (inst.rows[r].sense == Sense::kLe) y[r] = std::min(y[r], 0.0);
        if (inst.rows[r].sense == Sense::kGe) y[r] = std::max(y[r], 0.0);
      }
      const double v = dual_value(inst, y);
      CHECK(v <= s.objective + 1e-7 * (1 + std::abs(s.objective)));
    }
  }
}

TEST_CASE("milp: continuous instance equals the LP") {
  const MilpInstance inst = hsc::testing::random_lp(3, {10, 12, 0.5, false, 0});
  const LpSolution lp = solve_lp(inst);
  const MilpSolution mip = solve_milp(inst);
  REQUIRE(mip.status == SolveStatus::kOptimal);
  CHECK(mip.objective == doctest::Approx(lp.objective).epsilon(1e-12));
  CHECK(mip.nodes <= 1);
}

TEST_CASE("milp: knapsack matches hand enumeration") {
  const MilpInstance inst = knapsack();
  double best = kInf;
  for (int mask = 0; mask < 8; ++mask) {
    const std::vector<double> x{double(mask & 1), double((mask >> 1) & 1), double((mask >> 2) & 1)};
    if (inst.max_violation(x) > 0) continue;
    best = std::min(best, inst.evaluate_objective(x));
  }
  CHECK(best == -8.0);  // a and c
  const MilpSolution s = solve_milp(inst);
  REQUIRE(s.status == SolveStatus::kOptimal);
  CHECK(s.objective == doctest::Approx(best));
  CHECK(inst.max_fractionality(s.x) <= 1e-6);
}

TEST_CASE("milp: global bound never decreases") {
  for (std::uint32_t seed = 1; seed <= 20; ++seed) {
    const MilpInstance inst = hsc::testing::random_lp(seed, {8, 10, 0.5, false, 6});
    const MilpSolution s = solve_milp(inst);
    for (std::size_t k = 1; k < s.bound_trace.size(); ++k) {
      CHECK(s.bound_trace[k] >= s.bound_trace[k - 1] - 1e-9 * (1 + std::abs(s.bound_trace[k])));
    }
  }
}

TEST_CASE("milp: node limit returns the incumbent flagged as a limit") {
  const MilpInstance inst = hsc::testing::random_lp(11, {10, 14, 0.5, false, 10});
  BnbOptions opts;
  opts.node_limit = 1;
  opts.dive = false;
  const MilpSolution s = solve_milp(inst, opts);
  CHECK((s.status == SolveStatus::kLimit || s.status == SolveStatus::kOptimal));
  if (s.status == SolveStatus::kLimit && !s.x.empty()) CHECK(s.bound <= s.objective + 1e-9);
}

TEST_CASE("oracle: counts and agreement") {
  MilpInstance two;
  two.add_var("a", 0, 1, VarType::kBinary);
  two.add_var("b", 0, 1, VarType::kBinary);
  two.add_var("y", 0, 5);
  two.objective = {1, 2, -1};
  two.add_row("link", {0, 1, 2}, {-2, -2, 1}, Sense::kLe, 1);
  const MilpSolution o = enumerate_oracle(two);
  CHECK(o.lp_solves == 4);
  CHECK(o.objective == doctest::Approx(solve_milp(two).objective));

  MilpInstance cont;
  cont.add_var("x", 0, 4);
  cont.objective = {-1};
  CHECK(enumerate_oracle(cont).objective == doctest::Approx(-4));

  CHECK_THROWS_AS(enumerate_oracle(two, 3.0), OracleCapError);
}

TEST_CASE("oracle: random small MILPs match branch and bound") {
  for (std::uint32_t seed = 1; seed <= 100; ++seed) {
    RandomLpShape shape;
    shape.rows = 3 + static_cast<int>(seed % 5);
    shape.cols = 6 + static_cast<int>(seed % 4);
    shape.integers = 4 + static_cast<int>(seed % 3);
    const MilpInstance inst = hsc::testing::random_lp(seed, shape);
    const MilpSolution o = enumerate_oracle(inst);
    const MilpSolution b = solve_milp(inst);
    CAPTURE(seed);
    REQUIRE(o.status == b.status);
    if (o.status == SolveStatus::kOptimal) CHECK(rel_gap(b.objective, o.objective) <= 1e-6);
  }
}

TEST_CASE("oracle: serial and parallel agree") {
  const MilpInstance inst = hsc::testing::random_lp(5, {6, 9, 0.5, false, 6});
  const MilpSolution a = enumerate_oracle(inst);
  const MilpSolution b = enumerate_oracle_serial(inst);
  CHECK(a.objective == b.objective);
  CHECK(a.x == b.x);
}

TEST_CASE("mps: one-variable LP") {
  MilpInstance inst;
  inst.name = "one";
  inst.add_var("x", 0, 4);
  inst.objective = {2};
  inst.add_row("r", {0}, {1}, Sense::kGe, 1);
  const std::string text = to_mps(inst);
  // Names are positional; one column means one distinct name in COLUMNS.
  const auto cols = text.find("COLUMNS");
  const auto rhs = text.find("RHS");
  std::set<std::string> names;
  for (std::size_t p = text.find('\n', cols) + 1; p < rhs; p = text.find('\n', p) + 1) {
    names.insert(text.substr(p + 4, 8));
  }
  CHECK(names.size() == 1);
  const MilpInstance back = parse_mps(text);
  REQUIRE(back.vars.size() == 1);
  CHECK(back.vars[0].lo == 0);
  CHECK(back.vars[0].hi == 4);
  REQUIRE(back.rows.size() == 1);
  CHECK(back.rows[0].sense == Sense::kGe);
  CHECK(back.rows[0].rhs == 1);
  CHECK(back.rows[0].coef == std::vector<double>{1});
  CHECK(back.objective == inst.objective);
}

TEST_CASE("mps: binaries use BV and round trips are byte identical") {
  const MilpInstance inst = knapsack();
  const std::string text = to_mps(inst);
  CHECK(text.find(" BV ") != std::string::npos);
  CHECK(text.find("'INTORG'") != std::string::npos);
  CHECK(to_mps(parse_mps(text)) == text);
  for (std::uint32_t seed = 1; seed <= 20; ++seed) {
    const MilpInstance r = hsc::testing::random_lp(seed, {8, 10, 0.5, seed % 2 == 0, 3});
    const std::string a = to_mps(r);
    CHECK(to_mps(parse_mps(a)) == a);
  }
}

TEST_CASE("mps: parse errors carry a position") {
  const std::string bad = "NAME x\nROWS\n N obj\n L r\nCOLUMNS\n    x obj notanumber\nENDATA\n";
  try {
    parse_mps(bad, "bad.mps");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.file() == "bad.mps");
    CHECK(e.line() == 6);
  }
  CHECK_THROWS_AS(parse_mps("NAME x\nRANGES\nENDATA\n"), ParseError);
}
