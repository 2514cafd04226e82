#ifndef HSC_TESTS_RANDOM_LP_HPP_
#define HSC_TESTS_RANDOM_LP_HPP_

// Random instance generators for the solver property suites. Feasible LPs
// are built around a known interior point; objectives only push toward
// finite bounds so every generated LP is bounded.

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "hsc/milp.hpp"

namespace hsc::testing {

struct RandomLpShape {
  int rows = 20;
  int cols = 30;
  double density = 0.4;
  bool infeasible = false;
  int integers = 0;  // leading columns made integer with small ranges
};

inline MilpInstance random_lp(std::uint32_t seed, const RandomLpShape& shape) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::mt19937 rng(seed);
  auto uni = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };

  MilpInstance inst;
  inst.name = "rand" + std::to_string(seed);
  std::vector<double> x0(shape.cols);
  for (int j = 0; j < shape.cols; ++j) {
    double lo = 0.0;
    double hi = inf;
    double c = uni(-5, 5);
    VarType type = VarType::kContinuous;
    if (j < shape.integers) {
      type = VarType::kInteger;
      hi = 1 + pick(3);
      x0[j] = pick(static_cast<int>(hi) + 1);
    } else {
      switch (pick(5)) {
        case 0:  // [0, inf)
          c = uni(0.1, 5);
          break;
        case 1:  // (-inf, hi]
          lo = -inf;
          hi = uni(-3, 3);
          c = uni(-5, -0.1);
          break;
        case 2:
          lo = uni(-5, 0);
          hi = lo + uni(0.5, 10);
          break;
        default:
          hi = uni(1, 10);
          break;
      }
      const double a = std::isfinite(lo) ? lo : hi - 5;
      const double b = std::isfinite(hi) ? hi : lo + 5;
      x0[j] = uni(a, b);
    }
    inst.add_var("x" + std::to_string(j), lo, hi, type);
    inst.objective[j] = std::round(c * 1000) / 1000;
  }
  for (int i = 0; i < shape.rows; ++i) {
    std::vector<int> idx;
    std::vector<double> coef;
    double act = 0.0;
    for (int j = 0; j < shape.cols; ++j) {
      if (uni(0, 1) > shape.density) continue;
      const double a = std::round(uni(-9, 9) * 100) / 100;
      if (a == 0.0) continue;
      idx.push_back(j);
      coef.push_back(a);
      act += a * x0[j];
    }
    if (idx.empty()) {
      idx.push_back(i % shape.cols);
      coef.push_back(1.0);
      act = x0[i % shape.cols];
    }
    const int k = pick(5);
    const Sense sense = k < 2 ? Sense::kLe : k < 4 ? Sense::kGe : Sense::kEq;
    double rhs = act;
    if (sense == Sense::kLe) rhs += uni(0, 3);
    if (sense == Sense::kGe) rhs -= uni(0, 3);
    inst.add_row("r" + std::to_string(i), idx, coef, sense, rhs);
  }
  if (shape.infeasible) {
    // Two copies of one row that cannot both hold.
    const Row base = inst.rows.front();
    const double act = inst.activity(0, x0);
    inst.add_row("clash_lo", base.idx, base.coef, Sense::kGe, act + 5);
    inst.add_row("clash_hi", base.idx, base.coef, Sense::kLe, act + 1);
  }
  return inst;
}

}  // namespace hsc::testing

#endif  // HSC_TESTS_RANDOM_LP_HPP_
