#ifndef HSC_MOO_HPP_
#define HSC_MOO_HPP_

// Epsilon-constraint sweep over (GHG, risk) bounds and Pareto filtering.

#include <array>
#include <cstddef>
#include <vector>

#include "hsc/milp.hpp"
#include "hsc/scenario.hpp"

namespace hsc {

struct ParetoPoint {
  double cost = 0.0;  // k EUR/day
  double ghg = 0.0;   // t CO2e/day
  double risk = 0.0;
  double lcoh = 0.0;  // EUR/kg
  double eps_ghg = 0.0;
  double eps_risk = 0.0;
  std::size_t cell = 0;   // sweep cell that produced the point
  std::vector<double> x;  // solution of the cost-primary instance

  std::array<double, 3> criteria() const { return {cost, ghg, risk}; }
};

// True when a is no worse than b everywhere and strictly better somewhere.
bool dominates(const ParetoPoint& a, const ParetoPoint& b);

// Nondominated subset ordered by (cost, ghg, risk); exact duplicates are
// kept once (first occurrence).
std::vector<ParetoPoint> pareto_filter(const std::vector<ParetoPoint>& points);
std::vector<ParetoPoint> pareto_filter_serial(const std::vector<ParetoPoint>& points);

struct SweepCell {
  std::size_t ghg_step = 0;
  std::size_t risk_step = 0;
  double eps_ghg = 0.0;
  double eps_risk = 0.0;
  SolveStatus status = SolveStatus::kInfeasible;
  double cost = 0.0;
};

struct Anchor {
  ObjectiveKind primary = ObjectiveKind::kCost;
  double cost = 0.0;
  double ghg = 0.0;
  double risk = 0.0;
};

struct ParetoFront {
  std::vector<ParetoPoint> points;
  std::array<double, 3> utopia{};
  std::array<double, 3> nadir{};
  std::array<Anchor, 3> payoff{};  // rows: cost, ghg and risk optima
  std::vector<SweepCell> cells;    // every grid cell, row-major (ghg, risk)
};

struct SweepOptions {
  BnbOptions bnb;
  // Relative slack on each bound so that anchors stay feasible under the
  // solver tolerances.
  double slack = 1e-7;
};

// Grid values: n evenly spaced points over [lo, hi], inclusive; a single
// point is +inf (unconstrained).
std::vector<double> epsilon_grid(double lo, double hi, std::size_t n);

// Throws InfeasibleError("empty feasible region") when an anchor has no
// feasible solution.
ParetoFront epsilon_sweep(const Scenario& s, std::size_t n_ghg, std::size_t n_risk,
                          const SweepOptions& opts = {});
ParetoFront epsilon_sweep_serial(const Scenario& s, std::size_t n_ghg, std::size_t n_risk,
                                 const SweepOptions& opts = {});

}  // namespace hsc

#endif  // HSC_MOO_HPP_
