#include "hsc/moo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>

#include "hsc/error.hpp"
#include "hsc/kpi.hpp"
#include "hsc/model.hpp"
#include "hsc/solver.hpp"

namespace hsc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool criteria_less(const ParetoPoint& a, const ParetoPoint& b) {
  return a.criteria() < b.criteria();
}

std::vector<std::size_t> sorted_order(const std::vector<ParetoPoint>& points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return criteria_less(points[a], points[b]);
  });
  return order;
}

bool keep(const std::vector<ParetoPoint>& points, const std::vector<std::size_t>& order,
          std::size_t k) {
  const ParetoPoint& p = points[order[k]];
  for (std::size_t q = 0; q < order.size(); ++q) {
    if (q == k) continue;
    const ParetoPoint& o = points[order[q]];
    if (dominates(o, p)) return false;
    // Of equal points only the first in sorted order survives.
    if (q < k && o.criteria() == p.criteria()) return false;
  }
  return true;
}

std::vector<ParetoPoint> gather(const std::vector<ParetoPoint>& points,
                                const std::vector<std::size_t>& order,
                                const std::vector<char>& kept) {
  std::vector<ParetoPoint> out;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (kept[k]) out.push_back(points[order[k]]);
  }
  return out;
}

struct Prepared {
  HscModel model;  // cost primary, epsilon rows at +inf
  std::array<Anchor, 3> payoff{};
  std::vector<double> ghg_grid;
  std::vector<double> risk_grid;
};

Anchor solve_anchor(const Scenario& s, ObjectiveKind primary, const BnbOptions& bnb) {
  const HscModel model = assemble(s, primary);
  const MilpSolution sol = solve_milp(model.inst, bnb);
  if (sol.x.empty() || (sol.status != SolveStatus::kOptimal && sol.status != SolveStatus::kLimit)) {
    throw InfeasibleError("empty feasible region");
  }
  return {primary, model.evaluate(ObjectiveKind::kCost, sol.x),
          model.evaluate(ObjectiveKind::kGhg, sol.x), model.evaluate(ObjectiveKind::kRisk, sol.x)};
}

Prepared prepare(const Scenario& s, std::size_t n_ghg, std::size_t n_risk,
                 const SweepOptions& opts) {
  if (n_ghg == 0 || n_risk == 0) throw DomainError("epsilon grid needs at least one step per axis");
  Prepared p;
  const ObjectiveKind kinds[3] = {ObjectiveKind::kCost, ObjectiveKind::kGhg, ObjectiveKind::kRisk};
  for (int k = 0; k < 3; ++k) p.payoff[k] = solve_anchor(s, kinds[k], opts.bnb);
  double ghg_lo = kInf, ghg_hi = -kInf, risk_lo = kInf, risk_hi = -kInf;
  for (const Anchor& a : p.payoff) {
    ghg_lo = std::min(ghg_lo, a.ghg);
    ghg_hi = std::max(ghg_hi, a.ghg);
    risk_lo = std::min(risk_lo, a.risk);
    risk_hi = std::max(risk_hi, a.risk);
  }
  auto relax = [&](double v) { return v + opts.slack * (1.0 + std::abs(v)); };
  p.ghg_grid = epsilon_grid(relax(ghg_lo), relax(ghg_hi), n_ghg);
  p.risk_grid = epsilon_grid(relax(risk_lo), relax(risk_hi), n_risk);
  p.model = assemble(s, ObjectiveKind::kCost, EpsilonPair{kInf, kInf});
  return p;
}

void set_bounds(HscModel& model, double ghg, double risk) {
  if (model.eps_row_ghg) model.inst.rows[*model.eps_row_ghg].rhs = ghg;
  if (model.eps_row_risk) model.inst.rows[*model.eps_row_risk].rhs = risk;
}

// Solves one grid cell on a private copy of the model.
void solve_cell(const Prepared& p, const SweepOptions& opts, std::size_t c, SweepCell& cell,
                std::vector<ParetoPoint>& found) {
  const std::size_t nr = p.risk_grid.size();
  cell.ghg_step = c / nr;
  cell.risk_step = c % nr;
  cell.eps_ghg = p.ghg_grid[cell.ghg_step];
  cell.eps_risk = p.risk_grid[cell.risk_step];
  HscModel model = p.model;
  set_bounds(model, cell.eps_ghg, cell.eps_risk);
  const MilpSolution sol = solve_milp(model.inst, opts.bnb);
  cell.status = sol.status;
  if (sol.x.empty()) return;
  cell.cost = sol.objective;
  ParetoPoint pt;
  pt.cost = model.evaluate(ObjectiveKind::kCost, sol.x);
  pt.ghg = model.evaluate(ObjectiveKind::kGhg, sol.x);
  pt.risk = model.evaluate(ObjectiveKind::kRisk, sol.x);
  pt.lcoh = levelized_cost(model, sol.x);
  pt.eps_ghg = cell.eps_ghg;
  pt.eps_risk = cell.eps_risk;
  pt.cell = c;
  pt.x = sol.x;
  found[c] = std::move(pt);
}

ParetoFront finish(Prepared& p, std::vector<SweepCell> cells, std::vector<ParetoPoint> found) {
  ParetoFront front;
  front.payoff = p.payoff;
  std::vector<ParetoPoint> feasible;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (!found[c].x.empty()) feasible.push_back(std::move(found[c]));
  }
  front.cells = std::move(cells);
  front.points = pareto_filter_serial(feasible);
  front.utopia.fill(kInf);
  front.nadir.fill(-kInf);
  for (const ParetoPoint& pt : front.points) {
    const auto v = pt.criteria();
    for (int k = 0; k < 3; ++k) {
      front.utopia[k] = std::min(front.utopia[k], v[k]);
      front.nadir[k] = std::max(front.nadir[k], v[k]);
    }
  }
  return front;
}

}  // namespace

bool dominates(const ParetoPoint& a, const ParetoPoint& b) {
  const auto x = a.criteria();
  const auto y = b.criteria();
  bool strict = false;
  for (int k = 0; k < 3; ++k) {
    if (x[k] > y[k]) return false;
    if (x[k] < y[k]) strict = true;
  }
  return strict;
}

std::vector<ParetoPoint> pareto_filter_serial(const std::vector<ParetoPoint>& points) {
  const auto order = sorted_order(points);
  std::vector<char> kept(order.size(), 0);
  for (std::size_t k = 0; k < order.size(); ++k) kept[k] = keep(points, order, k);
  return gather(points, order, kept);
}

std::vector<ParetoPoint> pareto_filter(const std::vector<ParetoPoint>& points) {
  const auto order = sorted_order(points);
  const long n = static_cast<long>(order.size());
  std::vector<char> kept(order.size(), 0);
#pragma omp parallel for schedule(static)
  for (long k = 0; k < n; ++k) kept[k] = keep(points, order, static_cast<std::size_t>(k));
  return gather(points, order, kept);
}

std::vector<double> epsilon_grid(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {kInf};
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
  }
  out.back() = hi;
  return out;
}

ParetoFront epsilon_sweep_serial(const Scenario& s, std::size_t n_ghg, std::size_t n_risk,
                                 const SweepOptions& opts) {
  Prepared p = prepare(s, n_ghg, n_risk, opts);
  const std::size_t n = n_ghg * n_risk;
  std::vector<SweepCell> cells(n);
  std::vector<ParetoPoint> found(n);
  for (std::size_t c = 0; c < n; ++c) solve_cell(p, opts, c, cells[c], found);
  return finish(p, std::move(cells), std::move(found));
}

ParetoFront epsilon_sweep(const Scenario& s, std::size_t n_ghg, std::size_t n_risk,
                          const SweepOptions& opts) {
  Prepared p = prepare(s, n_ghg, n_risk, opts);
  const long n = static_cast<long>(n_ghg * n_risk);
  std::vector<SweepCell> cells(n);
  std::vector<ParetoPoint> found(n);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (long c = 0; c < n; ++c) {
    try {
      solve_cell(p, opts, static_cast<std::size_t>(c), cells[c], found);
    } catch (...) {
#pragma omp critical(sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return finish(p, std::move(cells), std::move(found));
}

}  // namespace hsc
