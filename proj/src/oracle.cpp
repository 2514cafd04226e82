#include <cmath>
#include <exception>
#include <limits>

#include "hsc/error.hpp"
#include "hsc/solver.hpp"

namespace hsc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Domain {
  std::vector<int> vars;
  std::vector<long> first;
  std::vector<long> size;
  double product = 1.0;
};

Domain integer_domain(const MilpInstance& inst) {
  Domain d;
  for (std::size_t j = 0; j < inst.vars.size(); ++j) {
    const Variable& v = inst.vars[j];
    if (!v.is_integer()) continue;
    if (!std::isfinite(v.lo) || !std::isfinite(v.hi)) {
      d.product = kInf;
      continue;
    }
    const long lo = static_cast<long>(std::ceil(v.lo - 1e-9));
    const long hi = static_cast<long>(std::floor(v.hi + 1e-9));
    const long n = std::max(0L, hi - lo + 1);
    d.vars.push_back(static_cast<int>(j));
    d.first.push_back(lo);
    d.size.push_back(n);
    d.product *= static_cast<double>(n);
  }
  return d;
}

struct Best {
  double objective = kInf;
  long index = -1;
  bool unbounded = false;
};

// Lexicographic (objective, index) keeps serial and parallel runs identical.
bool better(double obj, long k, const Best& b) {
  return obj < b.objective || (obj == b.objective && (b.index < 0 || k < b.index));
}

void evaluate(const MilpInstance& inst, const Domain& d, long k, const Tolerances& tol,
              std::vector<double>& lo, std::vector<double>& hi, Best& best) {
  long rest = k;
  for (std::size_t v = 0; v < d.vars.size(); ++v) {
    const double val = static_cast<double>(d.first[v] + rest % d.size[v]);
    rest /= d.size[v];
    lo[d.vars[v]] = hi[d.vars[v]] = val;
  }
  const LpSolution sol = solve_lp(inst, lo, hi, tol);
  if (sol.status == SolveStatus::kUnbounded) {
    best.unbounded = true;
  } else if (sol.status == SolveStatus::kOptimal && better(sol.objective, k, best)) {
    best.objective = sol.objective;
    best.index = k;
  }
}

void base_bounds(const MilpInstance& inst, std::vector<double>& lo, std::vector<double>& hi) {
  lo.resize(inst.vars.size());
  hi.resize(inst.vars.size());
  for (std::size_t j = 0; j < inst.vars.size(); ++j) {
    lo[j] = inst.vars[j].lo;
    hi[j] = inst.vars[j].hi;
  }
}

MilpSolution assemble(const MilpInstance& inst, const Domain& d, const Best& best,
                      long count, const Tolerances& tol) {
  MilpSolution out;
  out.lp_solves = count;
  if (best.unbounded) {
    out.status = SolveStatus::kUnbounded;
    out.objective = out.bound = -kInf;
    return out;
  }
  if (best.index < 0) {
    out.status = SolveStatus::kInfeasible;
    out.objective = out.bound = kInf;
    return out;
  }
  std::vector<double> lo, hi;
  base_bounds(inst, lo, hi);
  Best again;
  evaluate(inst, d, best.index, tol, lo, hi, again);
  const LpSolution sol = solve_lp(inst, lo, hi, tol);
  out.status = SolveStatus::kOptimal;
  out.x = sol.x;
  out.objective = out.bound = best.objective;
  return out;
}

Domain checked_domain(const MilpInstance& inst, double cap) {
  inst.check();
  Domain d = integer_domain(inst);
  if (!(d.product <= cap)) throw OracleCapError(d.product, cap);
  return d;
}

}  // namespace

double integer_domain_product(const MilpInstance& inst) {
  return integer_domain(inst).product;
}

MilpSolution enumerate_oracle_serial(const MilpInstance& inst, double cap,
                                     const Tolerances& tol) {
  const Domain d = checked_domain(inst, cap);
  const long count = static_cast<long>(d.product);
  std::vector<double> lo, hi;
  base_bounds(inst, lo, hi);
  Best best;
  for (long k = 0; k < count; ++k) evaluate(inst, d, k, tol, lo, hi, best);
  return assemble(inst, d, best, count, tol);
}

MilpSolution enumerate_oracle(const MilpInstance& inst, double cap, const Tolerances& tol) {
  const Domain d = checked_domain(inst, cap);
  const long count = static_cast<long>(d.product);
  Best best;
  std::exception_ptr failure;
#pragma omp parallel
  {
    std::vector<double> lo, hi;
    base_bounds(inst, lo, hi);
    Best local;
#pragma omp for schedule(dynamic, 16)
    for (long k = 0; k < count; ++k) {
      try {
        evaluate(inst, d, k, tol, lo, hi, local);
      } catch (...) {
#pragma omp critical(oracle_failure)
        if (!failure) failure = std::current_exception();
      }
    }
#pragma omp critical(oracle_merge)
    {
      if (local.unbounded) best.unbounded = true;
      if (local.index >= 0 && better(local.objective, local.index, best)) {
        best.objective = local.objective;
        best.index = local.index;
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  return assemble(inst, d, best, count, tol);
}

}  // namespace hsc
