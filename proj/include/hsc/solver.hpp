#ifndef HSC_SOLVER_HPP_
#define HSC_SOLVER_HPP_

#include <vector>

#include "hsc/milp.hpp"

namespace hsc {

// LP relaxation (integrality ignored) with the instance bounds.
LpSolution solve_lp(const MilpInstance& inst, const Tolerances& tol = {});

// Same with replacement bounds, as used by branch-and-bound and the oracle.
LpSolution solve_lp(const MilpInstance& inst, const std::vector<double>& lo,
                    const std::vector<double>& hi, const Tolerances& tol = {});

MilpSolution solve_milp(const MilpInstance& inst, const BnbOptions& opts = {});

// Number of integer assignments the oracle would enumerate; +inf when an
// integer variable is unbounded.
double integer_domain_product(const MilpInstance& inst);

// Solves the LP of every integer assignment and keeps the best. Throws
// OracleCapError when the domain product exceeds `cap`. `lp_solves` of the
// result counts the LPs evaluated.
MilpSolution enumerate_oracle(const MilpInstance& inst, double cap = 1e6,
                              const Tolerances& tol = {});
MilpSolution enumerate_oracle_serial(const MilpInstance& inst, double cap = 1e6,
                                     const Tolerances& tol = {});

}  // namespace hsc

#endif  // HSC_SOLVER_HPP_
