#ifndef HSC_MILP_HPP_
#define HSC_MILP_HPP_

// Solver-agnostic mixed-integer linear program and its solutions.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace hsc {

enum class Sense { kLe, kEq, kGe };
enum class VarType { kContinuous, kInteger, kBinary };
enum class ObjectiveKind { kCost, kGhg, kRisk };

const char* to_string(ObjectiveKind k);
ObjectiveKind parse_objective(const std::string& name);

struct Variable {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  VarType type = VarType::kContinuous;

  bool is_integer() const { return type != VarType::kContinuous; }
  bool operator==(const Variable&) const = default;
};

// Sparse row  sum(coef * x[idx])  sense  rhs.
struct Row {
  std::string name;
  std::vector<int> idx;
  std::vector<double> coef;
  Sense sense = Sense::kLe;
  double rhs = 0.0;

  bool operator==(const Row&) const = default;
};

struct EpsilonBounds {
  double ghg = 0.0;
  double risk = 0.0;
  double cost = 0.0;
};

struct MilpInstance {
  std::string name = "hsc";
  std::vector<Variable> vars;
  std::vector<Row> rows;
  std::vector<double> objective;  // one coefficient per variable
  double objective_constant = 0.0;
  std::optional<ObjectiveKind> objective_kind;
  std::vector<std::string> epsilon_rows;  // names of rows added as eps bounds

  int add_var(std::string name, double lo, double hi,
              VarType type = VarType::kContinuous);
  // Drops zero coefficients and merges duplicates; returns the row index.
  int add_row(std::string name, std::vector<int> idx, std::vector<double> coef,
              Sense sense, double rhs);

  std::size_t num_vars() const { return vars.size(); }
  std::size_t num_rows() const { return rows.size(); }
  std::size_t num_integers() const;

  double activity(std::size_t r, const std::vector<double>& x) const;
  double evaluate_objective(const std::vector<double>& x) const;
  // Largest violation of any row or bound at x, each row divided by the
  // largest absolute coefficient of that row (and 1).
  double max_violation(const std::vector<double>& x) const;
  // Largest distance of an integer variable from the nearest integer.
  double max_fractionality(const std::vector<double>& x) const;

  // Structural invariants: finite coefficients, valid indices, no empty
  // rows, lo <= hi, binary bounds within [0,1]. Throws ConfigError.
  void check() const;

  bool operator==(const MilpInstance&) const = default;
};

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kLimit };

const char* to_string(SolveStatus s);

// All tolerances of the simplex and branch-and-bound in one place.
struct Tolerances {
  double primal = 1e-9;       // bound/row feasibility in the scaled problem
  double dual = 1e-9;         // reduced cost optimality
  double pivot = 1e-9;        // smallest admissible pivot magnitude
  double residual = 1e-7;     // final unscaled residual check
  double integrality = 1e-6;  // integer feasibility
  int degenerate_switch = 50; // consecutive degenerate pivots before Bland
  int refactor_every = 200;   // pivots between basis refactorizations
  long max_iterations = 1000000;
};

struct LpSolution {
  SolveStatus status = SolveStatus::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
  std::vector<double> duals;       // one per row; zero for dropped rows
  std::vector<int> basis;          // basic structural variables
  long iterations = 0;
  // Rows carrying a nonzero phase-1 multiplier at an infeasible stop.
  std::vector<int> infeasible_rows;
};

struct BnbOptions {
  double abs_gap = 1e-6;
  double rel_gap = 1e-6;
  long node_limit = 200000;
  double time_limit_s = 600.0;
  bool dive = true;  // root diving heuristic
  bool log = false;  // progress lines on stderr
  Tolerances tol;
};

struct MilpSolution {
  SolveStatus status = SolveStatus::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
  double bound = 0.0;        // global lower bound at termination
  long nodes = 0;
  long lp_solves = 0;
  std::vector<double> bound_trace;  // global bound after each node
  std::vector<int> infeasible_rows;
};

}  // namespace hsc

#endif  // HSC_MILP_HPP_
