#include "hsc/milp.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "hsc/error.hpp"

namespace hsc {

const char* to_string(ObjectiveKind k) {
  switch (k) {
    case ObjectiveKind::kCost:
      return "cost";
    case ObjectiveKind::kGhg:
      return "ghg";
    case ObjectiveKind::kRisk:
      return "risk";
  }
  return "?";
}

ObjectiveKind parse_objective(const std::string& name) {
  if (name == "cost") return ObjectiveKind::kCost;
  if (name == "ghg") return ObjectiveKind::kGhg;
  if (name == "risk") return ObjectiveKind::kRisk;
  throw ConfigError("unknown objective '" + name + "' (expected cost, ghg or risk)");
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kUnbounded:
      return "unbounded";
    case SolveStatus::kLimit:
      return "limit";
  }
  return "?";
}

int MilpInstance::add_var(std::string name, double lo, double hi, VarType type) {
  vars.push_back({std::move(name), lo, hi, type});
  objective.push_back(0.0);
  return static_cast<int>(vars.size()) - 1;
}

int MilpInstance::add_row(std::string name, std::vector<int> idx,
                          std::vector<double> coef, Sense sense, double rhs) {
  std::map<int, double> merged;
  for (std::size_t k = 0; k < idx.size(); ++k) merged[idx[k]] += coef[k];
  Row row;
  row.name = std::move(name);
  row.sense = sense;
  row.rhs = rhs;
  for (const auto& [j, v] : merged) {
    if (v != 0.0) {
      row.idx.push_back(j);
      row.coef.push_back(v);
    }
  }
  rows.push_back(std::move(row));
  return static_cast<int>(rows.size()) - 1;
}

std::size_t MilpInstance::num_integers() const {
  return static_cast<std::size_t>(
      std::count_if(vars.begin(), vars.end(), [](const Variable& v) { return v.is_integer(); }));
}

double MilpInstance::activity(std::size_t r, const std::vector<double>& x) const {
  const Row& row = rows[r];
  double sum = 0.0;
  for (std::size_t k = 0; k < row.idx.size(); ++k) sum += row.coef[k] * x[row.idx[k]];
  return sum;
}

double MilpInstance::evaluate_objective(const std::vector<double>& x) const {
  double sum = objective_constant;
  for (std::size_t j = 0; j < vars.size(); ++j) sum += objective[j] * x[j];
  return sum;
}

double MilpInstance::max_violation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    worst = std::max(worst, vars[j].lo - x[j]);
    worst = std::max(worst, x[j] - vars[j].hi);
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Row& row = rows[r];
    if (std::isinf(row.rhs)) continue;
    double scale = 1.0;
    for (double c : row.coef) scale = std::max(scale, std::abs(c));
    const double a = activity(r, x);
    double v = 0.0;
    switch (row.sense) {
      case Sense::kLe:
        v = a - row.rhs;
        break;
      case Sense::kGe:
        v = row.rhs - a;
        break;
      case Sense::kEq:
        v = std::abs(a - row.rhs);
        break;
    }
    worst = std::max(worst, v / scale);
  }
  return worst;
}

double MilpInstance::max_fractionality(const std::vector<double>& x) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    if (vars[j].is_integer()) worst = std::max(worst, std::abs(x[j] - std::round(x[j])));
  }
  return worst;
}

void MilpInstance::check() const {
  const int n = static_cast<int>(vars.size());
  if (objective.size() != vars.size()) {
    throw ConfigError(name + ": objective length does not match the variable count");
  }
  for (int j = 0; j < n; ++j) {
    const Variable& v = vars[j];
    if (std::isnan(v.lo) || std::isnan(v.hi) || v.lo > v.hi) {
      throw ConfigError(name + ": invalid bounds on " + v.name);
    }
    if (v.type == VarType::kBinary && (v.lo < 0 || v.hi > 1)) {
      throw ConfigError(name + ": binary " + v.name + " has bounds outside [0,1]");
    }
    if (!std::isfinite(objective[j])) {
      throw ConfigError(name + ": non-finite objective coefficient on " + v.name);
    }
  }
  if (!std::isfinite(objective_constant)) {
    throw ConfigError(name + ": non-finite objective constant");
  }
  for (const Row& row : rows) {
    if (row.idx.empty()) throw ConfigError(name + ": empty row " + row.name);
    if (row.idx.size() != row.coef.size()) {
      throw ConfigError(name + ": ragged row " + row.name);
    }
    if (std::isnan(row.rhs)) throw ConfigError(name + ": NaN rhs in " + row.name);
    for (std::size_t k = 0; k < row.idx.size(); ++k) {
      if (row.idx[k] < 0 || row.idx[k] >= n) {
        throw ConfigError(name + ": row " + row.name + " references a missing variable");
      }
      if (!std::isfinite(row.coef[k])) {
        throw ConfigError(name + ": non-finite coefficient in " + row.name);
      }
    }
  }
}

}  // namespace hsc
