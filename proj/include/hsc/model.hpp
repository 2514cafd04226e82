#ifndef HSC_MODEL_HPP_
#define HSC_MODEL_HPP_

// Assembly of the supply chain MILP from a scenario.

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hsc/demand.hpp"
#include "hsc/milp.hpp"
#include "hsc/scenario.hpp"

namespace hsc {

enum class Family {
  kPR,         // production rate [p,j,i,g,t,m] kg/day
  kST,         // storage level [i,g,t,m] kg
  kFR,         // station throughput [fs,j,i,g,t,m] kg/day
  kQ,          // transported flow [i,l,g,g',t,m] kg/day
  kNTU,        // transport units [i,l,g,g',t,m]
  kEPS,        // trip rounding binary [i,l,g,g',t]
  kXE,         // flow direction binary [i,l,g,g',t]
  kNP,         // production units [p,j,i,g,t]
  kIP,         // new production units [p,j,i,g,t]
  kNS,         // storage units [s,j,g,t]
  kNSNew,      // new storage units [s,j,g,t]
  kNFS,        // stations [fs,j,g,t]
  kNFSNew,     // new stations [fs,j,g,t]
  kESP,        // installed renewable power [g,m,e] kW
  kRESU,       // electricity drawn per source [e,g,t,m] kWh/day
  kESU,        // electricity used [g,t,m] kWh/day
  kDRetrofit,  // retrofit truck consumption [g,t,m] kg/day
  kWaterCons,  // water withdrawal [g,t,m] m3/day
  kWCV,        // vulnerability-weighted monthly withdrawal [g,t,m]
  kWaterCost,  // water bill [t] EUR/day
};

inline constexpr int kFamilyCount = 20;

const char* family_name(Family f);

// Variable identity: family plus up to six ordinal subscripts (month
// subscripts are positions in Sets::months).
struct VarKey {
  Family family = Family::kPR;
  std::array<int, 6> sub{-1, -1, -1, -1, -1, -1};

  auto operator<=>(const VarKey&) const = default;
};

VarKey make_key(Family f, std::initializer_list<int> subs);

class VariableIndex {
 public:
  int add(const VarKey& key);
  int find(const VarKey& key) const;  // -1 when absent
  int at(const VarKey& key) const;    // throws IndexError when absent
  const VarKey& key(int var) const { return keys_.at(var); }
  std::size_t size() const { return keys_.size(); }
  // Variables of one family in creation order.
  std::vector<int> of(Family f) const;

 private:
  std::map<VarKey, int> lookup_;
  std::vector<VarKey> keys_;
};

enum class Subsystem { kProduction, kStorage, kStation, kTransport, kConversion, kWater };
inline constexpr int kSubsystemCount = 6;
const char* subsystem_name(Subsystem s);

enum class CostKind { kCapex, kOpex };

// One linear objective contribution in reporting units.
struct Term {
  int var = 0;
  double coef = 0.0;
  Subsystem subsystem = Subsystem::kProduction;
  CostKind kind = CostKind::kOpex;
};

// Undiscounted money attached to one variable, for the LCOH identity:
// capex in EUR per unit, opex in EUR per modelled day.
struct MoneyTerm {
  int var = 0;
  double eur = 0.0;
  CostKind kind = CostKind::kOpex;
  int period = 0;
  int month = -1;  // month position, -1 for capex and per-period opex
};

struct HscModel {
  MilpInstance inst;
  VariableIndex index;
  DemandSurface demand;
  std::vector<Term> cost;  // k EUR/day (total daily cost)
  std::vector<Term> ghg;   // t CO2e/day
  std::vector<Term> risk;  // index
  std::vector<MoneyTerm> money;
  std::vector<double> day_weight;  // [t * months + m] days represented
  std::vector<double> discount;    // [t] ((1+f)(1+dr))^(years elapsed)
  double total_days = 0.0;
  std::optional<int> eps_row_cost;
  std::optional<int> eps_row_ghg;
  std::optional<int> eps_row_risk;

  const std::vector<Term>& terms(ObjectiveKind k) const;
  double evaluate(ObjectiveKind k, const std::vector<double>& x) const;
  double weight(std::size_t t, std::size_t m) const;
};

struct ProductionBand {
  double min_kg_day = 0.0;
  double max_kg_day = 0.0;
};

// Daily output band of one electrolyzer unit in calendar month `month`.
ProductionBand production_bounds(const Scenario& s, std::size_t p, std::size_t j,
                                 std::size_t i, int month);

// Building blocks, in the order assemble() runs them.
HscModel declare_variables(const Scenario& s);
void add_geography(HscModel& model, const Scenario& s);
void add_capacity_linking(HscModel& model, const Scenario& s);
void add_transport_linking(HscModel& model, const Scenario& s);
void add_balances(HscModel& model, const Scenario& s);
void build_objective_terms(HscModel& model, const Scenario& s);

// Installs one objective vector; throws ConfigError if one is already set.
void set_objective(HscModel& model, ObjectiveKind kind);
void objective_cost(HscModel& model);
void objective_ghg(HscModel& model);
void objective_risk(HscModel& model);

// Upper bounds on the two non-primary criteria; +inf leaves a vacuous row.
struct EpsilonPair {
  double first = 0.0;
  double second = 0.0;
};

// The non-primary criteria of `primary` in fixed order (cost, ghg, risk).
std::array<ObjectiveKind, 2> secondary_objectives(ObjectiveKind primary);

void add_epsilon_rows(HscModel& model, ObjectiveKind primary, EpsilonPair eps);

HscModel assemble(const Scenario& s, ObjectiveKind objective,
                  std::optional<EpsilonPair> eps = std::nullopt);

// Human-readable dump of variables, rows and objective for diffing builds.
std::string dump_instance(const MilpInstance& inst);

}  // namespace hsc

#endif  // HSC_MODEL_HPP_
