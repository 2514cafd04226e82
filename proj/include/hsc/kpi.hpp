#ifndef HSC_KPI_HPP_
#define HSC_KPI_HPP_

// Key indicators of a solved supply chain.

#include <array>
#include <vector>

#include "hsc/model.hpp"
#include "hsc/scenario.hpp"

namespace hsc {

struct WaterCell {
  std::size_t grid = 0;
  std::size_t period = 0;
  std::size_t month = 0;     // position in Sets::months
  double m3_per_day = 0.0;
  double weighted = 0.0;     // WCV
  double cap = 0.0;          // +inf when unrestricted
};

struct Kpi {
  double tdc = 0.0;    // k EUR/day
  double lcoh = 0.0;   // EUR/kg
  double ghg = 0.0;    // t CO2e/day
  double risk = 0.0;
  double capex = 0.0;  // k EUR/day share of tdc
  double opex = 0.0;
  std::array<double, kSubsystemCount> cost_by_subsystem{};
  std::array<double, kSubsystemCount> cost_share{};
  std::array<double, kSubsystemCount> ghg_by_subsystem{};
  std::array<double, kSubsystemCount> risk_by_subsystem{};
  double delivered_kg = 0.0;    // over the horizon, stations plus truck fuel
  double produced_kg = 0.0;
  double electrolyzer_hours = 0.0;  // mean full-load hours per unit-month
  std::vector<WaterCell> water;
  double transport_ghg = 0.0;   // t CO2e/day

  double objective(ObjectiveKind k) const;
};

// LCOH from undiscounted money, discounted per period:
// (capex/disc + opex*days/disc) / (kg*days/disc).
double levelized_cost(const HscModel& model, const std::vector<double>& x);

Kpi compute_kpi(const HscModel& model, const Scenario& s, const std::vector<double>& x);

}  // namespace hsc

#endif  // HSC_KPI_HPP_
