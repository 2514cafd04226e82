#ifndef HSC_DEMAND_HPP_
#define HSC_DEMAND_HPP_

#include <cstddef>

#include "hsc/scenario.hpp"
#include "hsc/tensor.hpp"

namespace hsc {

// Monthly hydrogen demand over the modelled index space.
struct DemandSurface {
  Tensor<3> dh2;  // [g, t, month position] kg/day
  Tensor<2> dt;   // [t, month position] sum over grids, kg/day

  bool operator==(const DemandSurface&) const = default;
};

// Daily hydrogen demand of grid g (ordinal) in period t (ordinal) and
// calendar month `month` (1..12), kg/day.
//
// Fuel consumptions are annual (ktoe/yr). The tourist term is spread over
// the months by SFCtour, so 12 * SFCtour[t,m] is the month's rate relative
// to the annual mean; annual kWh are turned into kg with the heating value
// and averaged over 365 days.
double hydrogen_demand(const Scenario& s, std::size_t g, std::size_t t,
                       int month);

DemandSurface demand_table(const Scenario& s);
DemandSurface demand_table_serial(const Scenario& s);

// Mean over the 12 calendar months, kg/day.
double annual_mean_demand(const Scenario& s, std::size_t g, std::size_t t);
double annual_mean_total(const Scenario& s, std::size_t t);

// Hydrogen burnt by retrofitted trucks doing `trips` round trips of
// `distance_km` each way, kg/day.
double retrofit_consumption(double trips, double distance_km,
                            double fcev_kg_per_100km);

}  // namespace hsc

#endif  // HSC_DEMAND_HPP_
