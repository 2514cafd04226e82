#ifndef HSC_RESOURCES_HPP_
#define HSC_RESOURCES_HPP_

#include <cstddef>

#include "hsc/scenario.hpp"

namespace hsc {

// kWh/day delivered per installed kW of source e in grid g, period t and
// calendar month m. Zero where the site mask forbids the source and for grid
// imports, which are fixed to zero.
double availability_per_kw(const Scenario& s, std::size_t g, std::size_t t,
                           int month, std::size_t e);

// Renewable output at the given installed power, kWh/day.
double renewable_availability(const Scenario& s, std::size_t g, std::size_t t,
                              int month, std::size_t e, double installed_kw);

// Same at the full installable capacity ESPcap[g,e].
double renewable_availability(const Scenario& s, std::size_t g, std::size_t t,
                              int month, std::size_t e);

struct WaterIndex {
  double intermediate = 0.0;  // surface/ground weighted vulnerability
  double final = 0.0;         // times the seasonal precipitation deficit
};

WaterIndex water_vulnerability(const Scenario& s, std::size_t g, int month);

// m3/day of water drawn by producing `kg_per_day` at `litres_per_kg`.
double water_consumption(double kg_per_day, double litres_per_kg);

struct WaterBounds {
  double lo = 0.0;
  double hi = 0.0;  // +inf when the restriction is off
};

// Admissible range of the vulnerability-weighted monthly withdrawal.
WaterBounds water_bounds(const Scenario& s, std::size_t g, std::size_t t,
                         int month);

}  // namespace hsc

#endif  // HSC_RESOURCES_HPP_
