#include "hsc/resources.hpp"

#include <limits>
#include <string>

#include "hsc/error.hpp"

namespace hsc {

namespace {

void check_grid(const Scenario& s, std::size_t g) {
  if (g >= s.sets.grids.size()) {
    throw IndexError("grid index " + std::to_string(g) + " out of range");
  }
}

void check_month(int month) {
  if (month < 1 || month > kMonthsPerYear) {
    throw IndexError("month " + std::to_string(month) + " out of range");
  }
}

}  // namespace

double availability_per_kw(const Scenario& s, std::size_t g, std::size_t t,
                           int month, std::size_t e) {
  check_grid(s, g);
  check_month(month);
  if (t >= s.sets.periods.size()) {
    throw IndexError("period index " + std::to_string(t) + " out of range");
  }
  if (e >= s.sets.sources.size()) {
    throw IndexError("energy source index " + std::to_string(e) + " out of range");
  }
  if (e == s.pv_source() && !s.energy.pv_mask[g]) return 0.0;
  if (e == s.wind_source() && !s.energy.wind_mask[g]) return 0.0;
  return s.month_hours(month) * s.capacity_factor(e, month) / s.month_days(month) *
         s.energy.eco(t, e);
}

double renewable_availability(const Scenario& s, std::size_t g, std::size_t t,
                              int month, std::size_t e, double installed_kw) {
  return installed_kw * availability_per_kw(s, g, t, month, e);
}

double renewable_availability(const Scenario& s, std::size_t g, std::size_t t,
                              int month, std::size_t e) {
  check_grid(s, g);
  if (e >= s.sets.sources.size()) {
    throw IndexError("energy source index " + std::to_string(e) + " out of range");
  }
  return renewable_availability(s, g, t, month, e, s.energy.esp_cap(g, e));
}

WaterIndex water_vulnerability(const Scenario& s, std::size_t g, int month) {
  check_grid(s, g);
  check_month(month);
  const auto& w = s.water;
  WaterIndex out;
  // Same blend as surface*srf + ground*sot given the shares sum to one, but
  // exact when both indices agree (0.8*3 + 0.2*3 is not 3 in binary).
  out.intermediate = w.srf_vul[g] + w.ground_share * (w.sot_vul[g] - w.srf_vul[g]);
  out.final = out.intermediate * w.vul_saison(g, month - 1);
  return out;
}

double water_consumption(double kg_per_day, double litres_per_kg) {
  if (kg_per_day < 0 || litres_per_kg < 0) {
    throw DomainError("water_consumption: inputs must be non-negative");
  }
  return kg_per_day * litres_per_kg / 1000.0;
}

WaterBounds water_bounds(const Scenario& s, std::size_t g, std::size_t t,
                         int month) {
  check_grid(s, g);
  check_month(month);
  if (s.options.water == WaterRestriction::kOff) {
    return {0.0, std::numeric_limits<double>::infinity()};
  }
  const auto& w = s.water;
  const double cw = w.clean_water.at(t);
  return {w.vul_min * cw * w.min_cw * 1e6, w.vul_max * cw * w.max_cw * 1e6};
}

}  // namespace hsc
