#include "hsc/demand.hpp"

#include <string>

#include "hsc/error.hpp"

namespace hsc {

namespace {

double kg_per_ktoe_year(const Scenario& s) {
  const auto& d = s.demand;
  const double kwh = 1000.0 * d.e_toe * d.r_sub;
  const double kg = s.options.heating_value == HeatingValueMode::kDivide
                        ? kwh / d.fhv
                        : kwh * d.fhv;
  return kg / 365.0;
}

}  // namespace

double hydrogen_demand(const Scenario& s, std::size_t g, std::size_t t,
                       int month) {
  if (g >= s.sets.grids.size()) {
    throw IndexError("grid index " + std::to_string(g) + " out of range");
  }
  if (t >= s.sets.periods.size()) {
    throw IndexError("period index " + std::to_string(t) + " out of range");
  }
  if (month < 1 || month > kMonthsPerYear) {
    throw IndexError("month " + std::to_string(month) + " out of range");
  }
  const auto& d = s.demand;
  const double resident = (d.fc_res + d.fc_gds) * d.growth[t] * d.tpop(g, t);
  const double tourist = d.fc_tour * d.tour_growth[t] * kMonthsPerYear *
                         d.sfc_tour(t, month - 1) * d.g_tour[g];
  return (resident + tourist) * kg_per_ktoe_year(s);
}

DemandSurface demand_table_serial(const Scenario& s) {
  const std::size_t ng = s.sets.grids.size();
  const std::size_t nt = s.sets.periods.size();
  const std::size_t nm = s.sets.months.size();
  DemandSurface out{Tensor<3>({ng, nt, nm}), Tensor<2>({nt, nm})};
  for (std::size_t g = 0; g < ng; ++g) {
    for (std::size_t t = 0; t < nt; ++t) {
      for (std::size_t m = 0; m < nm; ++m) {
        out.dh2(g, t, m) = hydrogen_demand(s, g, t, s.sets.months[m]);
      }
    }
  }
  for (std::size_t t = 0; t < nt; ++t) {
    for (std::size_t m = 0; m < nm; ++m) {
      double sum = 0.0;
      for (std::size_t g = 0; g < ng; ++g) sum += out.dh2(g, t, m);
      out.dt(t, m) = sum;
    }
  }
  return out;
}

DemandSurface demand_table(const Scenario& s) {
  const std::size_t ng = s.sets.grids.size();
  const std::size_t nt = s.sets.periods.size();
  const std::size_t nm = s.sets.months.size();
  DemandSurface out{Tensor<3>({ng, nt, nm}), Tensor<2>({nt, nm})};
  const long cells = static_cast<long>(ng * nt * nm);
#pragma omp parallel for schedule(static)
  for (long k = 0; k < cells; ++k) {
    const std::size_t m = static_cast<std::size_t>(k) % nm;
    const std::size_t t = (static_cast<std::size_t>(k) / nm) % nt;
    const std::size_t g = static_cast<std::size_t>(k) / (nm * nt);
    out.dh2(g, t, m) = hydrogen_demand(s, g, t, s.sets.months[m]);
  }
  // Grid sums stay serial so the summation order matches the reference.
  for (std::size_t t = 0; t < nt; ++t) {
    for (std::size_t m = 0; m < nm; ++m) {
      double sum = 0.0;
      for (std::size_t g = 0; g < ng; ++g) sum += out.dh2(g, t, m);
      out.dt(t, m) = sum;
    }
  }
  return out;
}

double annual_mean_demand(const Scenario& s, std::size_t g, std::size_t t) {
  double sum = 0.0;
  for (int m = 1; m <= kMonthsPerYear; ++m) sum += hydrogen_demand(s, g, t, m);
  return sum / kMonthsPerYear;
}

double annual_mean_total(const Scenario& s, std::size_t t) {
  double sum = 0.0;
  for (std::size_t g = 0; g < s.sets.grids.size(); ++g) {
    sum += annual_mean_demand(s, g, t);
  }
  return sum;
}

double retrofit_consumption(double trips, double distance_km,
                            double fcev_kg_per_100km) {
  if (trips < 0 || distance_km < 0 || fcev_kg_per_100km < 0) {
    throw DomainError("retrofit_consumption: inputs must be non-negative");
  }
  return trips * 2.0 * distance_km * fcev_kg_per_100km / 100.0;
}

}  // namespace hsc
