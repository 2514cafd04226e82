#include <cmath>

#include "desk_scenarios.hpp"
#include "doctest.h"
#include "hsc/demand.hpp"
#include "hsc/error.hpp"
#include "support/bundle.hpp"

using namespace hsc;

namespace {

// Direct evaluation of the demand formula, written out term by term.
double expected(const Scenario& s, std::size_t g, std::size_t t, int month) {
  const auto& d = s.demand;
  const double kg_per_ktoe_day = 1000.0 * d.e_toe * d.r_sub / d.fhv / 365.0;
  const double resident = (d.fc_res + d.fc_gds) * d.growth[t] * d.tpop(g, t);
  const double tourist = d.fc_tour * d.tour_growth[t] * 12.0 * d.sfc_tour(t, month - 1) * d.g_tour[g];
  return (resident + tourist) * kg_per_ktoe_day;
}

const Scenario& island() {
  static const Scenario s = load_scenario(hsc::testing::kData / "corsica");
  return s;
}

}  // namespace

TEST_CASE("demand: matches the direct formula") {
  const Scenario s = desk::reference();
  for (std::size_t g = 0; g < 2; ++g)
    for (std::size_t t = 0; t < 2; ++t)
      for (int m = 1; m <= 12; ++m)
        CHECK(hydrogen_demand(s, g, t, m) == doctest::Approx(expected(s, g, t, m)).epsilon(1e-13));
}

TEST_CASE("demand: no tourists leaves the resident term") {
  Scenario s = desk::reference();
  s.demand.g_tour = {0.0, 1.0};
  const auto& d = s.demand;
  const double resident =
      (d.fc_res + d.fc_gds) * d.tpop(0, 0) * 1000.0 * d.e_toe * d.r_sub / d.fhv / 365.0;
  for (int m = 1; m <= 12; ++m) CHECK(hydrogen_demand(s, 0, 0, m) == doctest::Approx(resident));
}

TEST_CASE("demand: doubling one month's tourist share touches only that month") {
  const Scenario s = desk::reference();
  Scenario t2 = s;
  t2.demand.sfc_tour(0, 6) *= 2.0;
  for (int m = 1; m <= 12; ++m) {
    const double before = hydrogen_demand(s, 1, 0, m);
    const double after = hydrogen_demand(t2, 1, 0, m);
    if (m != 7) {
      CHECK(after == before);
      continue;
    }
    Scenario no_tour = s;
    no_tour.demand.fc_tour = 0.0;
    const double tourism = before - hydrogen_demand(no_tour, 1, 0, m);
    CHECK(after - before == doctest::Approx(tourism));
  }
}

TEST_CASE("demand: linear in each fuel term") {
  const Scenario s = desk::reference();
  auto scaled = [&](int which, double k) {
    Scenario c = s;
    double* f[] = {&c.demand.fc_res, &c.demand.fc_gds, &c.demand.fc_tour};
    *f[which] *= k;
    return c;
  };
  for (int which = 0; which < 3; ++which) {
    const Scenario one = scaled(which, 0.0);
    const Scenario two = scaled(which, 2.0);
    const Scenario three = scaled(which, 3.0);
    for (int m : {1, 7}) {
      // f(3a) - f(2a) == f(2a) - f(a) == f(a) - f(0)
      const double f0 = hydrogen_demand(one, 1, 1, m);
      const double f1 = hydrogen_demand(s, 1, 1, m);
      const double f2 = hydrogen_demand(two, 1, 1, m);
      const double f3 = hydrogen_demand(three, 1, 1, m);
      CHECK(f3 - f2 == doctest::Approx(f1 - f0));
      CHECK(f2 - f1 == doctest::Approx(f1 - f0));
    }
  }
}

TEST_CASE("demand: month-to-month variation follows the tourist profile") {
  const Scenario s = desk::reference();
  const double base = hydrogen_demand(s, 1, 0, 1) - hydrogen_demand(s, 1, 0, 2);
  const double sbase = s.demand.sfc_tour(0, 0) - s.demand.sfc_tour(0, 1);
  for (int m = 2; m <= 12; ++m) {
    const double dv = hydrogen_demand(s, 1, 0, m) - hydrogen_demand(s, 1, 0, 1);
    const double ds = s.demand.sfc_tour(0, m - 1) - s.demand.sfc_tour(0, 0);
    if (sbase != 0.0) CHECK(dv * -sbase == doctest::Approx(ds * base));
  }
}

TEST_CASE("demand: a larger substitution rate raises every nonzero entry") {
  const Scenario s = desk::reference();
  Scenario more = s;
  more.demand.r_sub *= 1.1;
  const DemandSurface a = demand_table(s);
  const DemandSurface b = demand_table(more);
  for (std::size_t k = 0; k < a.dh2.size(); ++k) {
    if (a.dh2.data()[k] > 0) CHECK(b.dh2.data()[k] > a.dh2.data()[k]);
  }
}

TEST_CASE("demand: island totals and grid cells") {
  const Scenario& s = island();
  CHECK(annual_mean_total(s, 0) == doctest::Approx(3643).epsilon(1e-3));
  CHECK(annual_mean_demand(s, 6, 5) == doctest::Approx(4899).epsilon(0.05));
  CHECK(annual_mean_total(s, 5) / annual_mean_total(s, 0) ==
        doctest::Approx(27568.0 / 3643.0).epsilon(0.02));
}

TEST_CASE("demand: parallel table equals the serial one") {
  CHECK(demand_table(island()) == demand_table_serial(island()));
  const DemandSurface d = demand_table(island());
  for (double v : d.dh2.data()) CHECK(v >= 0);
  for (std::size_t t = 0; t < d.dt.extent(0); ++t) {
    double sum = 0;
    for (std::size_t g = 0; g < 9; ++g) sum += d.dh2(g, t, 0);
    CHECK(d.dt(t, 0) == sum);
  }
}

TEST_CASE("demand: zero fuel gives a zero surface") {
  Scenario s = desk::reference();
  s.demand.fc_res = s.demand.fc_gds = s.demand.fc_tour = 0.0;
  const DemandSurface d = demand_table(s);
  for (double v : d.dh2.data()) CHECK(v == 0.0);
}

TEST_CASE("demand: heating value switch") {
  Scenario s = desk::reference();
  const double divide = hydrogen_demand(s, 0, 0, 1);
  s.options.heating_value = HeatingValueMode::kMultiply;
  const double fhv = s.demand.fhv;
  CHECK(hydrogen_demand(s, 0, 0, 1) == doctest::Approx(divide * fhv * fhv));
}

TEST_CASE("demand: index errors") {
  const Scenario s = desk::reference();
  CHECK_THROWS_AS(hydrogen_demand(s, 2, 0, 1), IndexError);
  CHECK_THROWS_AS(hydrogen_demand(s, 0, 2, 1), IndexError);
  CHECK_THROWS_AS(hydrogen_demand(s, 0, 0, 13), IndexError);
}

TEST_CASE("retrofit consumption") {
  CHECK(retrofit_consumption(0, 80, 13.2) == 0.0);
  CHECK(retrofit_consumption(1, 50, 13.2) == doctest::Approx(13.2));
  CHECK(retrofit_consumption(3, 100, 13.2) == doctest::Approx(79.2));
  CHECK_THROWS_AS(retrofit_consumption(-1, 10, 13.2), DomainError);
}
