#include <cmath>
#include <limits>

#include "desk_scenarios.hpp"
#include "doctest.h"
#include "hsc/error.hpp"
#include "hsc/resources.hpp"
#include "support/bundle.hpp"

using namespace hsc;

namespace {

const Scenario& island() {
  static const Scenario s = load_scenario(hsc::testing::kData / "corsica");
  return s;
}

}  // namespace

TEST_CASE("availability: July PV arithmetic") {
  Scenario s = desk::reference();
  s.energy.pv_cf[6] = 0.20;
  // 1000 kW * 744 h * 0.20 / 31 d
  CHECK(renewable_availability(s, 0, 0, 7, 0, 1000.0) == doctest::Approx(4800.0));
}

TEST_CASE("availability: masked sites are zero in every month") {
  const Scenario& s = island();
  const std::size_t wind = s.wind_source();
  for (std::size_t g : {1, 2, 4, 5, 7, 8}) {
    for (int m = 1; m <= 12; ++m) {
      CHECK(renewable_availability(s, g, 0, m, wind, 5000.0) == 0.0);
    }
  }
  for (std::size_t g = 0; g < 9; ++g) {
    if (s.energy.pv_mask[g]) continue;
    for (int m = 1; m <= 12; ++m) CHECK(renewable_availability(s, g, 3, m, s.pv_source()) == 0.0);
  }
}

TEST_CASE("availability: zero evolution multiplier and linear scaling") {
  Scenario s = desk::reference();
  const double one = renewable_availability(s, 0, 1, 7, 0, 1000.0);
  CHECK(renewable_availability(s, 0, 1, 7, 0, 3000.0) == doctest::Approx(3 * one));
  s.energy.eco(1, 0) = 0.0;
  CHECK(renewable_availability(s, 0, 1, 7, 0, 1000.0) == 0.0);
  CHECK_THROWS_AS(renewable_availability(s, 0, 1, 0, 0, 1.0), IndexError);
  CHECK_THROWS_AS(renewable_availability(s, 0, 1, 1, 7, 1.0), IndexError);
}

TEST_CASE("water: island vulnerability cells") {
  const Scenario& s = island();
  CHECK(water_vulnerability(s, 1, 1).intermediate == doctest::Approx(2.2));
  CHECK(water_vulnerability(s, 1, 7).final == doctest::Approx(2.2));
  CHECK(water_vulnerability(s, 1, 1).final == doctest::Approx(2.2));
  CHECK(water_vulnerability(s, 3, 7).final == doctest::Approx(6.0));
  CHECK(water_vulnerability(s, 3, 1).final == doctest::Approx(3.0));
  for (int m = 1; m <= 12; ++m) CHECK(water_vulnerability(s, 8, m).final == doctest::Approx(1.0));
}

TEST_CASE("water: final index stays within [1, 6]") {
  Scenario s = desk::reference();
  for (int srf = 1; srf <= 3; ++srf)
    for (int sot = 1; sot <= 3; ++sot)
      for (int season = 1; season <= 2; ++season) {
        s.water.srf_vul[0] = srf;
        s.water.sot_vul[0] = sot;
        s.water.vul_saison(0, 0) = season;
        const double v = water_vulnerability(s, 0, 1).final;
        CHECK(v >= 1.0);
        CHECK(v <= 6.0);
      }
}

TEST_CASE("water: consumption arithmetic") {
  CHECK(water_consumption(1000, 9) == doctest::Approx(9.0));
  CHECK(water_consumption(0, 9) == 0.0);
  CHECK(water_consumption(2345, 9) == doctest::Approx(21.105));
  CHECK_THROWS_AS(water_consumption(-1, 9), DomainError);
}

TEST_CASE("water: withdrawal bounds") {
  Scenario s = desk::reference();
  s.water.clean_water = {50, 50};
  s.options.water = WaterRestriction::kOff;
  const WaterBounds off = water_bounds(s, 0, 0, 7);
  CHECK(off.lo == 0.0);
  CHECK(off.hi == std::numeric_limits<double>::infinity());

  s.options.water = WaterRestriction::kCap0_1;
  s.water.max_cw = max_cw_for(s.options.water);
  CHECK(water_bounds(s, 0, 0, 7).hi == doctest::Approx(250000.0));
  s.options.water = WaterRestriction::kCap0_05;
  s.water.max_cw = max_cw_for(s.options.water);
  CHECK(water_bounds(s, 0, 0, 7).hi == doctest::Approx(125000.0));
  CHECK(water_bounds(s, 0, 0, 7).lo == 0.0);
}
