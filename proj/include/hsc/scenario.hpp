#ifndef HSC_SCENARIO_HPP_
#define HSC_SCENARIO_HPP_

// Domain data model of a hydrogen supply chain scenario: index sets,
// demand drivers, renewable energy and water resources, techno-economic
// tables and geographic masks. A Scenario is immutable once loaded and
// validated; every model build and solve reads it concurrently.

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "hsc/tensor.hpp"

namespace hsc {

inline constexpr int kMonthsPerYear = 12;

// Index sets. Periods are labelled by calendar year; months by calendar
// month number (1..12) so that a desk-scale scenario can model a subset of
// months while month-indexed data (hours, capacity factors, seasonality)
// always covers the full year.
struct Sets {
  std::vector<std::string> grids;
  std::vector<int> periods;
  std::vector<int> months;
  std::vector<std::string> sources;       // PV, Wind, Grid
  std::vector<std::string> technologies;  // PEM, AE
  std::vector<std::string> sizes;         // mini, small, medium, large
  std::vector<std::string> forms;         // gas, liquid
  std::vector<std::string> modes;         // tube_trailer, tanker_truck
  std::vector<std::string> storage;       // storage technologies
  std::vector<std::string> stations;      // refuelling station technologies

  std::size_t grid_index(const std::string& label) const;
  std::size_t period_index(int year) const;
  // Position of a calendar month inside `months`.
  std::size_t month_index(int month) const;
  std::size_t source_index(const std::string& name) const;
  std::size_t technology_index(const std::string& name) const;
  std::size_t size_index(const std::string& name) const;
  std::size_t form_index(const std::string& name) const;
  std::size_t mode_index(const std::string& name) const;
  std::size_t storage_index(const std::string& name) const;
  std::size_t station_index(const std::string& name) const;

  bool operator==(const Sets&) const = default;
};

// Drivers of the monthly hydrogen demand surface.
struct DemandParams {
  double fc_res = 0.0;   // resident transport fuel, ktoe/yr
  double fc_gds = 0.0;   // goods transport fuel, ktoe/yr
  double fc_tour = 0.0;  // tourist transport fuel, ktoe/yr
  Tensor<2> tpop;        // [g, t] resident concentration, sums to 1 over g
  Tensor<2> sfc_tour;    // [t, calendar month] tourist seasonal share
  std::vector<double> g_tour;       // [g] tourist concentration
  double e_toe = 11630.0;           // kWh per toe
  double fhv = 33.33;               // lower heating value, kWh/kg
  double r_sub = 0.025;             // fuel substitution rate
  std::vector<double> growth;       // [t] resident/goods multiplier
  std::vector<double> tour_growth;  // [t] tourism multiplier

  bool operator==(const DemandParams&) const = default;
};

struct EnergyParams {
  Tensor<2> esp_cap;                             // [g, e] kW installable
  std::array<double, kMonthsPerYear> pv_cf{};    // capacity factor
  std::array<double, kMonthsPerYear> wind_cf{};  // capacity factor
  std::array<double, kMonthsPerYear> month_hours{};
  std::array<double, kMonthsPerYear> month_days{};
  Tensor<2> eco;                       // [t, e] capacity evolution multiplier
  double er = 0.0;                     // margin on consumption
  std::vector<bool> pv_mask;           // [g] PV sites allowed
  std::vector<bool> wind_mask;         // [g] wind sites allowed
  Tensor<2> price;                     // [e, t] EUR/kWh
  std::vector<double> emission_factor;  // [e] kgCO2e/kWh

  bool operator==(const EnergyParams&) const = default;
};

enum class WaterRestriction { kOff, kCap0_1, kCap0_05 };

struct WaterParams {
  std::vector<double> srf_vul;  // [g] surface-water vulnerability 1..3
  std::vector<double> sot_vul;  // [g] groundwater vulnerability 1..3
  Tensor<2> vul_saison;         // [g, calendar month] 1 or 2
  double surface_share = 0.8;
  double ground_share = 0.2;
  double elwuc = 9.0;                // L water per kg H2
  std::vector<double> clean_water;   // [t] Mm3 potable water distributed
  double min_cw = 0.0;
  double max_cw = 0.0;               // set from the restriction option
  double vul_min = 1.0;
  double vul_max = 5.0;
  double water_price = 2.18;         // EUR/m3

  bool operator==(const WaterParams&) const = default;
};

struct ProductionTech {
  double p_elec_kw = 0.0;
  double capex_eur_per_kw = 0.0;
  double opex_eur_per_kg = 0.0;
  double elcf_min_h = 0.0;  // h/month
  double elcf_max_h = 0.0;  // h/month
  double gamma_kwh_per_kg = 0.0;
  double lifetime_h = 0.0;  // stack lifetime
  double ghg_kg_per_kg = 0.0;
  double ghg_kg_per_unit_day = 0.0;
  double risk_per_unit = 0.0;
  double risk_per_kg = 0.0;
  int max_units = 0;  // per grid and period

  bool operator==(const ProductionTech&) const = default;
};

struct StorageTech {
  std::size_t form = 0;
  double capacity_kg = 0.0;
  double capex_eur_per_kg = 0.0;
  double opex_eur_per_kg = 0.0;  // per kg held per day
  double ghg_kg_per_kg = 0.0;
  double ghg_kg_per_unit_day = 0.0;
  double risk_per_unit = 0.0;
  double risk_per_kg = 0.0;
  int max_units = 0;

  bool operator==(const StorageTech&) const = default;
};

struct StationTech {
  std::size_t form = 0;
  double capacity_kg_day = 0.0;
  double capex_eur = 0.0;
  double opex_eur_per_kg = 0.0;
  int max_units = 0;

  bool operator==(const StationTech&) const = default;
};

// Road transport of form i by mode l. Absent (i, l) pairs are not
// available.
struct TransportTech {
  std::size_t form = 0;
  std::size_t mode = 0;
  double tcap_kg = 0.0;           // kg per trip
  double capex_eur = 0.0;         // conventional truck
  double speed_kmh = 0.0;
  double load_unload_h = 0.0;     // per trip
  double availability_h_day = 0.0;
  double driver_wage_eur_h = 0.0;
  double fuel_eur_km = 0.0;       // conventional fuel
  double maint_eur_km = 0.0;
  double general_eur_day = 0.0;
  double lifetime_years = 0.0;
  double ghg_kg_per_km = 0.0;     // conventional exhaust
  double risk_per_unit = 0.0;
  double risk_per_kg = 0.0;
  double retrofit_capex_eur = 0.0;
  double retrofit_maint_eur_km = 0.0;
  int max_units = 0;

  bool operator==(const TransportTech&) const = default;
};

struct ConversionTech {
  double compressor_capex_eur = 212940.0;
  double compressor_capacity_kg_day = 3024.0;
  double compressor_opex_eur_per_kg = 0.007;
  double compressor_kwh_per_kg = 2.66;
  double liquefier_capex_eur_per_kg_day = 7460.0;
  double liquefier_opex_eur_per_kg = 0.0;
  double liquefier_kwh_per_kg = 6.78;
  double lifetime_years = 20.0;

  bool operator==(const ConversionTech&) const = default;
};

struct TechnoEconomics {
  std::vector<ProductionTech> production;  // [p, j, i] row-major
  std::vector<StorageTech> storage;        // [s, j]
  std::vector<StationTech> stations;       // [fs, j]
  std::vector<TransportTech> transport;    // sparse list of (i, l)
  ConversionTech conversion;
  double fcev_cons_kg_per_100km = 13.2;
  double stack_replacement_share = 0.35;
  double discount_rate = 0.0;
  double inflation_rate = 0.0;
  std::vector<double> years_per_period;  // [t]
  Tensor<2> distance_km;                 // [g, g'] symmetric, zero diagonal

  bool operator==(const TechnoEconomics&) const = default;
};

struct GeographyMasks {
  std::vector<int> first_production_period;  // [g] 0-based period ordinal
  std::vector<bool> central;                 // [g] medium/large allowed
  std::vector<bool> export_ban;              // [g]
  std::vector<bool> demand_grid;             // [g] derived: nonzero demand
  std::vector<bool> centralized_size;        // [j] sizes reserved to central

  bool production_banned(std::size_t j, std::size_t g, std::size_t t) const;

  bool operator==(const GeographyMasks&) const = default;
};

enum class HeatingValueMode { kDivide, kMultiply };

struct ScenarioOptions {
  bool retrofit = false;
  WaterRestriction water = WaterRestriction::kOff;
  double storage_autonomy_days = 3.0;
  HeatingValueMode heating_value = HeatingValueMode::kDivide;

  bool operator==(const ScenarioOptions&) const = default;
};

struct Scenario {
  Sets sets;
  DemandParams demand;
  EnergyParams energy;
  WaterParams water;
  TechnoEconomics tech;
  GeographyMasks geo;
  ScenarioOptions options;

  const ProductionTech& production(std::size_t p, std::size_t j,
                                   std::size_t i) const;
  const StorageTech& storage(std::size_t s, std::size_t j) const;
  const StationTech& station(std::size_t fs, std::size_t j) const;
  // nullptr when form i cannot travel by mode l.
  const TransportTech* transport(std::size_t i, std::size_t l) const;

  // Index of the PV / Wind source in sets.sources, or npos when absent.
  std::size_t pv_source() const;
  std::size_t wind_source() const;
  double capacity_factor(std::size_t e, int month) const;
  double month_hours(int month) const;
  double month_days(int month) const;

  bool operator==(const Scenario&) const = default;
};

double max_cw_for(WaterRestriction restriction);

struct Violation {
  std::string rule;
  std::string message;
};

using ValidationReport = std::vector<Violation>;

// Checks every invariant of the data model; an empty report means valid.
ValidationReport validate_scenario(const Scenario& s);

// Bundle I/O; see docs/data_format.md for the file layout.
Scenario load_scenario(const std::filesystem::path& dir);
void write_scenario(const Scenario& s, const std::filesystem::path& dir);

// Rescales FCres, FCgds and FCtour by a common factor so that the annual
// mean of the summed grid demand in `year` equals `target_kg_per_day`.
Scenario calibrate_demand_totals(const Scenario& s, double target_kg_per_day,
                                 int year);

}  // namespace hsc

#endif  // HSC_SCENARIO_HPP_
