#include "desk_scenarios.hpp"

#include <array>
#include <cmath>
#include <random>

namespace hsc::desk {

namespace {

constexpr std::array<double, 12> kDays{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
constexpr std::array<double, 12> kPvCf{0.10, 0.13, 0.17, 0.20, 0.22, 0.24,
                                       0.25, 0.23, 0.19, 0.15, 0.11, 0.09};
constexpr std::array<double, 12> kWindCf{0.32, 0.30, 0.29, 0.25, 0.22, 0.20,
                                         0.19, 0.19, 0.22, 0.26, 0.30, 0.33};
// Tourist fuel share per calendar month (summer peak).
constexpr std::array<double, 12> kTourSeason{0.03, 0.03, 0.05, 0.07, 0.09, 0.13,
                                             0.18, 0.19, 0.11, 0.06, 0.03, 0.03};

double lerp(double a, double b, double x) { return a + (b - a) * x; }

// Position of a year within 2025..2050.
double horizon(int year) { return std::clamp((year - 2025) / 25.0, 0.0, 1.0); }

// Allocates every table for the given sets with neutral defaults.
Scenario blank(Sets sets) {
  Scenario s;
  s.sets = std::move(sets);
  const std::size_t ng = s.sets.grids.size();
  const std::size_t nt = s.sets.periods.size();
  const std::size_t ne = s.sets.sources.size();
  const std::size_t nj = s.sets.sizes.size();

  auto& d = s.demand;
  d.tpop = Tensor<2>({ng, nt}, 1.0 / static_cast<double>(ng));
  d.sfc_tour = Tensor<2>({nt, 12});
  for (std::size_t t = 0; t < nt; ++t)
    for (int m = 0; m < 12; ++m) d.sfc_tour(t, m) = kTourSeason[m];
  d.g_tour.assign(ng, 1.0 / static_cast<double>(ng));
  d.growth.assign(nt, 1.0);
  d.tour_growth.assign(nt, 1.0);

  auto& e = s.energy;
  e.esp_cap = Tensor<2>({ng, ne});
  e.pv_cf = kPvCf;
  e.wind_cf = kWindCf;
  e.month_days = kDays;
  for (int m = 0; m < 12; ++m) e.month_hours[m] = 24.0 * kDays[m];
  e.eco = Tensor<2>({nt, ne}, 1.0);
  e.er = 0.05;
  e.pv_mask.assign(ng, false);
  e.wind_mask.assign(ng, false);
  e.price = Tensor<2>({ne, nt});
  e.emission_factor.assign(ne, 0.0);
  for (std::size_t k = 0; k < ne; ++k) {
    const std::string& src = s.sets.sources[k];
    for (std::size_t t = 0; t < nt; ++t) {
      const double x = horizon(s.sets.periods[t]);
      e.price(k, t) = src == "PV" ? lerp(0.014, 0.019, x)
                      : src == "Wind" ? lerp(0.029, 0.044, x)
                                      : lerp(0.047, 0.067, x);
    }
    e.emission_factor[k] = src == "PV" ? 0.045 : src == "Wind" ? 0.012 : 0.55;
  }

  auto& w = s.water;
  w.srf_vul.assign(ng, 1.0);
  w.sot_vul.assign(ng, 1.0);
  w.vul_saison = Tensor<2>({ng, 12}, 1.0);
  w.clean_water.assign(nt, 50.0);
  w.max_cw = 0.0;

  auto& tech = s.tech;
  tech.years_per_period.assign(nt, 5.0);
  tech.discount_rate = 0.03;
  tech.inflation_rate = 0.02;
  tech.distance_km = Tensor<2>({ng, ng});

  auto& geo = s.geo;
  geo.first_production_period.assign(ng, 0);
  geo.central.assign(ng, true);
  geo.export_ban.assign(ng, false);
  geo.demand_grid.assign(ng, true);
  geo.centralized_size.assign(nj, false);
  return s;
}

struct SizeRow {
  const char* name;
  double kw;
  double pem_capex, ae_capex;
  double opex;
  double pem_gamma, ae_gamma;
  double unit_risk;
  double tank_kg, tank_capex, tank_opex;
  double station_kg, station_capex, station_opex;
};

// Appendix-style size ladder.
constexpr SizeRow kSizes[] = {
    {"mini", 300, 3500, 2800, 0.25, 52.0, 50.0, 1.0, 50, 500, 0.020, 20, 410e3, 0.39},
    {"small", 1000, 2600, 2000, 0.20, 50.0, 46.0, 2.0, 500, 300, 0.015, 200, 700e3, 0.30},
    {"medium", 2500, 1900, 1500, 0.15, 48.0, 42.0, 4.0, 5000, 100, 0.010, 600, 1000e3, 0.20},
    {"large", 5000, 1400, 1038, 0.10, 46.0, 37.8, 6.0, 30000, 25, 0.006, 1300, 1480e3, 0.15},
};

const SizeRow& size_row(const std::string& name) {
  for (const SizeRow& r : kSizes) {
    if (name == r.name) return r;
  }
  return kSizes[0];
}

void fill_tech(Scenario& s, int max_prod, int max_store, int max_station, int max_trucks) {
  const auto& sets = s.sets;
  auto& tech = s.tech;
  tech.production.clear();
  for (const auto& p : sets.technologies) {
    const bool pem = p == "PEM";
    for (const auto& j : sets.sizes) {
      const SizeRow& r = size_row(j);
      for (std::size_t i = 0; i < sets.forms.size(); ++i) {
        ProductionTech row;
        row.p_elec_kw = r.kw;
        row.capex_eur_per_kw = pem ? r.pem_capex : r.ae_capex;
        row.opex_eur_per_kg = r.opex;
        row.elcf_min_h = 0.0;
        row.elcf_max_h = 600.0;
        row.gamma_kwh_per_kg = pem ? r.pem_gamma : r.ae_gamma;
        row.lifetime_h = pem ? 60000.0 : 80000.0;
        row.ghg_kg_per_kg = 0.05;
        row.ghg_kg_per_unit_day = 0.5 * r.kw / 300.0;
        row.risk_per_unit = r.unit_risk * (pem ? 1.0 : 1.2);
        row.risk_per_kg = 0.001;
        row.max_units = max_prod;
        tech.production.push_back(row);
      }
    }
  }
  tech.storage.clear();
  for (const auto& st : sets.storage) {
    const std::size_t form = st.find("liquid") != std::string::npos && sets.forms.size() > 1 ? 1 : 0;
    for (const auto& j : sets.sizes) {
      const SizeRow& r = size_row(j);
      StorageTech row;
      row.form = form;
      row.capacity_kg = r.tank_kg;
      row.capex_eur_per_kg = r.tank_capex;
      row.opex_eur_per_kg = r.tank_opex;
      row.ghg_kg_per_kg = 0.0005;
      row.ghg_kg_per_unit_day = 0.1;
      row.risk_per_unit = r.unit_risk;
      row.risk_per_kg = 0.0002;
      row.max_units = max_store;
      tech.storage.push_back(row);
    }
  }
  tech.stations.clear();
  for (std::size_t k = 0; k < sets.stations.size(); ++k) {
    for (const auto& j : sets.sizes) {
      const SizeRow& r = size_row(j);
      StationTech row;
      row.form = 0;
      row.capacity_kg_day = r.station_kg;
      row.capex_eur = r.station_capex;
      row.opex_eur_per_kg = r.station_opex;
      row.max_units = max_station;
      tech.stations.push_back(row);
    }
  }
  tech.transport.clear();
  for (std::size_t i = 0; i < sets.forms.size(); ++i) {
    const bool liquid = sets.forms[i] == "liquid";
    for (std::size_t l = 0; l < sets.modes.size(); ++l) {
      const bool tanker = sets.modes[l] == "tanker_truck";
      if (liquid != tanker) continue;
      TransportTech row;
      row.form = i;
      row.mode = l;
      row.tcap_kg = tanker ? 4300.0 : 670.0;
      row.capex_eur = tanker ? 200.0 * 4300.0 : 746.0 * 670.0;
      row.speed_kmh = 50.0;
      row.load_unload_h = tanker ? 3.0 : 1.5;
      row.availability_h_day = 18.0;
      row.driver_wage_eur_h = 20.47;
      row.fuel_eur_km = 0.60;
      row.maint_eur_km = 0.15;
      row.general_eur_day = 7.32;
      row.lifetime_years = 10.0;
      row.ghg_kg_per_km = 1.0;
      row.risk_per_unit = 3.0;
      row.risk_per_kg = 0.002;
      row.retrofit_capex_eur = 510e3;
      row.retrofit_maint_eur_km = 0.03;
      row.max_units = max_trucks;
      tech.transport.push_back(row);
    }
  }
}

void set_distance(Scenario& s, std::size_t a, std::size_t b, double km) {
  s.tech.distance_km(a, b) = km;
  s.tech.distance_km(b, a) = km;
}

// Fuel totals (ktoe/yr) giving `kg_per_day` of annual mean demand.
void set_fuel(Scenario& s, double kg_per_day, double tour_share) {
  const auto& d = s.demand;
  const double kg_per_ktoe_day = 1000.0 * d.e_toe * d.r_sub / d.fhv / 365.0;
  const double total = kg_per_day / kg_per_ktoe_day;
  s.demand.fc_tour = tour_share * total;
  s.demand.fc_res = 0.75 * (1.0 - tour_share) * total;
  s.demand.fc_gds = 0.25 * (1.0 - tour_share) * total;
}

}  // namespace

Scenario corsica() {
  Sets sets;
  for (int g = 1; g <= 9; ++g) sets.grids.push_back(std::to_string(g));
  sets.periods = {2025, 2030, 2035, 2040, 2045, 2050};
  for (int m = 1; m <= 12; ++m) sets.months.push_back(m);
  sets.sources = {"PV", "Wind", "Grid"};
  sets.technologies = {"PEM", "AE"};
  sets.sizes = {"mini", "small", "medium", "large"};
  sets.forms = {"gas", "liquid"};
  sets.modes = {"tube_trailer", "tanker_truck"};
  sets.storage = {"gas_tank", "liquid_tank"};
  sets.stations = {"station"};
  Scenario s = blank(sets);

  // Mean demand per grid in 2025 and island totals per period (kg/day).
  constexpr double kGrid2025[9] = {382, 429, 370, 344, 260, 552, 647, 332, 327};
  constexpr double kTotals[6] = {3643, 5319, 8137, 12219, 18353, 27568};
  constexpr double kTourists[9] = {0.1748, 0.0935, 0.0251, 0.2495, 0.0927,
                                   0.0767, 0.0920, 0.1087, 0.0869};
  constexpr double kTourShare = 0.2;
  double pop_sum = 0.0;
  std::array<double, 9> pop{};
  for (int g = 0; g < 9; ++g) {
    pop[g] = (kGrid2025[g] / kTotals[0] - kTourShare * kTourists[g]) / (1.0 - kTourShare);
    pop_sum += pop[g];
  }
  for (int g = 0; g < 9; ++g) {
    s.demand.g_tour[g] = kTourists[g];
    for (int t = 0; t < 6; ++t) s.demand.tpop(g, t) = pop[g] / pop_sum;
  }
  for (int t = 0; t < 6; ++t) {
    s.demand.growth[t] = kTotals[t] / kTotals[0];
    s.demand.tour_growth[t] = kTotals[t] / kTotals[0];
  }
  s.demand.fc_tour = kTourShare;
  s.demand.fc_res = 0.6;
  s.demand.fc_gds = 0.2;

  // Site masks and installable power (kW).
  const std::size_t pv = 0, wind = 1;
  for (int g : {6, 7}) {
    s.energy.pv_mask[g - 1] = true;
    s.energy.esp_cap(g - 1, pv) = 50000.0;
  }
  for (int g : {1, 4, 7}) {
    s.energy.wind_mask[g - 1] = true;
    s.energy.esp_cap(g - 1, wind) = 30000.0;
  }

  constexpr double kSrf[9] = {3, 2, 2, 3, 1, 1, 3, 2, 1};
  constexpr double kSot[9] = {3, 3, 2, 3, 3, 2, 3, 1, 1};
  for (int g = 0; g < 9; ++g) {
    s.water.srf_vul[g] = kSrf[g];
    s.water.sot_vul[g] = kSot[g];
  }
  for (int g : {1, 3, 4, 6, 7}) {
    for (int m = 5; m <= 9; ++m) s.water.vul_saison(g - 1, m - 1) = 2.0;
  }

  for (int g : {2, 3, 5, 8, 9}) {
    s.geo.central[g - 1] = false;
    s.geo.export_ban[g - 1] = true;
  }
  for (int g : {4, 5}) s.geo.first_production_period[g - 1] = 5;
  s.geo.centralized_size = {false, false, true, true};

  // Grid centroids (km) with a road detour factor.
  constexpr double kXy[9][2] = {{30, 150}, {95, 125}, {70, 100}, {75, 10}, {25, 95},
                                {35, 60},  {100, 165}, {105, 75}, {50, 35}};
  for (int a = 0; a < 9; ++a) {
    for (int b = a + 1; b < 9; ++b) {
      const double km = std::hypot(kXy[a][0] - kXy[b][0], kXy[a][1] - kXy[b][1]);
      set_distance(s, a, b, std::round(1.3 * km));
    }
  }
  fill_tech(s, 10, 10, 10, 5);
  return calibrate_demand_totals(s, kTotals[0], 2025);
}

Scenario reference() {
  Sets sets;
  sets.grids = {"A", "B"};
  sets.periods = {2025, 2030};
  sets.months = {1, 7};
  sets.sources = {"PV", "Wind", "Grid"};
  sets.technologies = {"PEM", "AE"};
  sets.sizes = {"mini", "small"};
  sets.forms = {"gas"};
  sets.modes = {"tube_trailer"};
  sets.storage = {"gas_tank"};
  sets.stations = {"station"};
  Scenario s = blank(sets);

  // A: cheap solar, low water stress, small local demand.
  // B: wind only, water stressed in summer, tourist hub.
  s.energy.pv_mask = {true, false};
  s.energy.wind_mask = {false, true};
  s.energy.esp_cap(0, 0) = 20000.0;
  s.energy.esp_cap(1, 1) = 20000.0;
  s.demand.tpop(0, 0) = s.demand.tpop(0, 1) = 0.3;
  s.demand.tpop(1, 0) = s.demand.tpop(1, 1) = 0.7;
  s.demand.g_tour = {0.2, 0.8};
  s.demand.growth = {1.0, 1.3};
  s.demand.tour_growth = {1.0, 1.3};
  set_fuel(s, 160.0, 0.2);
  s.water.srf_vul = {1, 2};
  s.water.sot_vul = {1, 1};
  for (int m = 5; m <= 9; ++m) s.water.vul_saison(1, m - 1) = 2.0;
  s.water.clean_water = {0.02, 0.024};
  set_distance(s, 0, 1, 60.0);
  s.options.storage_autonomy_days = 1.0;
  fill_tech(s, 2, 2, 2, 2);
  return s;
}

namespace {

Scenario random_small(std::uint32_t seed) {
  std::mt19937 rng(seed);
  auto uni = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };

  const int ng = 1 + pick(2);
  const int nt = 1 + pick(2);
  const int nm = 1 + pick(3);
  Sets sets;
  sets.grids = ng == 1 ? std::vector<std::string>{"A"} : std::vector<std::string>{"A", "B"};
  sets.periods = nt == 1 ? std::vector<int>{2025} : std::vector<int>{2025, 2030};
  const std::vector<int> months_pool{1, 4, 7, 10};
  for (int m = 0; m < nm; ++m) sets.months.push_back(months_pool[m]);
  sets.sources = {"PV", "Wind", "Grid"};
  sets.technologies = {pick(2) ? "PEM" : "AE"};
  sets.sizes = pick(3) == 0 ? std::vector<std::string>{"mini", "small"}
                            : std::vector<std::string>{"mini"};
  sets.forms = {"gas"};
  sets.modes = {"tube_trailer"};
  sets.storage = {"gas_tank"};
  sets.stations = {"station"};
  Scenario s = blank(sets);

  for (int g = 0; g < ng; ++g) {
    s.energy.pv_mask[g] = pick(3) != 0;
    s.energy.wind_mask[g] = !s.energy.pv_mask[g] || pick(2);
    s.energy.esp_cap(g, 0) = s.energy.pv_mask[g] ? uni(3000, 8000) : 0.0;
    s.energy.esp_cap(g, 1) = s.energy.wind_mask[g] ? uni(2000, 6000) : 0.0;
    s.water.srf_vul[g] = 1 + pick(3);
    s.water.sot_vul[g] = 1 + pick(3);
  }
  for (int t = 0; t < nt; ++t) {
    const double share = ng == 1 ? 1.0 : uni(0.2, 0.8);
    s.demand.tpop(0, t) = share;
    if (ng == 2) s.demand.tpop(1, t) = 1.0 - share;
    s.demand.growth[t] = t == 0 ? 1.0 : uni(1.0, 1.4);
    s.demand.tour_growth[t] = s.demand.growth[t];
  }
  if (ng == 2) {
    const double a = uni(0.1, 0.9);
    s.demand.g_tour = {a, 1.0 - a};
    set_distance(s, 0, 1, std::round(uni(20, 120)));
    // One grid only consumes: it neither exports nor produces.
    const int sink = pick(2);
    s.geo.export_ban[sink] = true;
    s.geo.first_production_period[sink] = pick(2) ? nt : 0;
  }
  set_fuel(s, uni(20, 45) * ng, uni(0.1, 0.3));
  for (std::size_t k = 0; k < 3; ++k) {
    for (int t = 0; t < nt; ++t) s.energy.price(k, t) *= uni(0.8, 1.25);
  }
  s.options.storage_autonomy_days = pick(2) ? 1.0 : 0.5;
  s.tech.discount_rate = uni(0.0, 0.06);
  s.tech.inflation_rate = uni(0.0, 0.03);
  fill_tech(s, 1 + pick(2), 1, 1, 1);
  for (auto& row : s.tech.production) {
    row.opex_eur_per_kg *= uni(0.8, 1.2);
    row.risk_per_unit *= uni(0.5, 1.5);
  }
  // One unit of each must cover a grid's peak month.
  for (auto& row : s.tech.storage) row.capacity_kg = 300.0;
  for (auto& row : s.tech.stations) row.capacity_kg_day = 250.0;
  return s;
}

}  // namespace

Scenario oracle_candidate(std::uint32_t seed) { return random_small(seed); }

Scenario undiscounted(std::uint32_t seed) {
  Scenario s = random_small(seed);
  s.tech.discount_rate = 0.0;
  s.tech.inflation_rate = 0.0;
  return s;
}

}  // namespace hsc::desk
