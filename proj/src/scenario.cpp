#include "hsc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "hsc/demand.hpp"
#include "hsc/error.hpp"

namespace hsc {

namespace {

template <class T>
std::size_t find_label(const std::vector<T>& labels, const T& key,
                       const char* set_name) {
  auto it = std::find(labels.begin(), labels.end(), key);
  if (it == labels.end()) {
    std::ostringstream os;
    os << "unknown " << set_name << " '" << key << "'";
    throw IndexError(os.str());
  }
  return static_cast<std::size_t>(it - labels.begin());
}

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::size_t Sets::grid_index(const std::string& label) const {
  return find_label(grids, label, "grid");
}
std::size_t Sets::period_index(int year) const {
  return find_label(periods, year, "period");
}
std::size_t Sets::month_index(int month) const {
  return find_label(months, month, "month");
}
std::size_t Sets::source_index(const std::string& name) const {
  return find_label(sources, name, "energy source");
}
std::size_t Sets::technology_index(const std::string& name) const {
  return find_label(technologies, name, "technology");
}
std::size_t Sets::size_index(const std::string& name) const {
  return find_label(sizes, name, "size");
}
std::size_t Sets::form_index(const std::string& name) const {
  return find_label(forms, name, "form");
}
std::size_t Sets::mode_index(const std::string& name) const {
  return find_label(modes, name, "transport mode");
}
std::size_t Sets::storage_index(const std::string& name) const {
  return find_label(storage, name, "storage technology");
}
std::size_t Sets::station_index(const std::string& name) const {
  return find_label(stations, name, "station technology");
}

bool GeographyMasks::production_banned(std::size_t j, std::size_t g,
                                       std::size_t t) const {
  if (static_cast<int>(t) < first_production_period.at(g)) return true;
  return centralized_size.at(j) && !central.at(g);
}

const ProductionTech& Scenario::production(std::size_t p, std::size_t j,
                                           std::size_t i) const {
  const std::size_t nj = sets.sizes.size();
  const std::size_t ni = sets.forms.size();
  return tech.production.at((p * nj + j) * ni + i);
}

const StorageTech& Scenario::storage(std::size_t s, std::size_t j) const {
  return tech.storage.at(s * sets.sizes.size() + j);
}

const StationTech& Scenario::station(std::size_t fs, std::size_t j) const {
  return tech.stations.at(fs * sets.sizes.size() + j);
}

const TransportTech* Scenario::transport(std::size_t i, std::size_t l) const {
  for (const auto& tr : tech.transport) {
    if (tr.form == i && tr.mode == l) return &tr;
  }
  return nullptr;
}

std::size_t Scenario::pv_source() const {
  auto it = std::find(sets.sources.begin(), sets.sources.end(), "PV");
  return it == sets.sources.end() ? std::string::npos
                                  : static_cast<std::size_t>(it - sets.sources.begin());
}

std::size_t Scenario::wind_source() const {
  auto it = std::find(sets.sources.begin(), sets.sources.end(), "Wind");
  return it == sets.sources.end() ? std::string::npos
                                  : static_cast<std::size_t>(it - sets.sources.begin());
}

double Scenario::capacity_factor(std::size_t e, int month) const {
  if (e == pv_source()) return energy.pv_cf.at(month - 1);
  if (e == wind_source()) return energy.wind_cf.at(month - 1);
  return 0.0;  // grid imports are fixed to zero
}

double Scenario::month_hours(int month) const {
  return energy.month_hours.at(month - 1);
}

double Scenario::month_days(int month) const {
  return energy.month_days.at(month - 1);
}

double max_cw_for(WaterRestriction restriction) {
  switch (restriction) {
    case WaterRestriction::kCap0_1:
      return 0.001;
    case WaterRestriction::kCap0_05:
      return 0.0005;
    case WaterRestriction::kOff:
      break;
  }
  return 0.0;
}

namespace {

class Reporter {
 public:
  explicit Reporter(ValidationReport& out) : out_(out) {}
  void add(const std::string& rule, const std::string& message) {
    out_.push_back({rule, message});
  }
  void require(bool ok, const std::string& rule, const std::string& message) {
    if (!ok) add(rule, message);
  }

 private:
  ValidationReport& out_;
};

bool is_fraction(double v) { return v >= 0.0 && v <= 1.0; }

void check_sets(const Scenario& s, Reporter& r) {
  const Sets& x = s.sets;
  auto nonempty = [&](std::size_t n, const char* name) {
    r.require(n > 0, "sets.nonempty", std::string("set ") + name + " is empty");
  };
  nonempty(x.grids.size(), "grids");
  nonempty(x.periods.size(), "periods");
  nonempty(x.months.size(), "months");
  nonempty(x.sources.size(), "sources");
  nonempty(x.technologies.size(), "technologies");
  nonempty(x.sizes.size(), "sizes");
  nonempty(x.forms.size(), "forms");
  nonempty(x.modes.size(), "modes");
  nonempty(x.storage.size(), "storage");
  nonempty(x.stations.size(), "stations");

  auto unique = [&](const std::vector<std::string>& v, const char* name) {
    std::set<std::string> seen(v.begin(), v.end());
    r.require(seen.size() == v.size(), "sets.unique",
              std::string("duplicate identifiers in set ") + name);
  };
  unique(x.grids, "grids");
  unique(x.sources, "sources");
  unique(x.technologies, "technologies");
  unique(x.sizes, "sizes");
  unique(x.forms, "forms");
  unique(x.modes, "modes");
  unique(x.storage, "storage");
  unique(x.stations, "stations");
  for (std::size_t t = 1; t < x.periods.size(); ++t) {
    r.require(x.periods[t] > x.periods[t - 1], "sets.periods",
              "periods must be strictly increasing at " +
                  std::to_string(x.periods[t]));
  }
  std::set<int> months;
  for (int m : x.months) {
    r.require(m >= 1 && m <= kMonthsPerYear, "sets.months",
              "month " + std::to_string(m) + " outside 1..12");
    r.require(months.insert(m).second, "sets.months",
              "duplicate month " + std::to_string(m));
  }
}

// Shapes must match the sets before any indexed rule can run.
bool check_shapes(const Scenario& s, Reporter& r) {
  const std::size_t ng = s.sets.grids.size();
  const std::size_t nt = s.sets.periods.size();
  const std::size_t ne = s.sets.sources.size();
  const std::size_t np = s.sets.technologies.size();
  const std::size_t nj = s.sets.sizes.size();
  const std::size_t ni = s.sets.forms.size();
  bool ok = true;
  auto need = [&](bool cond, const std::string& what) {
    if (!cond) {
      r.add("tables.complete", what + " does not match the declared sets");
      ok = false;
    }
  };
  const auto& d = s.demand;
  need(d.tpop.extent(0) == ng && d.tpop.extent(1) == nt, "Tpop");
  need(d.sfc_tour.extent(0) == nt && d.sfc_tour.extent(1) == kMonthsPerYear,
       "SFCtour");
  need(d.g_tour.size() == ng, "Gtour");
  need(d.growth.size() == nt, "growth");
  need(d.tour_growth.size() == nt, "tour_growth");
  const auto& e = s.energy;
  need(e.esp_cap.extent(0) == ng && e.esp_cap.extent(1) == ne, "ESPcap");
  need(e.eco.extent(0) == nt && e.eco.extent(1) == ne, "eCo");
  need(e.pv_mask.size() == ng && e.wind_mask.size() == ng, "site masks");
  need(e.price.extent(0) == ne && e.price.extent(1) == nt, "price");
  need(e.emission_factor.size() == ne, "EF");
  const auto& w = s.water;
  need(w.srf_vul.size() == ng, "SRFWaterVul");
  need(w.sot_vul.size() == ng, "SOTWaterVul");
  need(w.vul_saison.extent(0) == ng &&
           w.vul_saison.extent(1) == kMonthsPerYear,
       "VulSaison");
  need(w.clean_water.size() == nt, "CleanWater");
  const auto& tech = s.tech;
  need(tech.production.size() == np * nj * ni, "tech_production");
  need(tech.storage.size() == s.sets.storage.size() * nj, "tech_storage");
  need(tech.stations.size() == s.sets.stations.size() * nj, "tech_station");
  need(tech.years_per_period.size() == nt, "years_per_period");
  need(tech.distance_km.extent(0) == ng && tech.distance_km.extent(1) == ng,
       "distances");
  const auto& geo = s.geo;
  need(geo.first_production_period.size() == ng && geo.central.size() == ng &&
           geo.export_ban.size() == ng && geo.demand_grid.size() == ng,
       "geography");
  need(geo.centralized_size.size() == nj, "centralized_sizes");
  return ok;
}

void check_demand(const Scenario& s, Reporter& r) {
  const auto& d = s.demand;
  const auto& sets = s.sets;
  for (std::size_t t = 0; t < sets.periods.size(); ++t) {
    double sum = 0.0;
    for (std::size_t g = 0; g < sets.grids.size(); ++g) {
      sum += d.tpop(g, t);
      r.require(is_fraction(d.tpop(g, t)), "demand.fraction",
                "Tpop outside [0,1] at g=" + sets.grids[g] +
                    ", t=" + std::to_string(sets.periods[t]));
    }
    r.require(std::abs(sum - 1.0) <= 1e-9, "demand.tpop_sum",
              "Tpop sum \xE2\x89\xA0 1 at t=" + std::to_string(sets.periods[t]) +
                  " (sum " + num(sum) + ")");
    double sfc = 0.0;
    for (int m = 0; m < kMonthsPerYear; ++m) {
      sfc += d.sfc_tour(t, m);
      r.require(is_fraction(d.sfc_tour(t, m)), "demand.fraction",
                "SFCtour outside [0,1] at t=" + std::to_string(sets.periods[t]) +
                    ", m=" + std::to_string(m + 1));
    }
    r.require(std::abs(sfc - 1.0) <= 1e-6, "demand.sfc_sum",
              "SFCtour sum \xE2\x89\xA0 1 at t=" + std::to_string(sets.periods[t]));
    r.require(d.growth[t] > 0.0 && d.tour_growth[t] > 0.0, "demand.growth",
              "growth multipliers must be positive at t=" +
                  std::to_string(sets.periods[t]));
  }
  double gsum = 0.0;
  for (std::size_t g = 0; g < sets.grids.size(); ++g) {
    gsum += d.g_tour[g];
    r.require(is_fraction(d.g_tour[g]), "demand.fraction",
              "Gtour outside [0,1] at g=" + sets.grids[g]);
  }
  r.require(std::abs(gsum - 1.0) <= 1e-3, "demand.gtour_sum",
            "Gtour sum \xE2\x89\xA0 1 (sum " + num(gsum) + ")");
  r.require(d.fc_res >= 0 && d.fc_gds >= 0 && d.fc_tour >= 0, "demand.fuel",
            "fuel consumptions must be non-negative");
  r.require(d.e_toe > 0, "demand.etoe", "Etoe must be positive");
  r.require(d.fhv > 0, "demand.fhv", "FHV must be positive");
  r.require(d.r_sub > 0 && d.r_sub < 1, "demand.rsub", "Rsub must lie in (0,1)");
}

void check_energy(const Scenario& s, Reporter& r) {
  const auto& e = s.energy;
  const auto& sets = s.sets;
  double hours = 0.0;
  for (int m = 0; m < kMonthsPerYear; ++m) {
    const std::string month = std::to_string(m + 1);
    r.require(is_fraction(e.pv_cf[m]), "energy.cf", "PVCF outside [0,1] at m=" + month);
    r.require(is_fraction(e.wind_cf[m]), "energy.cf",
              "WindCF outside [0,1] at m=" + month);
    const double nd = e.month_days[m];
    r.require(nd == 28 || nd == 29 || nd == 30 || nd == 31, "energy.days",
              "Nd must be 28..31 at m=" + month);
    hours += e.month_hours[m];
  }
  r.require(hours == 8760.0 || hours == 8784.0, "energy.hours",
            "month hours sum to " + num(hours) + ", expected 8760 or 8784");
  for (std::size_t k = 0; k < sets.sources.size(); ++k) {
    for (std::size_t t = 0; t < sets.periods.size(); ++t) {
      r.require(e.eco(t, k) >= 0, "energy.eco",
                "eCo negative at t=" + std::to_string(sets.periods[t]) +
                    ", e=" + sets.sources[k]);
      if (t > 0) {
        r.require(e.eco(t, k) >= e.eco(t - 1, k), "energy.eco",
                  "eCo decreases at t=" + std::to_string(sets.periods[t]) +
                      ", e=" + sets.sources[k]);
      }
      r.require(e.price(k, t) > 0, "energy.price",
                "electricity price must be positive at e=" + sets.sources[k] +
                    ", t=" + std::to_string(sets.periods[t]));
    }
    r.require(e.emission_factor[k] >= 0, "energy.ef",
              "emission factor negative for " + sets.sources[k]);
    for (std::size_t g = 0; g < sets.grids.size(); ++g) {
      r.require(e.esp_cap(g, k) >= 0, "energy.capacity",
                "ESPcap negative at g=" + sets.grids[g] + ", e=" + sets.sources[k]);
    }
  }
  r.require(e.er >= 0, "energy.er", "er must be non-negative");
}

void check_water(const Scenario& s, Reporter& r) {
  const auto& w = s.water;
  const auto& sets = s.sets;
  r.require(std::abs(w.surface_share + w.ground_share - 1.0) <= 1e-12,
            "water.shares", "surfaceShare + groundShare \xE2\x89\xA0 1");
  auto integral_in = [](double v, double lo, double hi) {
    return v == std::floor(v) && v >= lo && v <= hi;
  };
  for (std::size_t g = 0; g < sets.grids.size(); ++g) {
    r.require(integral_in(w.srf_vul[g], 1, 3), "water.index",
              "SRFWaterVul not in {1,2,3} at g=" + sets.grids[g]);
    r.require(integral_in(w.sot_vul[g], 1, 3), "water.index",
              "SOTWaterVul not in {1,2,3} at g=" + sets.grids[g]);
    for (int m = 0; m < kMonthsPerYear; ++m) {
      r.require(integral_in(w.vul_saison(g, m), 1, 2), "water.index",
                "VulSaison not in {1,2} at g=" + sets.grids[g] +
                    ", m=" + std::to_string(m + 1));
    }
  }
  for (std::size_t t = 0; t < sets.periods.size(); ++t) {
    r.require(w.clean_water[t] > 0, "water.clean",
              "CleanWater must be positive at t=" + std::to_string(sets.periods[t]));
  }
  r.require(w.elwuc > 0, "water.elwuc", "ELWUC must be positive");
  r.require(w.min_cw >= 0 && w.min_cw <= 1 && w.max_cw >= 0 && w.max_cw <= 1,
            "water.withdrawal", "withdrawal rates must lie in [0,1]");
  r.require(w.vul_min <= w.vul_max, "water.bounds",
            "WaterVulMin exceeds WaterVulMax");
  r.require(w.water_price > 0, "water.price", "waterPrice must be positive");
}

void check_tech(const Scenario& s, Reporter& r) {
  const auto& sets = s.sets;
  const auto& tech = s.tech;
  double min_hours = s.energy.month_hours[0];
  int min_month = 1;
  for (int m = 1; m < kMonthsPerYear; ++m) {
    if (s.energy.month_hours[m] < min_hours) {
      min_hours = s.energy.month_hours[m];
      min_month = m + 1;
    }
  }
  for (std::size_t p = 0; p < sets.technologies.size(); ++p) {
    for (std::size_t j = 0; j < sets.sizes.size(); ++j) {
      for (std::size_t i = 0; i < sets.forms.size(); ++i) {
        const auto& row = s.production(p, j, i);
        const std::string key = sets.technologies[p] + "," + sets.sizes[j] +
                                "," + sets.forms[i];
        r.require(row.p_elec_kw > 0 && row.capex_eur_per_kw > 0 &&
                      row.opex_eur_per_kg > 0 && row.gamma_kwh_per_kg > 0 &&
                      row.lifetime_h > 0,
                  "tech.positive",
                  "production capacities and prices must be positive (" + key + ")");
        r.require(row.elcf_min_h >= 0 && row.elcf_min_h <= row.elcf_max_h,
                  "tech.elcf", "ELCFmin exceeds ELCFmax (" + key + ")");
        r.require(row.elcf_max_h <= min_hours, "tech.elcf",
                  "ELCFmax exceeds month hours (" + key + ": " +
                      num(row.elcf_max_h) + " > " + num(min_hours) +
                      " in month " + std::to_string(min_month) + ")");
        r.require(row.ghg_kg_per_kg >= 0 && row.ghg_kg_per_unit_day >= 0 &&
                      row.risk_per_unit >= 0 && row.risk_per_kg >= 0,
                  "tech.factors", "negative emission/risk factor (" + key + ")");
        r.require(row.max_units >= 0, "tech.max_units",
                  "max_units negative (" + key + ")");
      }
    }
  }
  for (std::size_t k = 0; k < sets.storage.size(); ++k) {
    for (std::size_t j = 0; j < sets.sizes.size(); ++j) {
      const auto& row = s.storage(k, j);
      const std::string key = sets.storage[k] + "," + sets.sizes[j];
      r.require(row.capacity_kg > 0 && row.capex_eur_per_kg > 0 &&
                    row.opex_eur_per_kg > 0,
                "tech.positive", "storage capacities and prices must be positive (" +
                                     key + ")");
      r.require(row.form < sets.forms.size(), "tech.form",
                "storage form out of range (" + key + ")");
      r.require(row.ghg_kg_per_kg >= 0 && row.ghg_kg_per_unit_day >= 0 &&
                    row.risk_per_unit >= 0 && row.risk_per_kg >= 0,
                "tech.factors", "negative emission/risk factor (" + key + ")");
    }
  }
  for (std::size_t k = 0; k < sets.stations.size(); ++k) {
    for (std::size_t j = 0; j < sets.sizes.size(); ++j) {
      const auto& row = s.station(k, j);
      const std::string key = sets.stations[k] + "," + sets.sizes[j];
      r.require(row.capacity_kg_day > 0 && row.capex_eur > 0 &&
                    row.opex_eur_per_kg > 0,
                "tech.positive", "station capacities and prices must be positive (" +
                                     key + ")");
      r.require(row.form < sets.forms.size(), "tech.form",
                "station form out of range (" + key + ")");
    }
  }
  for (const auto& tr : tech.transport) {
    const bool in_range = tr.form < sets.forms.size() && tr.mode < sets.modes.size();
    r.require(in_range, "tech.transport", "transport row references an unknown form/mode");
    if (!in_range) continue;
    const std::string key = sets.forms[tr.form] + "," + sets.modes[tr.mode];
    r.require(tr.tcap_kg > 0 && tr.capex_eur > 0 && tr.speed_kmh > 0 &&
                  tr.availability_h_day > 0 && tr.lifetime_years > 0 &&
                  tr.retrofit_capex_eur > 0,
              "tech.positive", "transport capacities and prices must be positive (" +
                                   key + ")");
    r.require(tr.load_unload_h >= 0 && tr.driver_wage_eur_h >= 0 &&
                  tr.fuel_eur_km >= 0 && tr.maint_eur_km >= 0 &&
                  tr.general_eur_day >= 0 && tr.ghg_kg_per_km >= 0 &&
                  tr.risk_per_unit >= 0 && tr.risk_per_kg >= 0 &&
                  tr.retrofit_maint_eur_km >= 0,
              "tech.factors", "negative transport parameter (" + key + ")");
  }
  const std::size_t ng = sets.grids.size();
  for (std::size_t a = 0; a < ng; ++a) {
    r.require(tech.distance_km(a, a) == 0.0, "tech.distance",
              "AD diagonal nonzero at g=" + sets.grids[a]);
    for (std::size_t b = a + 1; b < ng; ++b) {
      r.require(tech.distance_km(a, b) == tech.distance_km(b, a), "tech.distance",
                "AD not symmetric for pair (" + sets.grids[a] + "," +
                    sets.grids[b] + ")");
      r.require(tech.distance_km(a, b) >= 0, "tech.distance",
                "AD negative for pair (" + sets.grids[a] + "," + sets.grids[b] + ")");
    }
  }
  for (std::size_t t = 0; t < sets.periods.size(); ++t) {
    r.require(tech.years_per_period[t] > 0, "tech.years",
              "years per period must be positive at t=" +
                  std::to_string(sets.periods[t]));
  }
  r.require(tech.discount_rate > -1 && tech.inflation_rate > -1, "tech.rates",
            "discount and inflation rates must exceed -1");
  r.require(tech.fcev_cons_kg_per_100km > 0, "tech.fcev",
            "FCEVCons must be positive");
  r.require(tech.stack_replacement_share >= 0, "tech.stack",
            "stack replacement share must be non-negative");
  const auto& c = tech.conversion;
  r.require(c.compressor_capex_eur > 0 && c.compressor_capacity_kg_day > 0 &&
                c.compressor_opex_eur_per_kg > 0 && c.compressor_kwh_per_kg > 0 &&
                c.liquefier_capex_eur_per_kg_day > 0 &&
                c.liquefier_kwh_per_kg > 0 && c.lifetime_years > 0 &&
                c.liquefier_opex_eur_per_kg >= 0,
            "tech.positive", "conversion parameters must be positive");
}

void check_options(const Scenario& s, Reporter& r) {
  r.require(s.options.storage_autonomy_days >= 0, "options.autonomy",
            "storage autonomy must be non-negative");
  for (std::size_t g = 0; g < s.sets.grids.size(); ++g) {
    r.require(s.geo.first_production_period[g] >= 0, "geography.period",
              "first production period negative at g=" + s.sets.grids[g]);
  }
}

}  // namespace

ValidationReport validate_scenario(const Scenario& s) {
  ValidationReport report;
  Reporter r(report);
  check_sets(s, r);
  if (!check_shapes(s, r)) return report;
  check_demand(s, r);
  check_energy(s, r);
  check_water(s, r);
  check_tech(s, r);
  check_options(s, r);
  return report;
}

Scenario calibrate_demand_totals(const Scenario& s, double target_kg_per_day,
                                 int year) {
  if (!(target_kg_per_day > 0)) {
    throw DomainError("calibration target must be positive");
  }
  const std::size_t t = s.sets.period_index(year);
  const double current = annual_mean_total(s, t);
  if (!(current > 0)) {
    throw DomainError("cannot calibrate from zero fuel data");
  }
  Scenario out = s;
  const double k = target_kg_per_day / current;
  out.demand.fc_res *= k;
  out.demand.fc_gds *= k;
  out.demand.fc_tour *= k;
  return out;
}

}  // namespace hsc
