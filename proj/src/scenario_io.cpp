#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "hsc/error.hpp"
#include "hsc/scenario.hpp"
#include "table_io.hpp"

namespace hsc {

namespace fs = std::filesystem;

namespace {

std::string to_text(double v) { return io::format_number(v); }

// Collects missing keys of one table so the error lists all of them at once.
class MissingKeys {
 public:
  explicit MissingKeys(std::string table) : table_(std::move(table)) {}
  void add(const std::string& key) { keys_.push_back(key); }
  void raise_if_any() const {
    if (keys_.empty()) return;
    std::string joined;
    for (std::size_t k = 0; k < keys_.size(); ++k) {
      if (k) joined += ", ";
      if (k == 20) {
        joined += "... (" + std::to_string(keys_.size()) + " total)";
        break;
      }
      joined += keys_[k];
    }
    throw MissingDataError(table_, joined);
  }

 private:
  std::string table_;
  std::vector<std::string> keys_;
};

// `param index value` tables; index is a comma-joined key tuple or `-`.
class LongTable {
 public:
  LongTable(const fs::path& path, const std::string& name,
            const std::set<std::string>& known)
      : name_(name), missing_(name) {
    const io::Table t = io::read_table(path, name);
    const std::size_t cp = t.column("param");
    const std::size_t ci = t.column("index");
    const std::size_t cv = t.column("value");
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      const std::string& param = t.cell(r, cp);
      if (!known.count(param)) {
        throw ParseError(name, t.lines[r], static_cast<int>(cp) + 1,
                               "unknown parameter '" + param + "'");
      }
      const std::string& index = t.cell(r, ci);
      auto& slot = values_[param];
      if (slot.count(index)) {
        throw ParseError(name, t.lines[r], static_cast<int>(ci) + 1,
                               "duplicate entry " + param + "[" + index + "]");
      }
      slot[index] = t.number(r, cv);
    }
  }

  bool has(const std::string& param) const { return values_.count(param) > 0; }

  std::optional<double> find(const std::string& param,
                             const std::string& index) const {
    auto p = values_.find(param);
    if (p == values_.end()) return std::nullopt;
    auto v = p->second.find(index);
    if (v == p->second.end()) return std::nullopt;
    return v->second;
  }

  double scalar(const std::string& param, std::optional<double> fallback) {
    return get(param, "-", fallback);
  }

  double get(const std::string& param, const std::string& index,
             std::optional<double> fallback) {
    if (auto v = find(param, index)) return *v;
    if (fallback) return *fallback;
    missing_.add(index == "-" ? param : param + "[" + index + "]");
    return 0.0;
  }

  void finish() const { missing_.raise_if_any(); }

 private:
  std::string name_;
  std::map<std::string, std::map<std::string, double>> values_;
  MissingKeys missing_;
};

std::string key(const std::string& a) { return a; }
std::string key(const std::string& a, const std::string& b) { return a + "," + b; }
std::string year(int y) { return std::to_string(y); }
std::string month(int m) { return std::to_string(m); }

// Standard calendar used when Mh/Nd are omitted.
constexpr std::array<double, kMonthsPerYear> kDays = {31, 28, 31, 30, 31, 30,
                                                      31, 31, 30, 31, 30, 31};

std::vector<int> parse_ints(const io::ConfFile& conf, const std::string& k) {
  std::vector<int> out;
  const int line = conf.entries.at(k).line;
  for (const auto& tok : conf.list(k)) {
    const double v = io::parse_number(tok, conf.name, line, 0);
    if (v != static_cast<int>(v)) {
      throw ParseError(conf.name, line, 0, "expected integer in " + k);
    }
    out.push_back(static_cast<int>(v));
  }
  return out;
}

Sets load_sets(const fs::path& dir) {
  const io::ConfFile conf = io::read_conf(dir / "sets.conf", "sets.conf");
  MissingKeys missing("sets.conf");
  for (const char* k : {"grids", "periods", "months", "sources", "technologies",
                        "sizes", "forms", "modes", "storage", "stations"}) {
    if (!conf.has(k)) missing.add(k);
  }
  missing.raise_if_any();
  Sets s;
  s.grids = conf.list("grids");
  s.periods = parse_ints(conf, "periods");
  s.months = parse_ints(conf, "months");
  s.sources = conf.list("sources");
  s.technologies = conf.list("technologies");
  s.sizes = conf.list("sizes");
  s.forms = conf.list("forms");
  s.modes = conf.list("modes");
  s.storage = conf.list("storage");
  s.stations = conf.list("stations");
  return s;
}

bool parse_switch(const io::ConfFile& conf, const std::string& k) {
  const std::string& v = conf.text(k);
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw ParseError(conf.name, conf.entries.at(k).line, 0,
                         k + " must be on/off, got '" + v + "'");
}

WaterRestriction parse_restriction(const std::string& v, const std::string& file,
                                   int line) {
  if (v == "off") return WaterRestriction::kOff;
  if (v == "0.1") return WaterRestriction::kCap0_1;
  if (v == "0.05") return WaterRestriction::kCap0_05;
  throw ParseError(file, line, 0,
                         "water_restriction must be off, 0.1 or 0.05, got '" + v + "'");
}

std::string restriction_text(WaterRestriction w) {
  switch (w) {
    case WaterRestriction::kCap0_1:
      return "0.1";
    case WaterRestriction::kCap0_05:
      return "0.05";
    case WaterRestriction::kOff:
      break;
  }
  return "off";
}

void load_options(const fs::path& dir, Scenario& s) {
  const io::ConfFile conf = io::read_conf(dir / "options.conf", "options.conf");
  auto& o = s.options;
  if (conf.has("retrofit")) o.retrofit = parse_switch(conf, "retrofit");
  if (conf.has("water_restriction")) {
    o.water = parse_restriction(conf.text("water_restriction"), conf.name,
                                conf.entries.at("water_restriction").line);
  }
  o.storage_autonomy_days = conf.number_or("storage_autonomy_days", 3.0);
  if (conf.has("heating_value_mode")) {
    const std::string& v = conf.text("heating_value_mode");
    if (v == "divide") {
      o.heating_value = HeatingValueMode::kDivide;
    } else if (v == "multiply") {
      o.heating_value = HeatingValueMode::kMultiply;
    } else {
      throw ParseError(conf.name, conf.entries.at("heating_value_mode").line,
                             0, "heating_value_mode must be divide or multiply");
    }
  }
  auto& t = s.tech;
  t.discount_rate = conf.number_or("discount_rate", 0.0);
  t.inflation_rate = conf.number_or("inflation_rate", 0.0);
  t.fcev_cons_kg_per_100km = conf.number_or("fcev_cons_kg_per_100km", 13.2);
  t.stack_replacement_share = conf.number_or("stack_replacement_share", 0.35);
  if (conf.has("years_per_period")) {
    t.years_per_period = conf.number_list("years_per_period");
  } else {
    t.years_per_period.assign(s.sets.periods.size(), 1.0);
  }
  auto& c = t.conversion;
  c.compressor_capex_eur = conf.number_or("compressor_capex_eur", c.compressor_capex_eur);
  c.compressor_capacity_kg_day =
      conf.number_or("compressor_capacity_kg_day", c.compressor_capacity_kg_day);
  c.compressor_opex_eur_per_kg =
      conf.number_or("compressor_opex_eur_per_kg", c.compressor_opex_eur_per_kg);
  c.compressor_kwh_per_kg = conf.number_or("compressor_kwh_per_kg", c.compressor_kwh_per_kg);
  c.liquefier_capex_eur_per_kg_day =
      conf.number_or("liquefier_capex_eur_per_kg_day", c.liquefier_capex_eur_per_kg_day);
  c.liquefier_opex_eur_per_kg =
      conf.number_or("liquefier_opex_eur_per_kg", c.liquefier_opex_eur_per_kg);
  c.liquefier_kwh_per_kg = conf.number_or("liquefier_kwh_per_kg", c.liquefier_kwh_per_kg);
  c.lifetime_years = conf.number_or("conversion_lifetime_years", c.lifetime_years);

  s.geo.centralized_size.assign(s.sets.sizes.size(), false);
  if (conf.has("centralized_sizes")) {
    for (const auto& name : conf.list("centralized_sizes")) {
      s.geo.centralized_size[s.sets.size_index(name)] = true;
    }
  }
}

void load_demand(const fs::path& dir, Scenario& s) {
  LongTable t(dir / "demand.tsv", "demand.tsv",
              {"FCres", "FCgds", "FCmar", "FCtour", "Etoe", "FHV", "Rsub", "Tpop",
               "SFCtour", "Gtour", "growth", "tour_growth"});
  const auto& sets = s.sets;
  auto& d = s.demand;
  d.fc_res = t.scalar("FCres", std::nullopt);
  // FCmar is the nomenclature's name for the same goods term.
  if (t.has("FCgds") || !t.has("FCmar")) {
    d.fc_gds = t.scalar("FCgds", std::nullopt);
  } else {
    d.fc_gds = t.scalar("FCmar", std::nullopt);
  }
  d.fc_tour = t.scalar("FCtour", std::nullopt);
  d.e_toe = t.scalar("Etoe", 11630.0);
  d.fhv = t.scalar("FHV", 33.33);
  d.r_sub = t.scalar("Rsub", 0.025);
  const std::size_t ng = sets.grids.size();
  const std::size_t nt = sets.periods.size();
  d.tpop = Tensor<2>({ng, nt});
  d.g_tour.assign(ng, 0.0);
  for (std::size_t g = 0; g < ng; ++g) {
    for (std::size_t k = 0; k < nt; ++k) {
      d.tpop(g, k) = t.get("Tpop", key(sets.grids[g], year(sets.periods[k])), std::nullopt);
    }
    d.g_tour[g] = t.get("Gtour", sets.grids[g], std::nullopt);
  }
  d.sfc_tour = Tensor<2>({nt, static_cast<std::size_t>(kMonthsPerYear)});
  d.growth.assign(nt, 1.0);
  d.tour_growth.assign(nt, 1.0);
  for (std::size_t k = 0; k < nt; ++k) {
    const std::string y = year(sets.periods[k]);
    for (int m = 1; m <= kMonthsPerYear; ++m) {
      d.sfc_tour(k, m - 1) = t.get("SFCtour", key(y, month(m)), std::nullopt);
    }
    d.growth[k] = t.get("growth", y, 1.0);
    d.tour_growth[k] = t.get("tour_growth", y, 1.0);
  }
  t.finish();
}

void load_energy(const fs::path& dir, Scenario& s) {
  LongTable t(dir / "energy.tsv", "energy.tsv",
              {"ESPcap", "PVCF", "WindCF", "Mh", "Nd", "eCo", "er", "price", "EF"});
  const auto& sets = s.sets;
  auto& e = s.energy;
  const std::size_t ng = sets.grids.size();
  const std::size_t nt = sets.periods.size();
  const std::size_t ne = sets.sources.size();
  e.esp_cap = Tensor<2>({ng, ne});
  for (std::size_t g = 0; g < ng; ++g) {
    for (std::size_t k = 0; k < ne; ++k) {
      e.esp_cap(g, k) = t.get("ESPcap", key(sets.grids[g], sets.sources[k]), std::nullopt);
    }
  }
  for (int m = 1; m <= kMonthsPerYear; ++m) {
    e.pv_cf[m - 1] = t.get("PVCF", month(m), std::nullopt);
    e.wind_cf[m - 1] = t.get("WindCF", month(m), std::nullopt);
    e.month_days[m - 1] = t.get("Nd", month(m), kDays[m - 1]);
    e.month_hours[m - 1] = t.get("Mh", month(m), 24.0 * e.month_days[m - 1]);
  }
  e.eco = Tensor<2>({nt, ne});
  e.price = Tensor<2>({ne, nt});
  e.emission_factor.assign(ne, 0.0);
  for (std::size_t k = 0; k < ne; ++k) {
    for (std::size_t p = 0; p < nt; ++p) {
      const std::string y = year(sets.periods[p]);
      e.eco(p, k) = t.get("eCo", key(y, sets.sources[k]), 1.0);
      e.price(k, p) = t.get("price", key(sets.sources[k], y), std::nullopt);
    }
    e.emission_factor[k] = t.get("EF", sets.sources[k], 0.0);
  }
  e.er = t.scalar("er", 0.0);
  t.finish();
}

void load_water(const fs::path& dir, Scenario& s) {
  LongTable t(dir / "water.tsv", "water.tsv",
              {"SRFWaterVul", "SOTWaterVul", "VulSaison", "surfaceShare",
               "groundShare", "ELWUC", "CleanWater", "minCW", "WaterVulMin",
               "WaterVulMax", "waterPrice"});
  const auto& sets = s.sets;
  auto& w = s.water;
  const std::size_t ng = sets.grids.size();
  w.srf_vul.assign(ng, 0.0);
  w.sot_vul.assign(ng, 0.0);
  w.vul_saison = Tensor<2>({ng, static_cast<std::size_t>(kMonthsPerYear)});
  for (std::size_t g = 0; g < ng; ++g) {
    w.srf_vul[g] = t.get("SRFWaterVul", sets.grids[g], std::nullopt);
    w.sot_vul[g] = t.get("SOTWaterVul", sets.grids[g], std::nullopt);
    for (int m = 1; m <= kMonthsPerYear; ++m) {
      w.vul_saison(g, m - 1) = t.get("VulSaison", key(sets.grids[g], month(m)), 1.0);
    }
  }
  w.surface_share = t.scalar("surfaceShare", 0.8);
  w.ground_share = t.scalar("groundShare", 0.2);
  w.elwuc = t.scalar("ELWUC", 9.0);
  w.clean_water.assign(sets.periods.size(), 0.0);
  for (std::size_t k = 0; k < sets.periods.size(); ++k) {
    w.clean_water[k] = t.get("CleanWater", year(sets.periods[k]), 50.0);
  }
  w.min_cw = t.scalar("minCW", 0.0);
  w.vul_min = t.scalar("WaterVulMin", 1.0);
  w.vul_max = t.scalar("WaterVulMax", 5.0);
  w.water_price = t.scalar("waterPrice", 2.18);
  w.max_cw = max_cw_for(s.options.water);
  t.finish();
}

template <class T>
struct Field {
  const char* name;
  double T::*member;
};

const std::vector<Field<ProductionTech>>& production_fields() {
  static const std::vector<Field<ProductionTech>> f = {
      {"p_elec_kw", &ProductionTech::p_elec_kw},
      {"capex_eur_per_kw", &ProductionTech::capex_eur_per_kw},
      {"opex_eur_per_kg", &ProductionTech::opex_eur_per_kg},
      {"elcf_min_h", &ProductionTech::elcf_min_h},
      {"elcf_max_h", &ProductionTech::elcf_max_h},
      {"gamma_kwh_per_kg", &ProductionTech::gamma_kwh_per_kg},
      {"lifetime_h", &ProductionTech::lifetime_h},
      {"ghg_kg_per_kg", &ProductionTech::ghg_kg_per_kg},
      {"ghg_kg_per_unit_day", &ProductionTech::ghg_kg_per_unit_day},
      {"risk_per_unit", &ProductionTech::risk_per_unit},
      {"risk_per_kg", &ProductionTech::risk_per_kg},
  };
  return f;
}

const std::vector<Field<StorageTech>>& storage_fields() {
  static const std::vector<Field<StorageTech>> f = {
      {"capacity_kg", &StorageTech::capacity_kg},
      {"capex_eur_per_kg", &StorageTech::capex_eur_per_kg},
      {"opex_eur_per_kg", &StorageTech::opex_eur_per_kg},
      {"ghg_kg_per_kg", &StorageTech::ghg_kg_per_kg},
      {"ghg_kg_per_unit_day", &StorageTech::ghg_kg_per_unit_day},
      {"risk_per_unit", &StorageTech::risk_per_unit},
      {"risk_per_kg", &StorageTech::risk_per_kg},
  };
  return f;
}

const std::vector<Field<StationTech>>& station_fields() {
  static const std::vector<Field<StationTech>> f = {
      {"capacity_kg_day", &StationTech::capacity_kg_day},
      {"capex_eur", &StationTech::capex_eur},
      {"opex_eur_per_kg", &StationTech::opex_eur_per_kg},
  };
  return f;
}

const std::vector<Field<TransportTech>>& transport_fields() {
  static const std::vector<Field<TransportTech>> f = {
      {"tcap_kg", &TransportTech::tcap_kg},
      {"capex_eur", &TransportTech::capex_eur},
      {"speed_kmh", &TransportTech::speed_kmh},
      {"load_unload_h", &TransportTech::load_unload_h},
      {"availability_h_day", &TransportTech::availability_h_day},
      {"driver_wage_eur_h", &TransportTech::driver_wage_eur_h},
      {"fuel_eur_km", &TransportTech::fuel_eur_km},
      {"maint_eur_km", &TransportTech::maint_eur_km},
      {"general_eur_day", &TransportTech::general_eur_day},
      {"lifetime_years", &TransportTech::lifetime_years},
      {"ghg_kg_per_km", &TransportTech::ghg_kg_per_km},
      {"risk_per_unit", &TransportTech::risk_per_unit},
      {"risk_per_kg", &TransportTech::risk_per_kg},
      {"retrofit_capex_eur", &TransportTech::retrofit_capex_eur},
      {"retrofit_maint_eur_km", &TransportTech::retrofit_maint_eur_km},
  };
  return f;
}

// Wide technology table keyed by the leading label columns.
template <class T>
std::map<std::string, T> read_wide(const fs::path& path, const std::string& name,
                                   const std::vector<std::string>& key_cols,
                                   const std::vector<Field<T>>& fields,
                                   const std::function<void(T&, const io::Table&,
                                                            std::size_t)>& extra) {
  const io::Table t = io::read_table(path, name);
  std::vector<std::size_t> kc;
  for (const auto& c : key_cols) kc.push_back(t.column(c));
  std::vector<std::size_t> fc;
  for (const auto& f : fields) fc.push_back(t.column(f.name));
  std::map<std::string, T> out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    std::string k;
    for (std::size_t c = 0; c < kc.size(); ++c) {
      if (c) k += ",";
      k += t.cell(r, kc[c]);
    }
    T row{};
    for (std::size_t f = 0; f < fields.size(); ++f) {
      row.*(fields[f].member) = t.number(r, fc[f]);
    }
    extra(row, t, r);
    if (!out.emplace(k, row).second) {
      throw ParseError(name, t.lines[r], 1, "duplicate row " + k);
    }
  }
  return out;
}

int max_units_of(const io::Table& t, std::size_t r) {
  return t.integer(r, t.column("max_units"));
}

void load_tech(const fs::path& dir, Scenario& s) {
  const auto& sets = s.sets;
  auto& tech = s.tech;

  auto prod = read_wide<ProductionTech>(
      dir / "tech_production.tsv", "tech_production.tsv", {"technology", "size", "form"},
      production_fields(),
      [](ProductionTech& row, const io::Table& t, std::size_t r) {
        row.max_units = max_units_of(t, r);
      });
  MissingKeys miss_prod("tech_production.tsv");
  tech.production.clear();
  for (const auto& p : sets.technologies) {
    for (const auto& j : sets.sizes) {
      for (const auto& i : sets.forms) {
        const std::string k = p + "," + j + "," + i;
        auto it = prod.find(k);
        if (it == prod.end()) {
          miss_prod.add(k);
          tech.production.emplace_back();
        } else {
          tech.production.push_back(it->second);
        }
      }
    }
  }
  miss_prod.raise_if_any();

  auto form_of = [&sets](const io::Table& t, std::size_t r) {
    const std::string& label = t.cell(r, t.column("form"));
    try {
      return sets.form_index(label);
    } catch (const IndexError&) {
      throw ParseError(t.name, t.lines[r], static_cast<int>(t.column("form")) + 1,
                             "unknown form '" + label + "'");
    }
  };

  auto stor = read_wide<StorageTech>(
      dir / "tech_storage.tsv", "tech_storage.tsv", {"storage", "size"}, storage_fields(),
      [&](StorageTech& row, const io::Table& t, std::size_t r) {
        row.form = form_of(t, r);
        row.max_units = max_units_of(t, r);
      });
  MissingKeys miss_stor("tech_storage.tsv");
  tech.storage.clear();
  for (const auto& k : sets.storage) {
    for (const auto& j : sets.sizes) {
      auto it = stor.find(k + "," + j);
      if (it == stor.end()) {
        miss_stor.add(k + "," + j);
        tech.storage.emplace_back();
      } else {
        tech.storage.push_back(it->second);
      }
    }
  }
  miss_stor.raise_if_any();

  auto stat = read_wide<StationTech>(
      dir / "tech_station.tsv", "tech_station.tsv", {"station", "size"}, station_fields(),
      [&](StationTech& row, const io::Table& t, std::size_t r) {
        row.form = form_of(t, r);
        row.max_units = max_units_of(t, r);
      });
  MissingKeys miss_stat("tech_station.tsv");
  tech.stations.clear();
  for (const auto& k : sets.stations) {
    for (const auto& j : sets.sizes) {
      auto it = stat.find(k + "," + j);
      if (it == stat.end()) {
        miss_stat.add(k + "," + j);
        tech.stations.emplace_back();
      } else {
        tech.stations.push_back(it->second);
      }
    }
  }
  miss_stat.raise_if_any();

  // Transport pairs are sparse: an absent (form, mode) is simply unavailable.
  auto tr = read_wide<TransportTech>(
      dir / "tech_transport.tsv", "tech_transport.tsv", {"form", "mode"},
      transport_fields(), [&](TransportTech& row, const io::Table& t, std::size_t r) {
        row.form = form_of(t, r);
        const std::string& mode = t.cell(r, t.column("mode"));
        try {
          row.mode = sets.mode_index(mode);
        } catch (const IndexError&) {
          throw ParseError(t.name, t.lines[r],
                                 static_cast<int>(t.column("mode")) + 1,
                                 "unknown mode '" + mode + "'");
        }
        row.max_units = max_units_of(t, r);
      });
  tech.transport.clear();
  for (std::size_t i = 0; i < sets.forms.size(); ++i) {
    for (std::size_t l = 0; l < sets.modes.size(); ++l) {
      auto it = tr.find(sets.forms[i] + "," + sets.modes[l]);
      if (it != tr.end()) tech.transport.push_back(it->second);
    }
  }
}

void load_distances(const fs::path& dir, Scenario& s) {
  const io::Table t = io::read_table(dir / "distances.tsv", "distances.tsv");
  const std::size_t cf = t.column("from");
  const std::size_t ct = t.column("to");
  const std::size_t ck = t.column("km");
  const std::size_t ng = s.sets.grids.size();
  Tensor<2> given({ng, ng}, -1.0);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    std::size_t a = 0;
    std::size_t b = 0;
    try {
      a = s.sets.grid_index(t.cell(r, cf));
      b = s.sets.grid_index(t.cell(r, ct));
    } catch (const IndexError& e) {
      throw ParseError(t.name, t.lines[r], 1, e.what());
    }
    given(a, b) = t.number(r, ck);
  }
  auto& ad = s.tech.distance_km;
  ad = Tensor<2>({ng, ng});
  MissingKeys missing("distances.tsv");
  for (std::size_t a = 0; a < ng; ++a) {
    if (given(a, a) > 0) {
      throw ConfigError("distances.tsv: nonzero distance from grid " +
                        s.sets.grids[a] + " to itself");
    }
    for (std::size_t b = a + 1; b < ng; ++b) {
      const double ab = given(a, b);
      const double ba = given(b, a);
      if (ab >= 0 && ba >= 0 && ab != ba) {
        throw ConfigError("distances.tsv: asymmetric distance for pair (" +
                          s.sets.grids[a] + "," + s.sets.grids[b] + "): " +
                          to_text(ab) + " vs " + to_text(ba));
      }
      if (ab < 0 && ba < 0) {
        missing.add(s.sets.grids[a] + "-" + s.sets.grids[b]);
        continue;
      }
      ad(a, b) = ad(b, a) = ab >= 0 ? ab : ba;
    }
  }
  missing.raise_if_any();
}

bool parse_flag(const io::Table& t, std::size_t r, const std::string& col) {
  const double v = t.number(r, t.column(col));
  if (v != 0.0 && v != 1.0) {
    throw ParseError(t.name, t.lines[r], static_cast<int>(t.column(col)) + 1,
                           col + " must be 0 or 1");
  }
  return v == 1.0;
}

void load_geography(const fs::path& dir, Scenario& s) {
  const io::Table t = io::read_table(dir / "geography.tsv", "geography.tsv");
  const std::size_t ng = s.sets.grids.size();
  const int nt = static_cast<int>(s.sets.periods.size());
  auto& geo = s.geo;
  geo.first_production_period.assign(ng, 0);
  geo.central.assign(ng, true);
  geo.export_ban.assign(ng, false);
  s.energy.pv_mask.assign(ng, false);
  s.energy.wind_mask.assign(ng, false);
  std::vector<bool> seen(ng, false);
  const std::size_t cg = t.column("grid");
  const std::size_t cy = t.column("first_production_year");
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    std::size_t g = 0;
    try {
      g = s.sets.grid_index(t.cell(r, cg));
    } catch (const IndexError& e) {
      throw ParseError(t.name, t.lines[r], static_cast<int>(cg) + 1, e.what());
    }
    seen[g] = true;
    s.energy.pv_mask[g] = parse_flag(t, r, "pv_site");
    s.energy.wind_mask[g] = parse_flag(t, r, "wind_site");
    geo.central[g] = parse_flag(t, r, "central");
    geo.export_ban[g] = parse_flag(t, r, "export_ban");
    const std::string& first = t.cell(r, cy);
    if (first == "never") {
      geo.first_production_period[g] = nt;
    } else {
      const int y = t.integer(r, cy);
      int ord = 0;
      while (ord < nt && s.sets.periods[ord] < y) ++ord;
      geo.first_production_period[g] = ord;
    }
  }
  MissingKeys missing("geography.tsv");
  for (std::size_t g = 0; g < ng; ++g) {
    if (!seen[g]) missing.add(s.sets.grids[g]);
  }
  missing.raise_if_any();
}

void derive_demand_grids(Scenario& s) {
  const std::size_t ng = s.sets.grids.size();
  s.geo.demand_grid.assign(ng, false);
  for (std::size_t g = 0; g < ng; ++g) {
    bool any = s.demand.g_tour[g] > 0 && s.demand.fc_tour > 0;
    for (std::size_t t = 0; t < s.sets.periods.size(); ++t) {
      any = any || (s.demand.tpop(g, t) > 0 && s.demand.fc_res + s.demand.fc_gds > 0);
    }
    s.geo.demand_grid[g] = any;
  }
}

// ---- writing ----

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

std::string join_labels(const std::vector<std::string>& v) { return io::join(v, ','); }

std::string join_ints(const std::vector<int>& v) {
  std::vector<std::string> parts;
  for (int x : v) parts.push_back(std::to_string(x));
  return io::join(parts, ',');
}

class LongWriter {
 public:
  explicit LongWriter(const fs::path& path) : out_(open_out(path)) {
    out_ << "param\tindex\tvalue\n";
  }
  void put(const std::string& param, const std::string& index, double v) {
    out_ << param << '\t' << index << '\t' << to_text(v) << '\n';
  }
  void scalar(const std::string& param, double v) { put(param, "-", v); }

 private:
  std::ofstream out_;
};

template <class T>
void write_fields(std::ostream& out, const T& row, const std::vector<Field<T>>& fields) {
  for (const auto& f : fields) out << '\t' << to_text(row.*(f.member));
}

template <class T>
void write_header(std::ostream& out, const std::vector<std::string>& keys,
                  const std::vector<Field<T>>& fields, bool with_form) {
  out << io::join(keys, '\t');
  if (with_form) out << "\tform";
  for (const auto& f : fields) out << '\t' << f.name;
  out << "\tmax_units\n";
}

}  // namespace

Scenario load_scenario(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw IoError("scenario bundle not found: " + dir.string());
  }
  Scenario s;
  s.sets = load_sets(dir);
  load_options(dir, s);
  load_demand(dir, s);
  load_energy(dir, s);
  load_water(dir, s);
  load_tech(dir, s);
  load_distances(dir, s);
  load_geography(dir, s);
  derive_demand_grids(s);
  return s;
}

void write_scenario(const Scenario& s, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  const auto& sets = s.sets;

  {
    auto out = open_out(dir / "sets.conf");
    out << "grids = " << join_labels(sets.grids) << '\n'
        << "periods = " << join_ints(sets.periods) << '\n'
        << "months = " << join_ints(sets.months) << '\n'
        << "sources = " << join_labels(sets.sources) << '\n'
        << "technologies = " << join_labels(sets.technologies) << '\n'
        << "sizes = " << join_labels(sets.sizes) << '\n'
        << "forms = " << join_labels(sets.forms) << '\n'
        << "modes = " << join_labels(sets.modes) << '\n'
        << "storage = " << join_labels(sets.storage) << '\n'
        << "stations = " << join_labels(sets.stations) << '\n';
  }
  {
    const auto& o = s.options;
    const auto& t = s.tech;
    const auto& c = t.conversion;
    std::vector<std::string> years;
    for (double y : t.years_per_period) years.push_back(to_text(y));
    std::vector<std::string> central;
    for (std::size_t j = 0; j < sets.sizes.size(); ++j) {
      if (s.geo.centralized_size[j]) central.push_back(sets.sizes[j]);
    }
    auto out = open_out(dir / "options.conf");
    out << "retrofit = " << (o.retrofit ? "on" : "off") << '\n'
        << "water_restriction = " << restriction_text(o.water) << '\n'
        << "storage_autonomy_days = " << to_text(o.storage_autonomy_days) << '\n'
        << "heating_value_mode = "
        << (o.heating_value == HeatingValueMode::kDivide ? "divide" : "multiply") << '\n'
        << "discount_rate = " << to_text(t.discount_rate) << '\n'
        << "inflation_rate = " << to_text(t.inflation_rate) << '\n'
        << "years_per_period = " << io::join(years, ',') << '\n'
        << "fcev_cons_kg_per_100km = " << to_text(t.fcev_cons_kg_per_100km) << '\n'
        << "stack_replacement_share = " << to_text(t.stack_replacement_share) << '\n'
        << "centralized_sizes = " << io::join(central, ',') << '\n'
        << "compressor_capex_eur = " << to_text(c.compressor_capex_eur) << '\n'
        << "compressor_capacity_kg_day = " << to_text(c.compressor_capacity_kg_day) << '\n'
        << "compressor_opex_eur_per_kg = " << to_text(c.compressor_opex_eur_per_kg) << '\n'
        << "compressor_kwh_per_kg = " << to_text(c.compressor_kwh_per_kg) << '\n'
        << "liquefier_capex_eur_per_kg_day = " << to_text(c.liquefier_capex_eur_per_kg_day)
        << '\n'
        << "liquefier_opex_eur_per_kg = " << to_text(c.liquefier_opex_eur_per_kg) << '\n'
        << "liquefier_kwh_per_kg = " << to_text(c.liquefier_kwh_per_kg) << '\n'
        << "conversion_lifetime_years = " << to_text(c.lifetime_years) << '\n';
  }
  {
    const auto& d = s.demand;
    LongWriter w(dir / "demand.tsv");
    w.scalar("FCres", d.fc_res);
    w.scalar("FCgds", d.fc_gds);
    w.scalar("FCtour", d.fc_tour);
    w.scalar("Etoe", d.e_toe);
    w.scalar("FHV", d.fhv);
    w.scalar("Rsub", d.r_sub);
    for (std::size_t g = 0; g < sets.grids.size(); ++g) {
      for (std::size_t t = 0; t < sets.periods.size(); ++t) {
        w.put("Tpop", key(sets.grids[g], year(sets.periods[t])), d.tpop(g, t));
      }
    }
    for (std::size_t t = 0; t < sets.periods.size(); ++t) {
      for (int m = 1; m <= kMonthsPerYear; ++m) {
        w.put("SFCtour", key(year(sets.periods[t]), month(m)), d.sfc_tour(t, m - 1));
      }
    }
    for (std::size_t g = 0; g < sets.grids.size(); ++g) {
      w.put("Gtour", key(sets.grids[g]), d.g_tour[g]);
    }
    for (std::size_t t = 0; t < sets.periods.size(); ++t) {
      w.put("growth", year(sets.periods[t]), d.growth[t]);
      w.put("tour_growth", year(sets.periods[t]), d.tour_growth[t]);
    }
  }
  {
    const auto& e = s.energy;
    LongWriter w(dir / "energy.tsv");
    for (std::size_t g = 0; g < sets.grids.size(); ++g) {
      for (std::size_t k = 0; k < sets.sources.size(); ++k) {
        w.put("ESPcap", key(sets.grids[g], sets.sources[k]), e.esp_cap(g, k));
      }
    }
    for (int m = 1; m <= kMonthsPerYear; ++m) {
      w.put("PVCF", month(m), e.pv_cf[m - 1]);
      w.put("WindCF", month(m), e.wind_cf[m - 1]);
      w.put("Mh", month(m), e.month_hours[m - 1]);
      w.put("Nd", month(m), e.month_days[m - 1]);
    }
    for (std::size_t t = 0; t < sets.periods.size(); ++t) {
      for (std::size_t k = 0; k < sets.sources.size(); ++k) {
        w.put("eCo", key(year(sets.periods[t]), sets.sources[k]), e.eco(t, k));
      }
    }
    w.scalar("er", e.er);
    for (std::size_t k = 0; k < sets.sources.size(); ++k) {
      for (std::size_t t = 0; t < sets.periods.size(); ++t) {
        w.put("price", key(sets.sources[k], year(sets.periods[t])), e.price(k, t));
      }
    }
    for (std::size_t k = 0; k < sets.sources.size(); ++k) {
      w.put("EF", sets.sources[k], e.emission_factor[k]);
    }
  }
  {
    const auto& wp = s.water;
    LongWriter w(dir / "water.tsv");
    for (std::size_t g = 0; g < sets.grids.size(); ++g) {
      w.put("SRFWaterVul", sets.grids[g], wp.srf_vul[g]);
      w.put("SOTWaterVul", sets.grids[g], wp.sot_vul[g]);
    }
    for (std::size_t g = 0; g < sets.grids.size(); ++g) {
      for (int m = 1; m <= kMonthsPerYear; ++m) {
        w.put("VulSaison", key(sets.grids[g], month(m)), wp.vul_saison(g, m - 1));
      }
    }
    w.scalar("surfaceShare", wp.surface_share);
    w.scalar("groundShare", wp.ground_share);
    w.scalar("ELWUC", wp.elwuc);
    for (std::size_t t = 0; t < sets.periods.size(); ++t) {
      w.put("CleanWater", year(sets.periods[t]), wp.clean_water[t]);
    }
    w.scalar("minCW", wp.min_cw);
    w.scalar("WaterVulMin", wp.vul_min);
    w.scalar("WaterVulMax", wp.vul_max);
    w.scalar("waterPrice", wp.water_price);
  }
  {
    auto out = open_out(dir / "tech_production.tsv");
    write_header(out, {"technology", "size", "form"}, production_fields(), false);
    for (std::size_t p = 0; p < sets.technologies.size(); ++p) {
      for (std::size_t j = 0; j < sets.sizes.size(); ++j) {
        for (std::size_t i = 0; i < sets.forms.size(); ++i) {
          const auto& row = s.production(p, j, i);
          out << sets.technologies[p] << '\t' << sets.sizes[j] << '\t' << sets.forms[i];
          write_fields(out, row, production_fields());
          out << '\t' << row.max_units << '\n';
        }
      }
    }
  }
  {
    auto out = open_out(dir / "tech_storage.tsv");
    write_header(out, {"storage", "size"}, storage_fields(), true);
    for (std::size_t k = 0; k < sets.storage.size(); ++k) {
      for (std::size_t j = 0; j < sets.sizes.size(); ++j) {
        const auto& row = s.storage(k, j);
        out << sets.storage[k] << '\t' << sets.sizes[j] << '\t' << sets.forms.at(row.form);
        write_fields(out, row, storage_fields());
        out << '\t' << row.max_units << '\n';
      }
    }
  }
  {
    auto out = open_out(dir / "tech_station.tsv");
    write_header(out, {"station", "size"}, station_fields(), true);
    for (std::size_t k = 0; k < sets.stations.size(); ++k) {
      for (std::size_t j = 0; j < sets.sizes.size(); ++j) {
        const auto& row = s.station(k, j);
        out << sets.stations[k] << '\t' << sets.sizes[j] << '\t' << sets.forms.at(row.form);
        write_fields(out, row, station_fields());
        out << '\t' << row.max_units << '\n';
      }
    }
  }
  {
    auto out = open_out(dir / "tech_transport.tsv");
    out << "form\tmode";
    for (const auto& f : transport_fields()) out << '\t' << f.name;
    out << "\tmax_units\n";
    for (const auto& row : s.tech.transport) {
      out << sets.forms.at(row.form) << '\t' << sets.modes.at(row.mode);
      write_fields(out, row, transport_fields());
      out << '\t' << row.max_units << '\n';
    }
  }
  {
    auto out = open_out(dir / "distances.tsv");
    out << "from\tto\tkm\n";
    for (std::size_t a = 0; a < sets.grids.size(); ++a) {
      for (std::size_t b = a + 1; b < sets.grids.size(); ++b) {
        out << sets.grids[a] << '\t' << sets.grids[b] << '\t'
            << to_text(s.tech.distance_km(a, b)) << '\n';
      }
    }
  }
  {
    auto out = open_out(dir / "geography.tsv");
    out << "grid\tpv_site\twind_site\tcentral\texport_ban\tfirst_production_year\n";
    for (std::size_t g = 0; g < sets.grids.size(); ++g) {
      const int ord = s.geo.first_production_period[g];
      const std::string first = ord >= static_cast<int>(sets.periods.size())
                                    ? "never"
                                    : std::to_string(sets.periods[ord]);
      out << sets.grids[g] << '\t' << int(s.energy.pv_mask[g]) << '\t'
          << int(s.energy.wind_mask[g]) << '\t' << int(s.geo.central[g]) << '\t'
          << int(s.geo.export_ban[g]) << '\t' << first << '\n';
    }
  }
}

}  // namespace hsc
