#include "hsc/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"

#include "hsc/error.hpp"
#include "hsc/resources.hpp"

namespace hsc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Dims {
  int ng, nt, nm, ne, np, nj, ni, nl, ns, nf;
  explicit Dims(const Scenario& s)
      : ng(static_cast<int>(s.sets.grids.size())),
        nt(static_cast<int>(s.sets.periods.size())),
        nm(static_cast<int>(s.sets.months.size())),
        ne(static_cast<int>(s.sets.sources.size())),
        np(static_cast<int>(s.sets.technologies.size())),
        nj(static_cast<int>(s.sets.sizes.size())),
        ni(static_cast<int>(s.sets.forms.size())),
        nl(static_cast<int>(s.sets.modes.size())),
        ns(static_cast<int>(s.sets.storage.size())),
        nf(static_cast<int>(s.sets.stations.size())) {}
};

class Linear {
 public:
  void add(int var, double coef) {
    if (var < 0 || coef == 0.0) return;
    idx_.push_back(var);
    coef_.push_back(coef);
  }
  bool empty() const { return idx_.empty(); }
  int emit(MilpInstance& inst, std::string name, Sense sense, double rhs) {
    return inst.add_row(std::move(name), std::move(idx_), std::move(coef_), sense, rhs);
  }

 private:
  std::vector<int> idx_;
  std::vector<double> coef_;
};

std::string bracket(std::initializer_list<std::string> parts) {
  std::string out = "[";
  bool first = true;
  for (const auto& p : parts) {
    if (!first) out += ",";
    out += p;
    first = false;
  }
  return out + "]";
}

struct Labels {
  const Sets& sets;
  std::string g(int k) const { return sets.grids[k]; }
  std::string t(int k) const { return std::to_string(sets.periods[k]); }
  std::string m(int k) const { return std::to_string(sets.months[k]); }
  std::string e(int k) const { return sets.sources[k]; }
  std::string p(int k) const { return sets.technologies[k]; }
  std::string j(int k) const { return sets.sizes[k]; }
  std::string i(int k) const { return sets.forms[k]; }
  std::string l(int k) const { return sets.modes[k]; }
  std::string s(int k) const { return sets.storage[k]; }
  std::string f(int k) const { return sets.stations[k]; }
};

int add_var(HscModel& model, const VarKey& key, std::string name, double lo, double hi,
            VarType type = VarType::kContinuous) {
  const int v = model.index.add(key);
  const int w = model.inst.add_var(family_name(key.family) + std::move(name), lo, hi, type);
  if (v != w) throw ConfigError("variable index out of sync");
  return v;
}

int find(const HscModel& model, Family f, std::initializer_list<int> subs) {
  return model.index.find(make_key(f, subs));
}

std::size_t fuel_form(const Scenario& s) {
  auto it = std::find(s.sets.forms.begin(), s.sets.forms.end(), "gas");
  return it == s.sets.forms.end() ? 0 : static_cast<std::size_t>(it - s.sets.forms.begin());
}

double trip_factor(const TransportTech& tr, double km) {
  return (2.0 * km / tr.speed_kmh + tr.load_unload_h) / (tr.availability_h_day * tr.tcap_kg);
}

double distance(const Scenario& s, int g, int h) {
  const double km = s.tech.distance_km(g, h);
  if (!(km > 0)) {
    throw ConfigError("no distance between grids " + s.sets.grids[g] + " and " +
                      s.sets.grids[h]);
  }
  return km;
}

// Mean electricity price of period t, used for conversion units that sit
// outside the renewable balance.
double mean_price(const Scenario& s, int t) {
  double sum = 0.0;
  for (std::size_t e = 0; e < s.sets.sources.size(); ++e) sum += s.energy.price(e, t);
  return s.sets.sources.empty() ? 0.0 : sum / static_cast<double>(s.sets.sources.size());
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::kPR: return "PR";
    case Family::kST: return "ST";
    case Family::kFR: return "FR";
    case Family::kQ: return "Q";
    case Family::kNTU: return "NTUGRID";
    case Family::kEPS: return "EPSILON";
    case Family::kXE: return "XE";
    case Family::kNP: return "NP";
    case Family::kIP: return "IP";
    case Family::kNS: return "NS";
    case Family::kNSNew: return "NSnew";
    case Family::kNFS: return "NFS";
    case Family::kNFSNew: return "NFSnew";
    case Family::kESP: return "ESP";
    case Family::kRESU: return "RESU";
    case Family::kESU: return "ESU";
    case Family::kDRetrofit: return "DRETROFIT";
    case Family::kWaterCons: return "WATERCONS";
    case Family::kWCV: return "WCV";
    case Family::kWaterCost: return "WATERCOST";
  }
  return "?";
}

const char* subsystem_name(Subsystem s) {
  switch (s) {
    case Subsystem::kProduction: return "production";
    case Subsystem::kStorage: return "storage";
    case Subsystem::kStation: return "station";
    case Subsystem::kTransport: return "transport";
    case Subsystem::kConversion: return "conversion";
    case Subsystem::kWater: return "water";
  }
  return "?";
}

VarKey make_key(Family f, std::initializer_list<int> subs) {
  VarKey k;
  k.family = f;
  std::size_t n = 0;
  for (int v : subs) {
    if (n >= k.sub.size()) throw IndexError("too many subscripts");
    k.sub[n++] = v;
  }
  return k;
}

int VariableIndex::add(const VarKey& key) {
  const int id = static_cast<int>(keys_.size());
  if (!lookup_.emplace(key, id).second) {
    throw ConfigError(std::string("duplicate variable in family ") + family_name(key.family));
  }
  keys_.push_back(key);
  return id;
}

int VariableIndex::find(const VarKey& key) const {
  auto it = lookup_.find(key);
  return it == lookup_.end() ? -1 : it->second;
}

int VariableIndex::at(const VarKey& key) const {
  const int v = find(key);
  if (v < 0) throw IndexError(std::string("no variable ") + family_name(key.family));
  return v;
}

std::vector<int> VariableIndex::of(Family f) const {
  std::vector<int> out;
  for (std::size_t v = 0; v < keys_.size(); ++v) {
    if (keys_[v].family == f) out.push_back(static_cast<int>(v));
  }
  return out;
}

const std::vector<Term>& HscModel::terms(ObjectiveKind k) const {
  switch (k) {
    case ObjectiveKind::kCost: return cost;
    case ObjectiveKind::kGhg: return ghg;
    case ObjectiveKind::kRisk: return risk;
  }
  return cost;
}

double HscModel::evaluate(ObjectiveKind k, const std::vector<double>& x) const {
  double sum = 0.0;
  for (const Term& t : terms(k)) sum += t.coef * x[t.var];
  return sum;
}

double HscModel::weight(std::size_t t, std::size_t m) const {
  const std::size_t nm = day_weight.size() / discount.size();
  return day_weight[t * nm + m];
}

ProductionBand production_bounds(const Scenario& s, std::size_t p, std::size_t j,
                                 std::size_t i, int month) {
  const ProductionTech& tech = s.production(p, j, i);
  if (!(tech.gamma_kwh_per_kg > 0)) {
    throw ConfigError("gamma is zero for " + s.sets.technologies[p] + "," + s.sets.sizes[j] +
                      "," + s.sets.forms[i]);
  }
  const double nd = s.month_days(month);
  const double per_hour = tech.p_elec_kw / tech.gamma_kwh_per_kg;
  return {tech.elcf_min_h / nd * per_hour, tech.elcf_max_h / nd * per_hour};
}

HscModel declare_variables(const Scenario& s) {
  const Dims d(s);
  const Labels lb{s.sets};
  HscModel model;
  model.demand = demand_table(s);
  model.inst.name = "hsc";

  for (int p = 0; p < d.np; ++p) {
    for (int j = 0; j < d.nj; ++j) {
      for (int i = 0; i < d.ni; ++i) {
        const int units = s.production(p, j, i).max_units;
        if (units <= 0) continue;
        for (int g = 0; g < d.ng; ++g) {
          for (int t = 0; t < d.nt; ++t) {
            const std::string base = lb.p(p) + "," + lb.j(j) + "," + lb.i(i) + "," + lb.g(g) +
                                     "," + lb.t(t);
            add_var(model, make_key(Family::kIP, {p, j, i, g, t}), "[" + base + "]", 0, units,
                    VarType::kInteger);
            add_var(model, make_key(Family::kNP, {p, j, i, g, t}), "[" + base + "]", 0, units,
                    VarType::kInteger);
            for (int m = 0; m < d.nm; ++m) {
              add_var(model, make_key(Family::kPR, {p, j, i, g, t, m}),
                      "[" + base + "," + lb.m(m) + "]", 0, kInf);
            }
          }
        }
      }
    }
  }

  std::vector<bool> storable(d.ni, false);
  for (int k = 0; k < d.ns; ++k) {
    for (int j = 0; j < d.nj; ++j) {
      const StorageTech& st = s.storage(k, j);
      if (st.max_units > 0) storable[st.form] = true;
    }
  }
  for (int g = 0; g < d.ng; ++g) {
    if (!s.geo.demand_grid[g]) continue;
    for (int t = 0; t < d.nt; ++t) {
      for (int i = 0; i < d.ni; ++i) {
        if (!storable[i]) continue;
        for (int m = 0; m < d.nm; ++m) {
          add_var(model, make_key(Family::kST, {i, g, t, m}),
                  bracket({lb.i(i), lb.g(g), lb.t(t), lb.m(m)}), 0, kInf);
        }
      }
      for (int k = 0; k < d.ns; ++k) {
        for (int j = 0; j < d.nj; ++j) {
          const int units = s.storage(k, j).max_units;
          if (units <= 0) continue;
          const std::string n = bracket({lb.s(k), lb.j(j), lb.g(g), lb.t(t)});
          add_var(model, make_key(Family::kNSNew, {k, j, g, t}), n, 0, units, VarType::kInteger);
          add_var(model, make_key(Family::kNS, {k, j, g, t}), n, 0, units, VarType::kInteger);
        }
      }
      for (int k = 0; k < d.nf; ++k) {
        for (int j = 0; j < d.nj; ++j) {
          const StationTech& st = s.station(k, j);
          if (st.max_units <= 0) continue;
          const std::string n = bracket({lb.f(k), lb.j(j), lb.g(g), lb.t(t)});
          add_var(model, make_key(Family::kNFSNew, {k, j, g, t}), n, 0, st.max_units,
                  VarType::kInteger);
          add_var(model, make_key(Family::kNFS, {k, j, g, t}), n, 0, st.max_units,
                  VarType::kInteger);
          const int i = static_cast<int>(st.form);
          for (int m = 0; m < d.nm; ++m) {
            add_var(model, make_key(Family::kFR, {k, j, i, g, t, m}),
                    bracket({lb.f(k), lb.j(j), lb.i(i), lb.g(g), lb.t(t), lb.m(m)}), 0, kInf);
          }
        }
      }
    }
  }

  for (const TransportTech& tr : s.tech.transport) {
    if (tr.max_units <= 0) continue;
    const int i = static_cast<int>(tr.form);
    const int l = static_cast<int>(tr.mode);
    for (int g = 0; g < d.ng; ++g) {
      for (int h = 0; h < d.ng; ++h) {
        if (g == h) continue;
        for (int t = 0; t < d.nt; ++t) {
          const std::string base = lb.i(i) + "," + lb.l(l) + "," + lb.g(g) + "," + lb.g(h) +
                                   "," + lb.t(t);
          add_var(model, make_key(Family::kEPS, {i, l, g, h, t}), "[" + base + "]", 0, 1,
                  VarType::kBinary);
          add_var(model, make_key(Family::kXE, {i, l, g, h, t}), "[" + base + "]", 0, 1,
                  VarType::kBinary);
          for (int m = 0; m < d.nm; ++m) {
            const std::string n = "[" + base + "," + lb.m(m) + "]";
            add_var(model, make_key(Family::kQ, {i, l, g, h, t, m}), n, 0, kInf);
            add_var(model, make_key(Family::kNTU, {i, l, g, h, t, m}), n, 0, tr.max_units,
                    VarType::kInteger);
          }
        }
      }
    }
  }

  for (int g = 0; g < d.ng; ++g) {
    for (int m = 0; m < d.nm; ++m) {
      for (int e = 0; e < d.ne; ++e) {
        add_var(model, make_key(Family::kESP, {g, m, e}), bracket({lb.g(g), lb.m(m), lb.e(e)}),
                0, s.energy.esp_cap(g, e));
      }
    }
    for (int t = 0; t < d.nt; ++t) {
      for (int m = 0; m < d.nm; ++m) {
        const std::string gtm = bracket({lb.g(g), lb.t(t), lb.m(m)});
        for (int e = 0; e < d.ne; ++e) {
          add_var(model, make_key(Family::kRESU, {e, g, t, m}),
                  bracket({lb.e(e), lb.g(g), lb.t(t), lb.m(m)}), 0, kInf);
        }
        add_var(model, make_key(Family::kESU, {g, t, m}), gtm, 0, kInf);
        if (s.options.retrofit) {
          add_var(model, make_key(Family::kDRetrofit, {g, t, m}), gtm, 0, kInf);
        }
        add_var(model, make_key(Family::kWaterCons, {g, t, m}), gtm, 0, kInf);
        add_var(model, make_key(Family::kWCV, {g, t, m}), gtm, 0, kInf);
      }
    }
  }
  for (int t = 0; t < d.nt; ++t) {
    add_var(model, make_key(Family::kWaterCost, {t}), bracket({lb.t(t)}), 0, kInf);
  }

  // Day weights: the modelled months stand for the whole year.
  double modelled = 0.0;
  for (int m = 0; m < d.nm; ++m) modelled += s.month_days(s.sets.months[m]);
  const double year_scale = modelled > 0 ? 365.0 / modelled : 0.0;
  const double growth = (1.0 + s.tech.inflation_rate) * (1.0 + s.tech.discount_rate);
  model.day_weight.assign(static_cast<std::size_t>(d.nt) * d.nm, 0.0);
  model.discount.assign(d.nt, 1.0);
  for (int t = 0; t < d.nt; ++t) {
    model.discount[t] = std::pow(growth, s.sets.periods[t] - s.sets.periods[0]);
    for (int m = 0; m < d.nm; ++m) {
      const double w = s.tech.years_per_period[t] * s.month_days(s.sets.months[m]) * year_scale;
      model.day_weight[static_cast<std::size_t>(t) * d.nm + m] = w;
      model.total_days += w;
    }
  }
  return model;
}

void add_geography(HscModel& model, const Scenario& s) {
  const Dims d(s);
  auto fix_zero = [&model](int v) {
    if (v < 0) return;
    model.inst.vars[v].lo = 0.0;
    model.inst.vars[v].hi = 0.0;
  };
  for (int p = 0; p < d.np; ++p) {
    for (int j = 0; j < d.nj; ++j) {
      for (int i = 0; i < d.ni; ++i) {
        for (int g = 0; g < d.ng; ++g) {
          for (int t = 0; t < d.nt; ++t) {
            if (s.geo.production_banned(j, g, t)) fix_zero(find(model, Family::kIP, {p, j, i, g, t}));
          }
        }
      }
    }
  }
  for (int g = 0; g < d.ng; ++g) {
    for (int e = 0; e < d.ne; ++e) {
      const bool renewable = e == static_cast<int>(s.pv_source()) ||
                             e == static_cast<int>(s.wind_source());
      for (int m = 0; m < d.nm; ++m) {
        const int month = s.sets.months[m];
        double best = 0.0;
        for (int t = 0; t < d.nt; ++t) {
          const double a = availability_per_kw(s, g, t, month, e);
          best = std::max(best, a);
          if (a == 0.0) fix_zero(find(model, Family::kRESU, {e, g, t, m}));
        }
        if (!renewable || best == 0.0) fix_zero(find(model, Family::kESP, {g, m, e}));
      }
    }
  }
  for (const TransportTech& tr : s.tech.transport) {
    const int i = static_cast<int>(tr.form);
    const int l = static_cast<int>(tr.mode);
    for (int g = 0; g < d.ng; ++g) {
      if (!s.geo.export_ban[g]) continue;
      for (int h = 0; h < d.ng; ++h) {
        for (int t = 0; t < d.nt; ++t) {
          fix_zero(find(model, Family::kEPS, {i, l, g, h, t}));
          fix_zero(find(model, Family::kXE, {i, l, g, h, t}));
          for (int m = 0; m < d.nm; ++m) {
            fix_zero(find(model, Family::kQ, {i, l, g, h, t, m}));
            fix_zero(find(model, Family::kNTU, {i, l, g, h, t, m}));
          }
        }
      }
    }
  }

  // Cumulative counts cannot exceed what the installations allow so far.
  auto tighten = [&](Family total, Family fresh, std::initializer_list<int> head) {
    std::vector<int> prefix(head);
    double cum = 0.0;
    for (int t = 0; t < d.nt; ++t) {
      VarKey kt;
      kt.family = fresh;
      std::size_t n = 0;
      for (int v : prefix) kt.sub[n++] = v;
      kt.sub[n] = t;
      const int vf = model.index.find(kt);
      kt.family = total;
      const int vt = model.index.find(kt);
      if (vf < 0 || vt < 0) return;
      cum += model.inst.vars[vf].hi;
      model.inst.vars[vt].hi = std::min(model.inst.vars[vt].hi, cum);
    }
  };
  for (int p = 0; p < d.np; ++p)
    for (int j = 0; j < d.nj; ++j)
      for (int i = 0; i < d.ni; ++i)
        for (int g = 0; g < d.ng; ++g) tighten(Family::kNP, Family::kIP, {p, j, i, g});
  for (int k = 0; k < d.ns; ++k)
    for (int j = 0; j < d.nj; ++j)
      for (int g = 0; g < d.ng; ++g) tighten(Family::kNS, Family::kNSNew, {k, j, g});
  for (int k = 0; k < d.nf; ++k)
    for (int j = 0; j < d.nj; ++j)
      for (int g = 0; g < d.ng; ++g) tighten(Family::kNFS, Family::kNFSNew, {k, j, g});
}

void add_capacity_linking(HscModel& model, const Scenario& s) {
  const Dims d(s);
  const Labels lb{s.sets};
  auto& inst = model.inst;

  auto accumulate = [&](Family total, Family fresh, const std::vector<int>& head,
                        const std::string& label) {
    for (int t = 0; t < d.nt; ++t) {
      VarKey k;
      std::size_t n = 0;
      for (int v : head) k.sub[n++] = v;
      k.sub[n] = t;
      k.family = total;
      const int now = model.index.find(k);
      if (now < 0) return;
      k.family = fresh;
      const int add = model.index.find(k);
      Linear row;
      row.add(now, 1.0);
      row.add(add, -1.0);
      if (t > 0) {
        k.family = total;
        k.sub[n] = t - 1;
        row.add(model.index.find(k), -1.0);
      }
      row.emit(inst, "units_" + std::string(family_name(total)) + label + "," + lb.t(t) + "]",
               Sense::kEq, 0.0);
    }
  };

  for (int p = 0; p < d.np; ++p) {
    for (int j = 0; j < d.nj; ++j) {
      for (int i = 0; i < d.ni; ++i) {
        for (int g = 0; g < d.ng; ++g) {
          const std::string label = "[" + lb.p(p) + "," + lb.j(j) + "," + lb.i(i) + "," + lb.g(g);
          accumulate(Family::kNP, Family::kIP, {p, j, i, g}, label);
          for (int t = 0; t < d.nt; ++t) {
            const int np = find(model, Family::kNP, {p, j, i, g, t});
            if (np < 0) continue;
            for (int m = 0; m < d.nm; ++m) {
              const int pr = find(model, Family::kPR, {p, j, i, g, t, m});
              const ProductionBand band = production_bounds(s, p, j, i, s.sets.months[m]);
              const std::string n = label + "," + lb.t(t) + "," + lb.m(m) + "]";
              Linear hi;
              hi.add(pr, 1.0);
              hi.add(np, -band.max_kg_day);
              hi.emit(inst, "prod_max" + n, Sense::kLe, 0.0);
              if (band.min_kg_day > 0) {
                Linear lo;
                lo.add(pr, 1.0);
                lo.add(np, -band.min_kg_day);
                lo.emit(inst, "prod_min" + n, Sense::kGe, 0.0);
              }
            }
          }
        }
      }
    }
  }

  for (int g = 0; g < d.ng; ++g) {
    for (int k = 0; k < d.ns; ++k) {
      for (int j = 0; j < d.nj; ++j) {
        accumulate(Family::kNS, Family::kNSNew, {k, j, g},
                   "[" + lb.s(k) + "," + lb.j(j) + "," + lb.g(g));
      }
    }
    for (int k = 0; k < d.nf; ++k) {
      for (int j = 0; j < d.nj; ++j) {
        accumulate(Family::kNFS, Family::kNFSNew, {k, j, g},
                   "[" + lb.f(k) + "," + lb.j(j) + "," + lb.g(g));
      }
    }
    for (int t = 0; t < d.nt; ++t) {
      for (int i = 0; i < d.ni; ++i) {
        for (int m = 0; m < d.nm; ++m) {
          const int st = find(model, Family::kST, {i, g, t, m});
          if (st < 0) continue;
          Linear row;
          row.add(st, 1.0);
          for (int k = 0; k < d.ns; ++k) {
            for (int j = 0; j < d.nj; ++j) {
              const StorageTech& tech = s.storage(k, j);
              if (static_cast<int>(tech.form) != i) continue;
              row.add(find(model, Family::kNS, {k, j, g, t}), -tech.capacity_kg);
            }
          }
          row.emit(inst, "storage_cap" + bracket({lb.i(i), lb.g(g), lb.t(t), lb.m(m)}),
                   Sense::kLe, 0.0);
        }
      }
      for (int k = 0; k < d.nf; ++k) {
        for (int j = 0; j < d.nj; ++j) {
          const StationTech& tech = s.station(k, j);
          const int nfs = find(model, Family::kNFS, {k, j, g, t});
          if (nfs < 0) continue;
          const int i = static_cast<int>(tech.form);
          for (int m = 0; m < d.nm; ++m) {
            Linear row;
            row.add(find(model, Family::kFR, {k, j, i, g, t, m}), 1.0);
            row.add(nfs, -tech.capacity_kg_day);
            row.emit(inst,
                     "station_cap" + bracket({lb.f(k), lb.j(j), lb.g(g), lb.t(t), lb.m(m)}),
                     Sense::kLe, 0.0);
          }
        }
      }
    }
  }
}

void add_transport_linking(HscModel& model, const Scenario& s) {
  const Dims d(s);
  const Labels lb{s.sets};
  auto& inst = model.inst;

  // Largest flow any single link can need: all demand plus all truck fuel.
  double retrofit_margin = 0.0;
  if (s.options.retrofit) {
    for (const TransportTech& tr : s.tech.transport) {
      for (int g = 0; g < d.ng; ++g) {
        for (int h = 0; h < d.ng; ++h) {
          if (g == h) continue;
          retrofit_margin += tr.max_units * 2.0 * s.tech.distance_km(g, h) *
                             s.tech.fcev_cons_kg_per_100km / 100.0;
        }
      }
    }
  }

  for (const TransportTech& tr : s.tech.transport) {
    if (tr.max_units <= 0) continue;
    const int i = static_cast<int>(tr.form);
    const int l = static_cast<int>(tr.mode);
    for (int g = 0; g < d.ng; ++g) {
      for (int h = 0; h < d.ng; ++h) {
        if (g == h) continue;
        const double km = distance(s, g, h);
        const double tf = trip_factor(tr, km);
        for (int t = 0; t < d.nt; ++t) {
          const int eps = find(model, Family::kEPS, {i, l, g, h, t});
          const int xe = find(model, Family::kXE, {i, l, g, h, t});
          for (int m = 0; m < d.nm; ++m) {
            const std::string n =
                bracket({lb.i(i), lb.l(l), lb.g(g), lb.g(h), lb.t(t), lb.m(m)});
            const int q = find(model, Family::kQ, {i, l, g, h, t, m});
            const int ntu = find(model, Family::kNTU, {i, l, g, h, t, m});
            Linear lo;
            lo.add(ntu, 1.0);
            lo.add(q, -tf);
            lo.emit(inst, "trips_min" + n, Sense::kGe, 0.0);
            Linear hi;
            hi.add(ntu, 1.0);
            hi.add(q, -tf);
            hi.add(eps, -1.0);
            hi.emit(inst, "trips_max" + n, Sense::kLe, 0.0);
            double big_m = retrofit_margin;
            for (int k = 0; k < d.ng; ++k) big_m += model.demand.dh2(k, t, m);
            Linear dir;
            dir.add(q, 1.0);
            dir.add(xe, -big_m);
            dir.emit(inst, "flow_dir" + n, Sense::kLe, 0.0);
          }
          if (g < h) {
            Linear one_way;
            one_way.add(xe, 1.0);
            one_way.add(find(model, Family::kXE, {i, l, h, g, t}), 1.0);
            one_way.emit(inst, "one_way" + bracket({lb.i(i), lb.l(l), lb.g(g), lb.g(h), lb.t(t)}),
                         Sense::kLe, 1.0);
          }
        }
      }
    }
  }

  if (!s.options.retrofit) return;
  for (int g = 0; g < d.ng; ++g) {
    for (int t = 0; t < d.nt; ++t) {
      for (int m = 0; m < d.nm; ++m) {
        Linear row;
        row.add(find(model, Family::kDRetrofit, {g, t, m}), 1.0);
        for (const TransportTech& tr : s.tech.transport) {
          for (int h = 0; h < d.ng; ++h) {
            if (h == g) continue;
            const int ntu = find(model, Family::kNTU, {static_cast<int>(tr.form),
                                                       static_cast<int>(tr.mode), g, h, t, m});
            row.add(ntu, -2.0 * s.tech.distance_km(g, h) * s.tech.fcev_cons_kg_per_100km / 100.0);
          }
        }
        row.emit(inst, "retrofit_fuel" + bracket({lb.g(g), lb.t(t), lb.m(m)}), Sense::kEq, 0.0);
      }
    }
  }
}

void add_balances(HscModel& model, const Scenario& s) {
  const Dims d(s);
  const Labels lb{s.sets};
  auto& inst = model.inst;
  const int fuel = static_cast<int>(fuel_form(s));

  for (int g = 0; g < d.ng; ++g) {
    for (int t = 0; t < d.nt; ++t) {
      for (int m = 0; m < d.nm; ++m) {
        const std::string gtm = bracket({lb.g(g), lb.t(t), lb.m(m)});
        const double dh2 = model.demand.dh2(g, t, m);

        for (int i = 0; i < d.ni; ++i) {
          Linear row;
          for (int p = 0; p < d.np; ++p)
            for (int j = 0; j < d.nj; ++j) row.add(find(model, Family::kPR, {p, j, i, g, t, m}), 1.0);
          for (const TransportTech& tr : s.tech.transport) {
            if (static_cast<int>(tr.form) != i) continue;
            const int l = static_cast<int>(tr.mode);
            for (int h = 0; h < d.ng; ++h) {
              if (h == g) continue;
              row.add(find(model, Family::kQ, {i, l, h, g, t, m}), 1.0);
              row.add(find(model, Family::kQ, {i, l, g, h, t, m}), -1.0);
            }
          }
          for (int k = 0; k < d.nf; ++k)
            for (int j = 0; j < d.nj; ++j) row.add(find(model, Family::kFR, {k, j, i, g, t, m}), -1.0);
          if (i == fuel) row.add(find(model, Family::kDRetrofit, {g, t, m}), -1.0);
          if (row.empty()) continue;
          row.emit(inst, "balance" + bracket({lb.i(i), lb.g(g), lb.t(t), lb.m(m)}), Sense::kEq, 0.0);
        }

        if (dh2 > 0) {
          Linear served;
          for (int k = 0; k < d.nf; ++k)
            for (int j = 0; j < d.nj; ++j)
              for (int i = 0; i < d.ni; ++i) served.add(find(model, Family::kFR, {k, j, i, g, t, m}), 1.0);
          if (served.empty()) {
            throw ConfigError("grid " + lb.g(g) + " has demand but no station can serve it");
          }
          served.emit(inst, "demand" + gtm, Sense::kEq, dh2);

          if (s.options.storage_autonomy_days > 0) {
            Linear stock;
            for (int i = 0; i < d.ni; ++i) stock.add(find(model, Family::kST, {i, g, t, m}), 1.0);
            if (stock.empty()) {
              throw ConfigError("grid " + lb.g(g) + " needs storage but no storage technology exists");
            }
            stock.emit(inst, "autonomy" + gtm, Sense::kGe, s.options.storage_autonomy_days * dh2);
          }
        }

        const int esu = find(model, Family::kESU, {g, t, m});
        Linear use;
        use.add(esu, 1.0);
        Linear water;
        const int wcons = find(model, Family::kWaterCons, {g, t, m});
        water.add(wcons, 1.0);
        for (int p = 0; p < d.np; ++p) {
          for (int j = 0; j < d.nj; ++j) {
            for (int i = 0; i < d.ni; ++i) {
              const int pr = find(model, Family::kPR, {p, j, i, g, t, m});
              if (pr < 0) continue;
              use.add(pr, -s.production(p, j, i).gamma_kwh_per_kg);
              water.add(pr, -s.water.elwuc / 1000.0);
            }
          }
        }
        use.emit(inst, "energy_use" + gtm, Sense::kEq, 0.0);
        Linear supply;
        supply.add(esu, -(1.0 + s.energy.er));
        for (int e = 0; e < d.ne; ++e) {
          const int resu = find(model, Family::kRESU, {e, g, t, m});
          supply.add(resu, 1.0);
          const double per_kw = availability_per_kw(s, g, t, s.sets.months[m], e);
          if (per_kw > 0) {
            Linear cap;
            cap.add(resu, 1.0);
            cap.add(find(model, Family::kESP, {g, m, e}), -per_kw);
            cap.emit(inst, "energy_cap" + bracket({lb.e(e), lb.g(g), lb.t(t), lb.m(m)}),
                     Sense::kLe, 0.0);
          }
        }
        supply.emit(inst, "energy_supply" + gtm, Sense::kEq, 0.0);

        water.emit(inst, "water_use" + gtm, Sense::kEq, 0.0);
        const int month = s.sets.months[m];
        const double index = water_vulnerability(s, g, month).final;
        Linear weighted;
        const int wcv = find(model, Family::kWCV, {g, t, m});
        weighted.add(wcv, 1.0);
        weighted.add(wcons, -s.month_days(month) * index);
        weighted.emit(inst, "water_index" + gtm, Sense::kEq, 0.0);
        if (s.options.water != WaterRestriction::kOff) {
          const WaterBounds wb = water_bounds(s, g, t, month);
          Linear hi;
          hi.add(wcv, 1.0);
          hi.emit(inst, "water_cap" + gtm, Sense::kLe, wb.hi);
          if (wb.lo > 0) {
            Linear lo;
            lo.add(wcv, 1.0);
            lo.emit(inst, "water_min" + gtm, Sense::kGe, wb.lo);
          }
        }
      }
    }
  }

  // Water bill as a daily average over the modelled months of each period.
  for (int t = 0; t < d.nt; ++t) {
    double days = 0.0;
    for (int m = 0; m < d.nm; ++m) days += s.month_days(s.sets.months[m]);
    Linear row;
    row.add(find(model, Family::kWaterCost, {t}), 1.0);
    for (int g = 0; g < d.ng; ++g) {
      for (int m = 0; m < d.nm; ++m) {
        row.add(find(model, Family::kWaterCons, {g, t, m}),
                -s.water.water_price * s.month_days(s.sets.months[m]) / days);
      }
    }
    row.emit(inst, "water_cost" + bracket({lb.t(t)}), Sense::kEq, 0.0);
  }
}

void build_objective_terms(HscModel& model, const Scenario& s) {
  const Dims d(s);
  model.cost.clear();
  model.ghg.clear();
  model.risk.clear();
  model.money.clear();
  const double cost_unit = 1.0 / (1000.0 * model.total_days);  // EUR -> kEUR/day
  const double ghg_unit = 1.0 / (1000.0 * model.total_days);   // kg -> t/day
  const double risk_unit = 1.0 / model.total_days;

  auto capex = [&](int var, int t, double eur, Subsystem sub) {
    if (var < 0 || eur == 0.0) return;
    model.cost.push_back({var, eur * cost_unit / model.discount[t], sub, CostKind::kCapex});
    model.money.push_back({var, eur, CostKind::kCapex, t, -1});
  };
  // Daily operating cost at (t, m).
  auto opex = [&](int var, int t, int m, double eur_day, Subsystem sub) {
    if (var < 0 || eur_day == 0.0) return;
    const double w = model.weight(t, m);
    model.cost.push_back({var, eur_day * w * cost_unit / model.discount[t], sub, CostKind::kOpex});
    model.money.push_back({var, eur_day * w, CostKind::kOpex, t, m});
  };
  // Daily cost of a per-period quantity, paid every modelled day of t.
  auto opex_period = [&](int var, int t, double eur_day, Subsystem sub) {
    for (int m = 0; m < d.nm; ++m) opex(var, t, m, eur_day, sub);
  };
  auto ghg = [&](int var, int t, int m, double kg_day, Subsystem sub) {
    if (var < 0 || kg_day == 0.0) return;
    model.ghg.push_back({var, kg_day * model.weight(t, m) * ghg_unit, sub, CostKind::kOpex});
  };
  auto risk = [&](int var, int t, int m, double value, Subsystem sub) {
    if (var < 0 || value == 0.0) return;
    model.risk.push_back({var, value * model.weight(t, m) * risk_unit, sub, CostKind::kOpex});
  };

  for (int p = 0; p < d.np; ++p) {
    for (int j = 0; j < d.nj; ++j) {
      for (int i = 0; i < d.ni; ++i) {
        const ProductionTech& tech = s.production(p, j, i);
        const double stack = tech.lifetime_h > 0
                                 ? s.tech.stack_replacement_share * tech.capex_eur_per_kw *
                                       tech.gamma_kwh_per_kg / tech.lifetime_h
                                 : 0.0;
        for (int g = 0; g < d.ng; ++g) {
          for (int t = 0; t < d.nt; ++t) {
            capex(find(model, Family::kIP, {p, j, i, g, t}), t,
                  tech.p_elec_kw * tech.capex_eur_per_kw, Subsystem::kProduction);
            const int np = find(model, Family::kNP, {p, j, i, g, t});
            for (int m = 0; m < d.nm; ++m) {
              const int pr = find(model, Family::kPR, {p, j, i, g, t, m});
              opex(pr, t, m, tech.opex_eur_per_kg + stack, Subsystem::kProduction);
              ghg(pr, t, m, tech.ghg_kg_per_kg, Subsystem::kProduction);
              ghg(np, t, m, tech.ghg_kg_per_unit_day, Subsystem::kProduction);
              risk(pr, t, m, tech.risk_per_kg, Subsystem::kProduction);
              risk(np, t, m, tech.risk_per_unit, Subsystem::kProduction);
            }
          }
        }
      }
    }
  }

  for (int g = 0; g < d.ng; ++g) {
    for (int t = 0; t < d.nt; ++t) {
      // Storage factors per kg refer to installed capacity.
      for (int k = 0; k < d.ns; ++k) {
        for (int j = 0; j < d.nj; ++j) {
          const StorageTech& tech = s.storage(k, j);
          capex(find(model, Family::kNSNew, {k, j, g, t}), t,
                tech.capacity_kg * tech.capex_eur_per_kg, Subsystem::kStorage);
          const int ns = find(model, Family::kNS, {k, j, g, t});
          opex_period(ns, t, tech.capacity_kg * tech.opex_eur_per_kg, Subsystem::kStorage);
          for (int m = 0; m < d.nm; ++m) {
            ghg(ns, t, m, tech.ghg_kg_per_unit_day + tech.ghg_kg_per_kg * tech.capacity_kg,
                Subsystem::kStorage);
            risk(ns, t, m, tech.risk_per_unit + tech.risk_per_kg * tech.capacity_kg,
                 Subsystem::kStorage);
          }
        }
      }
      for (int k = 0; k < d.nf; ++k) {
        for (int j = 0; j < d.nj; ++j) {
          const StationTech& tech = s.station(k, j);
          capex(find(model, Family::kNFSNew, {k, j, g, t}), t, tech.capex_eur, Subsystem::kStation);
          const int i = static_cast<int>(tech.form);
          for (int m = 0; m < d.nm; ++m) {
            opex(find(model, Family::kFR, {k, j, i, g, t, m}), t, m, tech.opex_eur_per_kg,
                 Subsystem::kStation);
          }
        }
      }
      for (int m = 0; m < d.nm; ++m) {
        for (int e = 0; e < d.ne; ++e) {
          const int resu = find(model, Family::kRESU, {e, g, t, m});
          opex(resu, t, m, s.energy.price(e, t), Subsystem::kProduction);
          ghg(resu, t, m, s.energy.emission_factor[e], Subsystem::kProduction);
        }
      }
    }
  }

  const auto& conv = s.tech.conversion;
  const int fuel = static_cast<int>(fuel_form(s));
  for (const TransportTech& tr : s.tech.transport) {
    const int i = static_cast<int>(tr.form);
    const int l = static_cast<int>(tr.mode);
    const double km_cost = s.options.retrofit ? tr.retrofit_maint_eur_km
                                              : tr.fuel_eur_km + tr.maint_eur_km;
    const double truck_capex = s.options.retrofit ? tr.retrofit_capex_eur : tr.capex_eur;
    const double per_truck_day = tr.general_eur_day + truck_capex / (tr.lifetime_years * 365.0);
    const double exhaust = s.options.retrofit ? 0.0 : tr.ghg_kg_per_km;
    for (int g = 0; g < d.ng; ++g) {
      for (int h = 0; h < d.ng; ++h) {
        if (g == h) continue;
        const double km = s.tech.distance_km(g, h);
        const double per_kg_trip =
            (tr.driver_wage_eur_h * (2.0 * km / tr.speed_kmh + tr.load_unload_h) +
             km_cost * 2.0 * km) /
            tr.tcap_kg;
        for (int t = 0; t < d.nt; ++t) {
          const double price = mean_price(s, t);
          const double per_kg_conv =
              i == fuel ? conv.compressor_opex_eur_per_kg + conv.compressor_kwh_per_kg * price +
                              conv.compressor_capex_eur /
                                  (conv.lifetime_years * 365.0 * conv.compressor_capacity_kg_day)
                        : conv.liquefier_opex_eur_per_kg + conv.liquefier_kwh_per_kg * price +
                              conv.liquefier_capex_eur_per_kg_day / (conv.lifetime_years * 365.0);
          for (int m = 0; m < d.nm; ++m) {
            const int q = find(model, Family::kQ, {i, l, g, h, t, m});
            const int ntu = find(model, Family::kNTU, {i, l, g, h, t, m});
            opex(q, t, m, per_kg_trip, Subsystem::kTransport);
            opex(q, t, m, per_kg_conv, Subsystem::kConversion);
            opex(ntu, t, m, per_truck_day, Subsystem::kTransport);
            ghg(q, t, m, exhaust * 2.0 * km / tr.tcap_kg, Subsystem::kTransport);
            risk(q, t, m, tr.risk_per_kg, Subsystem::kTransport);
            risk(ntu, t, m, tr.risk_per_unit, Subsystem::kTransport);
          }
        }
      }
    }
  }

  for (int t = 0; t < d.nt; ++t) {
    opex_period(find(model, Family::kWaterCost, {t}), t, 1.0, Subsystem::kWater);
  }
}

void set_objective(HscModel& model, ObjectiveKind kind) {
  auto& inst = model.inst;
  if (inst.objective_kind) {
    throw ConfigError(std::string("objective already set to ") + to_string(*inst.objective_kind));
  }
  std::fill(inst.objective.begin(), inst.objective.end(), 0.0);
  for (const Term& t : model.terms(kind)) inst.objective[t.var] += t.coef;
  inst.objective_kind = kind;
}

void objective_cost(HscModel& model) { set_objective(model, ObjectiveKind::kCost); }
void objective_ghg(HscModel& model) { set_objective(model, ObjectiveKind::kGhg); }
void objective_risk(HscModel& model) { set_objective(model, ObjectiveKind::kRisk); }

std::array<ObjectiveKind, 2> secondary_objectives(ObjectiveKind primary) {
  switch (primary) {
    case ObjectiveKind::kCost: return {ObjectiveKind::kGhg, ObjectiveKind::kRisk};
    case ObjectiveKind::kGhg: return {ObjectiveKind::kCost, ObjectiveKind::kRisk};
    case ObjectiveKind::kRisk: return {ObjectiveKind::kCost, ObjectiveKind::kGhg};
  }
  return {ObjectiveKind::kGhg, ObjectiveKind::kRisk};
}

void add_epsilon_rows(HscModel& model, ObjectiveKind primary, EpsilonPair eps) {
  const auto which = secondary_objectives(primary);
  const double bounds[2] = {eps.first, eps.second};
  for (int k = 0; k < 2; ++k) {
    Linear row;
    for (const Term& t : model.terms(which[k])) row.add(t.var, t.coef);
    const std::string name = std::string("eps_") + to_string(which[k]);
    // A criterion without terms is identically zero and needs no row.
    if (row.empty()) continue;
    const int r = row.emit(model.inst, name, Sense::kLe, bounds[k]);
    model.inst.epsilon_rows.push_back(name);
    switch (which[k]) {
      case ObjectiveKind::kCost: model.eps_row_cost = r; break;
      case ObjectiveKind::kGhg: model.eps_row_ghg = r; break;
      case ObjectiveKind::kRisk: model.eps_row_risk = r; break;
    }
  }
}

HscModel assemble(const Scenario& s, ObjectiveKind objective, std::optional<EpsilonPair> eps) {
  HscModel model = declare_variables(s);
  add_geography(model, s);
  add_capacity_linking(model, s);
  add_transport_linking(model, s);
  add_balances(model, s);
  build_objective_terms(model, s);
  set_objective(model, objective);
  if (eps) add_epsilon_rows(model, objective, *eps);
  model.inst.check();
  return model;
}

std::string dump_instance(const MilpInstance& inst) {
  using nlohmann::ordered_json;
  ordered_json out;
  out["name"] = inst.name;
  out["objective_kind"] = inst.objective_kind ? to_string(*inst.objective_kind) : "none";
  out["objective_constant"] = inst.objective_constant;
  auto bound = [](double v) -> ordered_json {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
  };
  ordered_json vars = ordered_json::array();
  for (std::size_t j = 0; j < inst.vars.size(); ++j) {
    const Variable& v = inst.vars[j];
    const char* type = v.type == VarType::kBinary    ? "binary"
                       : v.type == VarType::kInteger ? "integer"
                                                     : "continuous";
    vars.push_back({{"name", v.name}, {"lo", bound(v.lo)}, {"hi", bound(v.hi)},
                    {"type", type}, {"obj", inst.objective[j]}});
  }
  out["variables"] = vars;
  ordered_json rows = ordered_json::array();
  for (const Row& r : inst.rows) {
    ordered_json terms = ordered_json::array();
    for (std::size_t k = 0; k < r.idx.size(); ++k) {
      terms.push_back({inst.vars[r.idx[k]].name, r.coef[k]});
    }
    const char* sense = r.sense == Sense::kLe ? "<=" : r.sense == Sense::kGe ? ">=" : "=";
    rows.push_back({{"name", r.name}, {"sense", sense}, {"rhs", bound(r.rhs)}, {"terms", terms}});
  }
  out["rows"] = rows;
  return out.dump(1) + "\n";
}

}  // namespace hsc
