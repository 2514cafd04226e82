#include "hsc/kpi.hpp"

#include <cmath>
#include <limits>

#include "hsc/resources.hpp"

namespace hsc {

namespace {

// kg handed over in cell (t, m): station throughput plus retrofit fuel.
double handled(const HscModel& model, const std::vector<double>& x, std::size_t t,
               std::size_t m) {
  double kg = 0.0;
  for (int v : model.index.of(Family::kFR)) {
    const VarKey& k = model.index.key(v);
    if (k.sub[4] == static_cast<int>(t) && k.sub[5] == static_cast<int>(m)) kg += x[v];
  }
  for (int v : model.index.of(Family::kDRetrofit)) {
    const VarKey& k = model.index.key(v);
    if (k.sub[1] == static_cast<int>(t) && k.sub[2] == static_cast<int>(m)) kg += x[v];
  }
  return kg;
}

}  // namespace

double Kpi::objective(ObjectiveKind k) const {
  switch (k) {
    case ObjectiveKind::kCost: return tdc;
    case ObjectiveKind::kGhg: return ghg;
    case ObjectiveKind::kRisk: return risk;
  }
  return tdc;
}

double levelized_cost(const HscModel& model, const std::vector<double>& x) {
  double money = 0.0;
  for (const MoneyTerm& mt : model.money) money += mt.eur * x[mt.var] / model.discount[mt.period];
  const std::size_t nt = model.discount.size();
  const std::size_t nm = nt ? model.day_weight.size() / nt : 0;
  double kg = 0.0;
  for (std::size_t t = 0; t < nt; ++t) {
    for (std::size_t m = 0; m < nm; ++m) {
      kg += model.weight(t, m) * handled(model, x, t, m) / model.discount[t];
    }
  }
  return kg > 0 ? money / kg : 0.0;
}

Kpi compute_kpi(const HscModel& model, const Scenario& s, const std::vector<double>& x) {
  Kpi k;
  for (const Term& t : model.cost) {
    const double v = t.coef * x[t.var];
    k.tdc += v;
    k.cost_by_subsystem[static_cast<int>(t.subsystem)] += v;
    (t.kind == CostKind::kCapex ? k.capex : k.opex) += v;
  }
  for (const Term& t : model.ghg) {
    const double v = t.coef * x[t.var];
    k.ghg += v;
    k.ghg_by_subsystem[static_cast<int>(t.subsystem)] += v;
  }
  for (const Term& t : model.risk) {
    const double v = t.coef * x[t.var];
    k.risk += v;
    k.risk_by_subsystem[static_cast<int>(t.subsystem)] += v;
  }
  for (int i = 0; i < kSubsystemCount; ++i) {
    k.cost_share[i] = k.tdc != 0.0 ? k.cost_by_subsystem[i] / k.tdc : 0.0;
  }
  k.transport_ghg = k.ghg_by_subsystem[static_cast<int>(Subsystem::kTransport)];
  k.lcoh = levelized_cost(model, x);

  const std::size_t nt = model.discount.size();
  const std::size_t nm = s.sets.months.size();
  for (std::size_t t = 0; t < nt; ++t) {
    for (std::size_t m = 0; m < nm; ++m) k.delivered_kg += model.weight(t, m) * handled(model, x, t, m);
  }

  double energy_hours = 0.0;
  double unit_months = 0.0;
  for (int v : model.index.of(Family::kPR)) {
    const VarKey& key = model.index.key(v);
    const auto& tech = s.production(key.sub[0], key.sub[1], key.sub[2]);
    const double days = s.month_days(s.sets.months[key.sub[5]]);
    k.produced_kg += model.weight(key.sub[4], key.sub[5]) * x[v];
    energy_hours += x[v] * tech.gamma_kwh_per_kg * days;
    const int np = model.index.find(
        make_key(Family::kNP, {key.sub[0], key.sub[1], key.sub[2], key.sub[3], key.sub[4]}));
    if (np >= 0) unit_months += std::round(x[np]) * tech.p_elec_kw;
  }
  k.electrolyzer_hours = unit_months > 0 ? energy_hours / unit_months : 0.0;

  for (int v : model.index.of(Family::kWaterCons)) {
    const VarKey& key = model.index.key(v);
    WaterCell c;
    c.grid = key.sub[0];
    c.period = key.sub[1];
    c.month = key.sub[2];
    c.m3_per_day = x[v];
    const int wcv = model.index.find(make_key(Family::kWCV, {key.sub[0], key.sub[1], key.sub[2]}));
    c.weighted = wcv >= 0 ? x[wcv] : 0.0;
    c.cap = water_bounds(s, c.grid, c.period, s.sets.months[c.month]).hi;
    k.water.push_back(c);
  }
  return k;
}

}  // namespace hsc
