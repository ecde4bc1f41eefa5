#include "hoods/building_model.hpp"

#include <cmath>
#include <stdexcept>

namespace hoods {

namespace {

std::string nm(const char* sym, const std::string& bus) { return std::string(sym) + "." + bus; }
std::string nm(const char* sym, const std::string& bus, std::size_t s) {
  return std::string(sym) + "." + bus + "." + std::to_string(s);
}

std::vector<VarId> step_vars(ModelSpec& m, const char* sym, const std::string& bus,
                             std::size_t n, double lo = 0.0, double hi = kInf) {
  std::vector<VarId> out;
  out.reserve(n);
  for (std::size_t s = 0; s < n; ++s) out.push_back(m.add_variable(nm(sym, bus, s), VarKind::Continuous, lo, hi));
  return out;
}

void require_series(const Series& s, const TimeGrid& g, const char* what) {
  if (s.size() < g.horizon() || (g.steps() > 0 && s.size() <= g.hour(g.steps() - 1)))
    throw std::invalid_argument(std::string("series '") + what + "' does not cover the horizon");
}

double at(const Series& s, std::size_t hour) { return hour < s.size() ? s[hour] : 0.0; }

struct StorageSpec {
  const char* sym;  // row label prefix
  const std::vector<VarId>* ch;
  const std::vector<VarId>* dch;
  const std::vector<VarId>* e;
  std::vector<VarId>* init;
  const char* init_sym;
  double eta_ch, eta_dch, self_discharge;
};

// State equation per step with the period's initial level as predecessor of
// its first step, plus the cyclic closure init = level at the last step.
void add_storage_dynamics(ModelSpec& m, const std::string& bus, const TimeGrid& g,
                          const StorageSpec& st) {
  for (std::size_t p = 0; p < g.num_periods(); ++p) {
    const VarId init = m.add_variable(nm(st.init_sym, bus, p));
    st.init->push_back(init);
    for (std::size_t s = g.period_begin(p); s < g.period_end(p); ++s) {
      const VarId prev = s == g.period_begin(p) ? init : (*st.e)[s - 1];
      m.add_constraint(nm(st.sym, bus, s),
                       {{(*st.e)[s], 1.0},
                        {prev, -(1.0 - st.self_discharge)},
                        {(*st.ch)[s], -st.eta_ch},
                        {(*st.dch)[s], 1.0 / st.eta_dch}},
                       Sense::Equal, 0.0, static_cast<int>(s));
    }
    const std::size_t last = g.period_end(p) - 1;
    m.add_constraint(std::string(st.sym) + "_cyc." + bus + "." + std::to_string(p),
                     {{init, 1.0}, {(*st.e)[last], -1.0}}, Sense::Equal, 0.0);
  }
}

}  // namespace

std::vector<VarId> BuildingVars::capacity_vars() const {
  return {kappa_pv, beta_pv, kappa_bat_p, kappa_bat_e, kappa_hp, beta_hp, kappa_ts_p, kappa_ts_e};
}

bool in_charging_window(int hour, int arrival, int deadline) {
  if (arrival == deadline) return false;
  return arrival < deadline ? (hour >= arrival && hour < deadline)
                            : (hour >= arrival || hour < deadline);
}

Series place_mobility_demand(const Building& b, const TimeGrid& g, bool flexible) {
  Series d(g.steps(), 0.0);
  const int at_hour = flexible ? b.deadline_hour : b.arrival_hour;
  for (std::size_t s = 0; s < g.steps(); ++s)
    if (g.hour_of_day(s) == at_hour) d[s] = b.mobility_daily_kwh;
  return d;
}

void add_pv(ModelSpec& m, const BuildingContext& ctx, BuildingVars& v) {
  const auto& pv = ctx.catalog.pv;
  const auto& g = ctx.grid;
  require_series(ctx.catalog.pv_capacity_factor, g, "pv_capacity_factor");
  const std::string& bus = v.bus;

  v.kappa_pv = m.add_variable(nm("kappa_pv", bus));
  v.beta_pv = m.add_binary(nm("beta_pv", bus));
  m.add_constraint(nm("pv_roof", bus),
                   {{v.kappa_pv, 1.0}, {v.beta_pv, -pv.kw_per_m2 * ctx.building.roof_area_m2}},
                   Sense::LessEqual, 0.0);

  v.p_pv = step_vars(m, "p_pv", bus, g.steps());
  v.q_pv = step_vars(m, "q_pv", bus, g.steps(), -kInf, kInf);
  const double tan_phi = std::tan(std::acos(pv.cos_phi_min));
  for (std::size_t s = 0; s < g.steps(); ++s) {
    const int t = static_cast<int>(s);
    const double cf = ctx.catalog.pv_capacity_factor[g.hour(s)];
    m.add_constraint(nm("pv_avail", bus, s), {{v.p_pv[s], 1.0}, {v.kappa_pv, -cf}}, Sense::LessEqual, 0.0, t);
    m.add_constraint(nm("pv_q_up", bus, s), {{v.q_pv[s], 1.0}, {v.p_pv[s], -tan_phi}}, Sense::LessEqual, 0.0, t);
    m.add_constraint(nm("pv_q_lo", bus, s), {{v.q_pv[s], -1.0}, {v.p_pv[s], -tan_phi}}, Sense::LessEqual, 0.0, t);
  }
}

void add_battery(ModelSpec& m, const BuildingContext& ctx, BuildingVars& v, bool enabled) {
  const auto& bat = ctx.catalog.battery;
  const auto& g = ctx.grid;
  const std::string& bus = v.bus;
  const double cap = enabled ? kInf : 0.0;

  v.kappa_bat_p = m.add_variable(nm("kappa_bat_p", bus), VarKind::Continuous, 0.0, cap);
  v.kappa_bat_e = m.add_variable(nm("kappa_bat_e", bus), VarKind::Continuous, 0.0, cap);
  m.add_constraint(nm("bat_etp", bus), {{v.kappa_bat_e, 1.0}, {v.kappa_bat_p, -bat.energy_to_power}},
                   Sense::Equal, 0.0);

  v.p_bat_ch = step_vars(m, "p_bat_ch", bus, g.steps());
  v.p_bat_dch = step_vars(m, "p_bat_dch", bus, g.steps());
  v.e_bat = step_vars(m, "e_bat", bus, g.steps());
  add_storage_dynamics(m, bus, g,
                       {"bat_soc", &v.p_bat_ch, &v.p_bat_dch, &v.e_bat, &v.e_bat_init, "e_bat_init",
                        bat.eta_charge, bat.eta_discharge, bat.self_discharge});
  for (std::size_t s = 0; s < g.steps(); ++s) {
    const int t = static_cast<int>(s);
    m.add_constraint(nm("bat_ch_cap", bus, s), {{v.p_bat_ch[s], 1.0}, {v.kappa_bat_p, -1.0}}, Sense::LessEqual, 0.0, t);
    m.add_constraint(nm("bat_dch_cap", bus, s), {{v.p_bat_dch[s], 1.0}, {v.kappa_bat_p, -1.0}}, Sense::LessEqual, 0.0, t);
    m.add_constraint(nm("bat_e_cap", bus, s), {{v.e_bat[s], 1.0}, {v.kappa_bat_e, -1.0}}, Sense::LessEqual, 0.0, t);
  }
}

void add_heatpump(ModelSpec& m, const BuildingContext& ctx, BuildingVars& v) {
  const auto& g = ctx.grid;
  const auto& cop = ctx.catalog.cop;
  require_series(cop, g, "cop");
  for (double c : cop)
    if (!(c > 0)) throw std::invalid_argument("heat pump COP must be positive at every hour");
  const std::string& bus = v.bus;

  v.big_m_hp = ctx.catalog.hp.big_m ? *ctx.catalog.hp.big_m : default_heat_pump_big_m(ctx.building, cop);
  v.kappa_hp = m.add_variable(nm("kappa_hp", bus));
  v.beta_hp = m.add_binary(nm("beta_hp", bus));
  m.add_constraint(nm("hp_install", bus), {{v.kappa_hp, 1.0}, {v.beta_hp, -v.big_m_hp}},
                   Sense::LessEqual, 0.0);
  // The heat pump is the only heat source, so any heat demand forces its
  // installation. Stating this up front closes most of the relaxation gap.
  bool needs_heat = false;
  for (std::size_t s = 0; s < g.steps(); ++s)
    needs_heat = needs_heat || ctx.building.space_heat_kw.at(g.hour(s)) + ctx.building.hot_water_kw.at(g.hour(s)) > 0;
  if (needs_heat) m.set_bounds(v.beta_hp, 1.0, 1.0);

  v.p_hp = step_vars(m, "p_hp", bus, g.steps());
  v.g_hp = step_vars(m, "g_hp", bus, g.steps());
  for (std::size_t s = 0; s < g.steps(); ++s) {
    const int t = static_cast<int>(s);
    m.add_constraint(nm("hp_cop", bus, s), {{v.g_hp[s], 1.0}, {v.p_hp[s], -cop[g.hour(s)]}}, Sense::Equal, 0.0, t);
    m.add_constraint(nm("hp_cap", bus, s), {{v.p_hp[s], 1.0}, {v.kappa_hp, -1.0}}, Sense::LessEqual, 0.0, t);
  }
}

void add_thermal_storage(ModelSpec& m, const BuildingContext& ctx, BuildingVars& v, bool enabled) {
  const auto& ts = ctx.catalog.ts;
  const auto& g = ctx.grid;
  const std::string& bus = v.bus;
  const double cap = enabled ? kInf : 0.0;

  v.kappa_ts_p = m.add_variable(nm("kappa_ts_p", bus), VarKind::Continuous, 0.0, cap);
  v.kappa_ts_e = m.add_variable(nm("kappa_ts_e", bus), VarKind::Continuous, 0.0, cap);
  v.g_ts_ch = step_vars(m, "g_ts_ch", bus, g.steps());
  v.g_ts_dch = step_vars(m, "g_ts_dch", bus, g.steps());
  v.e_ts = step_vars(m, "e_ts", bus, g.steps());
  add_storage_dynamics(m, bus, g,
                       {"ts_soc", &v.g_ts_ch, &v.g_ts_dch, &v.e_ts, &v.e_ts_init, "e_ts_init",
                        ts.eta_charge, ts.eta_discharge, ts.self_discharge});
  for (std::size_t s = 0; s < g.steps(); ++s) {
    const int t = static_cast<int>(s);
    m.add_constraint(nm("ts_ch_cap", bus, s), {{v.g_ts_ch[s], 1.0}, {v.kappa_ts_p, -1.0}}, Sense::LessEqual, 0.0, t);
    m.add_constraint(nm("ts_dch_cap", bus, s), {{v.g_ts_dch[s], 1.0}, {v.kappa_ts_p, -1.0}}, Sense::LessEqual, 0.0, t);
    m.add_constraint(nm("ts_e_cap", bus, s), {{v.e_ts[s], 1.0}, {v.kappa_ts_e, -1.0}}, Sense::LessEqual, 0.0, t);
  }
}

void add_heat_balance(ModelSpec& m, const BuildingContext& ctx, BuildingVars& v) {
  const auto& g = ctx.grid;
  const auto& b = ctx.building;
  for (std::size_t s = 0; s < g.steps(); ++s) {
    const std::size_t h = g.hour(s);
    m.add_constraint(nm("heat_bal", v.bus, s),
                     {{v.g_hp[s], 1.0}, {v.g_ts_dch[s], 1.0}, {v.g_ts_ch[s], -1.0}}, Sense::Equal,
                     at(b.space_heat_kw, h) + at(b.hot_water_kw, h), static_cast<int>(s));
  }
}

void add_mobility(ModelSpec& m, const BuildingContext& ctx, BuildingVars& v, bool flexible) {
  const auto& g = ctx.grid;
  const auto& b = ctx.building;
  const auto& cs = ctx.catalog.cs;
  const std::string& bus = v.bus;

  v.flexible = flexible;
  v.d_mob = place_mobility_demand(b, g, flexible);
  v.kappa_cs = b.mobility_daily_kwh > 0 ? cs.rate_kw_per_bev * b.n_bev : 0.0;
  const double vms_cap = flexible ? v.kappa_cs : 0.0;

  v.p_bev = step_vars(m, "p_bev", bus, g.steps());
  v.mu_bev.reserve(g.steps());
  for (std::size_t s = 0; s < g.steps(); ++s) {
    const bool open = in_charging_window(g.hour_of_day(s), b.arrival_hour, b.deadline_hour);
    v.mu_bev.push_back(m.add_variable(nm("mu_bev", bus, s), VarKind::Continuous, 0.0, open ? v.kappa_cs : 0.0));
  }
  v.vms_ch = step_vars(m, "vms_ch", bus, g.steps(), 0.0, vms_cap);
  v.vms_dch = step_vars(m, "vms_dch", bus, g.steps(), 0.0, vms_cap);
  v.e_vms = step_vars(m, "e_vms", bus, g.steps());
  add_storage_dynamics(m, bus, g,
                       {"vms_soc", &v.vms_ch, &v.vms_dch, &v.e_vms, &v.e_vms_init, "e_vms_init", 1.0, 1.0, 0.0});
  for (std::size_t s = 0; s < g.steps(); ++s) {
    const int t = static_cast<int>(s);
    m.add_constraint(nm("cs_conv", bus, s), {{v.mu_bev[s], 1.0}, {v.p_bev[s], -cs.efficiency}}, Sense::Equal, 0.0, t);
    m.add_constraint(nm("mob_bal", bus, s), {{v.mu_bev[s], 1.0}, {v.vms_dch[s], 1.0}, {v.vms_ch[s], -1.0}},
                     Sense::Equal, v.d_mob[s], t);
  }
}

void add_building_balance(ModelSpec& m, const BuildingContext& ctx, BuildingVars& v,
                          BalanceMode mode, const NodeFlows* flows) {
  const auto& g = ctx.grid;
  const auto& b = ctx.building;
  if (mode == BalanceMode::Networked && !flows)
    throw std::invalid_argument("networked building balance needs grid flow handles");
  if (mode == BalanceMode::Standalone) {
    v.p_imp = step_vars(m, "p_imp", v.bus, g.steps());
    v.p_fi = step_vars(m, "p_fi", v.bus, g.steps());
    v.q_imp = step_vars(m, "q_imp", v.bus, g.steps(), -kInf, kInf);
  }
  for (std::size_t s = 0; s < g.steps(); ++s) {
    const std::size_t h = g.hour(s);
    const int t = static_cast<int>(s);
    std::vector<Term> p{{v.p_pv[s], 1.0}, {v.p_bat_dch[s], 1.0}, {v.p_bat_ch[s], -1.0},
                        {v.p_bev[s], -1.0}, {v.p_hp[s], -1.0}};
    std::vector<Term> q{{v.q_pv[s], 1.0}};
    if (mode == BalanceMode::Standalone) {
      p.push_back({v.p_imp[s], 1.0});
      p.push_back({v.p_fi[s], -1.0});
      q.push_back({v.q_imp[s], 1.0});
    } else {
      p.insert(p.end(), flows->p.at(s).begin(), flows->p.at(s).end());
      q.insert(q.end(), flows->q.at(s).begin(), flows->q.at(s).end());
    }
    m.add_constraint(nm("p_bal", v.bus, s), std::move(p), Sense::Equal, at(b.elec_kw, h), t);
    m.add_constraint(nm("q_bal", v.bus, s), std::move(q), Sense::Equal, at(b.elec_q_kvar, h), t);
  }
}

BuildingVars add_building(ModelSpec& m, const BuildingContext& ctx, bool flexible,
                          BalanceMode mode, const NodeFlows* flows) {
  BuildingVars v;
  v.bus = ctx.building.bus_id;
  add_pv(m, ctx, v);
  add_battery(m, ctx, v, flexible);
  add_heatpump(m, ctx, v);
  add_thermal_storage(m, ctx, v, flexible);
  add_heat_balance(m, ctx, v);
  add_mobility(m, ctx, v, flexible);
  add_building_balance(m, ctx, v, mode, flows);
  return v;
}

}  // namespace hoods
