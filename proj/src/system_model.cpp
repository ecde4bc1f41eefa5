#include "hoods/system_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "hoods/errors.hpp"

namespace hoods {

const Building* SystemData::building_at(const BusId& bus) const {
  auto it = std::find_if(buildings.begin(), buildings.end(),
                         [&](const Building& b) { return b.bus_id == bus; });
  return it == buildings.end() ? nullptr : &*it;
}

namespace {

void check_series(std::vector<std::string>& out, const std::string& who, const Series& s,
                  std::size_t horizon, bool nonneg, bool optional = false) {
  if (optional && s.empty()) return;
  if (s.size() != horizon) {
    out.push_back(who + ": series has " + std::to_string(s.size()) + " values, horizon is " +
                  std::to_string(horizon));
    return;
  }
  for (std::size_t t = 0; t < s.size(); ++t) {
    if (!std::isfinite(s[t]) || (nonneg && s[t] < 0)) {
      out.push_back(who + ": invalid value at hour " + std::to_string(t));
      return;
    }
  }
}

void check_unit_interval(std::vector<std::string>& out, const std::string& who, double v, bool open_low) {
  if (!(v <= 1.0 && (open_low ? v > 0.0 : v >= 0.0))) out.push_back(who + " out of range");
}

void check_econ(std::vector<std::string>& out, const std::string& who, const Economics& e) {
  if (!(e.wacc > 0)) out.push_back(who + ": WACC must be > 0");
  if (!(e.lifetime_years >= 1)) out.push_back(who + ": lifetime must be >= 1");
}

}  // namespace

std::vector<std::string> validate_system(const SystemData& d) {
  std::vector<std::string> out = validate_network(d.network).violations;
  const std::size_t H = d.horizon();
  const auto& c = d.catalog;
  if (H == 0) out.push_back("catalog: empty horizon");
  check_series(out, "catalog.price_import", c.price_import, H, false);
  check_series(out, "catalog.price_feed_in", c.price_feed_in, H, false);
  check_series(out, "catalog.price_q_comp", c.price_q_comp, H, false);
  check_series(out, "catalog.pv_capacity_factor", c.pv_capacity_factor, H, true);
  check_series(out, "catalog.cop", c.cop, H, true);
  if (std::any_of(c.cop.begin(), c.cop.end(), [](double v) { return !(v > 0); }))
    out.push_back("catalog.cop: COP must be positive");
  check_unit_interval(out, "battery charge efficiency", c.battery.eta_charge, true);
  check_unit_interval(out, "battery discharge efficiency", c.battery.eta_discharge, true);
  check_unit_interval(out, "thermal storage charge efficiency", c.ts.eta_charge, true);
  check_unit_interval(out, "thermal storage discharge efficiency", c.ts.eta_discharge, true);
  check_unit_interval(out, "charging station efficiency", c.cs.efficiency, true);
  if (!(c.battery.self_discharge >= 0 && c.battery.self_discharge < 1)) out.push_back("battery self-discharge out of range");
  if (!(c.ts.self_discharge >= 0 && c.ts.self_discharge < 1)) out.push_back("thermal storage self-discharge out of range");
  if (!(c.pv.cos_phi_min > 0 && c.pv.cos_phi_min <= 1)) out.push_back("PV cos(phi_min) out of range");
  if (!(c.battery.energy_to_power > 0)) out.push_back("battery energy-to-power ratio must be > 0");
  check_econ(out, "pv", c.pv.econ);
  check_econ(out, "heat pump", c.hp.econ);
  check_econ(out, "battery", c.battery.econ);
  check_econ(out, "thermal storage", c.ts.econ);
  check_econ(out, "oltc", c.grid.oltc);
  check_econ(out, "cable", c.grid.cable);

  std::set<BusId> seen;
  for (const auto& b : d.buildings) {
    const std::string who = "building '" + b.bus_id + "'";
    const Bus* bus = d.network.find_bus(b.bus_id);
    if (!bus) {
      out.push_back(who + " references unknown bus '" + b.bus_id + "'");
    } else if (bus->kind != BusKind::Load) {
      out.push_back(who + " is attached to a bus that is not a load bus");
    }
    if (!seen.insert(b.bus_id).second) out.push_back(who + " appears more than once");
    check_series(out, who + ".elec", b.elec_kw, H, true);
    check_series(out, who + ".elec_q", b.elec_q_kvar, H, false, true);
    check_series(out, who + ".space_heat", b.space_heat_kw, H, true);
    check_series(out, who + ".hot_water", b.hot_water_kw, H, true);
    if (!(b.roof_area_m2 >= 0)) out.push_back(who + ": negative roof area");
    if (!(b.mobility_daily_kwh >= 0)) out.push_back(who + ": negative mobility demand");
    if (b.n_bev < 0) out.push_back(who + ": negative BEV count");
    if (b.arrival_hour < 0 || b.arrival_hour > 23 || b.deadline_hour < 0 || b.deadline_hour > 23 ||
        b.arrival_hour == b.deadline_hour)
      out.push_back(who + ": arrival/deadline hours must be distinct hours of day");
    if (b.mobility_daily_kwh > 0 && b.n_bev == 0) out.push_back(who + ": mobility demand without BEVs");
    if (b.mobility_daily_kwh > c.cs.rate_kw_per_bev * b.n_bev + 1e-9)
      out.push_back(who + ": daily mobility demand exceeds one hour of charging at the station rate");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

HoodsModel build_hoods(const SystemData& data, const TimeGrid& grid, bool flexible) {
  auto problems = validate_system(data);
  if (!problems.empty()) throw ValidationError(problems);
  HoodsModel h;
  const GridContext gctx{data.network, grid};
  h.grid = add_grid(h.spec, gctx);
  for (const Bus* bus : topological_order(data.network)) {
    if (bus->kind == BusKind::Mbb) continue;
    const Building* b = data.building_at(bus->id);
    if (!b) {
      add_passive_balance(h.spec, gctx, h.grid, bus->id);
      continue;
    }
    Building filled = *b;
    fill_reactive_demand(filled, data.catalog.load_q_over_p);
    const NodeFlows flows = node_flows(gctx, h.grid, bus->id);
    h.buildings.push_back(add_building(h.spec, {filled, data.catalog, grid}, flexible,
                                       BalanceMode::Networked, &flows));
  }
  for (const auto& v : h.buildings) add_component_cost_terms(h.spec, v, data.catalog);
  add_grid_cost_terms(h.spec, h.grid, data.network, data.catalog, grid, {true});
  return h;
}

BuildingModel build_hoods_bui(const SystemData& data, const Building& building,
                              const TimeGrid& grid, bool flexible) {
  BuildingModel m;
  Building filled = building;
  fill_reactive_demand(filled, data.catalog.load_q_over_p);
  m.vars = add_building(m.spec, {filled, data.catalog, grid}, flexible, BalanceMode::Standalone);
  add_component_cost_terms(m.spec, m.vars, data.catalog);
  add_building_energy_terms(m.spec, m.vars, data.catalog, grid);
  return m;
}

GridModel build_hoods_grid(const SystemData& data, const TimeGrid& grid,
                           const std::map<BusId, Injection>& injections, bool curtailment) {
  GridModel m;
  const GridContext gctx{data.network, grid};
  m.grid = add_grid(m.spec, gctx);
  add_fixed_injection_balance(m.spec, gctx, m.grid, injections, curtailment);
  add_grid_cost_terms(m.spec, m.grid, data.network, data.catalog, grid, {false});
  return m;
}

std::vector<VarId> sizing_decisions(const BuildingVars& v) {
  return {v.kappa_pv, v.beta_pv, v.kappa_bat_p, v.kappa_hp, v.beta_hp, v.kappa_ts_p, v.kappa_ts_e};
}

std::vector<VarId> reinforcement_decisions(const GridVars& g) {
  std::vector<VarId> out{g.alpha_frt};
  out.insert(out.end(), g.alpha_oltc.begin(), g.alpha_oltc.end());
  for (const auto& lv : g.lines) out.insert(out.end(), lv.alpha.begin(), lv.alpha.end());
  return out;
}

}  // namespace hoods
