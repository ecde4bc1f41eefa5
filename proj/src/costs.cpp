#include "hoods/costs.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace hoods {

double annuity_factor(double wacc, double lifetime_years) {
  if (!(wacc > 0)) throw std::invalid_argument("annuity factor needs wacc > 0");
  if (!(lifetime_years >= 1)) throw std::invalid_argument("annuity factor needs lifetime >= 1");
  const double g = std::pow(1.0 + wacc, lifetime_years);
  return wacc * g / (g - 1.0);
}

double annuity_factor(const Economics& e) { return annuity_factor(e.wacc, e.lifetime_years); }

double line_upgrade_cost(const Network& net, const LineSection& line, CableSetting m,
                         const GridEconomics& econ) {
  const int extra = multiplicity(m) - multiplicity(line.existing_setting);
  if (extra <= 0) return 0.0;
  const CableType* c = net.find_cable(line.cable);
  if (!c) throw std::invalid_argument("unknown cable '" + line.cable + "'");
  // One installation charge plus material for every added cable.
  const double capex = line.length_m * (c->c_install_per_m + extra * c->c_material_per_m);
  return annuity_factor(econ.cable) * capex;
}

double oltc_cost(const TransformerOption& t, const GridEconomics& econ) {
  return t.investment_cost * (annuity_factor(econ.oltc) + econ.oltc_om_share);
}

void add_component_cost_terms(ModelSpec& m, const BuildingVars& v, const TechnoCatalog& cat) {
  const double af_pv = annuity_factor(cat.pv.econ);
  m.add_objective(v.beta_pv, af_pv * cat.pv.c_inv_fix);
  m.add_objective(v.kappa_pv, af_pv * cat.pv.c_inv_var + cat.pv.c_om);

  const double af_hp = annuity_factor(cat.hp.econ);
  m.add_objective(v.beta_hp, af_hp * cat.hp.c_inv_fix);
  m.add_objective(v.kappa_hp, af_hp * cat.hp.c_inv_var + cat.hp.c_om);

  const auto& bat = cat.battery;
  m.add_objective(v.kappa_bat_e, bat.c_energy * (annuity_factor(bat.econ) + bat.om_share));

  const auto& ts = cat.ts;
  const double ts_factor = annuity_factor(ts.econ) + ts.om_share;
  m.add_objective(v.kappa_ts_e, ts.c_energy * ts_factor);
  m.add_objective(v.kappa_ts_p, ts.c_power * ts_factor);
}

void add_building_energy_terms(ModelSpec& m, const BuildingVars& v, const TechnoCatalog& cat,
                               const TimeGrid& grid) {
  if (v.p_imp.size() != grid.steps())
    throw std::invalid_argument("building energy terms need standalone exchange variables");
  for (std::size_t s = 0; s < grid.steps(); ++s) {
    const double w = grid.weight(s);
    m.add_objective(v.p_imp[s], w * cat.price_import.at(grid.hour(s)));
    m.add_objective(v.p_fi[s], -w * cat.price_feed_in.at(grid.hour(s)));
  }
}

void add_grid_cost_terms(ModelSpec& m, const GridVars& v, const Network& net,
                         const TechnoCatalog& cat, const TimeGrid& grid,
                         const GridCostOptions& opt) {
  for (const auto& lv : v.lines)
    for (std::size_t k = 0; k < lv.settings.size(); ++k)
      m.add_objective(lv.alpha[k], line_upgrade_cost(net, net.lines[lv.line], lv.settings[k], cat.grid));
  for (std::size_t o = 0; o < v.oltc.size(); ++o) m.add_objective(v.alpha_oltc[o], oltc_cost(*v.oltc[o], cat.grid));

  for (std::size_t s = 0; s < grid.steps(); ++s) {
    const double w = grid.weight(s);
    const std::size_t h = grid.hour(s);
    m.add_objective(v.q_comp_pos[s], w * cat.price_q_comp.at(h));
    m.add_objective(v.q_comp_neg[s], w * cat.price_q_comp.at(h));
    if (opt.root_energy) {
      m.add_objective(v.p_imp[s], w * cat.price_import.at(h));
      m.add_objective(v.p_fi[s], -w * cat.price_feed_in.at(h));
    }
  }
  for (const auto& [bus, curt] : v.p_curt)
    for (std::size_t s = 0; s < curt.size(); ++s)
      m.add_objective(curt[s], grid.weight(s) * cat.price_feed_in.at(grid.hour(s)));
}

BuildingCosts building_costs(const BuildingVars& v, const std::vector<double>& x,
                             const TechnoCatalog& cat, const TimeGrid& grid) {
  auto val = [&](VarId id) { return x.at(static_cast<std::size_t>(id.index)); };
  BuildingCosts c;
  c.bus = v.bus;
  c.pv = annuity_factor(cat.pv.econ) * (cat.pv.c_inv_fix * val(v.beta_pv) + cat.pv.c_inv_var * val(v.kappa_pv)) +
         cat.pv.c_om * val(v.kappa_pv);
  c.hp = annuity_factor(cat.hp.econ) * (cat.hp.c_inv_fix * val(v.beta_hp) + cat.hp.c_inv_var * val(v.kappa_hp)) +
         cat.hp.c_om * val(v.kappa_hp);
  const double bat_capex = cat.battery.c_energy * val(v.kappa_bat_e);
  c.battery = annuity_factor(cat.battery.econ) * bat_capex + cat.battery.om_share * bat_capex;
  const double ts_capex = cat.ts.c_energy * val(v.kappa_ts_e) + cat.ts.c_power * val(v.kappa_ts_p);
  c.ts = annuity_factor(cat.ts.econ) * ts_capex + cat.ts.om_share * ts_capex;
  for (std::size_t s = 0; s < v.p_imp.size(); ++s) {
    c.import += grid.weight(s) * cat.price_import.at(grid.hour(s)) * val(v.p_imp[s]);
    c.feed_in -= grid.weight(s) * cat.price_feed_in.at(grid.hour(s)) * val(v.p_fi[s]);
  }
  return c;
}

GridCosts grid_costs(const GridVars& v, const std::vector<double>& x, const Network& net,
                     const TechnoCatalog& cat, const TimeGrid& grid, const GridCostOptions& opt) {
  auto val = [&](VarId id) { return x.at(static_cast<std::size_t>(id.index)); };
  GridCosts c;
  for (const auto& lv : v.lines)
    for (std::size_t k = 0; k < lv.settings.size(); ++k)
      c.cables += std::round(val(lv.alpha[k])) * line_upgrade_cost(net, net.lines[lv.line], lv.settings[k], cat.grid);
  for (std::size_t o = 0; o < v.oltc.size(); ++o)
    c.oltc += std::round(val(v.alpha_oltc[o])) * oltc_cost(*v.oltc[o], cat.grid);
  for (std::size_t s = 0; s < v.q_comp_pos.size(); ++s) {
    const double w = grid.weight(s);
    const std::size_t h = grid.hour(s);
    c.q_comp += w * cat.price_q_comp.at(h) * (val(v.q_comp_pos[s]) + val(v.q_comp_neg[s]));
    if (opt.root_energy) {
      c.import += w * cat.price_import.at(h) * val(v.p_imp[s]);
      c.feed_in -= w * cat.price_feed_in.at(h) * val(v.p_fi[s]);
    }
  }
  for (const auto& [bus, curt] : v.p_curt)
    for (std::size_t s = 0; s < curt.size(); ++s) {
      c.curtailment += grid.weight(s) * cat.price_feed_in.at(grid.hour(s)) * val(curt[s]);
      c.curtailed_kwh += grid.weight(s) * val(curt[s]);
    }
  return c;
}

CostBreakdown combine(const std::vector<BuildingCosts>& buildings, const GridCosts& grid) {
  CostBreakdown c;
  c.per_building = buildings;
  for (const auto& b : buildings) {
    c.pv += b.pv;
    c.hp += b.hp;
    c.battery += b.battery;
    c.ts += b.ts;
    c.import += b.import;
    c.feed_in += b.feed_in;
  }
  c.import += grid.import;
  c.feed_in += grid.feed_in;
  c.cables = grid.cables;
  c.oltc = grid.oltc;
  c.q_comp = grid.q_comp;
  c.curtailment = grid.curtailment;
  c.curtailed_kwh = grid.curtailed_kwh;
  return c;
}

double CostBreakdown::grid_share() const {
  const double t = total();
  return t != 0.0 ? grid_total() / t : 0.0;
}

std::vector<std::pair<std::string, double>> cost_rows(const CostBreakdown& c) {
  return {{"PV", c.pv},
          {"Heat pump", c.hp},
          {"Battery", c.battery},
          {"Th. storage", c.ts},
          {"Import", c.import},
          {"Feed-in", c.feed_in},
          {"Buildings total", c.building_total()},
          {"Cables", c.cables},
          {"OLTC", c.oltc},
          {"Q comp", c.q_comp},
          {"Curtailment", c.curtailment},
          {"Grid total", c.grid_total()},
          {"Total costs", c.total()},
          {"Share grid", c.grid_share()},
          {"Feed-in net of curtailment", c.feed_in_net_of_curtailment()}};
}

void write_cost_csv(const CostBreakdown& c, std::ostream& out) {
  const auto old = out.precision(12);
  out << "row,value\n";
  for (const auto& [label, value] : cost_rows(c)) out << label << ',' << value << '\n';
  out.precision(old);
}

}  // namespace hoods
