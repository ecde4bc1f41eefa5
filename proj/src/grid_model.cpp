#include "hoods/grid_model.hpp"

#include <cmath>
#include <stdexcept>

namespace hoods {

namespace {

std::string tag(const char* sym, const std::string& who) { return std::string(sym) + "." + who; }
std::string tag(const char* sym, const std::string& who, std::size_t s) {
  return std::string(sym) + "." + who + "." + std::to_string(s);
}
std::string line_name(std::size_t l) { return "l" + std::to_string(l); }

}  // namespace

const std::array<OctagonRow, 8>& octagon_coefficients() {
  static const double s2 = std::sqrt(2.0);
  static const std::array<OctagonRow, 8> rows{{
      {1.0, s2 + 1.0, s2 + 1.0},
      {1.0, s2 - 1.0, 1.0},
      {1.0, -s2 + 1.0, 1.0},
      {-1.0, s2 + 1.0, s2 + 1.0},
      {-1.0, -s2 - 1.0, s2 + 1.0},
      {-1.0, -s2 + 1.0, 1.0},
      {-1.0, s2 - 1.0, 1.0},
      {1.0, -s2 - 1.0, s2 + 1.0},
  }};
  return rows;
}

bool inside_octagon(double p, double q, double kappa, double tol) {
  for (const auto& r : octagon_coefficients())
    if (r.a * p + r.b * q > r.c * kappa + tol) return false;
  return true;
}

LineImpedance line_impedance(const Network& net, const LineSection& line, CableSetting m) {
  const CableType* cable = net.find_cable(line.cable);
  if (!cable) throw std::invalid_argument("unknown cable '" + line.cable + "'");
  const auto eff = effective_cable_params(*cable, m);
  const double km = line.length_m / 1000.0;
  return {eff.kappa_kva, eff.r_ohm_per_km * km, eff.x_ohm_per_km * km};
}

void add_transformer_choice(ModelSpec& m, const GridContext& ctx, GridVars& v) {
  const auto& net = ctx.network;
  const auto& frt = net.incumbent();
  v.alpha_frt = m.add_binary("alpha_frt");
  v.oltc = net.oltc_options();
  std::vector<Term> one{{v.alpha_frt, 1.0}};
  for (std::size_t o = 0; o < v.oltc.size(); ++o) {
    v.alpha_oltc.push_back(m.add_binary(tag("alpha_oltc", std::to_string(o))));
    one.push_back({v.alpha_oltc.back(), 1.0});
  }
  m.add_constraint("one_trafo", std::move(one), Sense::Equal, 1.0);

  const auto& g = ctx.grid;
  v.p_imp.clear();
  v.p_fi.clear();
  for (std::size_t s = 0; s < g.steps(); ++s) v.p_imp.push_back(m.add_variable(tag("p_imp", "root", s)));
  for (std::size_t s = 0; s < g.steps(); ++s) v.p_fi.push_back(m.add_variable(tag("p_fi", "root", s)));
  for (std::size_t s = 0; s < g.steps(); ++s) {
    for (int dir = 0; dir < 2; ++dir) {
      std::vector<Term> row{{dir == 0 ? v.p_imp[s] : v.p_fi[s], 1.0}, {v.alpha_frt, -frt.capacity_kva}};
      for (std::size_t o = 0; o < v.oltc.size(); ++o) row.push_back({v.alpha_oltc[o], -v.oltc[o]->capacity_kva});
      m.add_constraint(tag(dir == 0 ? "trafo_imp" : "trafo_fi", "root", s), std::move(row),
                       Sense::LessEqual, 0.0, static_cast<int>(s));
    }
  }
}

void add_voltage_bands(ModelSpec& m, const GridContext& ctx, GridVars& v) {
  const auto& net = ctx.network;
  const auto& g = ctx.grid;
  for (const Bus* bus : topological_order(net)) {
    const auto& band = net.bands.for_kind(bus->kind);
    auto& u = v.u[bus->id];
    u.clear();
    const double lo = std::min(band.v_min_oltc, band.v_min_frt);
    const double hi = std::max(band.v_max_oltc, band.v_max_frt);
    for (std::size_t s = 0; s < g.steps(); ++s)
      u.push_back(m.add_variable(tag("u", bus->id, s), VarKind::Continuous, lo * lo, hi * hi));
    const double up_frt = band.v_max_frt * band.v_max_frt;
    const double up_oltc = band.v_max_oltc * band.v_max_oltc;
    const double lo_frt = band.v_min_frt * band.v_min_frt;
    const double lo_oltc = band.v_min_oltc * band.v_min_oltc;
    for (std::size_t s = 0; s < g.steps(); ++s) {
      std::vector<Term> up{{u[s], 1.0}}, dn{{u[s], 1.0}};
      for (auto a : v.alpha_oltc) {
        up.push_back({a, -(up_oltc - up_frt)});
        dn.push_back({a, -(lo_oltc - lo_frt)});
      }
      m.add_constraint(tag("v_max", bus->id, s), std::move(up), Sense::LessEqual, up_frt, static_cast<int>(s));
      m.add_constraint(tag("v_min", bus->id, s), std::move(dn), Sense::GreaterEqual, lo_frt, static_cast<int>(s));
    }
  }
}

LineVars add_cable_settings(ModelSpec& m, const GridContext& ctx, std::size_t line) {
  const auto& g = ctx.grid;
  const auto& ls = ctx.network.lines.at(line);
  const std::string ln = line_name(line);
  LineVars lv;
  lv.line = line;
  std::vector<Term> one;
  for (auto st : kAllSettings) {
    if (multiplicity(st) < multiplicity(ls.existing_setting)) continue;
    lv.settings.push_back(st);
    lv.alpha.push_back(m.add_binary(tag("alpha", ln, static_cast<std::size_t>(multiplicity(st)))));
    one.push_back({lv.alpha.back(), 1.0});
  }
  m.add_constraint(tag("one_cable", ln), std::move(one), Sense::Equal, 1.0);

  for (std::size_t k = 0; k < lv.settings.size(); ++k) {
    const std::string lm = ln + "_" + std::to_string(multiplicity(lv.settings[k]));
    lv.p_m.emplace_back();
    lv.q_m.emplace_back();
    for (std::size_t s = 0; s < g.steps(); ++s)
      lv.p_m[k].push_back(m.add_variable(tag("p_m", lm, s), VarKind::Continuous, -kInf, kInf));
    for (std::size_t s = 0; s < g.steps(); ++s)
      lv.q_m[k].push_back(m.add_variable(tag("q_m", lm, s), VarKind::Continuous, -kInf, kInf));
  }
  for (std::size_t s = 0; s < g.steps(); ++s)
    lv.p.push_back(m.add_variable(tag("p_line", ln, s), VarKind::Continuous, -kInf, kInf));
  for (std::size_t s = 0; s < g.steps(); ++s)
    lv.q.push_back(m.add_variable(tag("q_line", ln, s), VarKind::Continuous, -kInf, kInf));
  for (std::size_t s = 0; s < g.steps(); ++s) {
    std::vector<Term> p{{lv.p[s], 1.0}}, q{{lv.q[s], 1.0}};
    for (std::size_t k = 0; k < lv.settings.size(); ++k) {
      p.push_back({lv.p_m[k][s], -1.0});
      q.push_back({lv.q_m[k][s], -1.0});
    }
    m.add_constraint(tag("p_sum", ln, s), std::move(p), Sense::Equal, 0.0, static_cast<int>(s));
    m.add_constraint(tag("q_sum", ln, s), std::move(q), Sense::Equal, 0.0, static_cast<int>(s));
  }
  return lv;
}

void add_lindistflow(ModelSpec& m, const GridContext& ctx, const LineVars& lv, GridVars& v) {
  const auto& net = ctx.network;
  const auto& ls = net.lines.at(lv.line);
  const double vb2 = net.bands.v_base * net.bands.v_base;
  const auto& ui = v.u.at(ls.to_bus);
  const auto& uj = v.u.at(ls.from_bus);
  const std::string ln = line_name(lv.line);
  for (std::size_t s = 0; s < ctx.grid.steps(); ++s) {
    std::vector<Term> row{{ui[s], 1.0}, {uj[s], -1.0}};
    for (std::size_t k = 0; k < lv.settings.size(); ++k) {
      const auto z = line_impedance(net, ls, lv.settings[k]);
      // kW and kVAr to W and VAr, volts^2 to p.u.^2.
      row.push_back({lv.p_m[k][s], 2.0 * z.r_ohm * 1000.0 / vb2});
      row.push_back({lv.q_m[k][s], 2.0 * z.x_ohm * 1000.0 / vb2});
    }
    m.add_constraint(tag("ldf", ln, s), std::move(row), Sense::Equal, 0.0, static_cast<int>(s));
  }
}

void add_line_limits(ModelSpec& m, const GridContext& ctx, const LineVars& lv) {
  const auto& net = ctx.network;
  const auto& ls = net.lines.at(lv.line);
  const auto& oct = octagon_coefficients();
  for (std::size_t k = 0; k < lv.settings.size(); ++k) {
    const double kappa = line_impedance(net, ls, lv.settings[k]).kappa_kva;
    const std::string lm = line_name(lv.line) + "_" + std::to_string(multiplicity(lv.settings[k]));
    for (std::size_t s = 0; s < ctx.grid.steps(); ++s) {
      for (std::size_t y = 0; y < oct.size(); ++y) {
        m.add_constraint(tag("oct", lm, s) + "." + std::to_string(y + 1),
                         {{lv.p_m[k][s], oct[y].a}, {lv.q_m[k][s], oct[y].b}, {lv.alpha[k], -oct[y].c * kappa}},
                         Sense::LessEqual, 0.0, static_cast<int>(s));
      }
    }
  }
}

void add_root_balance(ModelSpec& m, const GridContext& ctx, GridVars& v) {
  const auto& net = ctx.network;
  const auto& g = ctx.grid;
  const auto& root = net.mbb().id;
  for (std::size_t s = 0; s < g.steps(); ++s) v.q_comp_pos.push_back(m.add_variable(tag("q_comp_pos", "root", s)));
  for (std::size_t s = 0; s < g.steps(); ++s) v.q_comp_neg.push_back(m.add_variable(tag("q_comp_neg", "root", s)));
  for (std::size_t s = 0; s < g.steps(); ++s) {
    std::vector<Term> p{{v.p_imp[s], 1.0}, {v.p_fi[s], -1.0}};
    std::vector<Term> q{{v.q_comp_pos[s], 1.0}, {v.q_comp_neg[s], -1.0}};
    for (const auto& lv : v.lines) {
      if (net.lines[lv.line].from_bus != root) continue;
      p.push_back({lv.p[s], -1.0});
      q.push_back({lv.q[s], -1.0});
    }
    m.add_constraint(tag("p_bal", root, s), std::move(p), Sense::Equal, 0.0, static_cast<int>(s));
    m.add_constraint(tag("q_bal", root, s), std::move(q), Sense::Equal, 0.0, static_cast<int>(s));
  }
}

GridVars add_grid(ModelSpec& m, const GridContext& ctx) {
  auto rep = validate_network(ctx.network);
  if (!rep.ok()) throw std::invalid_argument("invalid network: " + rep.violations.front());
  GridVars v;
  add_transformer_choice(m, ctx, v);
  add_voltage_bands(m, ctx, v);
  for (std::size_t l = 0; l < ctx.network.lines.size(); ++l) v.lines.push_back(add_cable_settings(m, ctx, l));
  for (const auto& lv : v.lines) add_lindistflow(m, ctx, lv, v);
  for (const auto& lv : v.lines) add_line_limits(m, ctx, lv);
  add_root_balance(m, ctx, v);
  return v;
}

NodeFlows node_flows(const GridContext& ctx, const GridVars& v, const BusId& bus) {
  NodeFlows f;
  f.p.resize(ctx.grid.steps());
  f.q.resize(ctx.grid.steps());
  for (const auto& lv : v.lines) {
    const auto& ls = ctx.network.lines[lv.line];
    double sign = 0.0;
    if (ls.to_bus == bus) sign = 1.0;
    else if (ls.from_bus == bus) sign = -1.0;
    else continue;
    for (std::size_t s = 0; s < ctx.grid.steps(); ++s) {
      f.p[s].push_back({lv.p[s], sign});
      f.q[s].push_back({lv.q[s], sign});
    }
  }
  return f;
}

void add_passive_balance(ModelSpec& m, const GridContext& ctx, const GridVars& v, const BusId& bus) {
  auto f = node_flows(ctx, v, bus);
  for (std::size_t s = 0; s < ctx.grid.steps(); ++s) {
    m.add_constraint(tag("p_bal", bus, s), std::move(f.p[s]), Sense::Equal, 0.0, static_cast<int>(s));
    m.add_constraint(tag("q_bal", bus, s), std::move(f.q[s]), Sense::Equal, 0.0, static_cast<int>(s));
  }
}

void add_fixed_injection_balance(ModelSpec& m, const GridContext& ctx, GridVars& v,
                                 const std::map<BusId, Injection>& injections, bool curtailment) {
  const auto& net = ctx.network;
  const auto& g = ctx.grid;
  for (const auto& [bus, inj] : injections) {
    const Bus* b = net.find_bus(bus);
    if (!b) throw std::invalid_argument("injection for unknown bus '" + bus + "'");
    if (b->kind == BusKind::Mbb) throw std::invalid_argument("injection at the MBB is not supported");
    if (inj.p_imp.size() != g.steps() || inj.p_fi.size() != g.steps() || inj.q_imp.size() != g.steps())
      throw std::invalid_argument("injection profile for '" + bus + "' does not match the time grid");
  }
  for (const Bus* bus : topological_order(net)) {
    if (bus->kind == BusKind::Mbb) continue;
    auto it = injections.find(bus->id);
    if (it == injections.end()) {
      add_passive_balance(m, ctx, v, bus->id);
      continue;
    }
    const auto& inj = it->second;
    auto& curt = v.p_curt[bus->id];
    for (std::size_t s = 0; s < g.steps(); ++s) {
      const double cap = curtailment ? std::max(0.0, inj.p_fi[s]) : 0.0;
      curt.push_back(m.add_variable(tag("p_curt", bus->id, s), VarKind::Continuous, 0.0, cap));
    }
    auto f = node_flows(ctx, v, bus->id);
    for (std::size_t s = 0; s < g.steps(); ++s) {
      auto p = std::move(f.p[s]);
      p.push_back({curt[s], -1.0});
      m.add_constraint(tag("p_bal", bus->id, s), std::move(p), Sense::Equal, inj.p_imp[s] - inj.p_fi[s],
                       static_cast<int>(s));
      m.add_constraint(tag("q_bal", bus->id, s), std::move(f.q[s]), Sense::Equal, inj.q_imp[s],
                       static_cast<int>(s));
    }
  }
}

}  // namespace hoods
