#include "hoods/domain.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace hoods {

const char* to_string(CableSetting s) {
  switch (s) {
    case CableSetting::I: return "I";
    case CableSetting::II: return "II";
    case CableSetting::III: return "III";
  }
  return "?";
}

CableSetting setting_from_string(const std::string& s) {
  if (s == "I" || s == "1") return CableSetting::I;
  if (s == "II" || s == "2") return CableSetting::II;
  if (s == "III" || s == "3") return CableSetting::III;
  throw std::invalid_argument("unknown cable setting '" + s + "'");
}

const Bus* Network::find_bus(const BusId& id) const {
  auto it = std::find_if(buses.begin(), buses.end(), [&](const Bus& b) { return b.id == id; });
  return it == buses.end() ? nullptr : &*it;
}

const CableType* Network::find_cable(const std::string& name) const {
  auto it = std::find_if(cables.begin(), cables.end(),
                         [&](const CableType& c) { return c.name == name; });
  return it == cables.end() ? nullptr : &*it;
}

const Bus& Network::mbb() const {
  auto it = std::find_if(buses.begin(), buses.end(),
                         [](const Bus& b) { return b.kind == BusKind::Mbb; });
  if (it == buses.end()) throw std::invalid_argument("network has no MBB");
  return *it;
}

const TransformerOption& Network::incumbent() const {
  auto it = std::find_if(transformers.begin(), transformers.end(),
                         [](const TransformerOption& t) { return !t.is_oltc; });
  if (it == transformers.end()) throw std::invalid_argument("no fixed-ratio transformer");
  return *it;
}

std::vector<const TransformerOption*> Network::oltc_options() const {
  std::vector<const TransformerOption*> out;
  for (const auto& t : transformers)
    if (t.is_oltc) out.push_back(&t);
  return out;
}

std::vector<CableType> default_cable_catalog() {
  return {
      {"NAYY 4x150", 0.206, 0.080, 121.0, 90.0, 10.0},
      {"NYY 4x50", 0.387, 0.102, 60.0, 90.0, 10.0},
      {"NYY 4x35", 0.524, 0.105, 48.0, 90.0, 10.0},
      {"NYY 4x25", 0.727, 0.110, 38.0, 90.0, 10.0},
      {"NYY 4x16", 1.150, 0.116, 30.0, 90.0, 10.0},
  };
}

std::vector<TransformerOption> default_transformer_options() {
  return {
      {"FRT 400", 400.0, false, 0.0},     {"OLTC 160", 160.0, true, 13000.0},
      {"OLTC 250", 250.0, true, 16000.0}, {"OLTC 400", 400.0, true, 17900.0},
      {"OLTC 630", 630.0, true, 19600.0}, {"OLTC 800", 800.0, true, 20800.0},
      {"OLTC 1000", 1000.0, true, 21900.0}, {"OLTC 1250", 1250.0, true, 24300.0},
      {"OLTC 1600", 1600.0, true, 26600.0}, {"OLTC 2000", 2000.0, true, 29500.0},
  };
}

TechnoCatalog default_catalog(std::size_t horizon_hours) {
  TechnoCatalog c;
  c.price_import.assign(horizon_hours, 0.45);
  c.price_feed_in.assign(horizon_hours, 0.06);
  c.price_q_comp.assign(horizon_hours, 0.045);
  c.cop.assign(horizon_hours, 3.5);
  c.pv_capacity_factor.assign(horizon_hours, 1147.0 / 8760.0);
  return c;
}

EffectiveCable effective_cable_params(const CableType& cable, CableSetting setting) {
  const double m = multiplicity(setting);
  return {cable.s_max_kva * m, cable.r_ohm_per_km / m, cable.x_ohm_per_km / m};
}

ValidationReport validate_network(const Network& net) {
  ValidationReport rep;
  auto& v = rep.violations;

  std::unordered_map<BusId, const Bus*> by_id;
  for (const auto& b : net.buses) {
    if (!by_id.emplace(b.id, &b).second) v.push_back("duplicate bus id '" + b.id + "'");
  }

  std::size_t roots = 0;
  for (const auto& b : net.buses) {
    if (b.kind == BusKind::Mbb) {
      ++roots;
      if (b.predecessor) v.push_back("MBB '" + b.id + "' must not have a predecessor");
    } else if (!b.predecessor) {
      v.push_back("bus '" + b.id + "' has no predecessor (multiple roots)");
    } else if (!by_id.count(*b.predecessor)) {
      v.push_back("bus '" + b.id + "' references unknown predecessor '" + *b.predecessor + "'");
    }
  }
  if (roots == 0) v.push_back("no MBB bus (no root)");
  if (roots > 1) v.push_back("multiple roots: " + std::to_string(roots) + " buses of kind MBB");

  // Walk predecessor chains; a chain longer than the bus count revisits a bus.
  std::set<BusId> on_cycle;
  for (const auto& b : net.buses) {
    const Bus* cur = &b;
    std::set<BusId> seen;
    while (cur && cur->predecessor) {
      if (!seen.insert(cur->id).second) {
        on_cycle.insert(cur->id);
        break;
      }
      auto it = by_id.find(*cur->predecessor);
      cur = it == by_id.end() ? nullptr : it->second;
    }
  }
  if (!on_cycle.empty()) {
    std::string ids;
    for (const auto& id : on_cycle) ids += (ids.empty() ? "" : ",") + id;
    v.push_back("not a tree: predecessor cycle through {" + ids + "}");
  }

  // Lines: exactly one per non-root bus, oriented predecessor -> bus.
  std::map<BusId, int> feeding;
  for (const auto& l : net.lines) {
    const std::string tag = "line " + l.from_bus + "->" + l.to_bus;
    auto fit = by_id.find(l.from_bus);
    auto tit = by_id.find(l.to_bus);
    if (fit == by_id.end() || tit == by_id.end()) {
      v.push_back(tag + " references an unknown bus");
      continue;
    }
    ++feeding[l.to_bus];
    if (!tit->second->predecessor || *tit->second->predecessor != l.from_bus)
      v.push_back(tag + " does not follow the predecessor orientation");
    if (!(l.length_m > 0.0)) v.push_back(tag + " has non-positive length");
    if (!net.find_cable(l.cable)) v.push_back(tag + " references unknown cable '" + l.cable + "'");
  }
  for (const auto& b : net.buses) {
    if (b.kind == BusKind::Mbb) {
      if (feeding.count(b.id)) v.push_back("MBB '" + b.id + "' is fed by a line");
      continue;
    }
    const int n = feeding.count(b.id) ? feeding[b.id] : 0;
    if (n == 0) v.push_back("bus '" + b.id + "' is not connected by any line (disconnected)");
    if (n > 1) v.push_back("bus '" + b.id + "' is fed by " + std::to_string(n) + " lines");
  }

  for (const auto& c : net.cables) {
    if (!(c.r_ohm_per_km > 0 && c.x_ohm_per_km > 0 && c.s_max_kva > 0))
      v.push_back("cable '" + c.name + "' needs r, x, s_max > 0");
    if (c.c_install_per_m < 0 || c.c_material_per_m < 0)
      v.push_back("cable '" + c.name + "' has negative cost");
  }

  std::size_t frts = 0;
  for (const auto& t : net.transformers) {
    if (!t.is_oltc) ++frts;
    if (!(t.capacity_kva > 0)) v.push_back("transformer '" + t.name + "' needs capacity > 0");
  }
  if (frts != 1)
    v.push_back("transformer catalog needs exactly one fixed-ratio option, found " +
                std::to_string(frts));

  auto check_band = [&](const BusVoltageBand& b, const std::string& who) {
    if (!(b.v_min_oltc <= b.v_min_frt && b.v_min_frt <= b.v_max_frt &&
          b.v_max_frt <= b.v_max_oltc))
      v.push_back("voltage band for " + who + " violates V_min <= V'_min <= V'_max <= V_max");
  };
  check_band(net.bands.mbb, "MBB");
  check_band(net.bands.other, "non-MBB buses");
  if (net.bands.mbb.v_min_frt != 1.0 || net.bands.mbb.v_max_frt != 1.0)
    v.push_back("MBB band without OLTC must be pinned to 1 p.u.");
  if (!(net.bands.v_base > 0)) v.push_back("V_base must be positive");

  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return rep;
}

double default_heat_pump_big_m(const Building& b, const Series& cop) {
  double peak = 0.0;
  for (std::size_t t = 0; t < b.space_heat_kw.size(); ++t) {
    const double wh = t < b.hot_water_kw.size() ? b.hot_water_kw[t] : 0.0;
    peak = std::max(peak, b.space_heat_kw[t] + wh);
  }
  double min_cop = cop.empty() ? 1.0 : *std::min_element(cop.begin(), cop.end());
  if (!(min_cop > 0)) throw std::invalid_argument("COP series must be positive");
  return peak / min_cop;
}

void fill_reactive_demand(Building& b, double q_over_p) {
  if (!b.elec_q_kvar.empty()) return;
  b.elec_q_kvar.resize(b.elec_kw.size());
  std::transform(b.elec_kw.begin(), b.elec_kw.end(), b.elec_q_kvar.begin(),
                 [q_over_p](double p) { return q_over_p * p; });
}

std::vector<const Bus*> topological_order(const Network& net) {
  std::vector<const Bus*> order;
  order.push_back(&net.mbb());
  std::vector<bool> placed(net.buses.size(), false);
  for (std::size_t i = 0; i < net.buses.size(); ++i)
    if (&net.buses[i] == order.front()) placed[i] = true;
  bool progress = true;
  while (order.size() < net.buses.size() && progress) {
    progress = false;
    for (std::size_t i = 0; i < net.buses.size(); ++i) {
      if (placed[i] || !net.buses[i].predecessor) continue;
      const auto& pred = *net.buses[i].predecessor;
      if (std::any_of(order.begin(), order.end(), [&](const Bus* b) { return b->id == pred; })) {
        order.push_back(&net.buses[i]);
        placed[i] = true;
        progress = true;
      }
    }
  }
  if (order.size() != net.buses.size())
    throw std::invalid_argument("network is not a connected radial tree");
  return order;
}

std::vector<std::size_t> incoming_lines(const Network& net, const BusId& bus) {
  std::vector<std::size_t> out;
  for (std::size_t l = 0; l < net.lines.size(); ++l)
    if (net.lines[l].to_bus == bus) out.push_back(l);
  return out;
}

std::vector<std::size_t> outgoing_lines(const Network& net, const BusId& bus) {
  std::vector<std::size_t> out;
  for (std::size_t l = 0; l < net.lines.size(); ++l)
    if (net.lines[l].from_bus == bus) out.push_back(l);
  return out;
}

}  // namespace hoods
