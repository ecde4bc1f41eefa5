#include "hoods/results_export.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace hoods {

namespace fs = std::filesystem;

std::vector<double> deciles(std::vector<double> v) {
  std::vector<double> out;
  if (v.empty()) return std::vector<double>(11, 0.0);
  std::sort(v.begin(), v.end());
  for (int k = 0; k <= 10; ++k) {
    const double pos = k / 10.0 * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, v.size() - 1);
    out.push_back(v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]));
  }
  return out;
}

std::map<BusId, int> branch_of(const Network& net) {
  std::map<BusId, int> out;
  int next = 0;
  for (const Bus* b : topological_order(net)) {
    if (!b->predecessor) {
      out[b->id] = 0;
      continue;
    }
    const int parent = out.at(*b->predecessor);
    out[b->id] = parent == 0 ? ++next : parent;
  }
  return out;
}

void write_reinforcement_json(const PlanResult& r, const Network& net, std::ostream& out) {
  nlohmann::json j;
  j["paradigm"] = to_string(r.paradigm);
  j["transformer"] = {{"name", r.network.transformer},
                      {"oltc", r.network.oltc},
                      {"incumbent_retained", r.network.transformer == net.incumbent().name}};
  j["lines"] = nlohmann::json::array();
  for (std::size_t l = 0; l < net.lines.size() && l < r.network.line_settings.size(); ++l) {
    const auto& ls = net.lines[l];
    j["lines"].push_back({{"from", ls.from_bus},
                          {"to", ls.to_bus},
                          {"cable", ls.cable},
                          {"existing", to_string(ls.existing_setting)},
                          {"setting", to_string(r.network.line_settings[l])},
                          {"reinforced", r.network.line_settings[l] != ls.existing_setting}});
  }
  j["curtailed_kwh"] = r.curtailed_kwh;
  out << j.dump(2) << '\n';
}

void write_dispatch_csv(const PlanResult& r, const SystemData& data, std::ostream& out) {
  const auto old = out.precision(10);
  out << "step,hour,weight,elec_demand,pv,battery_charge,battery_discharge,heat_pump_el,bev_charging,"
         "grid_import,grid_feed_in,curtailment,heat_demand,heat_pump_heat,ts_charge,ts_discharge\n";
  const TimeGrid& g = r.grid;
  for (std::size_t s = 0; s < g.steps(); ++s) {
    const std::size_t h = g.hour(s);
    double elec = 0, pv = 0, bch = 0, bdch = 0, hp = 0, bev = 0, imp = 0, fi = 0, curt = 0;
    double heat = 0, hp_heat = 0, tch = 0, tdch = 0;
    for (const auto& b : data.buildings) {
      elec += b.elec_kw[h];
      heat += b.space_heat_kw[h] + b.hot_water_kw[h];
    }
    for (const auto& d : r.buildings) {
      pv += d.p_pv[s];
      bch += d.p_bat_ch[s];
      bdch += d.p_bat_dch[s];
      hp += d.p_hp[s];
      bev += d.p_bev[s];
      imp += d.p_imp[s];
      fi += d.p_fi[s];
      hp_heat += d.g_hp[s];
      tch += d.g_ts_ch[s];
      tdch += d.g_ts_dch[s];
    }
    for (const auto& [bus, c] : r.network.p_curt) curt += c[s];
    out << s << ',' << h << ',' << g.weight(s) << ',' << elec << ',' << pv << ',' << bch << ',' << bdch << ','
        << hp << ',' << bev << ',' << imp << ',' << fi << ',' << curt << ',' << heat << ',' << hp_heat << ','
        << tch << ',' << tdch << '\n';
  }
  out.precision(old);
}

void write_voltages_csv(const PlanResult& r, const Network& net, std::ostream& out) {
  const auto old = out.precision(10);
  const auto branch = branch_of(net);
  out << "bus,branch";
  for (int k = 0; k <= 10; ++k) out << ",p" << k * 10;
  out << '\n';
  for (const Bus* b : topological_order(net)) {
    auto it = r.network.u.find(b->id);
    if (it == r.network.u.end()) continue;
    std::vector<double> v;
    for (double u : it->second) v.push_back(std::sqrt(std::max(0.0, u)));
    out << b->id << ',' << branch.at(b->id);
    for (double d : deciles(std::move(v))) out << ',' << d;
    out << '\n';
  }
  out.precision(old);
}

void write_transformer_peaks_csv(const PlanResult& r, std::ostream& out) {
  const auto old = out.precision(10);
  out << "day,import_peak_kw,feed_in_peak_kw\n";
  const TimeGrid& g = r.grid;
  std::size_t s = 0;
  while (s < g.steps()) {
    const std::size_t day = g.hour(s) / 24;
    double imp = 0.0, fi = 0.0;
    for (; s < g.steps() && g.hour(s) / 24 == day; ++s) {
      imp = std::max(imp, r.network.p_imp.empty() ? 0.0 : r.network.p_imp[s]);
      fi = std::max(fi, r.network.p_fi.empty() ? 0.0 : r.network.p_fi[s]);
    }
    out << day << ',' << imp << ',' << fi << '\n';
  }
  out.precision(old);
}

namespace {

template <class Fn>
void write_file(const fs::path& path, Fn fn) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  fn(out);
}

}  // namespace

void export_results(const PlanResult& r, const SystemData& data, const fs::path& dir) {
  fs::create_directories(dir);
  write_file(dir / "cost_breakdown.csv", [&](std::ostream& o) { write_cost_csv(r.costs, o); });
  write_file(dir / "reinforcement.json", [&](std::ostream& o) { write_reinforcement_json(r, data.network, o); });
  write_file(dir / "dispatch.csv", [&](std::ostream& o) { write_dispatch_csv(r, data, o); });
  write_file(dir / "voltages.csv", [&](std::ostream& o) { write_voltages_csv(r, data.network, o); });
  write_file(dir / "transformer_peaks.csv", [&](std::ostream& o) { write_transformer_peaks_csv(r, o); });
}

}  // namespace hoods
