#include "hoods/scenario_io.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "hoods/errors.hpp"
#include "json.hpp"

namespace hoods {

namespace fs = std::filesystem;
using json = nlohmann::json;

// -- timestamps --------------------------------------------------------------

namespace {

bool parse_stamp(const std::string& s, std::chrono::sys_seconds& out) {
  int y = 0;
  unsigned mo = 0, d = 0, h = 0, mi = 0;
  char tail = 0;
  if (std::sscanf(s.c_str(), "%4d-%2u-%2uT%2u:%2u%c", &y, &mo, &d, &h, &mi, &tail) != 5) return false;
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{mo}, std::chrono::day{d}};
  if (!ymd.ok() || h > 23 || mi > 59) return false;
  out = std::chrono::sys_days{ymd} + std::chrono::hours{h} + std::chrono::minutes{mi};
  return true;
}

std::string format_stamp(std::chrono::sys_seconds t) {
  const auto day = std::chrono::floor<std::chrono::days>(t);
  const std::chrono::year_month_day ymd{day};
  const std::chrono::hh_mm_ss hms{t - day};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()));
  return buf;
}

std::string number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace

std::string hour_stamp(const std::string& start, std::size_t hour) {
  std::chrono::sys_seconds t0;
  if (!parse_stamp(start, t0)) throw std::invalid_argument("malformed timestamp '" + start + "'");
  return format_stamp(t0 + std::chrono::hours{static_cast<long>(hour)});
}

// -- reading -----------------------------------------------------------------

namespace {

std::string rel(const fs::path& p) { return p.filename().string(); }

struct Problems {
  std::vector<std::string> list;
  void add(const std::string& where, const std::string& msg) { list.push_back(where + ": " + msg); }
};

std::optional<json> read_json(const fs::path& path, Problems& pr) {
  std::ifstream in(path);
  if (!in) {
    pr.add(path.string(), "file not found");
    return std::nullopt;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t pos = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(pos), '\n');
    pr.add(rel(path) + ":" + std::to_string(line), "JSON syntax error");
    return std::nullopt;
  }
}

/// Field access that records missing keys and type errors instead of throwing.
class Obj {
 public:
  Obj(const json* j, std::string file, std::string ptr, Problems& pr)
      : j_(j), file_(std::move(file)), ptr_(std::move(ptr)), pr_(pr) {
    if (j_ && !j_->is_object()) {
      err("expected an object");
      j_ = nullptr;
    }
  }

  bool has(const char* key) const { return j_ && j_->contains(key) && !(*j_)[key].is_null(); }

  template <class T>
  void get(const char* key, T& out, bool required = false) const {
    if (!j_) return;
    if (!has(key)) {
      if (required) err(std::string("missing field '") + key + "'");
      return;
    }
    try {
      out = (*j_)[key].template get<T>();
    } catch (const json::exception&) {
      pr_.add(file_ + ": " + ptr_ + "/" + key, "wrong type");
    }
  }

  Obj child(const char* key, bool required = false) const {
    if (!has(key)) {
      if (j_ && required) err(std::string("missing field '") + key + "'");
      return Obj(nullptr, file_, ptr_ + "/" + key, pr_);
    }
    return Obj(&(*j_)[key], file_, ptr_ + "/" + key, pr_);
  }

  const json* raw(const char* key) const { return has(key) ? &(*j_)[key] : nullptr; }
  void err(const std::string& msg) const { pr_.add(file_ + ": " + (ptr_.empty() ? "/" : ptr_), msg); }
  void err_at(const char* key, const std::string& msg) const { pr_.add(file_ + ": " + ptr_ + "/" + key, msg); }
  const std::string& file() const { return file_; }
  const std::string& ptr() const { return ptr_; }
  explicit operator bool() const { return j_ != nullptr; }

 private:
  const json* j_;
  std::string file_, ptr_;
  Problems& pr_;
};

std::string trim_cr(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  return s;
}

Series read_series_csv(const fs::path& path, std::size_t horizon, Problems& pr) {
  std::ifstream in(path);
  if (!in) {
    pr.add(path.string(), "file not found");
    return {};
  }
  const std::string name = rel(path);
  std::string line;
  if (!std::getline(in, line) || trim_cr(line) != "timestamp,value") {
    pr.add(name + ":1", "expected header 'timestamp,value'");
    return {};
  }
  Series out;
  std::chrono::sys_seconds prev{};
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim_cr(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    const std::string where = name + ":" + std::to_string(lineno);
    if (comma == std::string::npos) {
      pr.add(where, "expected two columns");
      return {};
    }
    std::chrono::sys_seconds t;
    if (!parse_stamp(line.substr(0, comma), t)) {
      pr.add(where, "malformed timestamp '" + line.substr(0, comma) + "'");
      return {};
    }
    if (!out.empty() && t - prev != std::chrono::hours{1}) {
      pr.add(where, "timestamps must advance by one hour");
      return {};
    }
    prev = t;
    const std::string v = line.substr(comma + 1);
    double x = 0.0;
    auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || end != v.data() + v.size() || !std::isfinite(x)) {
      pr.add(where, "malformed value '" + v + "'");
      return {};
    }
    out.push_back(x);
  }
  if (out.size() != horizon)
    pr.add(name, "series has " + std::to_string(out.size()) + " values, horizon is " + std::to_string(horizon));
  return out;
}

/// A series given as a constant or as a CSV file name.
Series read_series_ref(const Obj& o, const char* key, const fs::path& series_dir, std::size_t horizon,
                       Problems& pr, bool required = true) {
  const json* j = o.raw(key);
  if (!j) {
    if (required && o) o.err(std::string("missing series '") + key + "'");
    return {};
  }
  if (j->is_number()) return Series(horizon, j->get<double>());
  if (j->is_string()) return read_series_csv(series_dir / j->get<std::string>(), horizon, pr);
  o.err_at(key, "expected a number or a CSV file name");
  return {};
}

void read_econ(const Obj& o, Economics& e) {
  o.get("wacc", e.wacc);
  o.get("lifetime_years", e.lifetime_years);
}

BusKind bus_kind(const std::string& s, bool& ok) {
  ok = true;
  if (s == "mbb") return BusKind::Mbb;
  if (s == "junction") return BusKind::Junction;
  if (s == "load") return BusKind::Load;
  ok = false;
  return BusKind::Junction;
}

const char* bus_kind_name(BusKind k) {
  switch (k) {
    case BusKind::Mbb: return "mbb";
    case BusKind::Junction: return "junction";
    case BusKind::Load: return "load";
  }
  return "junction";
}

void read_band(const Obj& o, BusVoltageBand& b) {
  o.get("v_min_frt", b.v_min_frt);
  o.get("v_max_frt", b.v_max_frt);
  o.get("v_min_oltc", b.v_min_oltc);
  o.get("v_max_oltc", b.v_max_oltc);
}

Network read_network(const json& j, const std::string& file, Problems& pr) {
  Network net;
  const Obj root(&j, file, "", pr);
  root.get("v_base", net.bands.v_base);
  if (const Obj bands = root.child("bands")) {
    read_band(bands.child("mbb"), net.bands.mbb);
    read_band(bands.child("other"), net.bands.other);
  }
  auto array = [&](const char* key) -> const json* {
    const json* a = root.raw(key);
    if (!a) {
      root.err(std::string("missing field '") + key + "'");
      return nullptr;
    }
    if (!a->is_array()) {
      root.err_at(key, "expected an array");
      return nullptr;
    }
    return a;
  };
  if (const json* a = array("buses")) {
    for (std::size_t i = 0; i < a->size(); ++i) {
      const Obj o(&(*a)[i], file, "/buses/" + std::to_string(i), pr);
      Bus b;
      std::string kind = "junction";
      o.get("id", b.id, true);
      o.get("kind", kind, true);
      bool ok = true;
      b.kind = bus_kind(kind, ok);
      if (!ok) o.err_at("kind", "unknown bus kind '" + kind + "'");
      if (o.has("predecessor")) {
        std::string p;
        o.get("predecessor", p);
        b.predecessor = p;
      }
      net.buses.push_back(std::move(b));
    }
  }
  if (const json* a = array("cables")) {
    for (std::size_t i = 0; i < a->size(); ++i) {
      const Obj o(&(*a)[i], file, "/cables/" + std::to_string(i), pr);
      CableType c;
      o.get("name", c.name, true);
      o.get("r_ohm_per_km", c.r_ohm_per_km, true);
      o.get("x_ohm_per_km", c.x_ohm_per_km, true);
      o.get("s_max_kva", c.s_max_kva, true);
      o.get("c_install_per_m", c.c_install_per_m, true);
      o.get("c_material_per_m", c.c_material_per_m, true);
      net.cables.push_back(std::move(c));
    }
  }
  if (const json* a = array("lines")) {
    for (std::size_t i = 0; i < a->size(); ++i) {
      const Obj o(&(*a)[i], file, "/lines/" + std::to_string(i), pr);
      LineSection l;
      std::string setting = "I";
      o.get("from", l.from_bus, true);
      o.get("to", l.to_bus, true);
      o.get("length_m", l.length_m, true);
      o.get("cable", l.cable, true);
      o.get("existing_setting", setting);
      try {
        l.existing_setting = setting_from_string(setting);
      } catch (const std::exception&) {
        o.err_at("existing_setting", "unknown cable setting '" + setting + "'");
      }
      if (!l.cable.empty() && !net.find_cable(l.cable)) o.err_at("cable", "unknown cable '" + l.cable + "'");
      if (!l.from_bus.empty() && !net.find_bus(l.from_bus)) o.err_at("from", "unknown bus '" + l.from_bus + "'");
      if (!l.to_bus.empty() && !net.find_bus(l.to_bus)) o.err_at("to", "unknown bus '" + l.to_bus + "'");
      net.lines.push_back(std::move(l));
    }
  }
  if (const json* a = array("transformers")) {
    for (std::size_t i = 0; i < a->size(); ++i) {
      const Obj o(&(*a)[i], file, "/transformers/" + std::to_string(i), pr);
      TransformerOption t;
      o.get("name", t.name, true);
      o.get("capacity_kva", t.capacity_kva, true);
      o.get("oltc", t.is_oltc);
      o.get("investment_cost", t.investment_cost);
      net.transformers.push_back(std::move(t));
    }
  }
  return net;
}

TechnoCatalog read_catalog(const json& j, const std::string& file, const fs::path& series_dir, Problems& pr) {
  TechnoCatalog c;
  const Obj root(&j, file, "", pr);
  std::size_t horizon = 0;
  root.get("horizon_hours", horizon, true);
  if (const Obj o = root.child("pv")) {
    o.get("c_inv_fix", c.pv.c_inv_fix);
    o.get("c_inv_var", c.pv.c_inv_var);
    o.get("c_om", c.pv.c_om);
    read_econ(o, c.pv.econ);
    o.get("cos_phi_min", c.pv.cos_phi_min);
    o.get("kw_per_m2", c.pv.kw_per_m2);
  }
  if (const Obj o = root.child("heat_pump")) {
    o.get("c_inv_fix", c.hp.c_inv_fix);
    o.get("c_inv_var", c.hp.c_inv_var);
    o.get("c_om", c.hp.c_om);
    read_econ(o, c.hp.econ);
    if (o.has("big_m")) {
      double m = 0;
      o.get("big_m", m);
      c.hp.big_m = m;
    }
  }
  if (const Obj o = root.child("battery")) {
    o.get("c_energy", c.battery.c_energy);
    o.get("om_share", c.battery.om_share);
    read_econ(o, c.battery.econ);
    o.get("eta_charge", c.battery.eta_charge);
    o.get("eta_discharge", c.battery.eta_discharge);
    o.get("self_discharge", c.battery.self_discharge);
    o.get("energy_to_power", c.battery.energy_to_power);
  }
  if (const Obj o = root.child("thermal_storage")) {
    o.get("c_energy", c.ts.c_energy);
    o.get("c_power", c.ts.c_power);
    o.get("om_share", c.ts.om_share);
    read_econ(o, c.ts.econ);
    o.get("eta_charge", c.ts.eta_charge);
    o.get("eta_discharge", c.ts.eta_discharge);
    o.get("self_discharge", c.ts.self_discharge);
  }
  if (const Obj o = root.child("charging")) {
    o.get("rate_kw_per_bev", c.cs.rate_kw_per_bev);
    o.get("efficiency", c.cs.efficiency);
    o.get("daily_demand_per_bev_kwh", c.cs.daily_demand_per_bev_kwh);
  }
  if (const Obj o = root.child("grid")) {
    read_econ(o.child("oltc"), c.grid.oltc);
    o.get("oltc_om_share", c.grid.oltc_om_share);
    read_econ(o.child("cable"), c.grid.cable);
  }
  root.get("load_q_over_p", c.load_q_over_p);
  const Obj s = root.child("series", true);
  c.price_import = read_series_ref(s, "price_import", series_dir, horizon, pr);
  c.price_feed_in = read_series_ref(s, "price_feed_in", series_dir, horizon, pr);
  c.price_q_comp = read_series_ref(s, "price_q_comp", series_dir, horizon, pr);
  c.cop = read_series_ref(s, "cop", series_dir, horizon, pr);
  c.pv_capacity_factor = read_series_ref(s, "pv_capacity_factor", series_dir, horizon, pr);
  if (c.cop.size() != horizon) c.cop.assign(horizon, 1.0);  // keep horizon() meaningful after errors
  return c;
}

std::vector<Building> read_buildings(const json& j, const std::string& file, const fs::path& series_dir,
                                     const Network& net, std::size_t horizon, Problems& pr) {
  std::vector<Building> out;
  if (!j.is_array()) {
    pr.add(file + ": /", "expected an array of buildings");
    return out;
  }
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Obj o(&j[i], file, "/" + std::to_string(i), pr);
    Building b;
    o.get("bus", b.bus_id, true);
    if (!b.bus_id.empty() && !net.find_bus(b.bus_id)) o.err_at("bus", "unknown bus '" + b.bus_id + "'");
    o.get("roof_area_m2", b.roof_area_m2);
    o.get("dwellings", b.dwellings);
    o.get("mobility_daily_kwh", b.mobility_daily_kwh);
    o.get("n_bev", b.n_bev);
    o.get("arrival_hour", b.arrival_hour);
    o.get("deadline_hour", b.deadline_hour);
    const Obj s = o.child("series", true);
    b.elec_kw = read_series_ref(s, "elec", series_dir, horizon, pr);
    b.elec_q_kvar = read_series_ref(s, "elec_q", series_dir, horizon, pr, false);
    b.space_heat_kw = read_series_ref(s, "space_heat", series_dir, horizon, pr);
    b.hot_water_kw = read_series_ref(s, "hot_water", series_dir, horizon, pr);
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace

Scenario load_scenario(const fs::path& scenario_json) {
  Problems pr;
  const auto sj = read_json(scenario_json, pr);
  if (!sj) throw ValidationError(pr.list);
  const fs::path base = scenario_json.parent_path();
  const std::string sfile = rel(scenario_json);
  const Obj root(&*sj, sfile, "", pr);

  Scenario sc;
  std::string network_ref, buildings_ref, catalog_ref, series_ref = "series", paradigm;
  root.get("network", network_ref, true);
  root.get("buildings", buildings_ref, true);
  root.get("catalog", catalog_ref, true);
  root.get("series_dir", series_ref);
  root.get("start", sc.start);
  std::chrono::sys_seconds t0;
  if (!parse_stamp(sc.start, t0)) root.err_at("start", "malformed timestamp '" + sc.start + "'");
  if (root.has("paradigm")) {
    root.get("paradigm", paradigm);
    try {
      sc.paradigm = paradigm_from_string(paradigm);
    } catch (const std::exception& e) {
      root.err_at("paradigm", e.what());
    }
  }
  if (const Obj a = root.child("aggregation")) {
    a.get("enabled", sc.aggregation.enabled);
    a.get("typical_periods", sc.aggregation.typical_periods);
    a.get("period_hours", sc.aggregation.period_hours);
    a.get("horizon_periods", sc.aggregation.horizon_periods);
  }
  if (const Obj s = root.child("solver")) {
    s.get("backend", sc.backend);
    s.get("mip_gap", sc.solver.mip_gap);
    s.get("time_limit_s", sc.solver.time_limit_s);
    s.get("threads", sc.solver.threads);
  }
  root.get("output_dir", sc.output_dir);

  const fs::path series_dir = base / series_ref;
  if (!network_ref.empty())
    if (const auto j = read_json(base / network_ref, pr)) sc.data.network = read_network(*j, network_ref, pr);
  if (!catalog_ref.empty())
    if (const auto j = read_json(base / catalog_ref, pr))
      sc.data.catalog = read_catalog(*j, catalog_ref, series_dir, pr);
  if (!buildings_ref.empty())
    if (const auto j = read_json(base / buildings_ref, pr))
      sc.data.buildings = read_buildings(*j, buildings_ref, series_dir, sc.data.network,
                                         sc.data.catalog.horizon(), pr);

  if (pr.list.empty()) {
    for (const auto& p : validate_system(sc.data)) pr.list.push_back(p);
  }
  if (!pr.list.empty()) throw ValidationError(pr.list);
  return sc;
}

// -- writing -----------------------------------------------------------------

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_series_csv(const fs::path& path, const Series& s, const std::string& start) {
  std::chrono::sys_seconds t0;
  parse_stamp(start, t0);
  std::string text = "timestamp,value\n";
  for (std::size_t h = 0; h < s.size(); ++h)
    text += format_stamp(t0 + std::chrono::hours{static_cast<long>(h)}) + "," + number(s[h]) + "\n";
  write_text(path, text);
}

/// Constant series are stored inline, everything else as a CSV file.
json series_ref(const Series& s, const std::string& name, const fs::path& series_dir, const std::string& start) {
  if (!s.empty() && std::all_of(s.begin(), s.end(), [&](double v) { return v == s.front(); })) return s.front();
  write_series_csv(series_dir / (name + ".csv"), s, start);
  return name + ".csv";
}

json econ(const Economics& e) { return {{"wacc", e.wacc}, {"lifetime_years", e.lifetime_years}}; }

json band(const BusVoltageBand& b) {
  return {{"v_min_frt", b.v_min_frt}, {"v_max_frt", b.v_max_frt}, {"v_min_oltc", b.v_min_oltc},
          {"v_max_oltc", b.v_max_oltc}};
}

std::string file_safe(const std::string& s) {
  std::string out;
  for (char c : s) out += std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ? c : '_';
  return out;
}

}  // namespace

void save_scenario(const Scenario& s, const fs::path& dir) {
  const fs::path series_dir = dir / "series";
  fs::create_directories(series_dir);
  const auto& d = s.data;

  json net;
  net["v_base"] = d.network.bands.v_base;
  net["bands"] = {{"mbb", band(d.network.bands.mbb)}, {"other", band(d.network.bands.other)}};
  net["buses"] = json::array();
  for (const auto& b : d.network.buses) {
    json jb = {{"id", b.id}, {"kind", bus_kind_name(b.kind)}};
    if (b.predecessor) jb["predecessor"] = *b.predecessor;
    net["buses"].push_back(jb);
  }
  net["cables"] = json::array();
  for (const auto& c : d.network.cables)
    net["cables"].push_back({{"name", c.name},
                             {"r_ohm_per_km", c.r_ohm_per_km},
                             {"x_ohm_per_km", c.x_ohm_per_km},
                             {"s_max_kva", c.s_max_kva},
                             {"c_install_per_m", c.c_install_per_m},
                             {"c_material_per_m", c.c_material_per_m}});
  net["lines"] = json::array();
  for (const auto& l : d.network.lines)
    net["lines"].push_back({{"from", l.from_bus},
                            {"to", l.to_bus},
                            {"length_m", l.length_m},
                            {"cable", l.cable},
                            {"existing_setting", to_string(l.existing_setting)}});
  net["transformers"] = json::array();
  for (const auto& t : d.network.transformers)
    net["transformers"].push_back({{"name", t.name},
                                   {"capacity_kva", t.capacity_kva},
                                   {"oltc", t.is_oltc},
                                   {"investment_cost", t.investment_cost}});
  write_text(dir / "network.json", net.dump(2) + "\n");

  const auto& c = d.catalog;
  json cat;
  cat["horizon_hours"] = c.horizon();
  cat["pv"] = {{"c_inv_fix", c.pv.c_inv_fix}, {"c_inv_var", c.pv.c_inv_var}, {"c_om", c.pv.c_om},
               {"wacc", c.pv.econ.wacc}, {"lifetime_years", c.pv.econ.lifetime_years},
               {"cos_phi_min", c.pv.cos_phi_min}, {"kw_per_m2", c.pv.kw_per_m2}};
  cat["heat_pump"] = {{"c_inv_fix", c.hp.c_inv_fix}, {"c_inv_var", c.hp.c_inv_var}, {"c_om", c.hp.c_om},
                      {"wacc", c.hp.econ.wacc}, {"lifetime_years", c.hp.econ.lifetime_years}};
  if (c.hp.big_m) cat["heat_pump"]["big_m"] = *c.hp.big_m;
  cat["battery"] = {{"c_energy", c.battery.c_energy}, {"om_share", c.battery.om_share},
                    {"wacc", c.battery.econ.wacc}, {"lifetime_years", c.battery.econ.lifetime_years},
                    {"eta_charge", c.battery.eta_charge}, {"eta_discharge", c.battery.eta_discharge},
                    {"self_discharge", c.battery.self_discharge}, {"energy_to_power", c.battery.energy_to_power}};
  cat["thermal_storage"] = {{"c_energy", c.ts.c_energy}, {"c_power", c.ts.c_power}, {"om_share", c.ts.om_share},
                            {"wacc", c.ts.econ.wacc}, {"lifetime_years", c.ts.econ.lifetime_years},
                            {"eta_charge", c.ts.eta_charge}, {"eta_discharge", c.ts.eta_discharge},
                            {"self_discharge", c.ts.self_discharge}};
  cat["charging"] = {{"rate_kw_per_bev", c.cs.rate_kw_per_bev}, {"efficiency", c.cs.efficiency},
                     {"daily_demand_per_bev_kwh", c.cs.daily_demand_per_bev_kwh}};
  cat["grid"] = {{"oltc", econ(c.grid.oltc)}, {"oltc_om_share", c.grid.oltc_om_share}, {"cable", econ(c.grid.cable)}};
  cat["load_q_over_p"] = c.load_q_over_p;
  cat["series"] = {{"price_import", series_ref(c.price_import, "price_import", series_dir, s.start)},
                   {"price_feed_in", series_ref(c.price_feed_in, "price_feed_in", series_dir, s.start)},
                   {"price_q_comp", series_ref(c.price_q_comp, "price_q_comp", series_dir, s.start)},
                   {"cop", series_ref(c.cop, "cop", series_dir, s.start)},
                   {"pv_capacity_factor", series_ref(c.pv_capacity_factor, "pv_capacity_factor", series_dir, s.start)}};
  write_text(dir / "catalog.json", cat.dump(2) + "\n");

  json bs = json::array();
  for (const auto& b : d.buildings) {
    const std::string stem = file_safe(b.bus_id);
    json series = {{"elec", series_ref(b.elec_kw, stem + "_elec", series_dir, s.start)},
                   {"space_heat", series_ref(b.space_heat_kw, stem + "_space_heat", series_dir, s.start)},
                   {"hot_water", series_ref(b.hot_water_kw, stem + "_hot_water", series_dir, s.start)}};
    if (!b.elec_q_kvar.empty()) series["elec_q"] = series_ref(b.elec_q_kvar, stem + "_elec_q", series_dir, s.start);
    bs.push_back({{"bus", b.bus_id},
                  {"roof_area_m2", b.roof_area_m2},
                  {"dwellings", b.dwellings},
                  {"mobility_daily_kwh", b.mobility_daily_kwh},
                  {"n_bev", b.n_bev},
                  {"arrival_hour", b.arrival_hour},
                  {"deadline_hour", b.deadline_hour},
                  {"series", series}});
  }
  write_text(dir / "buildings.json", bs.dump(2) + "\n");

  json sc = {{"network", "network.json"},
             {"buildings", "buildings.json"},
             {"catalog", "catalog.json"},
             {"series_dir", "series"},
             {"start", s.start},
             {"paradigm", to_string(s.paradigm)},
             {"aggregation",
              {{"enabled", s.aggregation.enabled},
               {"typical_periods", s.aggregation.typical_periods},
               {"period_hours", s.aggregation.period_hours},
               {"horizon_periods", s.aggregation.horizon_periods}}},
             {"solver", {{"backend", s.backend}, {"mip_gap", s.solver.mip_gap}, {"threads", s.solver.threads}}},
             {"output_dir", s.output_dir}};
  if (std::isfinite(s.solver.time_limit_s)) sc["solver"]["time_limit_s"] = s.solver.time_limit_s;
  write_text(dir / "scenario.json", sc.dump(2) + "\n");
}

}  // namespace hoods
