#pragma once

// Domain types for the low-voltage distribution system: the radial network and
// its reinforcement menu, the buildings (one energy hub per load bus) and the
// techno-economic parameter catalog. Everything here is a plain value type and
// is immutable once a scenario has been loaded.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace hoods {

using BusId = std::string;
using Series = std::vector<double>;

enum class BusKind { Mbb, Junction, Load };

struct Bus {
  BusId id;
  BusKind kind = BusKind::Junction;
  std::optional<BusId> predecessor;  // absent only for the MBB
};

struct CableType {
  std::string name;
  double r_ohm_per_km = 0.0;
  double x_ohm_per_km = 0.0;
  double s_max_kva = 0.0;       // thermal limit of a single cable
  double c_install_per_m = 0.0;
  double c_material_per_m = 0.0;
};

/// Number of parallel cables on a line section.
enum class CableSetting : int { I = 1, II = 2, III = 3 };

inline constexpr std::array<CableSetting, 3> kAllSettings{CableSetting::I, CableSetting::II,
                                                          CableSetting::III};

constexpr int multiplicity(CableSetting s) { return static_cast<int>(s); }
const char* to_string(CableSetting s);
CableSetting setting_from_string(const std::string& s);

struct LineSection {
  BusId from_bus;
  BusId to_bus;
  double length_m = 0.0;
  std::string cable;  // CableType::name
  CableSetting existing_setting = CableSetting::I;
};

struct TransformerOption {
  std::string name;
  double capacity_kva = 0.0;
  bool is_oltc = false;
  double investment_cost = 0.0;  // 0 for the pre-installed FRT
};

/// Permissible band for one bus, in p.u. of V_base.
struct BusVoltageBand {
  double v_min_frt = 0.95;   // V'_min
  double v_max_frt = 1.03;   // V'_max
  double v_min_oltc = 0.9;   // V_min
  double v_max_oltc = 1.1;   // V_max
};

struct VoltageBands {
  double v_base = 400.0;  // line-to-line volts
  BusVoltageBand mbb{1.0, 1.0, 0.9, 1.1};
  BusVoltageBand other{0.95, 1.03, 0.9, 1.1};

  const BusVoltageBand& for_kind(BusKind k) const { return k == BusKind::Mbb ? mbb : other; }
};

struct Network {
  std::vector<Bus> buses;
  std::vector<CableType> cables;
  std::vector<LineSection> lines;
  std::vector<TransformerOption> transformers;
  VoltageBands bands;

  const Bus* find_bus(const BusId& id) const;
  const CableType* find_cable(const std::string& name) const;
  const Bus& mbb() const;
  const TransformerOption& incumbent() const;
  std::vector<const TransformerOption*> oltc_options() const;
};

struct Building {
  BusId bus_id;
  double roof_area_m2 = 0.0;
  int dwellings = 1;
  Series elec_kw;      // d^elec
  Series elec_q_kvar;  // d^elec,q
  Series space_heat_kw;
  Series hot_water_kw;
  double mobility_daily_kwh = 0.0;
  int n_bev = 0;
  int arrival_hour = 18;
  int deadline_hour = 8;
};

/// Annualisation parameters shared by the component rows of the catalog.
struct Economics {
  double wacc = 0.02;
  double lifetime_years = 20.0;
};

struct PvParams {
  double c_inv_fix = 4074.0;
  double c_inv_var = 914.0;   // per kW
  double c_om = 12.5;         // per kW and year
  Economics econ{0.02, 20.0};
  double cos_phi_min = 0.95;
  double kw_per_m2 = 0.1;
};

struct HeatPumpParams {
  double c_inv_fix = 5924.0;
  double c_inv_var = 1440.0;  // per kW_el
  double c_om = 60.0;         // per kW_el and year
  Economics econ{0.02, 18.0};
  std::optional<double> big_m;  // overrides the per-building default bound
};

struct BatteryParams {
  double c_energy = 1000.0;        // per kWh
  double om_share = 0.01;          // of capex per year
  Economics econ{0.02, 20.0};
  double eta_charge = 0.9797958971132712;     // sqrt(0.96)
  double eta_discharge = 0.9797958971132712;
  double self_discharge = 0.0;
  double energy_to_power = 3.0;
};

struct ThermalStorageParams {
  double c_energy = 194.0;  // per kWh_th
  double c_power = 2.5;     // per kW_th
  double om_share = 0.0;
  Economics econ{0.02, 30.0};
  double eta_charge = 1.0;
  double eta_discharge = 1.0;
  double self_discharge = 0.0;
};

struct ChargingParams {
  double rate_kw_per_bev = 11.0;
  double efficiency = 1.0;
  double daily_demand_per_bev_kwh = 5.15;
};

struct GridEconomics {
  Economics oltc{0.06, 40.0};
  double oltc_om_share = 0.01;
  Economics cable{0.06, 40.0};
};

struct TechnoCatalog {
  PvParams pv;
  HeatPumpParams hp;
  BatteryParams battery;
  ThermalStorageParams ts;
  ChargingParams cs;
  GridEconomics grid;
  double load_q_over_p = 0.25;
  Series price_import;     // per kWh
  Series price_feed_in;    // per kWh
  Series price_q_comp;     // per kVArh
  Series cop;              // cop_t^HP
  Series pv_capacity_factor;

  std::size_t horizon() const { return cop.size(); }
};

/// Reference techno-economic defaults with constant price series of the given length.
TechnoCatalog default_catalog(std::size_t horizon_hours);

/// Reference cable types (NAYY 4x150 main line, NYY service lines).
std::vector<CableType> default_cable_catalog();

/// Pre-installed 400 kVA FRT plus the OLTC replacement menu.
std::vector<TransformerOption> default_transformer_options();

struct EffectiveCable {
  double kappa_kva;
  double r_ohm_per_km;
  double x_ohm_per_km;
};

/// Capacity and impedance of m parallel cables of one type.
EffectiveCable effective_cable_params(const CableType& cable, CableSetting setting);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks single root, radial tree, connectivity and line orientation. Never throws.
ValidationReport validate_network(const Network& network);

/// Default heat-pump big-M: peak heat demand over the worst COP.
double default_heat_pump_big_m(const Building& b, const Series& cop);

/// Fills d^elec,q from the catalog ratio when the building carries none.
void fill_reactive_demand(Building& b, double q_over_p);

/// Predecessor-ordered list of buses (parents before children). Requires a valid network.
std::vector<const Bus*> topological_order(const Network& network);

/// Line sections whose to_bus is `bus`, resp. whose from_bus is `bus`.
std::vector<std::size_t> incoming_lines(const Network& network, const BusId& bus);
std::vector<std::size_t> outgoing_lines(const Network& network, const BusId& bus);

}  // namespace hoods
