#pragma once

// Small hand-built instances shared by the unit and acceptance suites.

#include <string>

#include "hoods/domain.hpp"
#include "hoods/paradigms.hpp"
#include "hoods/scenario_io.hpp"
#include "hoods/system_model.hpp"

namespace hoods::testing {

/// MBB -> one load bus over a 50 m NAYY 4x150 section, one building, flat
/// prices. Demand and PV follow a simple day/night pattern.
inline SystemData micro_system(std::size_t hours, double elec_kw = 1.0, double heat_kw = 2.0) {
  SystemData d;
  d.network.cables = default_cable_catalog();
  d.network.transformers = default_transformer_options();
  d.network.buses = {{"MBB", BusKind::Mbb, std::nullopt}, {"L1", BusKind::Load, BusId("MBB")}};
  d.network.lines = {{"MBB", "L1", 50.0, "NAYY 4x150", CableSetting::I}};
  d.catalog = default_catalog(hours);
  for (std::size_t h = 0; h < hours; ++h) {
    const int hod = static_cast<int>(h % 24);
    d.catalog.pv_capacity_factor[h] = (hod >= 8 && hod < 17) ? 0.5 : 0.0;
    d.catalog.cop[h] = hod < 12 ? 3.0 : 4.0;
  }
  Building b;
  b.bus_id = "L1";
  b.roof_area_m2 = 40.0;
  for (std::size_t h = 0; h < hours; ++h) {
    const int hod = static_cast<int>(h % 24);
    b.elec_kw.push_back(elec_kw * (hod >= 17 ? 2.0 : 1.0));
    b.space_heat_kw.push_back(heat_kw * (hod < 8 ? 1.5 : 1.0));
    b.hot_water_kw.push_back(0.2 * heat_kw);
  }
  b.n_bev = 1;
  b.mobility_daily_kwh = 5.15;
  b.arrival_hour = 18;
  b.deadline_hour = 8;
  d.buildings.push_back(b);
  return d;
}

inline std::string fixture_path() { return std::string(HOODS_FIXTURE_DIR) + "/scenario.json"; }

/// A winter and a summer week of the fixture year, each stepped hourly.
inline AggregationConfig fixture_weeks() {
  AggregationConfig a;
  a.enabled = false;
  a.period_hours = 168;
  a.horizon_periods = {2, 28};
  return a;
}

inline PlanOptions options(const AggregationConfig& a, double gap = 1e-4) {
  PlanOptions o;
  o.aggregation = a;
  o.solver.mip_gap = gap;
  return o;
}

inline PlanOptions no_aggregation() {
  AggregationConfig a;
  a.enabled = false;
  return options(a);
}

}  // namespace hoods::testing
