#pragma once

// Constraint emitters for one building energy hub. Each add_* call appends
// variables and rows to a ModelSpec and records the handles in BuildingVars.
// Names follow "<symbol>.<bus>[.<step>]".

#include <string>
#include <vector>

#include "hoods/domain.hpp"
#include "hoods/milp.hpp"
#include "hoods/timeseries.hpp"

namespace hoods {

struct BuildingVars {
  std::string bus;

  // capacities
  VarId kappa_pv, beta_pv;
  VarId kappa_bat_p, kappa_bat_e;
  VarId kappa_hp, beta_hp;
  VarId kappa_ts_p, kappa_ts_e;

  // dispatch, one entry per grid step
  std::vector<VarId> p_pv, q_pv;
  std::vector<VarId> p_bat_ch, p_bat_dch, e_bat;
  std::vector<VarId> p_hp, g_hp;
  std::vector<VarId> g_ts_ch, g_ts_dch, e_ts;
  std::vector<VarId> p_bev, mu_bev, vms_ch, vms_dch, e_vms;

  // storage level before the first step of each period
  std::vector<VarId> e_bat_init, e_ts_init, e_vms_init;

  // standalone exchange (empty in networked mode)
  std::vector<VarId> p_imp, p_fi, q_imp;

  Series d_mob;           // mobility demand as placed on the grid steps
  double kappa_cs = 0.0;  // charging-station rate limit
  double big_m_hp = 0.0;
  bool flexible = true;

  std::vector<VarId> capacity_vars() const;
};

/// Net grid injection terms at a bus per step: sum of incoming minus outgoing
/// line flows. Supplied by the grid emitter for networked buildings.
struct NodeFlows {
  std::vector<std::vector<Term>> p;
  std::vector<std::vector<Term>> q;
};

enum class BalanceMode { Networked, Standalone };

struct BuildingContext {
  const Building& building;
  const TechnoCatalog& catalog;
  const TimeGrid& grid;
};

void add_pv(ModelSpec& m, const BuildingContext& ctx, BuildingVars& v);
void add_battery(ModelSpec& m, const BuildingContext& ctx, BuildingVars& v, bool enabled);
void add_heatpump(ModelSpec& m, const BuildingContext& ctx, BuildingVars& v);
void add_thermal_storage(ModelSpec& m, const BuildingContext& ctx, BuildingVars& v, bool enabled);
void add_heat_balance(ModelSpec& m, const BuildingContext& ctx, BuildingVars& v);
void add_mobility(ModelSpec& m, const BuildingContext& ctx, BuildingVars& v, bool flexible);
void add_building_balance(ModelSpec& m, const BuildingContext& ctx, BuildingVars& v,
                          BalanceMode mode, const NodeFlows* flows = nullptr);

/// Mobility demand on the grid steps: the daily amount at the deadline hour
/// (flexible) or at the arrival hour (inflexible).
Series place_mobility_demand(const Building& b, const TimeGrid& grid, bool flexible);

/// True when the hour of day lies in the overnight window [arrival, deadline).
bool in_charging_window(int hour_of_day, int arrival, int deadline);

/// All of the above in emission order. Storages and VMS are disabled when
/// `flexible` is false.
BuildingVars add_building(ModelSpec& m, const BuildingContext& ctx, bool flexible,
                          BalanceMode mode, const NodeFlows* flows = nullptr);

}  // namespace hoods
