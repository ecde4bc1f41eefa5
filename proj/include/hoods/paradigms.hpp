#pragma once

// The four planning paradigms as multi-stage solve pipelines.
//
//   Coor+Flex+   size and reinforce jointly on T_r, dispatch on T
//   Coor-Flex-   buildings without storage or smart charging, then the grid
//   Coor-Flex+   buildings with flexibility, then the grid
//   Coor-Flex++  as Coor-Flex+, the grid may curtail PV feed-in

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hoods/costs.hpp"
#include "hoods/milp.hpp"
#include "hoods/system_model.hpp"
#include "hoods/timeseries.hpp"

namespace hoods {

enum class ParadigmId { CoorPlusFlexPlus, CoorMinusFlexMinus, CoorMinusFlexPlus, CoorMinusFlexPlusPlus };

inline constexpr ParadigmId kAllParadigms[] = {ParadigmId::CoorMinusFlexMinus, ParadigmId::CoorMinusFlexPlus,
                                               ParadigmId::CoorMinusFlexPlusPlus, ParadigmId::CoorPlusFlexPlus};

const char* to_string(ParadigmId p);
/// Accepts the short names ("coor+flex+", "coor-flex-", ...) and the enum spellings.
ParadigmId paradigm_from_string(const std::string& s);

struct AggregationConfig {
  bool enabled = true;
  std::size_t typical_periods = 4;
  std::size_t period_hours = 168;
  /// Optional restriction of the horizon to these periods (0-based, of length
  /// period_hours), each weighted to represent the whole horizon.
  std::vector<std::size_t> horizon_periods;
};

struct PlanOptions {
  AggregationConfig aggregation;
  SolveParams solver;
  std::string backend = "highs";
  unsigned workers = 1;  // concurrent building solves in the uncoordinated paradigms
};

/// Operation horizon T and capacity-stage grid T_r for a scenario.
struct TimeGrids {
  TimeGrid full;
  TimeGrid reduced;
  bool aggregated = false;
};

/// Series clustered for the capacity stage: total electricity, total space
/// heat, total hot water, COP and PV capacity factor. The first two keep their
/// peak periods.
std::vector<Series> aggregation_bundle(const SystemData& data);
inline constexpr std::size_t kBundleElec = 0;
inline constexpr std::size_t kBundleSpaceHeat = 1;

TimeGrids make_time_grids(const SystemData& data, const AggregationConfig& cfg);

struct StageReport {
  std::string stage;
  SolveStatus status = SolveStatus::Optimal;
  double objective = 0.0;
  double mip_gap = 0.0;
  double max_violation = 0.0;
  std::size_t variables = 0, constraints = 0, binaries = 0;
  double seconds = 0.0;
};

struct BuildingDispatch {
  BusId bus;
  double kappa_pv = 0, beta_pv = 0, kappa_bat_p = 0, kappa_bat_e = 0;
  double kappa_hp = 0, beta_hp = 0, kappa_ts_p = 0, kappa_ts_e = 0, kappa_cs = 0;
  Series p_pv, q_pv, p_bat_ch, p_bat_dch, e_bat, p_hp, g_hp, g_ts_ch, g_ts_dch, e_ts;
  Series p_bev, mu_bev, vms_ch, vms_dch, e_vms, d_mob;
  Series e_bat_init, e_ts_init, e_vms_init;  // per period
  Series p_imp, p_fi, q_imp;                 // exchange with the grid
  double stage_objective = 0.0;              // building stage (uncoordinated only)
};

struct GridDispatch {
  std::string transformer;
  bool oltc = false;
  std::vector<CableSetting> line_settings;
  Series p_imp, p_fi, q_comp_pos, q_comp_neg;
  std::map<BusId, Series> u;  // p.u.^2
  std::vector<Series> p_line, q_line;
  std::map<BusId, Series> p_curt;
  double stage_objective = 0.0;  // grid stage (uncoordinated only)
};

struct PlanResult {
  ParadigmId paradigm = ParadigmId::CoorPlusFlexPlus;
  TimeGrid grid;  // the operation horizon T
  std::vector<BuildingDispatch> buildings;
  GridDispatch network;
  CostBreakdown costs;
  std::vector<StageReport> stages;
  double objective = 0.0;  // composed from the final-stage objectives
  double curtailed_kwh = 0.0;
  double pv_production_kwh = 0.0;  // weighted
};

PlanResult run_coordinated(const SystemData& data, const PlanOptions& opt);
PlanResult run_uncoordinated(const SystemData& data, bool flexible, bool curtailment,
                             const PlanOptions& opt);
PlanResult run_paradigm(const SystemData& data, ParadigmId p, const PlanOptions& opt);

struct ComparisonReport {
  std::vector<ParadigmId> paradigms;
  std::vector<std::string> rows;
  std::vector<std::vector<double>> values;  // [row][paradigm]
  std::size_t baseline = 0;
  std::vector<std::string> reinforcement;   // one line per paradigm
};

/// Cost table with percentage rows relative to Coor-Flex- (or the first result).
ComparisonReport compare(const std::vector<PlanResult>& results);
void write_comparison_csv(const ComparisonReport& r, std::ostream& out);

}  // namespace hoods
