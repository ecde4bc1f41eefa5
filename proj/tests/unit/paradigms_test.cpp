#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "hoods/errors.hpp"
#include "hoods/paradigms.hpp"
#include "support.hpp"

using namespace hoods;
using hoods::testing::micro_system;
using hoods::testing::no_aggregation;

namespace {

double rel_tol(double v, double gap = 1e-4) { return 2 * gap * std::max(1.0, std::abs(v)); }

// Exhaustive search over PV installation, transformer choice and cable setting,
// each leaf solved as an LP with every binary pinned.
double brute_force_optimum(const SystemData& data, const TimeGrid& grid) {
  const HoodsModel model = build_hoods(data, grid, true);
  const auto& g = model.grid;
  double best = kInf;
  for (int pv = 0; pv <= 1; ++pv) {
    for (std::size_t t = 0; t <= g.oltc.size(); ++t) {
      for (int cable = 1; cable <= 3; ++cable) {
        std::map<std::string, double> fix{{"beta_pv.L1", double(pv)},
                                          {"beta_hp.L1", 1.0},
                                          {"alpha_frt", t == 0 ? 1.0 : 0.0}};
        for (std::size_t o = 0; o < g.oltc.size(); ++o)
          fix["alpha_oltc." + std::to_string(o)] = (t == o + 1) ? 1.0 : 0.0;
        for (int m = 1; m <= 3; ++m) fix["alpha.l0." + std::to_string(m)] = m == cable ? 1.0 : 0.0;
        const ModelSpec leaf = fix_variables(model.spec, fix);
        const SolverResult r = solve(leaf);
        if (r.has_solution()) best = std::min(best, r.objective);
      }
    }
  }
  return best;
}

PlanResult fake_result(ParadigmId p, double pv, double cables, double import) {
  PlanResult r;
  r.paradigm = p;
  r.costs.pv = pv;
  r.costs.cables = cables;
  r.costs.import = import;
  r.network.transformer = "FRT 400";
  r.network.line_settings = {CableSetting::I, CableSetting::II};
  return r;
}

}  // namespace

TEST(ParadigmNames, RoundTrip) {
  for (ParadigmId p : kAllParadigms) EXPECT_EQ(paradigm_from_string(to_string(p)), p);
  EXPECT_EQ(paradigm_from_string("coor+flex+"), ParadigmId::CoorPlusFlexPlus);
  EXPECT_EQ(paradigm_from_string("COOR-FLEX++"), ParadigmId::CoorMinusFlexPlusPlus);
  EXPECT_THROW(paradigm_from_string("coor+flex-"), std::invalid_argument);
}

TEST(Coordinated, MatchesExhaustiveSearchOnTwoSteps) {
  for (double elec : {1.0, 40.0, 150.0}) {
    auto data = micro_system(2, elec, 2.0);
    data.catalog.pv_capacity_factor = {0.0, 0.8};
    const TimeGrid grid = TimeGrid::full(2);
    const double oracle = brute_force_optimum(data, grid);
    SolveParams tight;
    tight.mip_gap = 1e-9;
    const SolverResult mip = solve(build_hoods(data, grid, true).spec, tight);
    ASSERT_TRUE(mip.has_solution());
    EXPECT_NEAR(mip.objective, oracle, 1e-6 * std::max(1.0, std::abs(oracle))) << "elec " << elec;
  }
}

TEST(Coordinated, HeavyLoadTriggersReinforcement) {
  // 130 kW through one 121 kVA cable needs a second cable.
  auto data = micro_system(2, 130.0, 2.0);
  const PlanResult r = run_paradigm(data, ParadigmId::CoorPlusFlexPlus, no_aggregation());
  ASSERT_EQ(r.network.line_settings.size(), 1u);
  EXPECT_NE(r.network.line_settings[0], CableSetting::I);
  EXPECT_GT(r.costs.cables, 0.0);
}

TEST(Dominance, CoordinationNeverCostsMore) {
  for (double elec : {1.0, 3.0}) {
    const auto data = micro_system(48, elec, 2.0);
    std::map<ParadigmId, double> total;
    for (ParadigmId p : kAllParadigms) total[p] = run_paradigm(data, p, no_aggregation()).costs.total();
    const double coor = total[ParadigmId::CoorPlusFlexPlus];
    for (ParadigmId p : kAllParadigms) EXPECT_LE(coor, total[p] + rel_tol(total[p])) << to_string(p);
    EXPECT_LE(total[ParadigmId::CoorMinusFlexPlusPlus],
              total[ParadigmId::CoorMinusFlexPlus] + rel_tol(total[ParadigmId::CoorMinusFlexPlus]));
  }
}

TEST(Dominance, CurtailmentRescuesAnOverloadedServiceLine) {
  // One summer day standing for the whole year. A 35 kWp roof behind 150 m of
  // NYY 4x16 (30 kVA) exceeds the line only around noon, so trimming the peak
  // is cheaper than a second cable.
  auto data = micro_system(8760, 0.2, 0.5);
  data.network.lines[0].cable = "NYY 4x16";
  data.network.lines[0].length_m = 150.0;
  data.buildings[0].roof_area_m2 = 350.0;
  for (std::size_t h = 0; h < 8760; ++h) {
    const double x = (static_cast<double>(h % 24) - 7.0) / 10.0;
    data.catalog.pv_capacity_factor[h] = x > 0 && x < 1 ? std::sin(3.141592653589793 * x) : 0.0;
  }
  data.catalog.price_feed_in.assign(8760, 0.10);
  AggregationConfig day;
  day.enabled = false;
  day.period_hours = 24;
  day.horizon_periods = {172};
  const auto opt = hoods::testing::options(day);
  const PlanResult plus = run_paradigm(data, ParadigmId::CoorMinusFlexPlus, opt);
  const PlanResult pp = run_paradigm(data, ParadigmId::CoorMinusFlexPlusPlus, opt);
  EXPECT_NEAR(pp.grid.represented_hours(), 8760.0, 1e-9);
  EXPECT_GT(pp.curtailed_kwh, 0.0);
  EXPECT_LT(pp.curtailed_kwh, pp.pv_production_kwh);
  EXPECT_LT(pp.costs.cables, plus.costs.cables);
  EXPECT_LE(pp.network.stage_objective, plus.network.stage_objective + rel_tol(plus.network.stage_objective));
  EXPECT_LE(pp.costs.total(), plus.costs.total() + rel_tol(plus.costs.total()));
}

TEST(Uncoordinated, CurtailmentWithoutFlexibilityIsRejected) {
  const auto data = micro_system(24);
  EXPECT_THROW(run_uncoordinated(data, false, true, no_aggregation()), std::invalid_argument);
}

TEST(Uncoordinated, InflexibleBuildingsInstallNoStorage) {
  const auto data = micro_system(48);
  const PlanResult r = run_paradigm(data, ParadigmId::CoorMinusFlexMinus, no_aggregation());
  EXPECT_NEAR(r.costs.battery, 0.0, 1e-9);
  EXPECT_NEAR(r.costs.ts, 0.0, 1e-9);
  ASSERT_EQ(r.buildings.size(), 1u);
  EXPECT_NEAR(r.buildings[0].kappa_bat_p, 0.0, 1e-9);
  EXPECT_EQ(r.stages.size(), 3u);  // sizing, building dispatch, grid
}

TEST(Uncoordinated, ParallelBuildingsGiveTheSameAnswer) {
  auto data = micro_system(24);
  // A second feeder with its own building.
  data.network.buses.push_back({"L2", BusKind::Load, BusId("MBB")});
  data.network.lines.push_back({"MBB", "L2", 30.0, "NYY 4x50", CableSetting::I});
  Building b = data.buildings[0];
  b.bus_id = "L2";
  for (double& v : b.elec_kw) v *= 1.7;
  data.buildings.push_back(b);
  PlanOptions one = no_aggregation(), four = no_aggregation();
  four.workers = 4;
  const PlanResult a = run_paradigm(data, ParadigmId::CoorMinusFlexPlus, one);
  const PlanResult c = run_paradigm(data, ParadigmId::CoorMinusFlexPlus, four);
  EXPECT_NEAR(a.costs.total(), c.costs.total(), 1e-9 * std::abs(a.costs.total()));
}

TEST(StageTransfer, DispatchStageKeepsTheSizing) {
  const auto data = micro_system(96);
  AggregationConfig agg;
  agg.typical_periods = 2;
  agg.period_hours = 24;
  const PlanResult r = run_paradigm(data, ParadigmId::CoorPlusFlexPlus, hoods::testing::options(agg));
  ASSERT_EQ(r.stages.size(), 2u);
  EXPECT_EQ(r.grid.steps(), 96u);
  EXPECT_LT(r.stages[0].variables, r.stages[1].variables);

  // Re-solving the full horizon with the reported decisions pinned reproduces the objective.
  const TimeGrid full = TimeGrid::full(96);
  const HoodsModel m = build_hoods(data, full, true);
  const auto& b = r.buildings.at(0);
  std::map<std::string, double> fix{{"kappa_pv.L1", b.kappa_pv},     {"beta_pv.L1", b.beta_pv},
                                    {"kappa_bat_p.L1", b.kappa_bat_p}, {"kappa_hp.L1", b.kappa_hp},
                                    {"beta_hp.L1", b.beta_hp},         {"kappa_ts_p.L1", b.kappa_ts_p},
                                    {"kappa_ts_e.L1", b.kappa_ts_e}};
  fix["alpha_frt"] = r.network.transformer == data.network.incumbent().name ? 1.0 : 0.0;
  for (std::size_t o = 0; o < m.grid.oltc.size(); ++o)
    fix["alpha_oltc." + std::to_string(o)] = m.grid.oltc[o]->name == r.network.transformer ? 1.0 : 0.0;
  for (CableSetting s : kAllSettings)
    fix["alpha.l0." + std::to_string(multiplicity(s))] = r.network.line_settings[0] == s ? 1.0 : 0.0;
  const SolverResult again = solve(fix_variables(m.spec, fix));
  ASSERT_TRUE(again.has_solution());
  EXPECT_NEAR(again.objective, r.objective, 1e-6 * std::abs(r.objective));
}

TEST(TimeGrids, AggregationOnlyWhenItReduces) {
  const auto data = micro_system(96);
  AggregationConfig agg;
  agg.typical_periods = 4;
  agg.period_hours = 24;
  EXPECT_FALSE(make_time_grids(data, agg).aggregated);
  agg.typical_periods = 2;
  const TimeGrids g = make_time_grids(data, agg);
  EXPECT_TRUE(g.aggregated);
  EXPECT_EQ(g.reduced.steps(), 48u);
  EXPECT_NEAR(g.reduced.represented_hours(), 96.0, 1e-9);
  EXPECT_TRUE(g.full.is_full());
}

TEST(TimeGrids, HorizonSubsetIsReweighted) {
  const auto data = micro_system(96);
  AggregationConfig agg;
  agg.enabled = false;
  agg.period_hours = 24;
  agg.horizon_periods = {3, 1};
  const TimeGrids g = make_time_grids(data, agg);
  EXPECT_EQ(g.full.steps(), 48u);
  EXPECT_EQ(g.full.hour(0), 24u);
  EXPECT_NEAR(g.full.represented_hours(), 96.0, 1e-9);
  agg.horizon_periods = {1, 1};
  EXPECT_THROW(make_time_grids(data, agg), std::invalid_argument);
  agg.horizon_periods = {4};
  EXPECT_THROW(make_time_grids(data, agg), std::invalid_argument);
}

TEST(Errors, InfeasibleStageNamesTheRows) {
  auto data = micro_system(24, 600.0, 2.0);  // beyond three cables and the largest transformer path
  try {
    run_paradigm(data, ParadigmId::CoorPlusFlexPlus, no_aggregation());
    FAIL() << "expected infeasibility";
  } catch (const InfeasibleError& e) {
    EXPECT_FALSE(e.stage().empty());
    EXPECT_FALSE(e.violated().empty());
  }
}

TEST(Comparison, PercentagesRelativeToTheInflexibleBaseline) {
  const std::vector<PlanResult> rs{fake_result(ParadigmId::CoorPlusFlexPlus, 10, 5, 70),
                                   fake_result(ParadigmId::CoorMinusFlexMinus, 20, 10, 90)};
  const ComparisonReport c = compare(rs);
  EXPECT_EQ(c.baseline, 1u);
  auto value = [&](const std::string& row, std::size_t col) {
    const auto it = std::find(c.rows.begin(), c.rows.end(), row);
    if (it == c.rows.end()) throw std::runtime_error("no row " + row);
    return c.values[static_cast<std::size_t>(it - c.rows.begin())][col];
  };
  EXPECT_NEAR(value("Total costs", 0), 85.0, 1e-12);
  EXPECT_NEAR(value("Total percentage", 1), 100.0, 1e-12);
  EXPECT_NEAR(value("Total percentage", 0), 100.0 * 85.0 / 120.0, 1e-12);
  EXPECT_NEAR(value("Buildings percentage", 0), 100.0 * 80.0 / 110.0, 1e-12);
  EXPECT_NEAR(value("Grid percentage", 0), 50.0, 1e-12);
  EXPECT_NEAR(value("Share grid (%)", 1), 100.0 * 10.0 / 120.0, 1e-12);
  ASSERT_EQ(c.reinforcement.size(), 2u);
  EXPECT_NE(c.reinforcement[0].find("l1=II"), std::string::npos);

  std::ostringstream csv;
  write_comparison_csv(c, csv);
  EXPECT_EQ(csv.str().substr(0, 4), "row,");
  EXPECT_THROW(compare({}), std::invalid_argument);
}
