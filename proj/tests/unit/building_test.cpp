#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "hoods/building_model.hpp"
#include "hoods/costs.hpp"
#include "hoods/system_model.hpp"
#include "support.hpp"

using namespace hoods;

namespace {

const Constraint& row(const ModelSpec& m, const std::string& label) {
  for (const auto& r : m.constraints())
    if (r.label == label) return r;
  throw std::runtime_error("no row " + label);
}

double coef(const ModelSpec& m, const Constraint& r, const std::string& var) {
  double c = 0.0;
  for (const auto& t : r.terms)
    if (m.variable(t.var).name == var) c += t.coef;
  return c;
}

// Two one-day periods taken from a two-day micro horizon, with unequal weights.
TimeGrid two_periods() {
  TimeGrid g(48);
  g.add_period(0, 24, 2.0);
  g.add_period(24, 24, 3.0);
  return g;
}

struct Solved {
  BuildingModel model;
  SolverResult result;
  double v(VarId id) const { return result.value(id); }
  double sum(const std::vector<VarId>& ids, std::size_t from, std::size_t to) const {
    double s = 0.0;
    for (std::size_t i = from; i < to; ++i) s += v(ids[i]);
    return s;
  }
};

Solved solve_micro(bool flexible, const TimeGrid& g, double elec = 1.0, double heat = 2.0) {
  const auto data = hoods::testing::micro_system(g.horizon(), elec, heat);
  Solved s{build_hoods_bui(data, data.buildings[0], g, flexible), {}};
  s.result = solve(s.model.spec);
  return s;
}

}  // namespace

TEST(ChargingWindow, WrapsAroundMidnight) {
  EXPECT_TRUE(in_charging_window(18, 18, 8));
  EXPECT_TRUE(in_charging_window(23, 18, 8));
  EXPECT_TRUE(in_charging_window(0, 18, 8));
  EXPECT_TRUE(in_charging_window(7, 18, 8));
  EXPECT_FALSE(in_charging_window(8, 18, 8));
  EXPECT_FALSE(in_charging_window(12, 18, 8));
  EXPECT_FALSE(in_charging_window(17, 18, 8));
}

TEST(ChargingWindow, DaytimeWindowAndEmptyWindow) {
  EXPECT_TRUE(in_charging_window(9, 9, 17));
  EXPECT_TRUE(in_charging_window(16, 9, 17));
  EXPECT_FALSE(in_charging_window(17, 9, 17));
  EXPECT_FALSE(in_charging_window(3, 9, 17));
  for (int h = 0; h < 24; ++h) EXPECT_FALSE(in_charging_window(h, 5, 5));
}

TEST(MobilityDemand, PlacedAtDeadlineOrArrival) {
  Building b;
  b.mobility_daily_kwh = 10.3;
  b.arrival_hour = 18;
  b.deadline_hour = 8;
  const TimeGrid g = TimeGrid::full(48);
  const Series flex = place_mobility_demand(b, g, true);
  const Series inflex = place_mobility_demand(b, g, false);
  for (std::size_t h = 0; h < 48; ++h) {
    EXPECT_DOUBLE_EQ(flex[h], h % 24 == 8 ? 10.3 : 0.0) << h;
    EXPECT_DOUBLE_EQ(inflex[h], h % 24 == 18 ? 10.3 : 0.0) << h;
  }
}

TEST(MobilityDemand, FollowsTheGridHours) {
  Building b;
  b.mobility_daily_kwh = 5.0;
  b.deadline_hour = 8;
  TimeGrid g(72);
  g.add_period(48, 24, 1.0);
  const Series d = place_mobility_demand(b, g, true);
  ASSERT_EQ(d.size(), 24u);
  EXPECT_DOUBLE_EQ(d[8], 5.0);
  EXPECT_DOUBLE_EQ(std::accumulate(d.begin(), d.end(), 0.0), 5.0);
}

TEST(PvRows, ReactiveLimitFollowsPowerFactor) {
  const auto data = hoods::testing::micro_system(2);
  const BuildingModel bm = build_hoods_bui(data, data.buildings[0], TimeGrid::full(2), true);
  const double tan_phi = std::sqrt(1.0 - 0.95 * 0.95) / 0.95;
  EXPECT_NEAR(tan_phi, 0.3287, 1e-4);
  EXPECT_NEAR(coef(bm.spec, row(bm.spec, "pv_q_up.L1.1"), "p_pv.L1.1"), -tan_phi, 1e-12);
  EXPECT_NEAR(coef(bm.spec, row(bm.spec, "pv_q_lo.L1.1"), "p_pv.L1.1"), -tan_phi, 1e-12);
  EXPECT_NEAR(coef(bm.spec, row(bm.spec, "pv_roof.L1"), "beta_pv.L1"), -0.1 * 40.0, 1e-12);
}

TEST(HeatPump, BigMDefaultsToPeakHeatOverWorstCop) {
  const auto data = hoods::testing::micro_system(24);
  const BuildingModel bm = build_hoods_bui(data, data.buildings[0], TimeGrid::full(24), true);
  // Peak heat 2*1.5 + 0.4 = 3.4 kW_th at COP 3 (night hours).
  EXPECT_NEAR(bm.vars.big_m_hp, 3.4 / 3.0, 1e-12);
  EXPECT_NEAR(coef(bm.spec, row(bm.spec, "hp_install.L1"), "beta_hp.L1"), -3.4 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(bm.spec.variable(bm.vars.beta_hp).lower, 1.0);
}

TEST(HeatPump, NoHeatDemandLeavesInstallationOpen) {
  const auto data = hoods::testing::micro_system(24, 1.0, 0.0);
  const BuildingModel bm = build_hoods_bui(data, data.buildings[0], TimeGrid::full(24), true);
  EXPECT_DOUBLE_EQ(bm.spec.variable(bm.vars.beta_hp).lower, 0.0);
  const SolverResult r = solve(bm.spec);
  ASSERT_TRUE(r.has_solution());
  EXPECT_NEAR(r.value(bm.vars.beta_hp), 0.0, 1e-9);
  EXPECT_NEAR(r.value(bm.vars.kappa_hp), 0.0, 1e-9);
}

TEST(HeatPump, RejectsNonPositiveCop) {
  auto data = hoods::testing::micro_system(4);
  data.catalog.cop[2] = 0.0;
  EXPECT_THROW(build_hoods_bui(data, data.buildings[0], TimeGrid::full(4), true), std::invalid_argument);
}

TEST(Storage, CyclicWithinEachPeriod) {
  const TimeGrid g = two_periods();
  const Solved s = solve_micro(true, g);
  ASSERT_TRUE(s.result.has_solution());
  const auto& v = s.model.vars;
  const auto& bat = hoods::default_catalog(1).battery;
  for (std::size_t p = 0; p < g.num_periods(); ++p) {
    const std::size_t b = g.period_begin(p), e = g.period_end(p);
    EXPECT_NEAR(s.v(v.e_bat_init[p]), s.v(v.e_bat[e - 1]), 1e-6);
    EXPECT_NEAR(s.v(v.e_ts_init[p]), s.v(v.e_ts[e - 1]), 1e-6);
    EXPECT_NEAR(s.v(v.e_vms_init[p]), s.v(v.e_vms[e - 1]), 1e-6);
    // Lossless self-discharge: what goes in comes out, up to conversion losses.
    const double in = bat.eta_charge * s.sum(v.p_bat_ch, b, e);
    const double out = s.sum(v.p_bat_dch, b, e) / bat.eta_discharge;
    EXPECT_NEAR(in, out, 1e-6);
    EXPECT_NEAR(s.sum(v.g_ts_ch, b, e), s.sum(v.g_ts_dch, b, e), 1e-6);
  }
}

TEST(Storage, EnergyToPowerRatioHolds) {
  const Solved s = solve_micro(true, two_periods());
  ASSERT_TRUE(s.result.has_solution());
  EXPECT_NEAR(s.v(s.model.vars.kappa_bat_e), 3.0 * s.v(s.model.vars.kappa_bat_p), 1e-6);
}

TEST(Mobility, VirtualStorageBalancesAndDemandIsMet) {
  const TimeGrid g = two_periods();
  const Solved s = solve_micro(true, g);
  ASSERT_TRUE(s.result.has_solution());
  const auto& v = s.model.vars;
  for (std::size_t p = 0; p < g.num_periods(); ++p) {
    const std::size_t b = g.period_begin(p), e = g.period_end(p);
    EXPECT_NEAR(s.sum(v.vms_ch, b, e), s.sum(v.vms_dch, b, e), 1e-6);
    double demand = 0.0;
    for (std::size_t i = b; i < e; ++i) demand += v.d_mob[i];
    EXPECT_NEAR(demand, 5.15, 1e-12);
    EXPECT_NEAR(s.sum(v.p_bev, b, e) * 1.0, demand, 1e-6);
  }
  for (std::size_t i = 0; i < g.steps(); ++i) {
    if (!in_charging_window(g.hour_of_day(i), 18, 8)) EXPECT_NEAR(s.v(v.p_bev[i]), 0.0, 1e-9) << i;
    EXPECT_LE(s.v(v.p_bev[i]), 11.0 + 1e-9);
  }
}

TEST(Mobility, InflexibleChargesOnArrival) {
  const TimeGrid g = two_periods();
  const Solved s = solve_micro(false, g);
  ASSERT_TRUE(s.result.has_solution());
  const auto& v = s.model.vars;
  for (std::size_t i = 0; i < g.steps(); ++i) {
    EXPECT_NEAR(s.v(v.p_bev[i]), g.hour_of_day(i) == 18 ? 5.15 : 0.0, 1e-7) << i;
    EXPECT_NEAR(s.v(v.vms_ch[i]), 0.0, 1e-9);
    EXPECT_NEAR(s.v(v.vms_dch[i]), 0.0, 1e-9);
  }
}

TEST(Flexibility, DisabledStoragesHaveZeroCapacity) {
  const Solved s = solve_micro(false, two_periods());
  ASSERT_TRUE(s.result.has_solution());
  const auto& v = s.model.vars;
  for (VarId id : {v.kappa_bat_p, v.kappa_bat_e, v.kappa_ts_p, v.kappa_ts_e})
    EXPECT_DOUBLE_EQ(s.model.spec.variable(id).upper, 0.0);
  EXPECT_NEAR(s.v(v.kappa_bat_e), 0.0, 1e-9);
}

TEST(Balances, HeatAndElectricityCloseAtEveryStep) {
  const TimeGrid g = two_periods();
  const auto data = hoods::testing::micro_system(48);
  const Solved s = solve_micro(true, g);
  ASSERT_TRUE(s.result.has_solution());
  const auto& v = s.model.vars;
  const auto& b = data.buildings[0];
  for (std::size_t i = 0; i < g.steps(); ++i) {
    const std::size_t h = g.hour(i);
    const double heat = s.v(v.g_hp[i]) + s.v(v.g_ts_dch[i]) - s.v(v.g_ts_ch[i]);
    EXPECT_NEAR(heat, b.space_heat_kw[h] + b.hot_water_kw[h], 1e-6);
    const double elec = s.v(v.p_pv[i]) + s.v(v.p_bat_dch[i]) - s.v(v.p_bat_ch[i]) - s.v(v.p_bev[i]) -
                        s.v(v.p_hp[i]) + s.v(v.p_imp[i]) - s.v(v.p_fi[i]);
    EXPECT_NEAR(elec, b.elec_kw[h], 1e-6);
    EXPECT_NEAR(s.v(v.g_hp[i]), data.catalog.cop[h] * s.v(v.p_hp[i]), 1e-6);
    EXPECT_LE(s.v(v.p_pv[i]), data.catalog.pv_capacity_factor[h] * s.v(v.kappa_pv) + 1e-6);
  }
}

TEST(Balances, StandaloneObjectiveIsWeightedEnergyPlusComponents) {
  const TimeGrid g = two_periods();
  const Solved s = solve_micro(true, g);
  ASSERT_TRUE(s.result.has_solution());
  const auto data = hoods::testing::micro_system(48);
  const BuildingCosts c = building_costs(s.model.vars, s.result.values, data.catalog, g);
  EXPECT_NEAR(c.total(), s.result.objective, 1e-6 * std::max(1.0, std::abs(s.result.objective)));
  double imp = 0.0;
  for (std::size_t i = 0; i < g.steps(); ++i) imp += g.weight(i) * 0.45 * s.v(s.model.vars.p_imp[i]);
  EXPECT_NEAR(c.import, imp, 1e-6);
}
