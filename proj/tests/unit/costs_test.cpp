#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "hoods/costs.hpp"
#include "hoods/paradigms.hpp"
#include "support.hpp"

using namespace hoods;

namespace {

double annuity_oracle(double i, int n) {
  // Closed form written out with repeated multiplication instead of pow.
  double g = 1.0;
  for (int k = 0; k < n; ++k) g *= 1.0 + i;
  return i * g / (g - 1.0);
}

}  // namespace

TEST(Annuity, MatchesClosedForm) {
  for (double i : {0.01, 0.02, 0.05, 0.06, 0.1})
    for (int n : {1, 5, 18, 20, 30, 40}) EXPECT_NEAR(annuity_factor(i, n), annuity_oracle(i, n), 1e-14);
}

TEST(Annuity, ReferenceValues) {
  EXPECT_NEAR(annuity_factor(0.02, 20), 0.061157, 1e-6);
  EXPECT_NEAR(annuity_factor(0.06, 40), 0.066462, 1e-6);
}

TEST(Annuity, OneYearRepaysPrincipalWithInterest) { EXPECT_NEAR(annuity_factor(0.05, 1), 1.05, 1e-15); }

TEST(Annuity, RejectsDegenerateInputs) {
  EXPECT_THROW(annuity_factor(0.0, 20), std::invalid_argument);
  EXPECT_THROW(annuity_factor(-0.01, 20), std::invalid_argument);
  EXPECT_THROW(annuity_factor(0.02, 0.5), std::invalid_argument);
}

TEST(Annuity, DecreasesWithLifetime) {
  for (int n = 1; n < 60; ++n) EXPECT_GT(annuity_factor(0.03, n), annuity_factor(0.03, n + 1));
}

TEST(ComponentCosts, PvTenKilowatts) {
  const TechnoCatalog cat = default_catalog(1);
  ModelSpec m;
  BuildingVars v;
  v.kappa_pv = m.add_variable("kpv");
  v.beta_pv = m.add_binary("bpv");
  v.kappa_bat_p = m.add_variable("kbp");
  v.kappa_bat_e = m.add_variable("kbe");
  v.kappa_hp = m.add_variable("khp");
  v.beta_hp = m.add_binary("bhp");
  v.kappa_ts_p = m.add_variable("ktp");
  v.kappa_ts_e = m.add_variable("kte");
  std::vector<double> x(8, 0.0);
  x[0] = 10.0;
  x[1] = 1.0;
  const BuildingCosts c = building_costs(v, x, cat, TimeGrid::full(1));
  const double expected = annuity_oracle(0.02, 20) * (4074 + 914 * 10) + 12.5 * 10;
  EXPECT_NEAR(c.pv, expected, 1e-9);
  EXPECT_NEAR(c.pv, 933.13, 0.01);

  // The objective coefficients price the same decision identically.
  add_component_cost_terms(m, v, cat);
  EXPECT_NEAR(m.evaluate_objective(x), expected, 1e-9);
}

TEST(ComponentCosts, BatterySixKilowattHours) {
  const TechnoCatalog cat = default_catalog(1);
  ModelSpec m;
  BuildingVars v;
  for (VarId* id : {&v.kappa_pv, &v.beta_pv, &v.kappa_bat_p, &v.kappa_bat_e, &v.kappa_hp, &v.beta_hp,
                    &v.kappa_ts_p, &v.kappa_ts_e})
    *id = m.add_variable("v" + std::to_string(m.num_variables()));
  std::vector<double> x(8, 0.0);
  x[2] = 2.0;
  x[3] = 6.0;
  const BuildingCosts c = building_costs(v, x, cat, TimeGrid::full(1));
  EXPECT_NEAR(c.battery, 6000 * annuity_oracle(0.02, 20) + 0.01 * 6000, 1e-9);
  EXPECT_NEAR(c.battery, 426.94, 0.01);
}

TEST(GridCosts, FiftyMetreSectionToTwoCables) {
  Network net;
  net.cables = default_cable_catalog();
  const LineSection ls{"a", "b", 50.0, "NAYY 4x150", CableSetting::I};
  const GridEconomics econ;
  EXPECT_NEAR(line_upgrade_cost(net, ls, CableSetting::II, econ), annuity_oracle(0.06, 40) * 50 * (90 + 10), 1e-9);
  EXPECT_NEAR(line_upgrade_cost(net, ls, CableSetting::II, econ), 332.31, 0.01);
  EXPECT_NEAR(line_upgrade_cost(net, ls, CableSetting::III, econ), annuity_oracle(0.06, 40) * 50 * (90 + 20), 1e-9);
  EXPECT_EQ(line_upgrade_cost(net, ls, CableSetting::I, econ), 0.0);
}

TEST(GridCosts, UpgradeFromExistingSecondCable) {
  Network net;
  net.cables = default_cable_catalog();
  const LineSection ls{"a", "b", 40.0, "NYY 4x50", CableSetting::II};
  const GridEconomics econ;
  EXPECT_EQ(line_upgrade_cost(net, ls, CableSetting::II, econ), 0.0);
  EXPECT_NEAR(line_upgrade_cost(net, ls, CableSetting::III, econ), annuity_oracle(0.06, 40) * 40 * (90 + 10), 1e-9);
}

TEST(GridCosts, OltcIncludesOperationAndMaintenance) {
  const TransformerOption t{"OLTC 400", 400, true, 17900};
  EXPECT_NEAR(oltc_cost(t, GridEconomics{}), 17900 * (annuity_oracle(0.06, 40) + 0.01), 1e-9);
}

TEST(CostBreakdown, TotalsAddUp) {
  BuildingCosts a{"x", 1, 2, 3, 4, 50, -6};
  BuildingCosts b{"y", 10, 20, 30, 40, 500, -60};
  GridCosts g;
  g.cables = 7;
  g.oltc = 8;
  g.q_comp = 9;
  g.curtailment = 0.5;
  g.import = 100;
  g.feed_in = -10;
  const CostBreakdown c = combine({a, b}, g);
  EXPECT_DOUBLE_EQ(c.import, 650);
  EXPECT_DOUBLE_EQ(c.feed_in, -76);
  EXPECT_DOUBLE_EQ(c.building_total(), a.total() + b.total() + 100 - 10);
  EXPECT_DOUBLE_EQ(c.grid_total(), 7 + 8 + 9 + 0.5);
  EXPECT_DOUBLE_EQ(c.total(), c.building_total() + c.grid_total());
  EXPECT_NEAR(c.grid_share(), c.grid_total() / c.total(), 1e-15);
  std::ostringstream out;
  write_cost_csv(c, out);
  EXPECT_NE(out.str().find("Total costs,"), std::string::npos);
}

TEST(CostBreakdown, RowsFollowTheCostTable) {
  const auto rows = cost_rows(CostBreakdown{});
  std::vector<std::string> labels;
  for (const auto& r : rows) labels.push_back(r.first);
  const std::vector<std::string> head{"PV", "Heat pump", "Battery", "Th. storage", "Import", "Feed-in",
                                      "Buildings total", "Cables", "OLTC", "Q comp", "Curtailment",
                                      "Grid total", "Total costs"};
  ASSERT_GE(labels.size(), head.size());
  EXPECT_TRUE(std::equal(head.begin(), head.end(), labels.begin()));
}

class Reconciliation : public ::testing::TestWithParam<ParadigmId> {};

TEST_P(Reconciliation, BreakdownEqualsSolverObjective) {
  const auto data = hoods::testing::micro_system(48);
  const PlanResult r = run_paradigm(data, GetParam(), hoods::testing::no_aggregation());
  EXPECT_NEAR(r.costs.total(), r.objective, 1e-6 * std::max(1.0, std::abs(r.objective)));
}

INSTANTIATE_TEST_SUITE_P(Paradigms, Reconciliation, ::testing::ValuesIn(kAllParadigms),
                         [](const ::testing::TestParamInfo<ParadigmId>& info) {
                           std::string name;
                           for (char c : std::string(to_string(info.param)))
                             name += c == '+' ? 'P' : c == '-' ? 'M' : c;
                           return name;
                         });
