#include <gtest/gtest.h>

#include <algorithm>

#include "hoods/domain.hpp"
#include "support.hpp"

using namespace hoods;

namespace {

Network chain() {
  Network n;
  n.cables = default_cable_catalog();
  n.transformers = default_transformer_options();
  n.buses = {{"MBB", BusKind::Mbb, std::nullopt},
             {"J", BusKind::Junction, BusId("MBB")},
             {"A", BusKind::Load, BusId("J")},
             {"B", BusKind::Load, BusId("J")}};
  n.lines = {{"MBB", "J", 60, "NAYY 4x150", CableSetting::I},
             {"J", "A", 20, "NYY 4x50", CableSetting::I},
             {"J", "B", 25, "NYY 4x50", CableSetting::II}};
  return n;
}

bool mentions(const ValidationReport& r, const std::string& needle) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

}  // namespace

TEST(Network, ValidRadialTreePasses) { EXPECT_TRUE(validate_network(chain()).ok()); }

TEST(Network, SecondRootIsRejected) {
  Network n = chain();
  n.buses.push_back({"MBB2", BusKind::Mbb, std::nullopt});
  EXPECT_FALSE(validate_network(n).ok());
}

TEST(Network, CycleIsRejected) {
  Network n = chain();
  n.buses[1].predecessor = "A";
  n.lines[0] = {"A", "J", 60, "NAYY 4x150", CableSetting::I};
  EXPECT_FALSE(validate_network(n).ok());
}

TEST(Network, UnknownCableIsNamed) {
  Network n = chain();
  n.lines[1].cable = "NYY 4x999";
  EXPECT_TRUE(mentions(validate_network(n), "NYY 4x999"));
}

TEST(Network, LineMustRunFromPredecessor) {
  Network n = chain();
  std::swap(n.lines[1].from_bus, n.lines[1].to_bus);
  EXPECT_FALSE(validate_network(n).ok());
}

TEST(Network, TopologicalOrderPutsParentsFirst) {
  const Network n = chain();
  const auto order = topological_order(n);
  ASSERT_EQ(order.size(), n.buses.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!order[i]->predecessor) continue;
    auto parent = std::find_if(order.begin(), order.end(),
                               [&](const Bus* b) { return b->id == *order[i]->predecessor; });
    EXPECT_LT(parent - order.begin(), static_cast<long>(i));
  }
}

TEST(Network, IncomingAndOutgoingLines) {
  const Network n = chain();
  EXPECT_EQ(incoming_lines(n, "J"), std::vector<std::size_t>{0});
  EXPECT_EQ(outgoing_lines(n, "J"), (std::vector<std::size_t>{1, 2}));
  EXPECT_TRUE(incoming_lines(n, "MBB").empty());
}

TEST(Network, IncumbentIsTheFixedRatioTransformer) {
  const Network n = chain();
  EXPECT_FALSE(n.incumbent().is_oltc);
  EXPECT_EQ(n.oltc_options().size(), n.transformers.size() - 1);
}

TEST(Cable, ParallelCablesScaleCapacityAndImpedance) {
  const CableType c{"x", 0.4, 0.1, 100.0, 1, 1};
  for (auto s : kAllSettings) {
    const auto e = effective_cable_params(c, s);
    const double m = multiplicity(s);
    EXPECT_DOUBLE_EQ(e.kappa_kva, 100.0 * m);
    EXPECT_DOUBLE_EQ(e.r_ohm_per_km, 0.4 / m);
    EXPECT_DOUBLE_EQ(e.x_ohm_per_km, 0.1 / m);
  }
}

TEST(Cable, SettingNamesRoundTrip) {
  for (auto s : kAllSettings) EXPECT_EQ(setting_from_string(to_string(s)), s);
  EXPECT_THROW(setting_from_string("IV"), std::invalid_argument);
}

TEST(Building, ReactiveDemandIsFilledFromRatio) {
  Building b;
  b.elec_kw = {1.0, 2.0};
  fill_reactive_demand(b, 0.25);
  EXPECT_EQ(b.elec_q_kvar, (Series{0.25, 0.5}));
  b.elec_q_kvar = {7.0, 7.0};
  fill_reactive_demand(b, 0.25);
  EXPECT_EQ(b.elec_q_kvar, (Series{7.0, 7.0}));  // explicit series wins
}

TEST(Building, DefaultBigMIsPeakHeatOverWorstCop) {
  Building b;
  b.space_heat_kw = {1.0, 5.0, 2.0};
  b.hot_water_kw = {0.5, 2.0, 0.0};
  const Series cop{2.5, 3.0, 2.0};
  // peak thermal 7 kW at hour 1, worst COP 2.0 -> 3.5 kW electric
  EXPECT_DOUBLE_EQ(default_heat_pump_big_m(b, cop), 3.5);
}

TEST(Catalog, DefaultsMatchTheReferenceParameterTable) {
  const TechnoCatalog c = default_catalog(24);
  EXPECT_EQ(c.horizon(), 24u);
  EXPECT_DOUBLE_EQ(c.pv.c_inv_fix, 4074.0);
  EXPECT_DOUBLE_EQ(c.pv.c_inv_var, 914.0);
  EXPECT_DOUBLE_EQ(c.hp.c_inv_fix, 5924.0);
  EXPECT_DOUBLE_EQ(c.hp.c_inv_var, 1440.0);
  EXPECT_DOUBLE_EQ(c.battery.energy_to_power, 3.0);
  EXPECT_NEAR(c.battery.eta_charge * c.battery.eta_charge, 0.96, 1e-12);
  EXPECT_DOUBLE_EQ(c.cs.daily_demand_per_bev_kwh, 5.15);
}

TEST(SystemValidation, MicroSystemIsConsistent) {
  EXPECT_TRUE(validate_system(hoods::testing::micro_system(48)).empty());
}

TEST(SystemValidation, MobilityWithoutVehiclesIsRejected) {
  auto d = hoods::testing::micro_system(24);
  d.buildings[0].n_bev = 0;
  EXPECT_FALSE(validate_system(d).empty());
}

TEST(SystemValidation, BuildingOnJunctionIsRejected) {
  auto d = hoods::testing::micro_system(24);
  d.network.buses[1].kind = BusKind::Junction;
  EXPECT_FALSE(validate_system(d).empty());
}

TEST(SystemValidation, ShortSeriesIsRejected) {
  auto d = hoods::testing::micro_system(24);
  d.buildings[0].elec_kw.pop_back();
  const auto p = validate_system(d);
  ASSERT_FALSE(p.empty());
  EXPECT_NE(p.front().find("23"), std::string::npos);
}
