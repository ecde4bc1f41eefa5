#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hoods/grid_model.hpp"
#include "hoods/system_model.hpp"
#include "support.hpp"

using namespace hoods;

namespace {

Network two_bus(double length_m, const std::string& cable = "NAYY 4x150") {
  Network n;
  n.cables = default_cable_catalog();
  n.transformers = default_transformer_options();
  n.buses = {{"MBB", BusKind::Mbb, std::nullopt}, {"L1", BusKind::Load, BusId("MBB")}};
  n.lines = {{"MBB", "L1", length_m, cable, CableSetting::I}};
  return n;
}

void pin(ModelSpec& m, const std::string& name, double value) {
  const auto id = m.find(name);
  ASSERT_TRUE(id.has_value()) << name;
  m.set_bounds(*id, value, value);
}

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

// Voltage at L1 in V^2 after pushing p kW through a single line in the given setting.
double receiving_u_volts2(double length_m, double p_kw, double q_kvar, int setting) {
  const Network net = two_bus(length_m);
  const TimeGrid g = TimeGrid::full(1);
  ModelSpec m;
  add_grid(m, {net, g});
  pin(m, "alpha_frt", 1.0);
  pin(m, "alpha.l0." + std::to_string(setting), 1.0);
  pin(m, "p_line.l0.0", p_kw);
  pin(m, "q_line.l0.0", q_kvar);
  const SolverResult r = solve(m);
  if (!r.has_solution()) throw std::runtime_error("grid model infeasible");
  return r.value(*m.find("u.L1.0")) * net.bands.v_base * net.bands.v_base;
}

}  // namespace

TEST(Octagon, CoefficientsMatchTable) {
  const double a = 2.414213562373095;  // 1 + sqrt 2
  const double b = 0.414213562373095;  // sqrt 2 - 1
  const double expected[8][3] = {{1, a, a},  {1, b, 1},   {1, -b, 1}, {-1, a, a},
                                 {-1, -a, a}, {-1, -b, 1}, {-1, b, 1}, {1, -a, a}};
  const auto& rows = octagon_coefficients();
  for (std::size_t y = 0; y < 8; ++y) {
    EXPECT_NEAR(rows[y].a, expected[y][0], 1e-12) << y;
    EXPECT_NEAR(rows[y].b, expected[y][1], 1e-12) << y;
    EXPECT_NEAR(rows[y].c, expected[y][2], 1e-12) << y;
  }
}

TEST(Octagon, FacesAreTangentToTheInnerCircle) {
  // Each half-plane, normalised, sits at distance kappa*cos(pi/8) from the origin,
  // with normals spaced 45 degrees apart.
  std::vector<double> angles;
  for (const auto& r : octagon_coefficients()) {
    const double n = std::hypot(r.a, r.b);
    EXPECT_NEAR(r.c / n, std::cos(std::numbers::pi / 8), 1e-12);
    double deg = std::atan2(r.b, r.a) * 180.0 / std::numbers::pi;
    if (deg < 0) deg += 360.0;
    angles.push_back(deg);
  }
  std::sort(angles.begin(), angles.end());
  for (std::size_t k = 0; k < 8; ++k) EXPECT_NEAR(angles[k], 22.5 + 45.0 * k, 1e-9);
}

TEST(Octagon, InscribedInTheCircleAndContainsTheInnerCircle) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi), radius(0.0, 1.3);
  const double kappa = 121.0;
  const double inner = std::cos(std::numbers::pi / 8);
  int inside_count = 0;
  for (int i = 0; i < 10000; ++i) {
    const double th = angle(gen), r = radius(gen);
    const double p = kappa * r * std::cos(th), q = kappa * r * std::sin(th);
    const bool in = inside_octagon(p, q, kappa);
    if (r > 1.0 + 1e-12) EXPECT_FALSE(in) << p << ' ' << q;
    if (r < inner - 1e-12) EXPECT_TRUE(in) << p << ' ' << q;
    inside_count += in;
  }
  EXPECT_GT(inside_count, 0);
  // Vertices lie on the circle.
  for (int k = 0; k < 8; ++k) {
    const double th = k * std::numbers::pi / 4;
    EXPECT_TRUE(inside_octagon(kappa * std::cos(th), kappa * std::sin(th), kappa, 1e-9)) << k;
  }
}

TEST(Octagon, ScalesWithCapacity) {
  EXPECT_TRUE(inside_octagon(100, 0, 100));
  EXPECT_FALSE(inside_octagon(100.001, 0, 100));
  EXPECT_TRUE(inside_octagon(0, -100, 100));
  EXPECT_FALSE(inside_octagon(0, 0.5, 0));
}

TEST(LineImpedance, ParallelCablesShareCurrent) {
  const Network net = two_bus(50.0);
  const auto z1 = line_impedance(net, net.lines[0], CableSetting::I);
  const auto z3 = line_impedance(net, net.lines[0], CableSetting::III);
  EXPECT_NEAR(z1.r_ohm, 0.0103, 1e-12);
  EXPECT_NEAR(z1.x_ohm, 0.004, 1e-12);
  EXPECT_NEAR(z1.kappa_kva, 121.0, 1e-12);
  EXPECT_NEAR(z3.r_ohm, 0.0103 / 3, 1e-12);
  EXPECT_NEAR(z3.kappa_kva, 363.0, 1e-12);
}

TEST(LinDistFlow, VoltageDropMatchesHandComputation) {
  // 100 m of NAYY 4x150 (r = 0.0206 ohm) carrying 25 kW: 400^2 - 2*0.0206*25000.
  EXPECT_NEAR(receiving_u_volts2(100.0, 25.0, 0.0, 1), 158970.0, 1e-6);
  // The same drop from 50 m at 50 kW.
  EXPECT_NEAR(receiving_u_volts2(50.0, 50.0, 0.0, 1), 158970.0, 1e-6);
  // Two parallel cables halve the drop.
  EXPECT_NEAR(receiving_u_volts2(100.0, 25.0, 0.0, 2), 160000.0 - 515.0, 1e-6);
  // Reactive flow drops over x = 0.008 ohm.
  EXPECT_NEAR(receiving_u_volts2(100.0, 0.0, 10.0, 1), 160000.0 - 2 * 0.008 * 10000.0, 1e-6);
  // Reverse flow raises the voltage.
  EXPECT_GT(receiving_u_volts2(100.0, -25.0, 0.0, 1), 160000.0);
}

TEST(LinDistFlow, RowCoefficientsArePerUnit) {
  const Network net = two_bus(100.0);
  const TimeGrid g = TimeGrid::full(2);
  ModelSpec m;
  add_grid(m, {net, g});
  const auto& r = row(m, "ldf.l0.1");
  EXPECT_DOUBLE_EQ(coef(m, r, "u.L1.1"), 1.0);
  EXPECT_DOUBLE_EQ(coef(m, r, "u.MBB.1"), -1.0);
  EXPECT_NEAR(coef(m, r, "p_m.l0_1.1"), 2 * 0.0206 * 1000 / 160000, 1e-15);
  EXPECT_NEAR(coef(m, r, "p_m.l0_2.1"), 2 * 0.0103 * 1000 / 160000, 1e-15);
  EXPECT_NEAR(coef(m, r, "q_m.l0_3.1"), 2 * (0.008 / 3) * 1000 / 160000, 1e-15);
}

namespace {

// On a 2 km line the band, not the cable, limits the voltage rise.
double max_u(const std::string& transformer, BusId bus) {
  const Network net = two_bus(2000.0);
  const TimeGrid g = TimeGrid::full(1);
  ModelSpec m;
  const GridVars v = add_grid(m, {net, g});
  for (std::size_t o = 0; o < v.oltc.size(); ++o)
    m.set_bounds(v.alpha_oltc[o], 0.0, v.oltc[o]->name == transformer ? 1.0 : 0.0);
  if (transformer == "FRT 400") m.set_bounds(v.alpha_frt, 1.0, 1.0);
  m.add_objective(v.u.at(bus)[0], -1.0);
  const SolverResult r = solve(m);
  EXPECT_TRUE(r.has_solution());
  return r.value(v.u.at(bus)[0]);
}

}  // namespace

TEST(VoltageBands, FixedRatioTransformerUsesTheNarrowBand) {
  EXPECT_NEAR(max_u("FRT 400", "L1"), 1.03 * 1.03, 1e-7);
  EXPECT_NEAR(max_u("FRT 400", "MBB"), 1.0, 1e-7);
}

TEST(VoltageBands, OltcWidensTheBand) {
  EXPECT_NEAR(max_u("OLTC 400", "L1"), 1.1 * 1.1, 1e-7);
  EXPECT_NEAR(max_u("OLTC 400", "MBB"), 1.1 * 1.1, 1e-7);
}

TEST(Transformer, ExactlyOneOptionAndCapacityBindsImport) {
  const Network net = two_bus(100.0);
  const TimeGrid g = TimeGrid::full(1);
  ModelSpec m;
  const GridVars v = add_grid(m, {net, g});
  EXPECT_EQ(v.oltc.size(), net.transformers.size() - 1);
  m.set_bounds(v.alpha_frt, 1.0, 1.0);
  m.set_bounds(v.p_fi[0], 0.0, 0.0);
  m.add_objective(v.p_imp[0], -1.0);
  // Without a limit on the line, import is bounded by the transformer.
  m.set_bounds(*m.find("alpha.l0.3"), 1.0, 1.0);
  const SolverResult r = solve(m);
  ASSERT_TRUE(r.has_solution());
  EXPECT_LE(r.value(v.p_imp[0]), 400.0 + 1e-6);
  // The 363 kVA of three cables is the binding limit here.
  EXPECT_NEAR(r.value(v.p_imp[0]), 363.0, 1e-6);
}

TEST(CableSettings, ExistingSettingRemovesLowerOptions) {
  Network net = two_bus(100.0);
  net.lines[0].existing_setting = CableSetting::II;
  const TimeGrid g = TimeGrid::full(1);
  ModelSpec m;
  const GridVars v = add_grid(m, {net, g});
  ASSERT_EQ(v.lines.size(), 1u);
  EXPECT_EQ(v.lines[0].settings.size(), 2u);
  EXPECT_EQ(v.lines[0].settings.front(), CableSetting::II);
  EXPECT_FALSE(m.find("alpha.l0.1").has_value());
}

TEST(FixedInjection, CurtailmentBoundedByIntendedFeedIn) {
  const auto data = hoods::testing::micro_system(3);
  const TimeGrid g = TimeGrid::full(3);
  Injection inj{{1.0, 0.0, 0.0}, {0.0, 3.0, 0.5}, {0.2, 0.0, 0.0}};
  for (bool curtail : {false, true}) {
    const GridModel gm = build_hoods_grid(data, g, {{"L1", inj}}, curtail);
    const auto& curt = gm.grid.p_curt.at("L1");
    ASSERT_EQ(curt.size(), 3u);
    for (std::size_t s = 0; s < 3; ++s) {
      const auto& var = gm.spec.variable(curt[s]);
      EXPECT_EQ(var.lower, 0.0);
      EXPECT_DOUBLE_EQ(var.upper, curtail ? inj.p_fi[s] : 0.0);
    }
    const auto& bal = row(gm.spec, "p_bal.L1.1");
    EXPECT_DOUBLE_EQ(bal.rhs, -3.0);
    EXPECT_DOUBLE_EQ(row(gm.spec, "q_bal.L1.0").rhs, 0.2);
  }
}

TEST(FixedInjection, RejectsBadProfiles) {
  const auto data = hoods::testing::micro_system(3);
  const TimeGrid g = TimeGrid::full(3);
  Injection shortp{{1.0}, {0.0}, {0.0}};
  EXPECT_THROW(build_hoods_grid(data, g, {{"L1", shortp}}, false), std::invalid_argument);
  Injection ok{{1, 1, 1}, {0, 0, 0}, {0, 0, 0}};
  EXPECT_THROW(build_hoods_grid(data, g, {{"nowhere", ok}}, false), std::invalid_argument);
}

TEST(FixedInjection, CurtailmentRelievesAnOverloadedLine) {
  auto data = hoods::testing::micro_system(1);
  data.network.lines[0].cable = "NYY 4x16";  // 30 kVA per cable
  const TimeGrid g = TimeGrid::full(1);
  Injection inj{{0.0}, {100.0}, {0.0}};
  // 100 kW of feed-in exceeds even three cables; only curtailment makes it feasible.
  const GridModel no = build_hoods_grid(data, g, {{"L1", inj}}, false);
  EXPECT_EQ(solve(no.spec).status, SolveStatus::Infeasible);
  const GridModel yes = build_hoods_grid(data, g, {{"L1", inj}}, true);
  const SolverResult r = solve(yes.spec);
  ASSERT_TRUE(r.has_solution());
  EXPECT_GT(r.value(yes.grid.p_curt.at("L1")[0]), 100.0 - 90.0 - 1e-6);
}
