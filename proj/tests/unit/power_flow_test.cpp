#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "hoods/power_flow.hpp"

using namespace hoods;

namespace {

Network feeder(int n_loads, double length_m) {
  Network n;
  n.cables = default_cable_catalog();
  n.transformers = default_transformer_options();
  n.buses.push_back({"MBB", BusKind::Mbb, std::nullopt});
  BusId prev = "MBB";
  for (int k = 1; k <= n_loads; ++k) {
    const BusId id = "L" + std::to_string(k);
    n.buses.push_back({id, BusKind::Load, prev});
    n.lines.push_back({prev, id, length_m, "NAYY 4x150", CableSetting::I});
    prev = id;
  }
  return n;
}

}  // namespace

TEST(Sweep, TwoBusMatchesPhasorSolution) {
  const Network net = feeder(1, 100.0);
  const std::complex<double> s_kva(30.0, 10.0);
  const SweepResult r = backward_forward_sweep(net, {CableSetting::I}, {{"L1", s_kva}}, 1.0);
  ASSERT_TRUE(r.converged);

  // Per-phase fixed point V2 = V1 - Z * conj(S/3 / V2), solved here by brute iteration.
  const std::complex<double> z(0.0206, 0.008);
  const double v1 = 400.0 / std::sqrt(3.0);
  std::complex<double> v2 = v1;
  for (int i = 0; i < 1000; ++i) v2 = v1 - z * std::conj(s_kva * 1000.0 / 3.0 / v2);
  EXPECT_NEAR(r.v_pu.at("L1"), std::abs(v2) / v1, 1e-9);
  EXPECT_NEAR(r.v_pu.at("MBB"), 1.0, 1e-15);
  EXPECT_LT(r.v_pu.at("L1"), 1.0);
}

TEST(Sweep, NoLoadMeansFlatVoltage) {
  const Network net = feeder(3, 50.0);
  const SweepResult r = backward_forward_sweep(net, std::vector<CableSetting>(3, CableSetting::I), {}, 1.02);
  ASSERT_TRUE(r.converged);
  for (const auto& [bus, v] : r.v_pu) EXPECT_NEAR(v, 1.02, 1e-12) << bus;
}

TEST(Sweep, LinearisedVoltagesStayClose) {
  const Network net = feeder(4, 60.0);
  const std::vector<CableSetting> settings(4, CableSetting::I);
  for (double p : {-20.0, 5.0, 20.0}) {
    std::map<BusId, std::complex<double>> w;
    for (int k = 1; k <= 4; ++k) w["L" + std::to_string(k)] = {p, 0.25 * std::abs(p)};
    const SweepResult ac = backward_forward_sweep(net, settings, w, 1.0);
    const auto lin = lindistflow_voltages(net, settings, w, 1.0);
    ASSERT_TRUE(ac.converged);
    for (const auto& [bus, v] : ac.v_pu) {
      EXPECT_NEAR(lin.at(bus), v, 5e-3) << bus << " at " << p;
      if (p > 0 && bus != "MBB") EXPECT_LT(v, 1.0);
      if (p < 0 && bus != "MBB") EXPECT_GT(v, 1.0);
    }
    // Voltage falls monotonically along the feeder under load.
    if (p > 0)
      for (int k = 1; k < 4; ++k)
        EXPECT_GT(ac.v_pu.at("L" + std::to_string(k)), ac.v_pu.at("L" + std::to_string(k + 1)));
  }
}

TEST(Sweep, MoreCablesLessDrop) {
  const Network net = feeder(1, 200.0);
  const std::map<BusId, std::complex<double>> w{{"L1", {60.0, 0.0}}};
  const double one = backward_forward_sweep(net, {CableSetting::I}, w, 1.0).v_pu.at("L1");
  const double three = backward_forward_sweep(net, {CableSetting::III}, w, 1.0).v_pu.at("L1");
  EXPECT_GT(three, one);
  EXPECT_NEAR(1.0 - three, (1.0 - one) / 3.0, 1e-3);
}
