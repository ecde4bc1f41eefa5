#include "hoods/fixture.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace hoods {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// std:: distributions are implementation-defined; these two are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

 private:
  std::mt19937_64 gen_;
};

void scale_to(Series& s, double total) {
  double sum = 0.0;
  for (double v : s) sum += v;
  if (sum > 0)
    for (double& v : s) v *= total / sum;
}

struct Weather {
  Series temperature, pv_cf, cop, space_heat_shape, hot_water_shape, elec_shape;
};

Weather make_weather(Rng& rng, std::size_t H) {
  Weather w;
  const std::size_t days = (H + 23) / 24;
  std::vector<double> anomaly(days), cloud(days);
  double a = 0.0;
  for (std::size_t d = 0; d < days; ++d) {
    a = 0.7 * a + 2.5 * rng.normal();
    anomaly[d] = a;
    cloud[d] = rng.uniform(0.25, 1.0);
  }
  for (std::size_t h = 0; h < H; ++h) {
    const double doy = static_cast<double>((h / 24) % 365);
    const double hod = static_cast<double>(h % 24);
    const double season = std::cos(kTwoPi * (doy - 20.0) / 365.0);  // 1 in late January
    const double t = 9.5 - 9.5 * season + 3.0 * std::cos(kTwoPi * (hod - 15.0) / 24.0) + anomaly[h / 24];
    w.temperature.push_back(t);

    const double summer = std::cos(kTwoPi * (doy - 172.0) / 365.0);
    const double daylength = 12.0 + 4.0 * summer;
    const double x = (hod + 0.5 - (12.0 - daylength / 2.0)) / daylength;
    const double sun = (x > 0.0 && x < 1.0) ? std::sin(std::numbers::pi * x) : 0.0;
    w.pv_cf.push_back(sun * (0.55 + 0.45 * summer) * cloud[h / 24]);

    w.cop.push_back(std::clamp(3.5 + 0.08 * (t - 9.5), 2.0, 5.0));

    const double active = (hod >= 6 && hod <= 22) ? 1.1 : 0.8;
    w.space_heat_shape.push_back(std::max(0.0, 15.0 - t) * active);
    const double draw = 0.4 + std::exp(-0.5 * std::pow((hod - 7.0) / 1.2, 2)) +
                        0.8 * std::exp(-0.5 * std::pow((hod - 19.0) / 1.5, 2));
    w.hot_water_shape.push_back(draw);
    const double load = 0.55 + 0.35 * std::exp(-0.5 * std::pow((hod - 7.5) / 1.5, 2)) +
                        0.8 * std::exp(-0.5 * std::pow((hod - 19.0) / 2.0, 2));
    w.elec_shape.push_back(load * (1.0 + 0.15 * season));
  }
  const double years = static_cast<double>(H) / 8760.0;
  scale_to(w.pv_cf, kFixturePvFullLoadHours * years);
  for (double& v : w.pv_cf) v = std::min(v, 1.0);
  return w;
}

}  // namespace

Scenario generate_fixture(const FixtureOptions& opt) {
  if (opt.n_branches == 0 || opt.buses_per_branch == 0)
    throw std::invalid_argument("fixture needs at least one branch with one bus");
  if (opt.horizon_hours < 24) throw std::invalid_argument("fixture horizon must cover a day");
  Rng rng(opt.seed);
  const std::size_t H = opt.horizon_hours;
  const double years = static_cast<double>(H) / 8760.0;

  Scenario sc;
  Network& net = sc.data.network;
  net.cables = default_cable_catalog();
  net.transformers = default_transformer_options();
  net.buses.push_back({"MBB", BusKind::Mbb, std::nullopt});
  const std::string feeder = "NAYY 4x150";
  const std::string service = opt.forced_pv_surplus ? "NYY 4x16" : "NYY 4x50";

  std::vector<BusId> loads;
  for (std::size_t b = 1; b <= opt.n_branches; ++b) {
    BusId junction = "MBB";
    for (std::size_t k = 0; k < opt.buses_per_branch; ++k) {
      const bool last = k + 1 == opt.buses_per_branch;
      const std::string prefix = "b" + std::to_string(b) + "_";
      if (k % 2 == 0 && !last) {
        const BusId id = prefix + "j" + std::to_string(k);
        net.buses.push_back({id, BusKind::Junction, junction});
        net.lines.push_back({junction, id, std::round(rng.uniform(40.0, 80.0)), feeder, CableSetting::I});
        junction = id;
      } else {
        const BusId id = prefix + "l" + std::to_string(k);
        net.buses.push_back({id, BusKind::Load, junction});
        net.lines.push_back({junction, id, std::round(rng.uniform(15.0, 35.0)), service, CableSetting::I});
        loads.push_back(id);
      }
    }
  }

  const Weather w = make_weather(rng, H);
  TechnoCatalog& cat = sc.data.catalog;
  cat = default_catalog(H);
  cat.cop = w.cop;
  cat.pv_capacity_factor = w.pv_cf;

  Series sh_unit = w.space_heat_shape, hw_unit = w.hot_water_shape;
  scale_to(sh_unit, 0.82 * kFixtureHeatKwhPerDwelling * years);
  scale_to(hw_unit, 0.18 * kFixtureHeatKwhPerDwelling * years);

  for (const BusId& bus : loads) {
    Building b;
    b.bus_id = bus;
    b.dwellings = rng.integer(1, 3);
    const double dw = b.dwellings;
    b.roof_area_m2 = opt.forced_pv_surplus ? 400.0 : std::round(rng.uniform(25.0, 45.0) * dw);
    const double heat_factor = rng.uniform(0.9, 1.1);
    b.space_heat_kw.resize(H);
    b.hot_water_kw.resize(H);
    for (std::size_t h = 0; h < H; ++h) {
      b.space_heat_kw[h] = sh_unit[h] * dw * heat_factor;
      b.hot_water_kw[h] = hw_unit[h] * dw * heat_factor;
    }
    b.elec_kw.resize(H);
    for (std::size_t h = 0; h < H; ++h)
      b.elec_kw[h] = w.elec_shape[h] * std::max(0.2, 1.0 + 0.15 * rng.normal());
    scale_to(b.elec_kw, kFixtureElecKwhPerDwelling * dw * years);
    b.n_bev = b.dwellings;
    b.mobility_daily_kwh = cat.cs.daily_demand_per_bev_kwh * b.n_bev;
    b.arrival_hour = rng.integer(17, 19);
    b.deadline_hour = rng.integer(7, 9);
    sc.data.buildings.push_back(std::move(b));
  }
  return sc;
}

}  // namespace hoods
