#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "hoods/errors.hpp"
#include "hoods/fixture.hpp"
#include "hoods/results_export.hpp"
#include "hoods/scenario_io.hpp"
#include "json.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace hoods;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  const fs::path p = fs::temp_directory_path() / ("hoods_" + std::string(info->name()) + "_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

Scenario micro_scenario(double elec = 1.0) {
  Scenario s;
  s.data = hoods::testing::micro_system(48, elec, 2.0);
  s.aggregation.enabled = false;
  return s;
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

void write_json(const fs::path& p, const json& j) {
  std::ofstream out(p);
  out << j.dump(2);
}

std::vector<std::string> problems_of(const fs::path& scenario) {
  try {
    load_scenario(scenario);
  } catch (const ValidationError& e) {
    return e.problems();
  }
  return {};
}

bool any_contains(const std::vector<std::string>& v, const std::string& needle) {
  return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

double sum(const Series& s) { return std::accumulate(s.begin(), s.end(), 0.0); }

}  // namespace

TEST(Fixture, SameSeedSameScenario) {
  FixtureOptions o;
  o.horizon_hours = 24 * 14;
  const Scenario a = generate_fixture(o), b = generate_fixture(o);
  ASSERT_EQ(a.data.buildings.size(), b.data.buildings.size());
  for (std::size_t i = 0; i < a.data.buildings.size(); ++i) {
    EXPECT_EQ(a.data.buildings[i].elec_kw, b.data.buildings[i].elec_kw);
    EXPECT_EQ(a.data.buildings[i].space_heat_kw, b.data.buildings[i].space_heat_kw);
  }
  EXPECT_EQ(a.data.catalog.pv_capacity_factor, b.data.catalog.pv_capacity_factor);
  o.seed = 2;
  const Scenario c = generate_fixture(o);
  EXPECT_NE(a.data.catalog.pv_capacity_factor, c.data.catalog.pv_capacity_factor);
}

TEST(Fixture, TopologyFollowsBranchLayout) {
  FixtureOptions o;
  o.n_branches = 2;
  o.buses_per_branch = 3;
  o.horizon_hours = 48;
  const Scenario s = generate_fixture(o);
  EXPECT_EQ(s.data.network.buses.size(), 7u);
  EXPECT_EQ(s.data.network.lines.size(), 6u);
  EXPECT_TRUE(validate_network(s.data.network).ok());
  EXPECT_TRUE(validate_system(s.data).empty());
  // Each feeder: junction, load, load.
  EXPECT_EQ(s.data.buildings.size(), 4u);
  const auto branch = branch_of(s.data.network);
  EXPECT_EQ(branch.at("MBB"), 0);
  EXPECT_EQ(branch.at("b1_l2"), 1);
  EXPECT_EQ(branch.at("b2_l1"), 2);
}

TEST(Fixture, AnnualMagnitudes) {
  const Scenario s = generate_fixture({});
  ASSERT_EQ(s.data.horizon(), 8760u);
  EXPECT_NEAR(sum(s.data.catalog.pv_capacity_factor), 1147.0, 25.0);
  for (const auto& b : s.data.buildings) {
    EXPECT_NEAR(sum(b.elec_kw), 2300.0 * b.dwellings, 1e-6);
    const double heat = sum(b.space_heat_kw) + sum(b.hot_water_kw);
    EXPECT_NEAR(heat / b.dwellings, 11600.0, 0.1 * 11600.0 + 1e-9);
    EXPECT_NEAR(b.mobility_daily_kwh, 5.15 * b.n_bev, 1e-12);
    EXPECT_GE(*std::min_element(b.elec_kw.begin(), b.elec_kw.end()), 0.0);
  }
  for (double c : s.data.catalog.pv_capacity_factor) {
    EXPECT_GE(c, 0.0);
    EXPECT_LE(c, 1.0);
  }
}

TEST(Fixture, RejectsEmptyLayouts) {
  FixtureOptions o;
  o.n_branches = 0;
  EXPECT_THROW(generate_fixture(o), std::invalid_argument);
}

TEST(ScenarioFiles, SaveLoadRoundTrip) {
  const fs::path dir = scratch("rt");
  Scenario s = micro_scenario();
  s.paradigm = ParadigmId::CoorMinusFlexPlusPlus;
  s.aggregation.typical_periods = 3;
  s.aggregation.period_hours = 24;
  s.solver.mip_gap = 0.005;
  save_scenario(s, dir);
  const Scenario t = load_scenario(dir / "scenario.json");
  EXPECT_EQ(t.paradigm, s.paradigm);
  EXPECT_EQ(t.aggregation.typical_periods, 3u);
  EXPECT_EQ(t.aggregation.enabled, false);
  EXPECT_DOUBLE_EQ(t.solver.mip_gap, 0.005);
  ASSERT_EQ(t.data.buildings.size(), 1u);
  const auto &a = s.data.buildings[0], &b = t.data.buildings[0];
  EXPECT_EQ(a.bus_id, b.bus_id);
  EXPECT_EQ(a.n_bev, b.n_bev);
  EXPECT_EQ(a.arrival_hour, b.arrival_hour);
  for (std::size_t h = 0; h < 48; ++h) {
    EXPECT_NEAR(a.elec_kw[h], b.elec_kw[h], 1e-12);
    EXPECT_NEAR(a.space_heat_kw[h], b.space_heat_kw[h], 1e-12);
    EXPECT_NEAR(s.data.catalog.cop[h], t.data.catalog.cop[h], 1e-12);
    EXPECT_NEAR(s.data.catalog.price_import[h], t.data.catalog.price_import[h], 1e-12);
  }
  EXPECT_EQ(t.data.network.lines.size(), 1u);
  EXPECT_EQ(t.data.network.lines[0].cable, "NAYY 4x150");
  EXPECT_EQ(t.data.network.transformers.size(), s.data.network.transformers.size());
  EXPECT_DOUBLE_EQ(t.data.network.bands.other.v_max_frt, 1.03);
}

TEST(ScenarioFiles, ShortSeriesIsReportedWithItsLength) {
  const fs::path dir = scratch("short");
  save_scenario(micro_scenario(), dir);
  const json bj = read_json(dir / "buildings.json");
  const fs::path csv = dir / "series" / bj[0]["series"]["elec"].get<std::string>();
  std::vector<std::string> lines;
  {
    std::ifstream in(csv);
    for (std::string l; std::getline(in, l);) lines.push_back(l);
  }
  lines.pop_back();
  {
    std::ofstream out(csv);
    for (const auto& l : lines) out << l << '\n';
  }
  const auto problems = problems_of(dir / "scenario.json");
  EXPECT_TRUE(any_contains(problems, "series has 47 values, horizon is 48")) << ::testing::PrintToString(problems);
}

TEST(ScenarioFiles, UnknownBusIsReportedWithItsPointer) {
  const fs::path dir = scratch("bus");
  save_scenario(micro_scenario(), dir);
  json bj = read_json(dir / "buildings.json");
  bj[0]["bus"] = "L9";
  write_json(dir / "buildings.json", bj);
  json nj = read_json(dir / "network.json");
  nj["lines"][0]["cable"] = "copper wire";
  write_json(dir / "network.json", nj);
  const auto problems = problems_of(dir / "scenario.json");
  EXPECT_TRUE(any_contains(problems, "unknown bus 'L9'")) << ::testing::PrintToString(problems);
  EXPECT_TRUE(any_contains(problems, "unknown cable 'copper wire'")) << ::testing::PrintToString(problems);
  EXPECT_TRUE(any_contains(problems, "buildings.json: /0/bus")) << ::testing::PrintToString(problems);
}

TEST(ScenarioFiles, SyntaxErrorNamesTheLine) {
  const fs::path dir = scratch("syntax");
  save_scenario(micro_scenario(), dir);
  std::ofstream(dir / "catalog.json") << "{\n  \"horizon_hours\": 48,\n  oops\n}\n";
  const auto problems = problems_of(dir / "scenario.json");
  EXPECT_TRUE(any_contains(problems, "catalog.json:3")) << ::testing::PrintToString(problems);
}

TEST(ScenarioFiles, HourStamps) {
  EXPECT_EQ(hour_stamp("2019-01-01T00:00", 0), "2019-01-01T00:00");
  EXPECT_EQ(hour_stamp("2019-01-01T00:00", 25), "2019-01-02T01:00");
  EXPECT_EQ(hour_stamp("2019-01-01T00:00", 8759), "2019-12-31T23:00");
}

TEST(ResultFiles, DecilesAreMonotone) {
  const auto d = deciles({5, 1, 4, 2, 3});
  ASSERT_EQ(d.size(), 11u);
  EXPECT_DOUBLE_EQ(d.front(), 1.0);
  EXPECT_DOUBLE_EQ(d.back(), 5.0);
  EXPECT_DOUBLE_EQ(d[5], 3.0);
  EXPECT_DOUBLE_EQ(d[1], 1.4);
  EXPECT_TRUE(std::is_sorted(d.begin(), d.end()));
}

TEST(ResultFiles, ExportWritesAllFiles) {
  const auto data = hoods::testing::micro_system(48);
  const PlanResult r = run_paradigm(data, ParadigmId::CoorPlusFlexPlus, hoods::testing::no_aggregation());
  const fs::path dir = scratch("out");
  export_results(r, data, dir);
  for (const char* f : {"cost_breakdown.csv", "reinforcement.json", "dispatch.csv", "voltages.csv",
                        "transformer_peaks.csv"})
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  const json rj = read_json(dir / "reinforcement.json");
  EXPECT_EQ(rj["paradigm"], to_string(ParadigmId::CoorPlusFlexPlus));
  EXPECT_EQ(rj["lines"].size(), 1u);
  std::ifstream peaks(dir / "transformer_peaks.csv");
  std::size_t rows = 0;
  for (std::string l; std::getline(peaks, l);) ++rows;
  EXPECT_EQ(rows, 3u);  // header and two days
}

TEST(ResultFiles, NoDemandMeansAnIdleDispatch) {
  auto data = hoods::testing::micro_system(24, 0.0, 0.0);
  data.buildings[0].mobility_daily_kwh = 0.0;
  data.buildings[0].n_bev = 0;
  data.catalog.pv_capacity_factor.assign(24, 0.0);
  const PlanResult r = run_paradigm(data, ParadigmId::CoorPlusFlexPlus, hoods::testing::no_aggregation());
  EXPECT_NEAR(r.costs.total(), 0.0, 1e-6);
  std::ostringstream out;
  write_dispatch_csv(r, data, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  std::size_t n = 0;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string cell;
    for (int col = 0; std::getline(ss, cell, ','); ++col)
      if (col >= 3) EXPECT_NEAR(std::stod(cell), 0.0, 1e-7) << line;
    ++n;
  }
  EXPECT_EQ(n, 24u);
}

// -- command line --------------------------------------------------------------

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(HOODS_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, ExitCodes) {
  const fs::path ok = scratch("ok");
  save_scenario(micro_scenario(), ok);
  const std::string scen = (ok / "scenario.json").string();
  EXPECT_EQ(run_cli("plan " + scen + " --out " + (ok / "res").string()), 0);
  EXPECT_TRUE(fs::exists(ok / "res" / "cost_breakdown.csv"));
  EXPECT_EQ(run_cli("plan " + scen + " --solver cplex"), 4);
  EXPECT_EQ(run_cli("plan " + scen + " --paradigm nonsense"), 2);
  EXPECT_EQ(run_cli("plan"), 2);

  const fs::path bad = scratch("bad");
  save_scenario(micro_scenario(), bad);
  json bj = read_json(bad / "buildings.json");
  bj[0]["bus"] = "L9";
  write_json(bad / "buildings.json", bj);
  EXPECT_EQ(run_cli("plan " + (bad / "scenario.json").string()), 2);

  const fs::path inf = scratch("inf");
  save_scenario(micro_scenario(600.0), inf);
  EXPECT_EQ(run_cli("plan " + (inf / "scenario.json").string() + " --out " + (inf / "res").string()), 3);
}

TEST(Cli, FixtureAndExportModel) {
  const fs::path dir = scratch("fx");
  EXPECT_EQ(run_cli("fixture --seed 3 --branches 1 --buses-per-branch 2 --hours 48 --out " + (dir / "s").string()), 0);
  const std::string scen = (dir / "s" / "scenario.json").string();
  ASSERT_TRUE(fs::exists(scen));
  EXPECT_EQ(run_cli("export-model " + scen + " --no-aggregation --out " + (dir / "m.lp").string()), 0);
  EXPECT_GT(fs::file_size(dir / "m.lp"), 1000u);
  EXPECT_EQ(run_cli("export-model " + scen + " --no-aggregation --format mps --out " + (dir / "m.mps").string()), 0);
}
