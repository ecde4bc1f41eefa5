// hoods: command-line front end for planning runs on scenario directories.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hoods/errors.hpp"
#include "hoods/fixture.hpp"
#include "hoods/paradigms.hpp"
#include "hoods/results_export.hpp"
#include "hoods/scenario_io.hpp"

namespace fs = std::filesystem;
using namespace hoods;

namespace {

enum Exit { kOk = 0, kValidation = 2, kInfeasible = 3, kEnvironment = 4 };

struct RunFlags {
  std::string scenario;
  std::string paradigm;
  std::optional<std::size_t> typical_periods, period_hours;
  bool no_aggregation = false;
  std::optional<double> gap, time_limit;
  std::optional<std::string> solver;
  std::optional<std::string> out;
  unsigned workers = 1;
};

void add_run_flags(CLI::App* cmd, RunFlags& f, bool with_paradigm) {
  cmd->add_option("scenario", f.scenario, "scenario.json")->required()->check(CLI::ExistingFile);
  if (with_paradigm)
    cmd->add_option("--paradigm", f.paradigm, "coor+flex+, coor-flex-, coor-flex+ or coor-flex++");
  cmd->add_option("--typical-periods", f.typical_periods, "number of typical periods");
  cmd->add_option("--period-hours", f.period_hours, "length of a typical period in hours");
  cmd->add_flag("--no-aggregation", f.no_aggregation, "size on the full horizon");
  cmd->add_option("--gap", f.gap, "relative MIP gap");
  cmd->add_option("--time-limit", f.time_limit, "time limit per solve in seconds");
  cmd->add_option("--solver", f.solver, "solver backend");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--workers", f.workers, "concurrent building solves")->check(CLI::PositiveNumber);
}

struct Run {
  Scenario scenario;
  PlanOptions options;
  fs::path out;
};

Run prepare(const RunFlags& f) {
  Run r;
  r.scenario = load_scenario(f.scenario);
  auto& s = r.scenario;
  if (!f.paradigm.empty()) s.paradigm = paradigm_from_string(f.paradigm);
  if (f.typical_periods) s.aggregation.typical_periods = *f.typical_periods;
  if (f.period_hours) s.aggregation.period_hours = *f.period_hours;
  if (f.no_aggregation) s.aggregation.enabled = false;
  if (f.gap) s.solver.mip_gap = *f.gap;
  if (f.time_limit) s.solver.time_limit_s = *f.time_limit;
  if (f.solver) s.backend = *f.solver;
  r.options.aggregation = s.aggregation;
  r.options.solver = s.solver;
  r.options.backend = s.backend;
  r.options.workers = f.workers;
  r.out = f.out ? fs::path(*f.out) : fs::path(f.scenario).parent_path() / s.output_dir;
  return r;
}

void print_summary(const PlanResult& r) {
  std::cout << to_string(r.paradigm) << ": total " << std::fixed << std::setprecision(2) << r.costs.total()
            << " per year (buildings " << r.costs.building_total() << ", grid " << r.costs.grid_total()
            << "), transformer " << r.network.transformer << '\n';
  std::cout.unsetf(std::ios::fixed);
  for (const auto& st : r.stages)
    std::cout << "  " << st.stage << ": " << to_string(st.status) << ", objective " << st.objective << ", "
              << st.variables << " vars, " << st.binaries << " binaries, " << st.seconds << " s\n";
}

int cmd_plan(const RunFlags& f) {
  Run run = prepare(f);
  const PlanResult r = run_paradigm(run.scenario.data, run.scenario.paradigm, run.options);
  export_results(r, run.scenario.data, run.out);
  print_summary(r);
  std::cout << "results written to " << run.out.string() << '\n';
  return kOk;
}

int cmd_compare(const RunFlags& f) {
  Run run = prepare(f);
  std::vector<PlanResult> results;
  for (ParadigmId p : kAllParadigms) {
    results.push_back(run_paradigm(run.scenario.data, p, run.options));
    export_results(results.back(), run.scenario.data, run.out / to_string(p));
    print_summary(results.back());
  }
  const ComparisonReport report = compare(results);
  fs::create_directories(run.out);
  std::ofstream csv(run.out / "comparison.csv");
  write_comparison_csv(report, csv);
  for (const auto& line : report.reinforcement) std::cout << line << '\n';
  std::cout << "comparison written to " << (run.out / "comparison.csv").string() << '\n';
  return kOk;
}

int cmd_aggregate(const RunFlags& f) {
  Run run = prepare(f);
  const auto& cfg = run.scenario.aggregation;
  const auto bundle = aggregation_bundle(run.scenario.data);
  const ReducedTimeGrid reduced =
      aggregate(bundle, cfg.typical_periods, cfg.period_hours, {kBundleElec, kBundleSpaceHeat});
  fs::create_directories(run.out);
  std::cout << "representatives:";
  for (std::size_t k = 0; k < reduced.representatives.size(); ++k)
    std::cout << ' ' << reduced.representatives[k] << " (x" << reduced.cardinality[k] << ')';
  std::cout << '\n';
  const std::pair<const char*, std::size_t> series[] = {{"electricity", kBundleElec},
                                                        {"space_heat", kBundleSpaceHeat}};
  for (const auto& [name, idx] : series) {
    const FidelityReport rep = fidelity_report(bundle[idx], reduced);
    std::ofstream csv(run.out / (std::string("fidelity_") + name + ".csv"));
    write_fidelity_csv(rep, csv);
    std::cout << name << ": peak error " << rep.peak_error << ", mean error " << rep.mean_error << '\n';
  }
  return kOk;
}

int cmd_export_model(const RunFlags& f, const std::string& format) {
  Run run = prepare(f);
  const bool flexible = run.scenario.paradigm != ParadigmId::CoorMinusFlexMinus;
  const TimeGrids grids = make_time_grids(run.scenario.data, run.options.aggregation);
  const HoodsModel model = build_hoods(run.scenario.data, grids.reduced, flexible);
  const ModelFormat fmt = format == "mps" ? ModelFormat::Mps : ModelFormat::Lp;
  const fs::path path = f.out ? fs::path(*f.out) : fs::path("hoods." + format);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  export_model(model.spec, fmt, path.string());
  std::cout << model.spec.num_variables() << " variables, " << model.spec.num_constraints()
            << " constraints written to " << path.string() << '\n';
  return kOk;
}

int cmd_fixture(const FixtureOptions& opt, const std::string& out) {
  const Scenario s = generate_fixture(opt);
  save_scenario(s, out);
  std::cout << s.data.network.buses.size() << "-bus fixture written to " << out << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integrated building and LV grid planning"};
  app.require_subcommand(1);

  RunFlags plan_f, compare_f, agg_f, export_f;
  auto* plan = app.add_subcommand("plan", "run one planning paradigm");
  add_run_flags(plan, plan_f, true);
  auto* cmp = app.add_subcommand("compare", "run all four paradigms and compare costs");
  add_run_flags(cmp, compare_f, false);
  auto* agg = app.add_subcommand("aggregate", "typical-period fidelity report");
  add_run_flags(agg, agg_f, false);
  auto* exp = app.add_subcommand("export-model", "write the capacity-stage model as LP or MPS");
  add_run_flags(exp, export_f, true);
  std::string format = "lp";
  exp->add_option("--format", format, "lp or mps")->check(CLI::IsMember({"lp", "mps"}));

  FixtureOptions fx;
  std::string fx_out = "fixture";
  auto* fix = app.add_subcommand("fixture", "generate a synthetic scenario");
  fix->add_option("--seed", fx.seed, "random seed");
  fix->add_option("--branches", fx.n_branches, "number of feeders")->check(CLI::PositiveNumber);
  fix->add_option("--buses-per-branch", fx.buses_per_branch, "buses per feeder")->check(CLI::PositiveNumber);
  fix->add_option("--hours", fx.horizon_hours, "horizon length");
  fix->add_flag("--pv-surplus", fx.forced_pv_surplus, "large roofs behind weak service lines");
  fix->add_option("--out", fx_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*plan) return cmd_plan(plan_f);
    if (*cmp) return cmd_compare(compare_f);
    if (*agg) return cmd_aggregate(agg_f);
    if (*exp) return cmd_export_model(export_f, format);
    if (*fix) return cmd_fixture(fx, fx_out);
  } catch (const ValidationError& e) {
    std::cerr << "validation failed:\n";
    for (const auto& p : e.problems()) std::cerr << "  " << p << '\n';
    return kValidation;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.stage() << '\n';
    for (const auto& v : e.violated()) std::cerr << "  relaxed " << v << '\n';
    return kInfeasible;
  } catch (const EnvironmentError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kEnvironment;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kEnvironment;
  }
  return kOk;
}
