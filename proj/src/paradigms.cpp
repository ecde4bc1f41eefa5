#include "hoods/paradigms.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hoods/errors.hpp"

namespace hoods {

const char* to_string(ParadigmId p) {
  switch (p) {
    case ParadigmId::CoorPlusFlexPlus: return "coor+flex+";
    case ParadigmId::CoorMinusFlexMinus: return "coor-flex-";
    case ParadigmId::CoorMinusFlexPlus: return "coor-flex+";
    case ParadigmId::CoorMinusFlexPlusPlus: return "coor-flex++";
  }
  return "?";
}

ParadigmId paradigm_from_string(const std::string& raw) {
  std::string s;
  for (char c : raw) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "coor+flex+" || s == "coorplusflexplus" || s == "coordinated") return ParadigmId::CoorPlusFlexPlus;
  if (s == "coor-flex-" || s == "coorminusflexminus") return ParadigmId::CoorMinusFlexMinus;
  if (s == "coor-flex+" || s == "coorminusflexplus") return ParadigmId::CoorMinusFlexPlus;
  if (s == "coor-flex++" || s == "coorminusflexplusplus") return ParadigmId::CoorMinusFlexPlusPlus;
  throw std::invalid_argument("unknown paradigm '" + raw +
                              "' (expected coor+flex+, coor-flex-, coor-flex+ or coor-flex++)");
}

std::vector<Series> aggregation_bundle(const SystemData& data) {
  const std::size_t H = data.horizon();
  std::vector<Series> bundle(3, Series(H, 0.0));
  for (const auto& b : data.buildings)
    for (std::size_t h = 0; h < H; ++h) {
      bundle[0][h] += b.elec_kw[h];
      bundle[1][h] += b.space_heat_kw[h];
      bundle[2][h] += b.hot_water_kw[h];
    }
  bundle.push_back(data.catalog.cop);
  bundle.push_back(data.catalog.pv_capacity_factor);
  return bundle;
}

TimeGrids make_time_grids(const SystemData& data, const AggregationConfig& cfg) {
  const std::size_t H = data.horizon();
  const std::size_t L = cfg.period_hours;
  if (L == 0) throw std::invalid_argument("period length must be positive");
  TimeGrids g;
  std::vector<std::size_t> periods = cfg.horizon_periods;
  if (!periods.empty()) {
    std::set<std::size_t> uniq(periods.begin(), periods.end());
    if (uniq.size() != periods.size()) throw std::invalid_argument("horizon periods must be distinct");
    for (auto p : periods)
      if ((p + 1) * L > H) throw std::invalid_argument("horizon period " + std::to_string(p) + " exceeds the horizon");
    std::sort(periods.begin(), periods.end());
    g.full = TimeGrid::subset(H, L, periods);
  } else {
    g.full = TimeGrid::full(H);
  }
  g.reduced = g.full;
  if (!cfg.enabled) return g;

  const std::size_t available = periods.empty() ? H / L : periods.size();
  if (cfg.typical_periods == 0) throw std::invalid_argument("typical periods must be positive");
  if (cfg.typical_periods >= available) return g;

  // Bundle over the hours of T (concatenated when T is a subset).
  std::vector<std::size_t> hours;
  if (periods.empty()) {
    for (std::size_t h = 0; h < H; ++h) hours.push_back(h);
  } else {
    for (std::size_t s = 0; s < g.full.steps(); ++s) hours.push_back(g.full.hour(s));
  }
  const std::vector<Series> hourly = aggregation_bundle(data);
  std::vector<Series> bundle;
  for (const auto& series : hourly) {
    Series picked;
    for (auto h : hours) picked.push_back(series[h]);
    bundle.push_back(std::move(picked));
  }
  const ReducedTimeGrid r = aggregate(bundle, cfg.typical_periods, L, {kBundleElec, kBundleSpaceHeat});
  if (periods.empty()) {
    g.reduced = r.grid;
  } else {
    TimeGrid t(H);
    const double unit = static_cast<double>(H) / static_cast<double>(L * periods.size());
    for (std::size_t k = 0; k < r.representatives.size(); ++k)
      t.add_period(periods[r.representatives[k]] * L, L, unit * static_cast<double>(r.cardinality[k]));
    g.reduced = std::move(t);
  }
  g.aggregated = true;
  return g;
}

namespace {

using Clock = std::chrono::steady_clock;

SolverResult solve_stage(const ModelSpec& spec, const std::string& stage, const PlanOptions& opt,
                         StageReport& rep) {
  const auto t0 = Clock::now();
  auto backend = make_backend(opt.backend);
  SolverResult res = solve(spec, opt.solver, *backend);
  rep.stage = stage;
  rep.status = res.status;
  rep.objective = res.objective;
  rep.mip_gap = res.mip_gap;
  rep.max_violation = res.max_violation;
  rep.variables = spec.num_variables();
  rep.constraints = spec.num_constraints();
  rep.binaries = spec.num_binaries();
  rep.seconds = std::chrono::duration<double>(Clock::now() - t0).count();

  switch (res.status) {
    case SolveStatus::Optimal:
    case SolveStatus::FeasibleGap:
      return res;
    case SolveStatus::Infeasible: {
      const auto rows = diagnose_infeasibility(spec, *backend);
      std::vector<std::string> labels;
      std::vector<int> steps;
      for (const auto& r : rows) {
        labels.push_back(r.label);
        if (r.timestep >= 0 && std::find(steps.begin(), steps.end(), r.timestep) == steps.end())
          steps.push_back(r.timestep);
      }
      throw InfeasibleError(stage, std::move(labels), std::move(steps));
    }
    case SolveStatus::Unbounded:
      throw EnvironmentError(stage + ": model is unbounded");
    case SolveStatus::Timeout:
      throw EnvironmentError(stage + ": time limit reached without a feasible solution");
  }
  return res;
}

std::map<std::string, double> decisions(const ModelSpec& spec, const std::vector<VarId>& ids,
                                        const SolverResult& res) {
  std::map<std::string, double> out;
  for (auto id : ids) out[spec.variable(id).name] = res.value(id);
  return out;
}

Series values(const std::vector<VarId>& ids, const SolverResult& r) {
  Series out(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) out[i] = r.value(ids[i]);
  return out;
}

BuildingDispatch extract_building(const BuildingVars& v, const SolverResult& r) {
  BuildingDispatch d;
  d.bus = v.bus;
  d.kappa_pv = r.value(v.kappa_pv);
  d.beta_pv = std::round(r.value(v.beta_pv));
  d.kappa_bat_p = r.value(v.kappa_bat_p);
  d.kappa_bat_e = r.value(v.kappa_bat_e);
  d.kappa_hp = r.value(v.kappa_hp);
  d.beta_hp = std::round(r.value(v.beta_hp));
  d.kappa_ts_p = r.value(v.kappa_ts_p);
  d.kappa_ts_e = r.value(v.kappa_ts_e);
  d.kappa_cs = v.kappa_cs;
  d.p_pv = values(v.p_pv, r);
  d.q_pv = values(v.q_pv, r);
  d.p_bat_ch = values(v.p_bat_ch, r);
  d.p_bat_dch = values(v.p_bat_dch, r);
  d.e_bat = values(v.e_bat, r);
  d.p_hp = values(v.p_hp, r);
  d.g_hp = values(v.g_hp, r);
  d.g_ts_ch = values(v.g_ts_ch, r);
  d.g_ts_dch = values(v.g_ts_dch, r);
  d.e_ts = values(v.e_ts, r);
  d.p_bev = values(v.p_bev, r);
  d.mu_bev = values(v.mu_bev, r);
  d.vms_ch = values(v.vms_ch, r);
  d.vms_dch = values(v.vms_dch, r);
  d.e_vms = values(v.e_vms, r);
  d.d_mob = v.d_mob;
  d.e_bat_init = values(v.e_bat_init, r);
  d.e_ts_init = values(v.e_ts_init, r);
  d.e_vms_init = values(v.e_vms_init, r);
  if (!v.p_imp.empty()) {
    d.p_imp = values(v.p_imp, r);
    d.p_fi = values(v.p_fi, r);
    d.q_imp = values(v.q_imp, r);
  }
  return d;
}

GridDispatch extract_grid(const GridVars& g, const Network& net, const SolverResult& r) {
  GridDispatch d;
  d.transformer = net.incumbent().name;
  for (std::size_t o = 0; o < g.oltc.size(); ++o)
    if (std::round(r.value(g.alpha_oltc[o])) == 1.0) {
      d.transformer = g.oltc[o]->name;
      d.oltc = true;
    }
  for (const auto& lv : g.lines) {
    CableSetting chosen = lv.settings.front();
    for (std::size_t k = 0; k < lv.settings.size(); ++k)
      if (std::round(r.value(lv.alpha[k])) == 1.0) chosen = lv.settings[k];
    d.line_settings.push_back(chosen);
    d.p_line.push_back(values(lv.p, r));
    d.q_line.push_back(values(lv.q, r));
  }
  d.p_imp = values(g.p_imp, r);
  d.p_fi = values(g.p_fi, r);
  d.q_comp_pos = values(g.q_comp_pos, r);
  d.q_comp_neg = values(g.q_comp_neg, r);
  for (const auto& [bus, u] : g.u) d.u[bus] = values(u, r);
  for (const auto& [bus, c] : g.p_curt) d.p_curt[bus] = values(c, r);
  return d;
}

double weighted_pv(const std::vector<BuildingDispatch>& bs, const TimeGrid& g) {
  double total = 0.0;
  for (const auto& b : bs)
    for (std::size_t s = 0; s < b.p_pv.size(); ++s) total += g.weight(s) * b.p_pv[s];
  return total;
}

}  // namespace

PlanResult run_coordinated(const SystemData& data, const PlanOptions& opt) {
  auto problems = validate_system(data);
  if (!problems.empty()) throw ValidationError(problems);
  const TimeGrids grids = make_time_grids(data, opt.aggregation);

  PlanResult out;
  out.paradigm = ParadigmId::CoorPlusFlexPlus;
  out.grid = grids.full;

  // Stage 1: capacities and reinforcement on T_r.
  HoodsModel sizing = build_hoods(data, grids.reduced, true);
  StageReport rep1;
  const SolverResult r1 = solve_stage(sizing.spec, "coordinated sizing", opt, rep1);
  out.stages.push_back(rep1);

  std::map<std::string, double> fixed = decisions(sizing.spec, reinforcement_decisions(sizing.grid), r1);
  for (const auto& b : sizing.buildings) {
    auto d = decisions(sizing.spec, sizing_decisions(b), r1);
    fixed.insert(d.begin(), d.end());
  }

  // Stage 2: hourly dispatch on T with every decision fixed.
  HoodsModel dispatch = build_hoods(data, grids.full, true);
  const ModelSpec pinned = fix_variables(dispatch.spec, fixed);
  StageReport rep2;
  const SolverResult r2 = solve_stage(pinned, "coordinated dispatch", opt, rep2);
  out.stages.push_back(rep2);

  out.network = extract_grid(dispatch.grid, data.network, r2);
  const GridContext gctx{data.network, grids.full};
  std::vector<BuildingCosts> bcosts;
  for (const auto& bv : dispatch.buildings) {
    BuildingDispatch d = extract_building(bv, r2);
    // Exchange with the grid is the net inflow of the bus.
    const NodeFlows f = node_flows(gctx, dispatch.grid, bv.bus);
    d.p_imp.assign(grids.full.steps(), 0.0);
    d.p_fi.assign(grids.full.steps(), 0.0);
    d.q_imp.assign(grids.full.steps(), 0.0);
    for (std::size_t s = 0; s < grids.full.steps(); ++s) {
      double p = 0.0, q = 0.0;
      for (const auto& t : f.p[s]) p += t.coef * r2.value(t.var);
      for (const auto& t : f.q[s]) q += t.coef * r2.value(t.var);
      d.p_imp[s] = std::max(0.0, p);
      d.p_fi[s] = std::max(0.0, -p);
      d.q_imp[s] = q;
    }
    out.buildings.push_back(std::move(d));
    bcosts.push_back(building_costs(bv, r2.values, data.catalog, grids.full));
  }
  const GridCosts gc = grid_costs(dispatch.grid, r2.values, data.network, data.catalog, grids.full, {true});
  out.costs = combine(bcosts, gc);
  out.objective = r2.objective;
  out.pv_production_kwh = weighted_pv(out.buildings, grids.full);
  return out;
}

PlanResult run_uncoordinated(const SystemData& data, bool flexible, bool curtailment,
                             const PlanOptions& opt) {
  if (curtailment && !flexible)
    throw std::invalid_argument("grid-side curtailment is only defined with building flexibility");
  auto problems = validate_system(data);
  if (!problems.empty()) throw ValidationError(problems);
  const TimeGrids grids = make_time_grids(data, opt.aggregation);

  PlanResult out;
  out.paradigm = !flexible ? ParadigmId::CoorMinusFlexMinus
                           : (curtailment ? ParadigmId::CoorMinusFlexPlusPlus : ParadigmId::CoorMinusFlexPlus);
  out.grid = grids.full;

  // Buildings in network order, independent of the input order.
  std::vector<const Building*> order;
  for (const Bus* bus : topological_order(data.network))
    if (const Building* b = data.building_at(bus->id)) order.push_back(b);

  struct BuildingOutcome {
    BuildingDispatch dispatch;
    BuildingCosts costs;
    StageReport sizing, operation;
  };
  auto run_building = [&](const Building& b) {
    BuildingOutcome o;
    BuildingModel m1 = build_hoods_bui(data, b, grids.reduced, flexible);
    const SolverResult r1 = solve_stage(m1.spec, "building " + b.bus_id + " sizing", opt, o.sizing);
    const auto fixed = decisions(m1.spec, sizing_decisions(m1.vars), r1);
    BuildingModel m2 = build_hoods_bui(data, b, grids.full, flexible);
    const ModelSpec pinned = fix_variables(m2.spec, fixed);
    const SolverResult r2 = solve_stage(pinned, "building " + b.bus_id + " dispatch", opt, o.operation);
    o.dispatch = extract_building(m2.vars, r2);
    o.dispatch.stage_objective = r2.objective;
    o.costs = building_costs(m2.vars, r2.values, data.catalog, grids.full);
    return o;
  };

  std::vector<BuildingOutcome> outcomes(order.size());
  const std::size_t workers = std::max(1u, opt.workers);
  for (std::size_t start = 0; start < order.size(); start += workers) {
    const std::size_t end = std::min(order.size(), start + workers);
    if (workers == 1) {
      outcomes[start] = run_building(*order[start]);
      continue;
    }
    std::vector<std::future<BuildingOutcome>> jobs;
    for (std::size_t i = start; i < end; ++i)
      jobs.push_back(std::async(std::launch::async, run_building, std::cref(*order[i])));
    for (std::size_t i = start; i < end; ++i) outcomes[i] = jobs[i - start].get();
  }

  std::map<BusId, Injection> injections;
  std::vector<BuildingCosts> bcosts;
  double building_objective = 0.0;
  for (auto& o : outcomes) {
    out.stages.push_back(o.sizing);
    out.stages.push_back(o.operation);
    injections[o.dispatch.bus] = {o.dispatch.p_imp, o.dispatch.p_fi, o.dispatch.q_imp};
    building_objective += o.dispatch.stage_objective;
    bcosts.push_back(o.costs);
    out.buildings.push_back(std::move(o.dispatch));
  }

  // Grid stage on T over the communicated profiles.
  GridModel gm = build_hoods_grid(data, grids.full, injections, curtailment);
  StageReport rep;
  const SolverResult rg = solve_stage(gm.spec, "grid reinforcement", opt, rep);
  out.stages.push_back(rep);
  out.network = extract_grid(gm.grid, data.network, rg);
  out.network.stage_objective = rg.objective;

  const GridCosts gc = grid_costs(gm.grid, rg.values, data.network, data.catalog, grids.full, {false});
  out.costs = combine(bcosts, gc);
  out.curtailed_kwh = gc.curtailed_kwh;
  out.objective = building_objective + rg.objective;
  out.pv_production_kwh = weighted_pv(out.buildings, grids.full);
  return out;
}

PlanResult run_paradigm(const SystemData& data, ParadigmId p, const PlanOptions& opt) {
  switch (p) {
    case ParadigmId::CoorPlusFlexPlus: return run_coordinated(data, opt);
    case ParadigmId::CoorMinusFlexMinus: return run_uncoordinated(data, false, false, opt);
    case ParadigmId::CoorMinusFlexPlus: return run_uncoordinated(data, true, false, opt);
    case ParadigmId::CoorMinusFlexPlusPlus: return run_uncoordinated(data, true, true, opt);
  }
  throw std::invalid_argument("unknown paradigm");
}

namespace {

double percent(double v, double base) {
  if (base == 0.0) return v == 0.0 ? 100.0 : std::numeric_limits<double>::infinity();
  return 100.0 * v / base;
}

}  // namespace

ComparisonReport compare(const std::vector<PlanResult>& results) {
  if (results.empty()) throw std::invalid_argument("compare needs at least one result");
  ComparisonReport r;
  for (std::size_t i = 0; i < results.size(); ++i) {
    r.paradigms.push_back(results[i].paradigm);
    if (results[i].paradigm == ParadigmId::CoorMinusFlexMinus) r.baseline = i;
  }
  r.baseline = std::min(r.baseline, results.size() - 1);
  if (std::none_of(results.begin(), results.end(),
                   [](const PlanResult& p) { return p.paradigm == ParadigmId::CoorMinusFlexMinus; }))
    r.baseline = 0;

  const auto& base = results[r.baseline].costs;
  auto add = [&](const std::string& label, auto fn) {
    r.rows.push_back(label);
    std::vector<double> row;
    for (const auto& res : results) row.push_back(fn(res.costs, res));
    r.values.push_back(std::move(row));
  };
  add("PV", [](const CostBreakdown& c, const PlanResult&) { return c.pv; });
  add("Heat pump", [](const CostBreakdown& c, const PlanResult&) { return c.hp; });
  add("Battery", [](const CostBreakdown& c, const PlanResult&) { return c.battery; });
  add("Th. storage", [](const CostBreakdown& c, const PlanResult&) { return c.ts; });
  add("Import", [](const CostBreakdown& c, const PlanResult&) { return c.import; });
  add("Feed-in", [](const CostBreakdown& c, const PlanResult&) { return c.feed_in; });
  add("Buildings total", [](const CostBreakdown& c, const PlanResult&) { return c.building_total(); });
  add("Buildings percentage",
      [&](const CostBreakdown& c, const PlanResult&) { return percent(c.building_total(), base.building_total()); });
  add("Cables", [](const CostBreakdown& c, const PlanResult&) { return c.cables; });
  add("OLTC", [](const CostBreakdown& c, const PlanResult&) { return c.oltc; });
  add("Q comp", [](const CostBreakdown& c, const PlanResult&) { return c.q_comp; });
  add("Curtailment", [](const CostBreakdown& c, const PlanResult&) { return c.curtailment; });
  add("Grid total", [](const CostBreakdown& c, const PlanResult&) { return c.grid_total(); });
  add("Grid percentage",
      [&](const CostBreakdown& c, const PlanResult&) { return percent(c.grid_total(), base.grid_total()); });
  add("Total costs", [](const CostBreakdown& c, const PlanResult&) { return c.total(); });
  add("Share grid (%)", [](const CostBreakdown& c, const PlanResult&) { return 100.0 * c.grid_share(); });
  add("Total percentage", [&](const CostBreakdown& c, const PlanResult&) { return percent(c.total(), base.total()); });
  add("Feed-in net of curtailment",
      [](const CostBreakdown& c, const PlanResult&) { return c.feed_in_net_of_curtailment(); });
  add("Curtailed energy (kWh)", [](const CostBreakdown&, const PlanResult& p) { return p.curtailed_kwh; });

  for (const auto& res : results) {
    std::ostringstream os;
    os << to_string(res.paradigm) << ": transformer " << res.network.transformer << "; lines";
    for (std::size_t l = 0; l < res.network.line_settings.size(); ++l)
      os << " l" << l << '=' << to_string(res.network.line_settings[l]);
    r.reinforcement.push_back(os.str());
  }
  return r;
}

void write_comparison_csv(const ComparisonReport& r, std::ostream& out) {
  const auto old = out.precision(10);
  out << "row";
  for (auto p : r.paradigms) out << ',' << to_string(p);
  out << '\n';
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    out << r.rows[i];
    for (double v : r.values[i]) out << ',' << v;
    out << '\n';
  }
  out.precision(old);
}

}  // namespace hoods
