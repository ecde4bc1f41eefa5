#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "Highs.h"
#include "hoods/errors.hpp"
#include "hoods/milp.hpp"

namespace hoods {

namespace {

class HighsBackend final : public SolverBackend {
 public:
  std::string name() const override { return "highs"; }

  SolverResult solve(const ModelSpec& spec, const SolveParams& params,
                     const std::vector<BoundOverride>& overrides) override {
    const auto& vars = spec.variables();
    const auto& rows = spec.constraints();
    const auto n = static_cast<HighsInt>(vars.size());
    const auto m = static_cast<HighsInt>(rows.size());

    std::vector<double> cost = spec.objective();
    std::vector<double> lower(vars.size()), upper(vars.size());
    std::vector<HighsInt> integrality(vars.size(), 0);
    bool has_integer = false;
    for (std::size_t j = 0; j < vars.size(); ++j) {
      lower[j] = std::isinf(vars[j].lower) ? -kHighsInf : vars[j].lower;
      upper[j] = std::isinf(vars[j].upper) ? kHighsInf : vars[j].upper;
      if (vars[j].kind == VarKind::Binary) {
        integrality[j] = 1;
        has_integer = true;
      }
    }
    for (const auto& o : overrides) {
      lower.at(static_cast<std::size_t>(o.var.index)) = o.lower;
      upper.at(static_cast<std::size_t>(o.var.index)) = o.upper;
    }
    bool branching = false;
    for (std::size_t j = 0; j < vars.size(); ++j)
      if (integrality[j] && lower[j] != upper[j]) branching = true;

    std::vector<double> row_lower(rows.size()), row_upper(rows.size());
    std::vector<HighsInt> start;
    std::vector<HighsInt> index;
    std::vector<double> value;
    start.reserve(rows.size() + 1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      row_lower[i] = r.sense == Sense::LessEqual ? -kHighsInf : r.rhs;
      row_upper[i] = r.sense == Sense::GreaterEqual ? kHighsInf : r.rhs;
      start.push_back(static_cast<HighsInt>(index.size()));
      // Duplicate column references within one row are merged.
      const std::size_t first = index.size();
      for (const auto& t : r.terms) {
        auto it = std::find(index.begin() + static_cast<std::ptrdiff_t>(first), index.end(),
                            static_cast<HighsInt>(t.var.index));
        if (it != index.end()) {
          value[static_cast<std::size_t>(it - index.begin())] += t.coef;
        } else {
          index.push_back(t.var.index);
          value.push_back(t.coef);
        }
      }
    }
    start.push_back(static_cast<HighsInt>(index.size()));

    Highs highs;
    highs.setOptionValue("output_flag", params.verbose);
    highs.setOptionValue("threads", static_cast<HighsInt>(std::max(1, params.threads)));
    highs.setOptionValue("mip_rel_gap", params.mip_gap);
    // Tight tolerances only for continuous solves; branch-and-bound runs at the
    // defaults and its incumbent is polished by a pinned LP afterwards.
    if (!branching) {
      highs.setOptionValue("primal_feasibility_tolerance", 1e-9);
      highs.setOptionValue("dual_feasibility_tolerance", 1e-9);
    }
    highs.setOptionValue("random_seed", static_cast<HighsInt>(0));
    if (std::isfinite(params.time_limit_s)) highs.setOptionValue("time_limit", params.time_limit_s);

    const HighsStatus pass = highs.passModel(
        n, m, static_cast<HighsInt>(index.size()), static_cast<HighsInt>(MatrixFormat::kRowwise),
        static_cast<HighsInt>(ObjSense::kMinimize), spec.objective_constant(), cost.data(),
        lower.data(), upper.data(), row_lower.data(), row_upper.data(), start.data(),
        index.empty() ? nullptr : index.data(), value.empty() ? nullptr : value.data(),
        branching ? integrality.data() : nullptr);
    if (pass == HighsStatus::kError) throw std::invalid_argument("HiGHS rejected the model");

    if (highs.run() == HighsStatus::kError && highs.getModelStatus() == HighsModelStatus::kNotset)
      throw EnvironmentError("HiGHS failed to run");

    SolverResult res;
    const auto& info = highs.getInfo();
    const bool primal = info.primal_solution_status == kSolutionStatusFeasible;
    switch (highs.getModelStatus()) {
      case HighsModelStatus::kOptimal:
        res.status = SolveStatus::Optimal;
        break;
      case HighsModelStatus::kModelEmpty:
        res.status = SolveStatus::Optimal;
        break;
      case HighsModelStatus::kInfeasible:
      case HighsModelStatus::kUnboundedOrInfeasible:
        res.status = SolveStatus::Infeasible;
        break;
      case HighsModelStatus::kUnbounded:
        res.status = SolveStatus::Unbounded;
        break;
      case HighsModelStatus::kTimeLimit:
      case HighsModelStatus::kIterationLimit:
      case HighsModelStatus::kSolutionLimit:
      case HighsModelStatus::kInterrupt:
        res.status = primal ? SolveStatus::FeasibleGap : SolveStatus::Timeout;
        break;
      default:
        throw EnvironmentError(std::string("HiGHS finished with status ") +
                               highs.modelStatusToString(highs.getModelStatus()));
    }
    if (res.has_solution()) {
      if (highs.getModelStatus() == HighsModelStatus::kModelEmpty) {
        res.values.assign(vars.size(), 0.0);
        for (std::size_t j = 0; j < vars.size(); ++j) {
          // Empty model: every column sits at its cheapest finite bound.
          const double c = cost[j];
          res.values[j] = c > 0 ? lower[j] : c < 0 ? upper[j] : std::clamp(0.0, lower[j], upper[j]);
        }
        res.objective = spec.evaluate_objective(res.values);
      } else {
        res.values = highs.getSolution().col_value;
        res.objective = info.objective_function_value;
      }
      res.mip_gap = has_integer ? std::max(0.0, info.mip_gap) : 0.0;
    }
    return res;
  }
};

bool all_integers_fixed(const ModelSpec& spec) {
  for (const auto& v : spec.variables())
    if (v.kind == VarKind::Binary && v.lower != v.upper) return false;
  return true;
}

}  // namespace

std::unique_ptr<SolverBackend> make_backend(const std::string& name) {
  if (name == "highs" || name.empty()) return std::make_unique<HighsBackend>();
  throw EnvironmentError("solver backend '" + name + "' is not available (built with: highs)");
}

SolverResult solve(const ModelSpec& spec, const SolveParams& params, SolverBackend& backend) {
  auto problems = spec.check();
  if (!problems.empty()) {
    std::string msg = "malformed model: " + problems.front();
    if (problems.size() > 1) msg += " (+" + std::to_string(problems.size() - 1) + " more)";
    throw std::invalid_argument(msg);
  }

  SolverResult res = backend.solve(spec, params);
  if (!res.has_solution()) return res;

  // Polish: pin the integer columns at their rounded values and re-solve the LP,
  // so reported values satisfy every row exactly rather than up to integrality slack.
  if (spec.num_binaries() > 0 && !all_integers_fixed(spec)) {
    std::vector<BoundOverride> pins;
    for (std::size_t j = 0; j < spec.num_variables(); ++j) {
      const auto& v = spec.variables()[j];
      if (v.kind != VarKind::Binary) continue;
      const double r = std::round(res.values[j]);
      pins.push_back({VarId{static_cast<std::int32_t>(j)}, r, r});
    }
    SolverResult lp = backend.solve(spec, params, pins);
    if (lp.status == SolveStatus::Optimal) {
      lp.status = res.status;
      lp.mip_gap = res.mip_gap;
      res = std::move(lp);
    }
  }

  std::size_t worst = 0;
  res.max_violation = spec.max_violation(res.values, &worst);
  if (res.max_violation > params.feasibility_tolerance) {
    std::cerr << "warning: solution re-check found violation " << res.max_violation
              << " at '" << spec.constraints()[worst].label << "'\n";
  }
  return res;
}

SolverResult solve(const ModelSpec& spec, const SolveParams& params) {
  auto backend = make_backend("highs");
  return solve(spec, params, *backend);
}

std::vector<RelaxedRow> diagnose_infeasibility(const ModelSpec& spec, SolverBackend& backend,
                                               std::size_t max_rows) {
  ModelSpec elastic;
  for (const auto& v : spec.variables()) elastic.add_variable(v.name, v.kind, v.lower, v.upper);

  struct Slack {
    std::size_t row;
    VarId up;
    VarId down;
  };
  std::vector<Slack> slacks;
  slacks.reserve(spec.num_constraints());
  const auto& rows = spec.constraints();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    auto terms = r.terms;
    Slack s{i, {}, {}};
    if (r.sense != Sense::LessEqual) {
      s.up = elastic.add_variable("slack_up." + std::to_string(i));
      terms.push_back({s.up, 1.0});
      elastic.add_objective(s.up, 1.0);
    }
    if (r.sense != Sense::GreaterEqual) {
      s.down = elastic.add_variable("slack_dn." + std::to_string(i));
      terms.push_back({s.down, -1.0});
      elastic.add_objective(s.down, 1.0);
    }
    elastic.add_constraint(r.label, std::move(terms), r.sense, r.rhs, r.timestep);
    slacks.push_back(s);
  }

  SolveParams p;
  p.mip_gap = 1e-3;
  SolverResult res = backend.solve(elastic, p);
  std::vector<RelaxedRow> out;
  if (!res.has_solution()) return out;
  for (const auto& s : slacks) {
    double amount = 0.0;
    if (s.up.valid()) amount += res.value(s.up);
    if (s.down.valid()) amount += res.value(s.down);
    if (amount > 1e-7) out.push_back({rows[s.row].label, rows[s.row].timestep, amount});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const RelaxedRow& a, const RelaxedRow& b) { return a.amount > b.amount; });
  if (out.size() > max_rows) out.resize(max_rows);
  return out;
}

}  // namespace hoods
