#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "hoods/milp.hpp"

namespace hoods {

VarId ModelSpec::add_variable(std::string name, VarKind kind, double lower, double upper) {
  VarId id{static_cast<std::int32_t>(vars_.size())};
  vars_.push_back({std::move(name), kind, lower, upper});
  objective_.push_back(0.0);
  return id;
}

RowId ModelSpec::add_constraint(std::string label, std::vector<Term> terms, Sense sense,
                                double rhs, int timestep) {
  RowId id{static_cast<std::int32_t>(rows_.size())};
  rows_.push_back({std::move(label), std::move(terms), sense, rhs, timestep});
  return id;
}

void ModelSpec::add_objective(VarId v, double coef) {
  objective_.at(static_cast<std::size_t>(v.index)) += coef;
}

void ModelSpec::set_bounds(VarId v, double lower, double upper) {
  auto& var = vars_.at(static_cast<std::size_t>(v.index));
  var.lower = lower;
  var.upper = upper;
}

std::size_t ModelSpec::num_binaries() const {
  return static_cast<std::size_t>(std::count_if(
      vars_.begin(), vars_.end(), [](const Variable& v) { return v.kind == VarKind::Binary; }));
}

std::optional<VarId> ModelSpec::find(const std::string& name) const {
  for (; indexed_upto_ < vars_.size(); ++indexed_upto_)
    name_index_.emplace(vars_[indexed_upto_].name,
                        VarId{static_cast<std::int32_t>(indexed_upto_)});
  auto it = name_index_.find(name);
  if (it == name_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> ModelSpec::check() const {
  std::vector<std::string> problems;
  const auto n = static_cast<std::int32_t>(vars_.size());

  std::unordered_set<std::string_view> names;
  names.reserve(vars_.size());
  for (const auto& v : vars_) {
    if (!names.insert(v.name).second) problems.push_back("duplicate variable name '" + v.name + "'");
    if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper)
      problems.push_back("variable '" + v.name + "' has invalid bounds");
  }

  std::unordered_set<std::string_view> labels;
  labels.reserve(rows_.size());
  for (const auto& r : rows_) {
    if (!labels.insert(r.label).second) problems.push_back("duplicate constraint label '" + r.label + "'");
    if (!std::isfinite(r.rhs)) problems.push_back("constraint '" + r.label + "' has non-finite rhs");
    for (const auto& t : r.terms) {
      if (t.var.index < 0 || t.var.index >= n) {
        problems.push_back("constraint '" + r.label + "' references an undeclared variable");
        break;
      }
      if (!std::isfinite(t.coef)) {
        problems.push_back("constraint '" + r.label + "' has a non-finite coefficient");
        break;
      }
    }
  }
  for (double c : objective_)
    if (!std::isfinite(c)) {
      problems.push_back("objective has a non-finite coefficient");
      break;
    }
  return problems;
}

double ModelSpec::evaluate_objective(const std::vector<double>& values) const {
  double obj = objective_constant_;
  for (std::size_t j = 0; j < objective_.size(); ++j) obj += objective_[j] * values.at(j);
  return obj;
}

double ModelSpec::violation(const Constraint& row, const std::vector<double>& values) const {
  double act = 0.0;
  for (const auto& t : row.terms) act += t.coef * values[static_cast<std::size_t>(t.var.index)];
  switch (row.sense) {
    case Sense::LessEqual: return std::max(0.0, act - row.rhs);
    case Sense::GreaterEqual: return std::max(0.0, row.rhs - act);
    case Sense::Equal: return std::abs(act - row.rhs);
  }
  return 0.0;
}

double ModelSpec::max_violation(const std::vector<double>& values, std::size_t* worst_row) const {
  if (values.size() != vars_.size())
    throw std::invalid_argument("solution vector size does not match the model");
  double worst = 0.0;
  for (std::size_t j = 0; j < vars_.size(); ++j) {
    worst = std::max({worst, vars_[j].lower - values[j], values[j] - vars_[j].upper});
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const double v = violation(rows_[i], values);
    if (v > worst) {
      worst = v;
      if (worst_row) *worst_row = i;
    }
  }
  return worst;
}

ModelSpec fix_variables(const ModelSpec& spec, const std::map<std::string, double>& assignments,
                        double tolerance) {
  ModelSpec out = spec;
  for (const auto& [name, value] : assignments) {
    auto id = out.find(name);
    if (!id) throw std::invalid_argument("fix_variables: unknown variable '" + name + "'");
    const auto& var = out.variable(*id);
    if (value < var.lower - tolerance || value > var.upper + tolerance) {
      std::ostringstream os;
      os << "fix_variables: value " << value << " for '" << name << "' lies outside ["
         << var.lower << ", " << var.upper << "]";
      throw std::invalid_argument(os.str());
    }
    double v = std::clamp(value, var.lower, var.upper);
    if (var.kind == VarKind::Binary) v = std::round(v);
    out.set_bounds(*id, v, v);
  }
  return out;
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::FeasibleGap: return "feasible-gap";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::Timeout: return "timeout";
  }
  return "unknown";
}

}  // namespace hoods
