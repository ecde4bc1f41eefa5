#pragma once

// Solver-agnostic linear model. Variables and rows are appended in emission
// order, which is the deterministic ordering used by every exporter and
// backend: (module, building, symbol, timestep).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hoods {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct VarId {
  std::int32_t index = -1;
  bool valid() const { return index >= 0; }
  friend bool operator==(VarId a, VarId b) { return a.index == b.index; }
};

struct RowId {
  std::int32_t index = -1;
};

enum class VarKind { Continuous, Binary };
enum class Sense { LessEqual, Equal, GreaterEqual };

struct Variable {
  std::string name;
  VarKind kind = VarKind::Continuous;
  double lower = 0.0;
  double upper = kInf;
};

struct Term {
  VarId var;
  double coef;
};

struct Constraint {
  std::string label;
  std::vector<Term> terms;
  Sense sense = Sense::Equal;
  double rhs = 0.0;
  int timestep = -1;  // -1 for time-independent rows
};

class ModelSpec {
 public:
  VarId add_variable(std::string name, VarKind kind = VarKind::Continuous, double lower = 0.0,
                     double upper = kInf);
  VarId add_binary(std::string name) { return add_variable(std::move(name), VarKind::Binary, 0, 1); }

  RowId add_constraint(std::string label, std::vector<Term> terms, Sense sense, double rhs,
                       int timestep = -1);

  /// Adds `coef` to the objective coefficient of `v` (minimisation).
  void add_objective(VarId v, double coef);
  void add_objective_constant(double c) { objective_constant_ += c; }

  void set_bounds(VarId v, double lower, double upper);

  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return rows_; }
  const std::vector<double>& objective() const { return objective_; }
  double objective_constant() const { return objective_constant_; }

  const Variable& variable(VarId v) const { return vars_.at(static_cast<std::size_t>(v.index)); }
  std::size_t num_variables() const { return vars_.size(); }
  std::size_t num_constraints() const { return rows_.size(); }
  std::size_t num_binaries() const;

  /// Lookup by variable name; builds an index on first use.
  std::optional<VarId> find(const std::string& name) const;

  /// Undeclared references, duplicate labels/names, NaN data, crossed bounds.
  std::vector<std::string> check() const;

  /// Objective value of an assignment, constant included.
  double evaluate_objective(const std::vector<double>& values) const;

  /// Signed violation of one row at `values` (0 when satisfied).
  double violation(const Constraint& row, const std::vector<double>& values) const;

  /// Largest row or bound violation at `values`; integrality not included.
  double max_violation(const std::vector<double>& values, std::size_t* worst_row = nullptr) const;

 private:
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
  std::vector<double> objective_;
  double objective_constant_ = 0.0;
  mutable std::unordered_map<std::string, VarId> name_index_;
  mutable std::size_t indexed_upto_ = 0;
};

/// Returns a copy of `spec` with each named variable pinned to the given value.
/// Throws std::invalid_argument for unknown names or values outside the bounds.
ModelSpec fix_variables(const ModelSpec& spec, const std::map<std::string, double>& assignments,
                        double tolerance = 1e-6);

enum class ModelFormat { Lp, Mps };

/// Deterministic text serialisation (CPLEX LP or free MPS).
void export_model(const ModelSpec& spec, ModelFormat format, std::ostream& out);
void export_model(const ModelSpec& spec, ModelFormat format, const std::string& path);

// -- solving -----------------------------------------------------------------

enum class SolveStatus { Optimal, FeasibleGap, Infeasible, Unbounded, Timeout };

const char* to_string(SolveStatus s);

struct SolveParams {
  double mip_gap = 1e-4;
  double time_limit_s = kInf;
  int threads = 1;
  bool verbose = false;
  double feasibility_tolerance = 1e-6;
};

struct SolverResult {
  SolveStatus status = SolveStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> values;  // indexed by VarId; empty unless a solution exists
  double mip_gap = 0.0;
  double max_violation = 0.0;  // from the internal re-check pass

  bool has_solution() const {
    return status == SolveStatus::Optimal || status == SolveStatus::FeasibleGap;
  }
  double value(VarId v) const { return values.at(static_cast<std::size_t>(v.index)); }
};

struct BoundOverride {
  VarId var;
  double lower;
  double upper;
};

/// Narrow backend interface: load a model, apply parameters, solve, read values.
/// Backends report raw solver output; re-checking is done by hoods::solve.
class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual std::string name() const = 0;
  virtual SolverResult solve(const ModelSpec& spec, const SolveParams& params,
                             const std::vector<BoundOverride>& overrides = {}) = 0;
};

/// Backend factory; "highs" is always available. Throws EnvironmentError otherwise.
std::unique_ptr<SolverBackend> make_backend(const std::string& name = "highs");

/// Validates the spec, solves it and re-checks every row of the returned solution.
SolverResult solve(const ModelSpec& spec, const SolveParams& params,
                   SolverBackend& backend);
SolverResult solve(const ModelSpec& spec, const SolveParams& params = {});

struct RelaxedRow {
  std::string label;
  int timestep;
  double amount;
};

/// Elastic phase-one on an infeasible spec: every row gets penalised slack and the
/// rows that need it are returned, largest slack first.
std::vector<RelaxedRow> diagnose_infeasibility(const ModelSpec& spec, SolverBackend& backend,
                                               std::size_t max_rows = 25);

}  // namespace hoods
