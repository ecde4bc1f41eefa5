#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

#include "Highs.h"
#include "hoods/errors.hpp"
#include "hoods/milp.hpp"

using namespace hoods;

namespace {

// max 5a + 4b + 3c + x  s.t. 2a + 3b + c + x <= 4.5, x <= 1.2, binaries a, b, c
ModelSpec knapsack() {
  ModelSpec m;
  const VarId a = m.add_binary("a");
  const VarId b = m.add_binary("b");
  const VarId c = m.add_binary("c");
  const VarId x = m.add_variable("x", VarKind::Continuous, 0.0, 1.2);
  m.add_constraint("cap", {{a, 2}, {b, 3}, {c, 1}, {x, 1}}, Sense::LessEqual, 4.5);
  m.add_objective(a, -5);
  m.add_objective(b, -4);
  m.add_objective(c, -3);
  m.add_objective(x, -1);
  m.add_objective_constant(10.0);
  return m;
}

// Enumerates the binaries; the continuous part is solved by hand for this model.
double knapsack_oracle() {
  double best = 1e300;
  for (int mask = 0; mask < 8; ++mask) {
    const int a = mask & 1, b = (mask >> 1) & 1, c = (mask >> 2) & 1;
    const double room = 4.5 - 2 * a - 3 * b - c;
    if (room < 0) continue;
    const double x = std::min(1.2, room);
    best = std::min(best, 10.0 - 5 * a - 4 * b - 3 * c - x);
  }
  return best;
}

double solve_file_with_highs(const std::string& path) {
  Highs h;
  h.setOptionValue("output_flag", false);
  EXPECT_NE(h.readModel(path), HighsStatus::kError);
  h.run();
  EXPECT_EQ(h.getModelStatus(), HighsModelStatus::kOptimal);
  return h.getInfo().objective_function_value;
}

}  // namespace

TEST(ModelSpec, ObjectiveAccumulatesAndEvaluates) {
  ModelSpec m;
  const VarId x = m.add_variable("x");
  m.add_objective(x, 2.0);
  m.add_objective(x, 1.5);
  m.add_objective_constant(4.0);
  EXPECT_DOUBLE_EQ(m.objective()[0], 3.5);
  EXPECT_DOUBLE_EQ(m.evaluate_objective({2.0}), 11.0);
}

TEST(ModelSpec, FindByName) {
  ModelSpec m;
  m.add_variable("x");
  const VarId y = m.add_variable("y");
  ASSERT_TRUE(m.find("y"));
  EXPECT_EQ(m.find("y")->index, y.index);
  EXPECT_FALSE(m.find("z"));
}

TEST(ModelSpec, CheckReportsDuplicatesAndCrossedBounds) {
  ModelSpec m;
  const VarId x = m.add_variable("x");
  m.add_variable("x");
  m.set_bounds(x, 2.0, 1.0);
  m.add_constraint("r", {{x, 1}}, Sense::LessEqual, 1.0);
  m.add_constraint("r", {{x, 1}}, Sense::LessEqual, 1.0);
  m.add_constraint("bad", {{VarId{99}, 1}}, Sense::LessEqual, 1.0);
  EXPECT_GE(m.check().size(), 4u);
}

TEST(ModelSpec, ViolationIsSignedPerSense) {
  ModelSpec m;
  const VarId x = m.add_variable("x", VarKind::Continuous, -kInf, kInf);
  m.add_constraint("le", {{x, 1}}, Sense::LessEqual, 1.0);
  m.add_constraint("ge", {{x, 1}}, Sense::GreaterEqual, 3.0);
  const std::vector<double> at2{2.0};
  EXPECT_DOUBLE_EQ(m.violation(m.constraints()[0], at2), 1.0);
  EXPECT_DOUBLE_EQ(m.violation(m.constraints()[1], at2), 1.0);
  EXPECT_DOUBLE_EQ(m.max_violation({1.0}), 2.0);
}

TEST(FixVariables, PinsNamedColumns) {
  const ModelSpec m = knapsack();
  const ModelSpec f = fix_variables(m, {{"a", 0.0}, {"x", 0.5}});
  EXPECT_EQ(f.variables()[0].lower, 0.0);
  EXPECT_EQ(f.variables()[0].upper, 0.0);
  EXPECT_EQ(f.variables()[3].lower, 0.5);
  EXPECT_EQ(m.variables()[3].lower, 0.0);  // original untouched
  EXPECT_THROW(fix_variables(m, {{"nope", 1.0}}), std::invalid_argument);
  EXPECT_THROW(fix_variables(m, {{"x", 5.0}}), std::invalid_argument);
}

TEST(Solve, KnapsackMatchesEnumeration) {
  const SolverResult r = solve(knapsack());
  ASSERT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_NEAR(r.objective, knapsack_oracle(), 1e-9);
  EXPECT_LE(r.max_violation, 1e-9);
  for (int j = 0; j < 3; ++j) EXPECT_EQ(r.values[j], std::round(r.values[j]));
}

TEST(Solve, RandomBinaryProgramsMatchEnumeration) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 25; ++trial) {
    ModelSpec m;
    std::vector<VarId> z;
    for (int j = 0; j < 5; ++j) z.push_back(m.add_binary("z" + std::to_string(j)));
    std::vector<std::vector<double>> a(3, std::vector<double>(5));
    std::vector<double> rhs(3), c(5);
    for (int i = 0; i < 3; ++i) {
      std::vector<Term> row;
      for (int j = 0; j < 5; ++j) {
        a[i][j] = u(gen);
        row.push_back({z[j], a[i][j]});
      }
      rhs[i] = std::abs(u(gen));
      m.add_constraint("r" + std::to_string(i), row, Sense::LessEqual, rhs[i]);
    }
    for (int j = 0; j < 5; ++j) m.add_objective(z[j], c[j] = u(gen));
    double best = 1e300;
    for (int mask = 0; mask < 32; ++mask) {
      bool ok = true;
      for (int i = 0; i < 3 && ok; ++i) {
        double lhs = 0;
        for (int j = 0; j < 5; ++j) lhs += a[i][j] * ((mask >> j) & 1);
        ok = lhs <= rhs[i] + 1e-12;
      }
      if (!ok) continue;
      double obj = 0;
      for (int j = 0; j < 5; ++j) obj += c[j] * ((mask >> j) & 1);
      best = std::min(best, obj);
    }
    SolveParams p;
    p.mip_gap = 0.0;
    const SolverResult r = solve(m, p);
    ASSERT_EQ(r.status, SolveStatus::Optimal) << "trial " << trial;
    EXPECT_NEAR(r.objective, best, 1e-7) << "trial " << trial;
  }
}

TEST(Solve, InfeasibleModelIsDiagnosed) {
  ModelSpec m;
  const VarId x = m.add_variable("x");
  const VarId y = m.add_variable("y");
  m.add_constraint("harmless", {{y, 1}}, Sense::LessEqual, 10.0);
  m.add_constraint("need", {{x, 1}}, Sense::GreaterEqual, 5.0, 3);
  m.add_constraint("cap", {{x, 1}}, Sense::LessEqual, 2.0, 3);
  auto backend = make_backend();
  const SolverResult r = solve(m, {}, *backend);
  EXPECT_EQ(r.status, SolveStatus::Infeasible);
  const auto rows = diagnose_infeasibility(m, *backend);
  ASSERT_FALSE(rows.empty());
  for (const auto& row : rows) {
    EXPECT_NE(row.label, "harmless");
    EXPECT_EQ(row.timestep, 3);
  }
}

TEST(Solve, UnboundedIsReported) {
  ModelSpec m;
  const VarId x = m.add_variable("x");
  m.add_objective(x, -1.0);
  const auto s = solve(m).status;
  EXPECT_TRUE(s == SolveStatus::Unbounded || s == SolveStatus::Infeasible) << to_string(s);
}

TEST(Solve, UnknownBackendIsAnEnvironmentError) { EXPECT_THROW(make_backend("cplex"), EnvironmentError); }

TEST(Solve, MalformedSpecIsRejectedBeforeSolving) {
  ModelSpec m;
  m.add_variable("x");
  m.add_variable("x");
  EXPECT_THROW(solve(m), std::invalid_argument);
}

TEST(Export, LpIsDeterministic) {
  std::ostringstream a, b;
  export_model(knapsack(), ModelFormat::Lp, a);
  export_model(knapsack(), ModelFormat::Lp, b);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_NE(a.str().find("Binaries"), std::string::npos);
}

TEST(Export, NamesAreSanitisedUniquely) {
  ModelSpec m;
  const VarId a = m.add_variable("p bal[1]");
  const VarId b = m.add_variable("p_bal_1_");
  m.add_constraint("1st row", {{a, 1}, {b, 1}}, Sense::LessEqual, 1.0);
  std::ostringstream out;
  export_model(m, ModelFormat::Lp, out);
  const std::string s = out.str();
  EXPECT_EQ(s.find('['), std::string::npos);
  EXPECT_EQ(s.find("1st row"), std::string::npos);
}

class ExportRoundTrip : public ::testing::TestWithParam<ModelFormat> {};

TEST_P(ExportRoundTrip, ExternalSolverReproducesObjective) {
  const ModelSpec m = knapsack();
  const auto path = std::filesystem::temp_directory_path() /
                    (GetParam() == ModelFormat::Lp ? "hoods_roundtrip.lp" : "hoods_roundtrip.mps");
  export_model(m, GetParam(), path.string());
  EXPECT_NEAR(solve_file_with_highs(path.string()), solve(m).objective, 1e-9);
  std::filesystem::remove(path);
}

TEST_P(ExportRoundTrip, FreeAndFixedBoundsSurvive) {
  ModelSpec m;
  const VarId f = m.add_variable("free", VarKind::Continuous, -kInf, kInf);
  const VarId g = m.add_variable("fixed", VarKind::Continuous, 2.0, 2.0);
  const VarId h = m.add_variable("neg", VarKind::Continuous, -3.0, -1.0);
  m.add_constraint("lo", {{f, 1}, {g, 1}}, Sense::GreaterEqual, -4.0);
  m.add_constraint("eq", {{f, 1}, {h, -1}}, Sense::Equal, -1.0);
  m.add_objective(f, 1.0);
  m.add_objective(h, 0.5);
  m.add_objective_constant(-2.5);
  const auto path = std::filesystem::temp_directory_path() /
                    (GetParam() == ModelFormat::Lp ? "hoods_bounds.lp" : "hoods_bounds.mps");
  export_model(m, GetParam(), path.string());
  EXPECT_NEAR(solve_file_with_highs(path.string()), solve(m).objective, 1e-9);
  std::filesystem::remove(path);
}

INSTANTIATE_TEST_SUITE_P(Formats, ExportRoundTrip, ::testing::Values(ModelFormat::Lp, ModelFormat::Mps),
                         [](const ::testing::TestParamInfo<ModelFormat>& info) {
                           return std::string(info.param == ModelFormat::Lp ? "Lp" : "Mps");
                         });
