#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hoods {

/// Scenario data failed schema or cross-reference checks.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// A model stage turned out infeasible. Carries the labels of the constraints
/// that had to be relaxed to restore feasibility, worst first.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& stage, std::vector<std::string> violated,
                  std::vector<int> worst_timesteps = {});
  const std::string& stage() const noexcept { return stage_; }
  const std::vector<std::string>& violated() const noexcept { return violated_; }
  const std::vector<int>& worst_timesteps() const noexcept { return worst_timesteps_; }

 private:
  std::string stage_;
  std::vector<std::string> violated_;
  std::vector<int> worst_timesteps_;
};

/// The solver backend is missing or failed for reasons unrelated to the model.
class EnvironmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hoods
