#include "hoods/errors.hpp"

#include <sstream>

namespace hoods {

namespace {

std::string join_problems(const std::vector<std::string>& problems) {
  std::ostringstream os;
  os << problems.size() << " validation error(s)";
  for (const auto& p : problems) os << "\n  " << p;
  return os.str();
}

std::string infeasible_message(const std::string& stage, const std::vector<std::string>& v) {
  std::ostringstream os;
  os << stage << " is infeasible";
  if (!v.empty()) {
    os << "; relaxed constraints:";
    std::size_t shown = 0;
    for (const auto& l : v) {
      if (++shown > 10) {
        os << " ...";
        break;
      }
      os << ' ' << l;
    }
  }
  return os.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> problems)
    : std::runtime_error(join_problems(problems)), problems_(std::move(problems)) {}

InfeasibleError::InfeasibleError(const std::string& stage, std::vector<std::string> violated,
                                 std::vector<int> worst_timesteps)
    : std::runtime_error(infeasible_message(stage, violated)),
      stage_(stage),
      violated_(std::move(violated)),
      worst_timesteps_(std::move(worst_timesteps)) {}

}  // namespace hoods
