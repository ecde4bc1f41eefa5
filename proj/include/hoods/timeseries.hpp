#pragma once

// Time structure of a model: a list of periods, each a run of consecutive
// original hours sharing one weight. Storage cyclicity is enforced per period.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "hoods/domain.hpp"

namespace hoods {

class TimeGrid {
 public:
  explicit TimeGrid(std::size_t horizon_hours = 0) : horizon_(horizon_hours) {}

  /// Every hour of a horizon of `hours` as one period with weight 1.
  static TimeGrid full(std::size_t hours);

  /// Selected periods of length `period_len`, each weighted so the grid
  /// represents the whole horizon of `horizon_hours`.
  static TimeGrid subset(std::size_t horizon_hours, std::size_t period_len,
                         const std::vector<std::size_t>& period_indices);

  /// Appends a period of consecutive hours starting at `first_hour`.
  void add_period(std::size_t first_hour, std::size_t length, double weight);

  std::size_t steps() const { return hour_.size(); }
  std::size_t num_periods() const { return period_start_.size(); }
  std::size_t horizon() const { return horizon_; }

  /// Original hour index of step s (used to look up every input series).
  std::size_t hour(std::size_t s) const { return hour_[s]; }
  double weight(std::size_t s) const { return weight_[s]; }
  int hour_of_day(std::size_t s) const { return static_cast<int>(hour_[s] % 24); }

  std::size_t period_begin(std::size_t p) const { return period_start_[p]; }
  std::size_t period_end(std::size_t p) const {
    return p + 1 < period_start_.size() ? period_start_[p + 1] : hour_.size();
  }

  /// Sum of weights, i.e. the represented duration in hours (dt = 1 h).
  double represented_hours() const;

  /// Input series restricted to the grid's steps.
  Series pick(const Series& hourly) const;

  bool is_full() const;

 private:
  std::vector<std::size_t> hour_;
  std::vector<double> weight_;
  std::vector<std::size_t> period_start_;
  std::size_t horizon_ = 0;
};

struct ReducedTimeGrid {
  TimeGrid grid;                          // typical periods in original order
  std::size_t period_len = 0;
  std::size_t original_periods = 0;       // floor(H / period_len)
  std::vector<std::size_t> representatives;  // original period index of each typical period
  std::vector<std::size_t> cardinality;      // original periods represented by each
  std::vector<std::size_t> assignment;       // original period -> typical period
  double scale = 1.0;                         // H / (original_periods * period_len)
};

/// Hierarchical (Ward) clustering of whole periods. `peak_series` lists indices
/// into `bundle` whose peak period must be kept as its own representative.
ReducedTimeGrid aggregate(const std::vector<Series>& bundle, std::size_t n_periods,
                          std::size_t period_len,
                          const std::vector<std::size_t>& peak_series = {});

struct FidelityReport {
  double peak_error = 0.0;
  double mean_error = 0.0;
  std::vector<double> original_curve;  // sorted descending
  std::vector<double> reduced_curve;   // cardinality-weighted, same length
};

/// Duration-curve comparison of `original` and its reduced representation,
/// over the whole periods covered by the reduction.
FidelityReport fidelity_report(const Series& original, const ReducedTimeGrid& reduced);

/// CSV with columns rank, original_value, reduced_value.
void write_fidelity_csv(const FidelityReport& report, std::ostream& out);

}  // namespace hoods
