#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "hoods/timeseries.hpp"

using namespace hoods;

namespace {

// Medoid of a set of one-dimensional period vectors (each value repeated over
// the period, so squared distances scale uniformly and can be taken on values).
std::size_t medoid(const std::vector<double>& v, const std::vector<std::size_t>& members) {
  std::size_t best = members.front();
  double best_sum = 1e300;
  for (auto i : members) {
    double sum = 0;
    for (auto j : members) sum += (v[i] - v[j]) * (v[i] - v[j]);
    if (sum < best_sum - 1e-12) {
      best_sum = sum;
      best = i;
    }
  }
  return best;
}

Series periods_to_series(const std::vector<double>& levels, std::size_t L) {
  Series s;
  for (double x : levels) s.insert(s.end(), L, x);
  return s;
}

std::vector<Series> random_bundle(std::uint64_t seed, std::size_t H) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<Series> b(3, Series(H));
  for (std::size_t h = 0; h < H; ++h) {
    const double season = std::cos(6.283185307 * static_cast<double>(h) / static_cast<double>(H));
    b[0][h] = 5 + season + 0.5 * n(g);
    b[1][h] = std::max(0.0, 3 * season + n(g));
    b[2][h] = 1 + 0.1 * n(g);
  }
  return b;
}

}  // namespace

TEST(TimeGrid, FullGridIsOnePeriodOfUnitWeights) {
  const TimeGrid g = TimeGrid::full(48);
  EXPECT_EQ(g.steps(), 48u);
  EXPECT_EQ(g.num_periods(), 1u);
  EXPECT_TRUE(g.is_full());
  EXPECT_DOUBLE_EQ(g.represented_hours(), 48.0);
  EXPECT_EQ(g.hour_of_day(25), 1);
}

TEST(TimeGrid, SubsetRepresentsTheWholeHorizon) {
  const TimeGrid g = TimeGrid::subset(8760, 168, {2, 28});
  EXPECT_EQ(g.steps(), 336u);
  EXPECT_EQ(g.num_periods(), 2u);
  EXPECT_EQ(g.hour(0), 2u * 168u);
  EXPECT_EQ(g.hour(168), 28u * 168u);
  EXPECT_DOUBLE_EQ(g.weight(0), 8760.0 / 336.0);
  EXPECT_NEAR(g.represented_hours(), 8760.0, 1e-9);
  EXPECT_FALSE(g.is_full());
}

TEST(TimeGrid, PickFollowsOriginalHours) {
  const TimeGrid g = TimeGrid::subset(10, 2, {3});
  Series s(10);
  std::iota(s.begin(), s.end(), 0.0);
  EXPECT_EQ(g.pick(s), (Series{6.0, 7.0}));
}

TEST(TimeGrid, RejectsPeriodsOutsideHorizon) {
  TimeGrid g(10);
  EXPECT_THROW(g.add_period(8, 3, 1.0), std::invalid_argument);
  EXPECT_THROW(g.add_period(0, 2, 0.0), std::invalid_argument);
}

TEST(Aggregation, SeparatedGroupsGiveTheirMiddleMembers) {
  const std::size_t L = 2;
  const std::vector<double> levels{0, 1, 2, 20, 21, 22};
  const auto r = aggregate({periods_to_series(levels, L)}, 2, L);
  ASSERT_EQ(r.representatives.size(), 2u);
  EXPECT_EQ(r.representatives[0], medoid(levels, {0, 1, 2}));
  EXPECT_EQ(r.representatives[1], medoid(levels, {3, 4, 5}));
  EXPECT_EQ(r.cardinality, (std::vector<std::size_t>{3, 3}));
  EXPECT_EQ(r.assignment, (std::vector<std::size_t>{0, 0, 0, 1, 1, 1}));
  EXPECT_DOUBLE_EQ(r.grid.weight(0), 3.0);
}

TEST(Aggregation, PeakPeriodIsKeptAsSingleton) {
  const std::size_t L = 2;
  const std::vector<double> levels{0, 1, 2, 20, 21, 22};
  const auto r = aggregate({periods_to_series(levels, L)}, 2, L, {0});
  // Period 5 holds the peak but is not a medoid of {3,4,5}: it becomes its own
  // cluster and the other five periods form the second one.
  ASSERT_EQ(r.representatives.size(), 2u);
  std::set<std::size_t> reps(r.representatives.begin(), r.representatives.end());
  EXPECT_TRUE(reps.count(5));
  EXPECT_TRUE(reps.count(medoid(levels, {0, 1, 2, 3, 4})));
  const auto it = std::find(r.representatives.begin(), r.representatives.end(), std::size_t{5});
  EXPECT_EQ(r.cardinality[static_cast<std::size_t>(it - r.representatives.begin())], 1u);
}

TEST(Aggregation, TruncatesToWholePeriodsAndRescales) {
  Series s(10);
  std::iota(s.begin(), s.end(), 0.0);
  const auto r = aggregate({s}, 1, 3);
  EXPECT_EQ(r.original_periods, 3u);
  EXPECT_DOUBLE_EQ(r.scale, 10.0 / 9.0);
  EXPECT_NEAR(r.grid.represented_hours(), 10.0, 1e-12);
}

TEST(Aggregation, RejectsBadArguments) {
  const Series s(24, 1.0);
  EXPECT_THROW(aggregate({s}, 0, 4), std::invalid_argument);
  EXPECT_THROW(aggregate({s}, 7, 4), std::invalid_argument);
  EXPECT_THROW(aggregate({s}, 2, 0), std::invalid_argument);
  EXPECT_THROW(aggregate({s, Series(23, 1.0)}, 2, 4), std::invalid_argument);
}

TEST(Aggregation, AsManyClustersAsPeriodsIsLossless) {
  const auto b = random_bundle(3, 24 * 10);
  const auto r = aggregate(b, 10, 24, {0, 1});
  for (std::size_t k = 0; k < 10; ++k) EXPECT_EQ(r.representatives[k], k);
  for (const auto& s : b) {
    const auto f = fidelity_report(s, r);
    EXPECT_DOUBLE_EQ(f.peak_error, 0.0);
    EXPECT_NEAR(f.mean_error, 0.0, 1e-12);
  }
}

class AggregationProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(AggregationProperties, StructuralInvariants) {
  const std::size_t L = 24, P = 30, H = L * P + 5;
  const auto b = random_bundle(GetParam(), H);
  for (std::size_t n : {2u, 4u, 7u}) {
    const auto r = aggregate(b, n, L, {0, 1});
    ASSERT_EQ(r.representatives.size(), n);
    EXPECT_TRUE(std::is_sorted(r.representatives.begin(), r.representatives.end()));
    EXPECT_EQ(std::accumulate(r.cardinality.begin(), r.cardinality.end(), std::size_t{0}), P);
    // Every representative stands for itself.
    for (std::size_t k = 0; k < n; ++k) EXPECT_EQ(r.assignment[r.representatives[k]], k);
    // Cardinality agrees with the assignment.
    std::vector<std::size_t> count(n, 0);
    for (auto a : r.assignment) ++count.at(a);
    EXPECT_EQ(count, r.cardinality);
    // Weights add up to the full horizon.
    EXPECT_NEAR(r.grid.represented_hours(), static_cast<double>(H), 1e-9);
    EXPECT_EQ(r.grid.steps(), n * L);
    // Peaks of the protected series survive exactly.
    for (std::size_t s : {0u, 1u}) EXPECT_DOUBLE_EQ(fidelity_report(b[s], r).peak_error, 0.0);
  }
}

TEST_P(AggregationProperties, Deterministic) {
  const auto b = random_bundle(GetParam(), 24 * 20);
  const auto r1 = aggregate(b, 5, 24, {0});
  const auto r2 = aggregate(b, 5, 24, {0});
  EXPECT_EQ(r1.representatives, r2.representatives);
  EXPECT_EQ(r1.assignment, r2.assignment);
}

INSTANTIATE_TEST_SUITE_P(Seeds, AggregationProperties, ::testing::Values(1u, 2u, 3u, 4u, 5u));

TEST(Fidelity, DurationCurvesAreSortedAndEqualLength) {
  const auto b = random_bundle(11, 24 * 12);
  const auto r = aggregate(b, 3, 24, {0});
  const auto f = fidelity_report(b[0], r);
  EXPECT_EQ(f.original_curve.size(), f.reduced_curve.size());
  EXPECT_TRUE(std::is_sorted(f.original_curve.rbegin(), f.original_curve.rend()));
  EXPECT_TRUE(std::is_sorted(f.reduced_curve.rbegin(), f.reduced_curve.rend()));
  std::ostringstream out;
  write_fidelity_csv(f, out);
  EXPECT_EQ(out.str().rfind("rank,original_value,reduced_value\n", 0), 0u);
}
