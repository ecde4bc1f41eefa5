#include "hoods/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>

namespace hoods {

TimeGrid TimeGrid::full(std::size_t hours) {
  TimeGrid g(hours);
  if (hours > 0) g.add_period(0, hours, 1.0);
  return g;
}

TimeGrid TimeGrid::subset(std::size_t horizon_hours, std::size_t period_len,
                          const std::vector<std::size_t>& period_indices) {
  if (period_len == 0 || period_indices.empty())
    throw std::invalid_argument("subset needs a positive period length and at least one period");
  TimeGrid g(horizon_hours);
  const double w = static_cast<double>(horizon_hours) /
                   static_cast<double>(period_len * period_indices.size());
  for (auto p : period_indices) g.add_period(p * period_len, period_len, w);
  return g;
}

void TimeGrid::add_period(std::size_t first_hour, std::size_t length, double weight) {
  if (length == 0) throw std::invalid_argument("empty period");
  if (horizon_ && first_hour + length > horizon_)
    throw std::invalid_argument("period exceeds the horizon");
  if (!(weight > 0)) throw std::invalid_argument("period weight must be positive");
  period_start_.push_back(hour_.size());
  for (std::size_t h = 0; h < length; ++h) {
    hour_.push_back(first_hour + h);
    weight_.push_back(weight);
  }
}

double TimeGrid::represented_hours() const {
  return std::accumulate(weight_.begin(), weight_.end(), 0.0);
}

Series TimeGrid::pick(const Series& hourly) const {
  Series out(hour_.size());
  for (std::size_t s = 0; s < hour_.size(); ++s) out[s] = hourly.at(hour_[s]);
  return out;
}

bool TimeGrid::is_full() const {
  if (hour_.size() != horizon_) return false;
  for (std::size_t s = 0; s < hour_.size(); ++s)
    if (hour_[s] != s || weight_[s] != 1.0) return false;
  return true;
}

namespace {

using Matrix = std::vector<std::vector<double>>;

// Ward agglomeration via the Lance-Williams update on squared distances.
// Returns a cluster label per item, labels in [0, k).
std::vector<std::size_t> ward(const Matrix& features, const std::vector<std::size_t>& items,
                              std::size_t k) {
  const std::size_t n = items.size();
  std::vector<std::size_t> label(n);
  if (k >= n) {
    std::iota(label.begin(), label.end(), 0);
    return label;
  }
  Matrix d(n, std::vector<double>(n, 0.0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      double s = 0.0;
      const auto& x = features[items[a]];
      const auto& y = features[items[b]];
      for (std::size_t f = 0; f < x.size(); ++f) s += (x[f] - y[f]) * (x[f] - y[f]);
      d[a][b] = d[b][a] = s;
    }
  std::vector<std::size_t> size(n, 1);
  std::vector<bool> alive(n, true);
  std::vector<std::size_t> root(n);
  std::iota(root.begin(), root.end(), 0);

  for (std::size_t clusters = n; clusters > k; --clusters) {
    std::size_t bi = 0, bj = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < n; ++a) {
      if (!alive[a]) continue;
      for (std::size_t b = a + 1; b < n; ++b) {
        if (alive[b] && d[a][b] < best) {
          best = d[a][b];
          bi = a;
          bj = b;
        }
      }
    }
    const double ni = static_cast<double>(size[bi]), nj = static_cast<double>(size[bj]);
    for (std::size_t c = 0; c < n; ++c) {
      if (!alive[c] || c == bi || c == bj) continue;
      const double nc = static_cast<double>(size[c]);
      const double v = ((ni + nc) * d[bi][c] + (nj + nc) * d[bj][c] - nc * d[bi][bj]) / (ni + nj + nc);
      d[bi][c] = d[c][bi] = v;
    }
    size[bi] += size[bj];
    alive[bj] = false;
    for (auto& r : root)
      if (r == bj) r = bi;
  }

  // Relabel by first occurrence so labels are deterministic.
  std::vector<std::size_t> map(n, n);
  std::size_t next = 0;
  for (std::size_t a = 0; a < n; ++a) {
    if (map[root[a]] == n) map[root[a]] = next++;
    label[a] = map[root[a]];
  }
  return label;
}

std::size_t medoid(const Matrix& features, const std::vector<std::size_t>& members) {
  std::size_t best = members.front();
  double best_cost = std::numeric_limits<double>::infinity();
  for (auto a : members) {
    double cost = 0.0;
    for (auto b : members) {
      const auto& x = features[a];
      const auto& y = features[b];
      for (std::size_t f = 0; f < x.size(); ++f) cost += (x[f] - y[f]) * (x[f] - y[f]);
    }
    if (cost < best_cost) {
      best_cost = cost;
      best = a;
    }
  }
  return best;
}

struct Clustering {
  std::vector<std::vector<std::size_t>> clusters;  // original period indices
  std::vector<std::size_t> reps;
};

Clustering cluster(const Matrix& features, const std::vector<std::size_t>& items, std::size_t k) {
  Clustering c;
  if (items.empty() || k == 0) return c;
  const auto label = ward(features, items, k);
  const std::size_t nk = *std::max_element(label.begin(), label.end()) + 1;
  c.clusters.resize(nk);
  for (std::size_t a = 0; a < items.size(); ++a) c.clusters[label[a]].push_back(items[a]);
  for (const auto& members : c.clusters) c.reps.push_back(medoid(features, members));
  return c;
}

}  // namespace

ReducedTimeGrid aggregate(const std::vector<Series>& bundle, std::size_t n_periods,
                          std::size_t period_len, const std::vector<std::size_t>& peak_series) {
  if (bundle.empty()) throw std::invalid_argument("aggregate: empty series bundle");
  if (n_periods == 0) throw std::invalid_argument("aggregate: n_periods must be positive");
  if (period_len == 0) throw std::invalid_argument("aggregate: period_len must be positive");
  const std::size_t H = bundle.front().size();
  for (const auto& s : bundle)
    if (s.size() != H) throw std::invalid_argument("aggregate: series lengths differ");
  if (n_periods * period_len > H)
    throw std::invalid_argument("aggregate: n_periods * period_len exceeds the horizon");

  const std::size_t P = H / period_len;
  const std::size_t used = P * period_len;

  // Feature vector per period: all series, min-max normalised per series.
  Matrix features(P);
  for (const auto& s : bundle) {
    const auto [lo, hi] = std::minmax_element(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(used));
    const double span = *hi - *lo;
    for (std::size_t p = 0; p < P; ++p)
      for (std::size_t h = 0; h < period_len; ++h) {
        const double v = s[p * period_len + h];
        features[p].push_back(span > 0 ? (v - *lo) / span : 0.0);
      }
  }

  std::set<std::size_t> peaks;
  for (auto idx : peak_series) {
    const auto& s = bundle.at(idx);
    const auto it = std::max_element(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(used));
    peaks.insert(static_cast<std::size_t>(it - s.begin()) / period_len);
  }

  std::vector<std::size_t> all(P);
  std::iota(all.begin(), all.end(), 0);
  Clustering c = cluster(features, all, n_periods);

  const bool peaks_covered = std::all_of(peaks.begin(), peaks.end(), [&](std::size_t p) {
    return std::find(c.reps.begin(), c.reps.end(), p) != c.reps.end();
  });
  if (!peaks_covered) {
    // Peak periods become singleton clusters; the rest is re-clustered.
    while (peaks.size() > n_periods) peaks.erase(std::prev(peaks.end()));
    std::vector<std::size_t> rest;
    for (auto p : all)
      if (!peaks.count(p)) rest.push_back(p);
    Clustering r = cluster(features, rest, n_periods - peaks.size());
    if (r.clusters.empty() && !rest.empty()) {
      // No cluster left for the remainder: attach each period to its nearest peak.
      c.clusters.clear();
      c.reps.assign(peaks.begin(), peaks.end());
      c.clusters.resize(c.reps.size());
      for (std::size_t i = 0; i < c.reps.size(); ++i) c.clusters[i].push_back(c.reps[i]);
      for (auto p : rest) {
        std::size_t best = 0;
        double bd = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < c.reps.size(); ++i) {
          double dd = 0.0;
          for (std::size_t f = 0; f < features[p].size(); ++f) {
            const double diff = features[p][f] - features[c.reps[i]][f];
            dd += diff * diff;
          }
          if (dd < bd) {
            bd = dd;
            best = i;
          }
        }
        c.clusters[best].push_back(p);
      }
    } else {
      for (auto p : peaks) {
        r.clusters.push_back({p});
        r.reps.push_back(p);
      }
      c = std::move(r);
    }
  }

  // Typical periods in the order of their representative in the year.
  std::vector<std::size_t> order(c.reps.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return c.reps[a] < c.reps[b]; });

  ReducedTimeGrid out;
  out.period_len = period_len;
  out.original_periods = P;
  out.scale = static_cast<double>(H) / static_cast<double>(used);
  out.grid = TimeGrid(H);
  out.assignment.assign(P, 0);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& members = c.clusters[order[k]];
    out.representatives.push_back(c.reps[order[k]]);
    out.cardinality.push_back(members.size());
    for (auto p : members) out.assignment[p] = k;
    out.grid.add_period(c.reps[order[k]] * period_len, period_len,
                        static_cast<double>(members.size()) * out.scale);
  }
  return out;
}

FidelityReport fidelity_report(const Series& original, const ReducedTimeGrid& reduced) {
  const std::size_t L = reduced.period_len;
  const std::size_t used = reduced.original_periods * L;
  if (original.size() < used) throw std::invalid_argument("fidelity_report: series too short");

  FidelityReport rep;
  rep.original_curve.assign(original.begin(), original.begin() + static_cast<std::ptrdiff_t>(used));
  std::sort(rep.original_curve.begin(), rep.original_curve.end(), std::greater<>());

  // Reduced duration curve: each typical value repeated by its cardinality.
  rep.reduced_curve.reserve(used);
  for (std::size_t k = 0; k < reduced.representatives.size(); ++k) {
    const std::size_t base = reduced.representatives[k] * L;
    for (std::size_t c = 0; c < reduced.cardinality[k]; ++c)
      for (std::size_t h = 0; h < L; ++h) rep.reduced_curve.push_back(original[base + h]);
  }
  std::sort(rep.reduced_curve.begin(), rep.reduced_curve.end(), std::greater<>());

  const double max_o = rep.original_curve.empty() ? 0.0 : rep.original_curve.front();
  const double max_r = rep.reduced_curve.empty() ? 0.0 : rep.reduced_curve.front();
  const double mean_o = std::accumulate(rep.original_curve.begin(), rep.original_curve.end(), 0.0) /
                        static_cast<double>(std::max<std::size_t>(1, used));
  const double mean_r = std::accumulate(rep.reduced_curve.begin(), rep.reduced_curve.end(), 0.0) /
                        static_cast<double>(std::max<std::size_t>(1, rep.reduced_curve.size()));
  rep.peak_error = max_o != 0.0 ? std::abs(max_r - max_o) / std::abs(max_o) : std::abs(max_r - max_o);
  rep.mean_error = mean_o != 0.0 ? std::abs(mean_r - mean_o) / std::abs(mean_o) : std::abs(mean_r - mean_o);
  return rep;
}

void write_fidelity_csv(const FidelityReport& report, std::ostream& out) {
  out << "rank,original_value,reduced_value\n";
  for (std::size_t r = 0; r < report.original_curve.size(); ++r) {
    out << r + 1 << ',' << report.original_curve[r] << ','
        << (r < report.reduced_curve.size() ? report.reduced_curve[r] : 0.0) << '\n';
  }
}

}  // namespace hoods
