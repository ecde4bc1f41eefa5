#pragma once

// Plot-ready result files of one planning run.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <vector>

#include "hoods/paradigms.hpp"

namespace hoods {

/// Writes cost_breakdown.csv, reinforcement.json, dispatch.csv, voltages.csv
/// and transformer_peaks.csv into `dir` (created if needed).
void export_results(const PlanResult& r, const SystemData& data, const std::filesystem::path& dir);

void write_reinforcement_json(const PlanResult& r, const Network& net, std::ostream& out);
/// Hourly sums over all buildings of each balance term.
void write_dispatch_csv(const PlanResult& r, const SystemData& data, std::ostream& out);
/// One row per bus: branch number and the 0th..100th percentile of |V| in p.u.
void write_voltages_csv(const PlanResult& r, const Network& net, std::ostream& out);
/// Daily maxima of transformer import and feed-in.
void write_transformer_peaks_csv(const PlanResult& r, std::ostream& out);

/// 11 values: the 0, 10, ..., 100 % quantiles (linear interpolation).
std::vector<double> deciles(std::vector<double> values);

/// Feeder number (1-based, by order of the lines leaving the MBB) per bus; 0 for the MBB.
std::map<BusId, int> branch_of(const Network& net);

}  // namespace hoods
