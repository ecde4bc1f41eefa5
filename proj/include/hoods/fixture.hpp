#pragma once

// Deterministic synthetic scenarios in the style of a Kerber rural LV grid:
// feeders leave the main busbar, junctions alternate with load buses, and
// load buses hang off the feeder through short service lines.

#include <cstdint>

#include "hoods/scenario_io.hpp"

namespace hoods {

struct FixtureOptions {
  std::uint64_t seed = 1;
  std::size_t n_branches = 1;
  std::size_t buses_per_branch = 5;
  std::size_t horizon_hours = 8760;
  /// Large roofs behind weak service lines, so PV feed-in exceeds what the
  /// existing grid can take.
  bool forced_pv_surplus = false;
};

// Target annual magnitudes per dwelling.
inline constexpr double kFixtureElecKwhPerDwelling = 2300.0;
inline constexpr double kFixtureHeatKwhPerDwelling = 11600.0;
inline constexpr double kFixturePvFullLoadHours = 1147.0;

/// One MBB plus n_branches * buses_per_branch buses. Identical options give
/// identical scenarios on every platform.
Scenario generate_fixture(const FixtureOptions& opt);

}  // namespace hoods
