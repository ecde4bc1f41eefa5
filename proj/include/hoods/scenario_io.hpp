#pragma once

// Scenario files on disk.
//
//   scenario.json    refs to the three files below, paradigm, aggregation,
//                    solver and output settings
//   network.json     buses, cable types, line sections, transformer menu, bands
//   buildings.json   one object per building, series given as CSV file names
//   catalog.json     techno-economic parameters; series as CSV names or constants
//   series/*.csv     header "timestamp,value", one row per hour
//
// Units are fixed: kW, kVAr, kWh, m, m^2 and currency per year.

#include <filesystem>
#include <string>

#include "hoods/milp.hpp"
#include "hoods/paradigms.hpp"
#include "hoods/system_model.hpp"

namespace hoods {

struct Scenario {
  SystemData data;
  ParadigmId paradigm = ParadigmId::CoorPlusFlexPlus;
  AggregationConfig aggregation;
  SolveParams solver;
  std::string backend = "highs";
  std::string output_dir = "results";
  std::string start = "2019-01-01T00:00";  // timestamp of hour 0
};

/// Reads and validates a scenario. Problems are collected across all files and
/// thrown together as a ValidationError, each prefixed with file and line (CSV,
/// JSON syntax) or file and JSON pointer (JSON content).
Scenario load_scenario(const std::filesystem::path& scenario_json);

/// Writes scenario.json, network.json, buildings.json, catalog.json and
/// series/*.csv into `dir`. Loading the result yields the same scenario.
void save_scenario(const Scenario& s, const std::filesystem::path& dir);

/// ISO hour stamps "YYYY-MM-DDTHH:MM" counted from `start`.
std::string hour_stamp(const std::string& start, std::size_t hour);

}  // namespace hoods
