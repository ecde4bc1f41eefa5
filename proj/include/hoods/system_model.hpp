#pragma once

// Assembly of the three model variants: the coordinated HOODS model, the
// grid-unaware building model and the grid model over fixed injections.

#include <map>
#include <vector>

#include "hoods/building_model.hpp"
#include "hoods/costs.hpp"
#include "hoods/domain.hpp"
#include "hoods/grid_model.hpp"
#include "hoods/milp.hpp"
#include "hoods/timeseries.hpp"

namespace hoods {

/// Everything a model needs: the grid, one building per load bus (at most)
/// and the catalog with hourly series over the full horizon.
struct SystemData {
  Network network;
  std::vector<Building> buildings;
  TechnoCatalog catalog;

  std::size_t horizon() const { return catalog.horizon(); }
  const Building* building_at(const BusId& bus) const;
};

/// Cross-checks buildings, catalog series and network. Empty when consistent.
std::vector<std::string> validate_system(const SystemData& data);

struct HoodsModel {
  ModelSpec spec;
  std::vector<BuildingVars> buildings;  // in network topological order
  GridVars grid;
};

HoodsModel build_hoods(const SystemData& data, const TimeGrid& grid, bool flexible = true);

struct BuildingModel {
  ModelSpec spec;
  BuildingVars vars;
};

BuildingModel build_hoods_bui(const SystemData& data, const Building& building,
                              const TimeGrid& grid, bool flexible);

struct GridModel {
  ModelSpec spec;
  GridVars grid;
};

GridModel build_hoods_grid(const SystemData& data, const TimeGrid& grid,
                           const std::map<BusId, Injection>& injections, bool curtailment);

/// Names of the capacity decisions carried from a sizing stage to a dispatch
/// stage. The battery energy capacity is left out since it follows from the
/// power capacity through the fixed energy-to-power ratio.
std::vector<VarId> sizing_decisions(const BuildingVars& v);
std::vector<VarId> reinforcement_decisions(const GridVars& g);

}  // namespace hoods
