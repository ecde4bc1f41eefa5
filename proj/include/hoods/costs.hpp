#pragma once

// Annualised cost terms. add_* functions write objective coefficients; the
// *_costs functions recompute the same quantities from a solution so the two
// can be reconciled.

#include <iosfwd>
#include <string>
#include <vector>

#include "hoods/building_model.hpp"
#include "hoods/domain.hpp"
#include "hoods/grid_model.hpp"
#include "hoods/milp.hpp"
#include "hoods/timeseries.hpp"

namespace hoods {

/// i(1+i)^N / ((1+i)^N - 1). Throws std::invalid_argument for wacc <= 0 or N < 1.
double annuity_factor(double wacc, double lifetime_years);
double annuity_factor(const Economics& e);

/// Annualised cost of upgrading a line section from its existing setting to m.
double line_upgrade_cost(const Network& net, const LineSection& line, CableSetting m,
                         const GridEconomics& econ);

/// Annualised cost of an OLTC option including O&M.
double oltc_cost(const TransformerOption& t, const GridEconomics& econ);

void add_component_cost_terms(ModelSpec& m, const BuildingVars& v, const TechnoCatalog& cat);

/// Import and feed-in of a standalone building, weighted by the step weights.
void add_building_energy_terms(ModelSpec& m, const BuildingVars& v, const TechnoCatalog& cat,
                               const TimeGrid& grid);

struct GridCostOptions {
  bool root_energy = true;   // book import/feed-in at the transformer
};

void add_grid_cost_terms(ModelSpec& m, const GridVars& v, const Network& net,
                         const TechnoCatalog& cat, const TimeGrid& grid,
                         const GridCostOptions& opt = {});

struct BuildingCosts {
  std::string bus;
  double pv = 0, hp = 0, battery = 0, ts = 0;
  double import = 0, feed_in = 0;  // feed_in is revenue, <= 0
  double total() const { return pv + hp + battery + ts + import + feed_in; }
};

struct GridCosts {
  double cables = 0, oltc = 0, q_comp = 0, curtailment = 0;
  double import = 0, feed_in = 0;  // root exchange, coordinated planning only
  double curtailed_kwh = 0;        // weighted curtailed energy
  double total() const { return cables + oltc + q_comp + curtailment + import + feed_in; }
};

BuildingCosts building_costs(const BuildingVars& v, const std::vector<double>& x,
                             const TechnoCatalog& cat, const TimeGrid& grid);
GridCosts grid_costs(const GridVars& v, const std::vector<double>& x, const Network& net,
                     const TechnoCatalog& cat, const TimeGrid& grid,
                     const GridCostOptions& opt = {});

/// System-level rows of the cost table. Import and feed-in are the sums of
/// building and root entries; grid rows hold reinforcement, compensation and
/// curtailment compensation.
struct CostBreakdown {
  double pv = 0, hp = 0, battery = 0, ts = 0, import = 0, feed_in = 0;
  double cables = 0, oltc = 0, q_comp = 0, curtailment = 0;
  double curtailed_kwh = 0;
  std::vector<BuildingCosts> per_building;

  double building_total() const { return pv + hp + battery + ts + import + feed_in; }
  double grid_total() const { return cables + oltc + q_comp + curtailment; }
  double total() const { return building_total() + grid_total(); }
  double grid_share() const;
  /// Feed-in revenue after the curtailed share is netted out (informational).
  double feed_in_net_of_curtailment() const { return feed_in + curtailment; }
};

CostBreakdown combine(const std::vector<BuildingCosts>& buildings, const GridCosts& grid);

/// Rows of the cost table as (label, value) for one breakdown.
std::vector<std::pair<std::string, double>> cost_rows(const CostBreakdown& c);

void write_cost_csv(const CostBreakdown& c, std::ostream& out);

}  // namespace hoods
