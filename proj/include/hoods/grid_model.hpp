#pragma once

// Constraint emitters for the LV grid: transformer choice, cable settings,
// LinDistFlow voltages, octagonal line limits and the bus balances.
// Squared voltages are carried in p.u.^2 (u / V_base^2).

#include <array>
#include <map>
#include <string>
#include <vector>

#include "hoods/building_model.hpp"
#include "hoods/domain.hpp"
#include "hoods/milp.hpp"
#include "hoods/timeseries.hpp"

namespace hoods {

/// One half-plane a*p + b*q <= c*kappa of the inscribed regular octagon.
struct OctagonRow {
  double a, b, c;
};

/// The eight half-planes of the apparent-power limit, in table order.
const std::array<OctagonRow, 8>& octagon_coefficients();

/// True when (p, q) satisfies all eight half-planes for capacity kappa.
bool inside_octagon(double p, double q, double kappa, double tol = 0.0);

struct LineVars {
  std::size_t line = 0;                  // index into Network::lines
  std::vector<CableSetting> settings;    // settings at or above the existing one
  std::vector<VarId> alpha;              // per setting
  std::vector<std::vector<VarId>> p_m;   // [setting][step]
  std::vector<std::vector<VarId>> q_m;
  std::vector<VarId> p, q;               // aggregate flow per step
};

struct GridVars {
  VarId alpha_frt;
  std::vector<VarId> alpha_oltc;
  std::vector<const TransformerOption*> oltc;
  std::vector<LineVars> lines;
  std::map<BusId, std::vector<VarId>> u;   // p.u.^2 per step
  std::vector<VarId> p_imp, p_fi;          // root exchange
  std::vector<VarId> q_comp_pos, q_comp_neg;
  std::map<BusId, std::vector<VarId>> p_curt;  // fixed-injection mode only
};

struct GridContext {
  const Network& network;
  const TimeGrid& grid;
};

void add_transformer_choice(ModelSpec& m, const GridContext& ctx, GridVars& v);
void add_voltage_bands(ModelSpec& m, const GridContext& ctx, GridVars& v);
LineVars add_cable_settings(ModelSpec& m, const GridContext& ctx, std::size_t line);
void add_lindistflow(ModelSpec& m, const GridContext& ctx, const LineVars& lv, GridVars& v);
void add_line_limits(ModelSpec& m, const GridContext& ctx, const LineVars& lv);
void add_root_balance(ModelSpec& m, const GridContext& ctx, GridVars& v);

/// Transformer, voltage, line and root emitters in emission order. Bus balances
/// for non-root buses are left to the caller.
GridVars add_grid(ModelSpec& m, const GridContext& ctx);

/// Incoming minus outgoing aggregate flows at `bus`.
NodeFlows node_flows(const GridContext& ctx, const GridVars& v, const BusId& bus);

/// Balance for a bus without a building: incoming = outgoing.
void add_passive_balance(ModelSpec& m, const GridContext& ctx, const GridVars& v, const BusId& bus);

/// Pre-optimised building exchange profiles, indexed by grid step.
struct Injection {
  Series p_imp, p_fi, q_imp;
};

/// Nodal balance against fixed injections. With curtailment, the grid may
/// reduce a bus's intended feed-in, never beyond it.
void add_fixed_injection_balance(ModelSpec& m, const GridContext& ctx, GridVars& v,
                                 const std::map<BusId, Injection>& injections, bool curtailment);

struct LineImpedance {
  double kappa_kva;
  double r_ohm;
  double x_ohm;
};

/// Capacity and total resistance/reactance of a line section in setting m.
LineImpedance line_impedance(const Network& net, const LineSection& line, CableSetting m);

}  // namespace hoods
