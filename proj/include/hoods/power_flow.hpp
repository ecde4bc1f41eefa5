#pragma once

// Balanced AC load flow on a radial network by backward-forward sweep. Used as
// a sanity check on the linearised voltages of a solved dispatch.

#include <complex>
#include <map>
#include <vector>

#include "hoods/domain.hpp"

namespace hoods {

struct SweepResult {
  std::map<BusId, double> v_pu;  // voltage magnitude per bus
  int iterations = 0;
  bool converged = false;
};

/// `withdrawal_kva` is the three-phase complex power drawn at each bus
/// (negative real part for feed-in); buses not listed draw nothing.
/// `settings` holds the cable setting per line section, in Network::lines order.
SweepResult backward_forward_sweep(const Network& net, const std::vector<CableSetting>& settings,
                                   const std::map<BusId, std::complex<double>>& withdrawal_kva,
                                   double v_root_pu, double tol = 1e-10, int max_iter = 200);

/// Voltage magnitudes predicted by the linearised model for the same withdrawals,
/// lossless and with flows summed along the tree.
std::map<BusId, double> lindistflow_voltages(const Network& net, const std::vector<CableSetting>& settings,
                                             const std::map<BusId, std::complex<double>>& withdrawal_kva,
                                             double v_root_pu);

}  // namespace hoods
