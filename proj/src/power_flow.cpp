#include "hoods/power_flow.hpp"

#include <cmath>
#include <stdexcept>

#include "hoods/grid_model.hpp"

namespace hoods {

namespace {

using cd = std::complex<double>;

void check_settings(const Network& net, const std::vector<CableSetting>& settings) {
  if (settings.size() != net.lines.size())
    throw std::invalid_argument("one cable setting per line section is required");
}

cd withdrawal_at(const std::map<BusId, cd>& w, const BusId& bus) {
  auto it = w.find(bus);
  return it == w.end() ? cd{} : it->second;
}

}  // namespace

SweepResult backward_forward_sweep(const Network& net, const std::vector<CableSetting>& settings,
                                   const std::map<BusId, cd>& withdrawal_kva, double v_root_pu,
                                   double tol, int max_iter) {
  check_settings(net, settings);
  const auto order = topological_order(net);
  const double v_ph_base = net.bands.v_base / std::sqrt(3.0);

  // Per-phase quantities: voltage in V, power in VA, current in A.
  std::map<BusId, cd> v;
  for (const Bus* b : order) v[b->id] = cd(v_root_pu * v_ph_base, 0.0);
  std::map<BusId, std::size_t> feeding;  // bus -> line ending there
  for (std::size_t l = 0; l < net.lines.size(); ++l) feeding[net.lines[l].to_bus] = l;

  SweepResult out;
  for (int it = 1; it <= max_iter; ++it) {
    std::map<BusId, cd> current;
    for (const Bus* b : order) {
      const cd s_ph = withdrawal_at(withdrawal_kva, b->id) * 1000.0 / 3.0;
      current[b->id] = std::conj(s_ph / v[b->id]);
    }
    // Backward: accumulate branch currents from the leaves up.
    for (auto b = order.rbegin(); b != order.rend(); ++b) {
      if (!(*b)->predecessor) continue;
      current[*(*b)->predecessor] += current[(*b)->id];
    }
    // Forward: voltage drops from the root down.
    double change = 0.0;
    for (const Bus* b : order) {
      if (!b->predecessor) continue;
      const LineImpedance z = line_impedance(net, net.lines[feeding.at(b->id)], settings[feeding.at(b->id)]);
      const cd updated = v[*b->predecessor] - cd(z.r_ohm, z.x_ohm) * current[b->id];
      change = std::max(change, std::abs(updated - v[b->id]) / v_ph_base);
      v[b->id] = updated;
    }
    out.iterations = it;
    if (change < tol) {
      out.converged = true;
      break;
    }
  }
  for (const auto& [bus, value] : v) out.v_pu[bus] = std::abs(value) / v_ph_base;
  return out;
}

std::map<BusId, double> lindistflow_voltages(const Network& net, const std::vector<CableSetting>& settings,
                                             const std::map<BusId, cd>& withdrawal_kva, double v_root_pu) {
  check_settings(net, settings);
  const auto order = topological_order(net);
  std::map<BusId, cd> flow;  // downstream withdrawal, kVA
  for (const Bus* b : order) flow[b->id] = withdrawal_at(withdrawal_kva, b->id);
  for (auto b = order.rbegin(); b != order.rend(); ++b)
    if ((*b)->predecessor) flow[*(*b)->predecessor] += flow[(*b)->id];

  std::map<BusId, std::size_t> feeding;
  for (std::size_t l = 0; l < net.lines.size(); ++l) feeding[net.lines[l].to_bus] = l;
  const double vb2 = net.bands.v_base * net.bands.v_base;
  std::map<BusId, double> u;
  for (const Bus* b : order) {
    if (!b->predecessor) {
      u[b->id] = v_root_pu * v_root_pu;
      continue;
    }
    const LineImpedance z = line_impedance(net, net.lines[feeding.at(b->id)], settings[feeding.at(b->id)]);
    const cd s = flow[b->id] * 1000.0;
    u[b->id] = u[*b->predecessor] - 2.0 * (z.r_ohm * s.real() + z.x_ohm * s.imag()) / vb2;
  }
  std::map<BusId, double> out;
  for (const auto& [bus, value] : u) out[bus] = std::sqrt(std::max(0.0, value));
  return out;
}

}  // namespace hoods
