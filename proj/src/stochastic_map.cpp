#include "unot/stochastic_map.hpp"

#include <cmath>
#include <sstream>

#include "unot/errors.hpp"

namespace unot {

StochasticEntry StochasticEntry::from_gate(double weight, const OneQubitGate& gate) {
  return {weight, unitary_from_gate(gate), rotation_from_gate(gate)};
}

StochasticEntry StochasticEntry::from_unitary(double weight, const Mat2c& unitary) {
  return {weight, unitary, rotation_from_unitary(unitary)};
}

StochasticMap::StochasticMap(std::vector<StochasticEntry> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw InvalidInput("stochastic map needs at least one branch");
  }
  double total = 0.0;
  for (const auto& e : entries_) {
    if (!std::isfinite(e.weight) || e.weight < 0.0) {
      throw InvalidInput("stochastic map weights must be finite and non-negative");
    }
    total += e.weight;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    std::ostringstream msg;
    msg << "stochastic map weights sum to " << total << ", expected 1";
    throw InvalidInput(msg.str());
  }
}

StochasticMap StochasticMap::from_gates(const std::vector<std::pair<double, OneQubitGate>>& terms) {
  std::vector<StochasticEntry> entries;
  entries.reserve(terms.size());
  for (const auto& [w, g] : terms) {
    entries.push_back(StochasticEntry::from_gate(w, g));
  }
  return StochasticMap(std::move(entries));
}

Mat3 StochasticMap::bloch_matrix() const {
  Mat3 m = Mat3::Zero();
  for (const auto& e : entries_) {
    m += e.weight * e.rotation.matrix();
  }
  return m;
}

Eigen::Matrix2cd StochasticMap::apply(const Eigen::Matrix2cd& rho) const {
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (const auto& e : entries_) {
    out += e.weight * e.unitary * rho * e.unitary.adjoint();
  }
  return out;
}

}  // namespace unot
