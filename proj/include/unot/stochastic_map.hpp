#pragma once

#include <cstddef>
#include <vector>

#include "unot/rotation.hpp"

namespace unot {

/// One branch of a stochastic unitary map: unitary W applied with probability w.
struct StochasticEntry {
  double weight;
  Mat2c unitary;
  Rotation3 rotation;

  static StochasticEntry from_gate(double weight, const OneQubitGate& gate);
  static StochasticEntry from_unitary(double weight, const Mat2c& unitary);
};

/// rho -> sum_k w_k W_k rho W_k^dagger. Weights are non-negative and sum to 1
/// within 1e-10; construction throws InvalidInput otherwise.
class StochasticMap {
 public:
  explicit StochasticMap(std::vector<StochasticEntry> entries);

  /// Convenience for maps built directly from (weight, gate) pairs.
  static StochasticMap from_gates(const std::vector<std::pair<double, OneQubitGate>>& terms);

  const std::vector<StochasticEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const StochasticEntry& operator[](std::size_t k) const { return entries_[k]; }

  /// sum_k w_k R_k, the linear part of the equivalent affine Bloch map.
  Mat3 bloch_matrix() const;

  Eigen::Matrix2cd apply(const Eigen::Matrix2cd& rho) const;

 private:
  std::vector<StochasticEntry> entries_;
};

}  // namespace unot
