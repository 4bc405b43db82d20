#include "unot/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace unot {

OneQubitGate random_gate(SeededSampler& sampler) {
  const double angle = sampler.uniform(0.0, kTwoPi);
  return {angle, sample_bloch(sampler)};
}

std::vector<double> random_simplex_weights(SeededSampler& sampler, std::size_t count) {
  std::vector<double> w(count);
  double total = 0.0;
  for (auto& x : w) {
    // 1 - u lies in (0, 1], so the log is finite
    x = -std::log(1.0 - sampler.uniform01());
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

StochasticMap random_stochastic_map(SeededSampler& sampler, std::size_t size) {
  const auto w = random_simplex_weights(sampler, size);
  std::vector<StochasticEntry> entries;
  entries.reserve(size);
  for (double wk : w) entries.push_back(StochasticEntry::from_gate(wk, random_gate(sampler)));
  return StochasticMap(std::move(entries));
}

LadderCircuit random_ladder_circuit(SeededSampler& sampler, int qubit_count) {
  std::vector<double> prep;
  std::vector<OneQubitGate> gates;
  for (int j = 1; j < qubit_count; ++j) prep.push_back(sampler.uniform01());
  for (int j = 0; j < qubit_count; ++j) gates.push_back(random_gate(sampler));
  return {std::move(prep), std::move(gates)};
}

DensityMatrix random_pure_state(SeededSampler& sampler) {
  return DensityMatrix::from_bloch(sample_bloch(sampler).vector());
}

Eigen::Vector2cd state_vector_from_bloch(const Vec3& a) {
  const double theta = std::acos(std::clamp(a.z(), -1.0, 1.0));
  const double phi = std::atan2(a.y(), a.x());
  return {std::cos(0.5 * theta), std::polar(std::sin(0.5 * theta), phi)};
}

}  // namespace unot
