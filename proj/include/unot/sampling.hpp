#pragma once

#include "unot/circuit.hpp"
#include "unot/haar.hpp"
#include "unot/stochastic_map.hpp"

namespace unot {

// Random instances for property checks: angles uniform in [0, 2pi), axes
// uniform on the sphere, weights uniform on the simplex.

OneQubitGate random_gate(SeededSampler& sampler);

/// `count` weights uniform on the probability simplex.
std::vector<double> random_simplex_weights(SeededSampler& sampler, std::size_t count);

StochasticMap random_stochastic_map(SeededSampler& sampler, std::size_t size);

/// Ladder circuit with v_j uniform in [0, 1] and random gates.
LadderCircuit random_ladder_circuit(SeededSampler& sampler, int qubit_count);

/// Haar-random pure qubit state.
DensityMatrix random_pure_state(SeededSampler& sampler);

/// Pure qubit state vector with Bloch vector `a`.
Eigen::Vector2cd state_vector_from_bloch(const Vec3& a);

}  // namespace unot
