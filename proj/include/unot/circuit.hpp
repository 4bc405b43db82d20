#pragma once

#include <vector>

#include <Eigen/Core>

#include "unot/rotation.hpp"
#include "unot/stochastic_map.hpp"

namespace unot {

/// Hermitian, unit-trace, positive semidefinite d x d matrix.
class DensityMatrix {
 public:
  /// Validates hermiticity and trace to 1e-10 and eigenvalues >= -1e-9.
  explicit DensityMatrix(Eigen::MatrixXcd rho);

  /// Qubit state (I + b.sigma)/2 with |b| <= 1.
  static DensityMatrix from_bloch(const Vec3& bloch);

  const Eigen::MatrixXcd& matrix() const { return rho_; }
  Eigen::Index dim() const { return rho_.rows(); }

  /// Bloch vector b_i = Tr(sigma_i rho); qubit states only.
  Vec3 bloch() const;

 private:
  Eigen::MatrixXcd rho_;
};

/// System qubit plus n-1 ancillas. Ancilla j is prepared by V_j|0> =
/// sqrt(v_j)|0> + sqrt(1-v_j)|1>; gate U_0 acts unconditionally and U_j acts
/// on the system when ancillas 1..j are all |1>.
class LadderCircuit {
 public:
  LadderCircuit(std::vector<double> prep_params, std::vector<OneQubitGate> gates);

  const std::vector<double>& prep_params() const { return prep_; }
  const std::vector<OneQubitGate>& conditional_gates() const { return gates_; }
  int qubit_count() const { return static_cast<int>(gates_.size()); }

 private:
  std::vector<double> prep_;
  std::vector<OneQubitGate> gates_;
};

/// w_0 = v_1, w_k = (1-v_1)...(1-v_k) v_{k+1}, w_{n-1} = (1-v_1)...(1-v_{n-1}).
std::vector<double> weights_from_preps(const std::vector<double>& prep_params);

/// Branch k carries weight w_k and the composed unitary U_k ... U_1 U_0.
StochasticMap stochastic_map_from_circuit(const LadderCircuit& circuit);

/// Real completion [[sqrt v, -sqrt(1-v)], [sqrt(1-v), sqrt v]] of V_j.
Eigen::Matrix2d prep_unitary(double v);

/// The 2^n x 2^n circuit unitary. Qubit order is system, ancilla 1, ...,
/// ancilla n-1, with the system as the most significant bit.
Eigen::MatrixXcd ladder_unitary(const LadderCircuit& circuit);

/// Partial trace over every qubit except the most significant one.
Eigen::Matrix2cd reduce_to_system(const Eigen::MatrixXcd& rho_full);

/// Applies `unitary` to input (x) |0...0><0...0| and traces out the ancillas.
DensityMatrix evolve_with_ancillas(const Eigen::MatrixXcd& unitary, const DensityMatrix& input);

/// Exact full-space simulation of the ladder circuit on a qubit input.
DensityMatrix simulate_full(const LadderCircuit& circuit, const DensityMatrix& input);

/// Four pi-rotations with weights (1/3, 1/3, 1/6, 1/6). Axes: n_0 = z,
/// n_1 = x, n_2 tilted so that n_1.n_2 = alpha, and n_3 the mirror image of
/// n_2 across the normal of n_1 inside the x-y plane (n_3.n_2 = 1 - 2 alpha^2).
/// Requires |alpha| < 0.3.
StochasticMap compensated_four_gate_map(double alpha);

/// The uncompensated three-gate map (1/3 each) on axes n_0, n_1, n_2 above.
StochasticMap tilted_three_gate_map(double alpha);

/// sigma_x, sigma_y, sigma_z with weight 1/3 each.
StochasticMap optimal_unot_map();

/// Three-qubit ladder realizing `optimal_unot_map` (U_0 = pi about x,
/// composed branches pi about y and pi about z, v = (1/3, 1/2)).
LadderCircuit optimal_ladder_circuit();

}  // namespace unot
