#include "unot/circuit.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "unot/errors.hpp"

namespace unot {

namespace {

constexpr double kStateTol = 1e-10;
constexpr double kPositivityTol = 1e-9;

bool is_power_of_two(Eigen::Index n) { return n >= 1 && (n & (n - 1)) == 0; }

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

DensityMatrix::DensityMatrix(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0) {
    throw InvalidInput("density matrix must be square and non-empty");
  }
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kStateTol) {
    throw InvalidInput("density matrix is not Hermitian");
  }
  if (std::abs(rho_.trace() - std::complex<double>(1.0, 0.0)) > kStateTol) {
    throw InvalidInput("density matrix trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -kPositivityTol) {
    throw InvalidInput("density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::from_bloch(const Vec3& bloch) {
  if (bloch.norm() > 1.0 + kStateTol) {
    throw InvalidInput("Bloch vector longer than 1");
  }
  const auto& s = pauli();
  Eigen::Matrix2cd rho = 0.5 * (Eigen::Matrix2cd::Identity() + bloch.x() * s[0] + bloch.y() * s[1] + bloch.z() * s[2]);
  return DensityMatrix(rho);
}

Vec3 DensityMatrix::bloch() const {
  if (dim() != 2) {
    throw InvalidInput("Bloch vector is defined for qubit states only");
  }
  const auto& s = pauli();
  Vec3 b;
  for (int i = 0; i < 3; ++i) {
    b[i] = (s[i] * rho_).trace().real();
  }
  return b;
}

LadderCircuit::LadderCircuit(std::vector<double> prep_params, std::vector<OneQubitGate> gates)
    : prep_(std::move(prep_params)), gates_(std::move(gates)) {
  if (gates_.size() != prep_.size() + 1) {
    throw InvalidInput("ladder circuit needs exactly one more gate than preparation parameters");
  }
  for (double v : prep_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InvalidInput("preparation parameters must lie in [0, 1]");
    }
  }
}

std::vector<double> weights_from_preps(const std::vector<double>& prep_params) {
  std::vector<double> w;
  w.reserve(prep_params.size() + 1);
  double survive = 1.0;
  for (double v : prep_params) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InvalidInput("preparation parameters must lie in [0, 1]");
    }
    w.push_back(survive * v);
    survive *= 1.0 - v;
  }
  w.push_back(survive);
  return w;
}

StochasticMap stochastic_map_from_circuit(const LadderCircuit& circuit) {
  const auto weights = weights_from_preps(circuit.prep_params());
  std::vector<StochasticEntry> entries;
  entries.reserve(weights.size());
  Mat2c composed = Mat2c::Identity();
  for (std::size_t k = 0; k < weights.size(); ++k) {
    composed = unitary_from_gate(circuit.conditional_gates()[k]) * composed;
    entries.push_back(StochasticEntry::from_unitary(weights[k], composed));
  }
  return StochasticMap(std::move(entries));
}

Eigen::Matrix2d prep_unitary(double v) {
  const double a = std::sqrt(v);
  const double b = std::sqrt(1.0 - v);
  Eigen::Matrix2d m;
  m << a, -b, b, a;
  return m;
}

Eigen::MatrixXcd ladder_unitary(const LadderCircuit& circuit) {
  const int n = circuit.qubit_count();
  const int n_anc = n - 1;
  const Eigen::Index anc_dim = Eigen::Index{1} << n_anc;
  const Eigen::Index dim = 2 * anc_dim;

  Eigen::MatrixXcd prep = Eigen::MatrixXcd::Identity(2, 2);
  for (double v : circuit.prep_params()) {
    prep = kron(prep, prep_unitary(v).cast<std::complex<double>>());
  }
  Eigen::MatrixXcd total =
      kron(unitary_from_gate(circuit.conditional_gates()[0]), Eigen::MatrixXcd::Identity(anc_dim, anc_dim)) * prep;

  for (int j = 1; j <= n_anc; ++j) {
    const Mat2c u = unitary_from_gate(circuit.conditional_gates()[static_cast<std::size_t>(j)]);
    // ancillas 1..j are the j most significant bits of the ancilla index
    const Eigen::Index mask = ((Eigen::Index{1} << j) - 1) << (n_anc - j);
    Eigen::MatrixXcd controlled = Eigen::MatrixXcd::Identity(dim, dim);
    for (Eigen::Index x = 0; x < anc_dim; ++x) {
      if ((x & mask) != mask) continue;
      for (Eigen::Index s = 0; s < 2; ++s) {
        for (Eigen::Index t = 0; t < 2; ++t) {
          controlled(s * anc_dim + x, t * anc_dim + x) = u(s, t);
        }
      }
    }
    total = controlled * total;
  }
  return total;
}

Eigen::Matrix2cd reduce_to_system(const Eigen::MatrixXcd& rho_full) {
  const Eigen::Index dim = rho_full.rows();
  if (dim != rho_full.cols() || dim < 2 || !is_power_of_two(dim)) {
    throw InvalidInput("full state must be square with power-of-two dimension");
  }
  const Eigen::Index half = dim / 2;
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (Eigen::Index s = 0; s < 2; ++s) {
    for (Eigen::Index t = 0; t < 2; ++t) {
      for (Eigen::Index x = 0; x < half; ++x) {
        out(s, t) += rho_full(s * half + x, t * half + x);
      }
    }
  }
  return out;
}

DensityMatrix evolve_with_ancillas(const Eigen::MatrixXcd& unitary, const DensityMatrix& input) {
  const Eigen::Index dim = unitary.rows();
  if (input.dim() != 2) {
    throw InvalidInput("input must be a one-qubit state");
  }
  if (dim != unitary.cols() || dim < 2 || !is_power_of_two(dim)) {
    throw InvalidInput("unitary must be square with power-of-two dimension");
  }
  const Eigen::Index half = dim / 2;
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index s = 0; s < 2; ++s) {
    for (Eigen::Index t = 0; t < 2; ++t) {
      full(s * half, t * half) = input.matrix()(s, t);
    }
  }
  Eigen::Matrix2cd reduced = reduce_to_system(unitary * full * unitary.adjoint());
  // clean up the O(eps) anti-Hermitian part left by the products
  reduced = 0.5 * (reduced + reduced.adjoint()).eval();
  return DensityMatrix(reduced);
}

DensityMatrix simulate_full(const LadderCircuit& circuit, const DensityMatrix& input) {
  if (input.dim() != 2) {
    throw InvalidInput("ladder circuit input must be a one-qubit state");
  }
  return evolve_with_ancillas(ladder_unitary(circuit), input);
}

StochasticMap tilted_three_gate_map(double alpha) {
  if (!(std::abs(alpha) < 0.3)) {
    throw InvalidInput("tilt must satisfy |alpha| < 0.3");
  }
  const double third = 1.0 / 3.0;
  const Axis n2(alpha, std::sqrt(1.0 - alpha * alpha), 0.0);
  return StochasticMap::from_gates({{third, OneQubitGate(kPi, Axis::z())},
                                    {third, OneQubitGate(kPi, Axis::x())},
                                    {third, OneQubitGate(kPi, n2)}});
}

StochasticMap compensated_four_gate_map(double alpha) {
  if (!(std::abs(alpha) < 0.3)) {
    throw InvalidInput("tilt must satisfy |alpha| < 0.3");
  }
  const double third = 1.0 / 3.0;
  const double sixth = 1.0 / 6.0;
  const double c = std::sqrt(1.0 - alpha * alpha);
  const Axis n2(alpha, c, 0.0);
  const Axis n3(-alpha, c, 0.0);
  return StochasticMap::from_gates({{third, OneQubitGate(kPi, Axis::z())},
                                    {third, OneQubitGate(kPi, Axis::x())},
                                    {sixth, OneQubitGate(kPi, n2)},
                                    {sixth, OneQubitGate(kPi, n3)}});
}

StochasticMap optimal_unot_map() {
  const double third = 1.0 / 3.0;
  return StochasticMap::from_gates({{third, OneQubitGate(kPi, Axis::x())},
                                    {third, OneQubitGate(kPi, Axis::y())},
                                    {third, OneQubitGate(kPi, Axis::z())}});
}

LadderCircuit optimal_ladder_circuit() {
  const Mat2c w0 = unitary_from_gate(OneQubitGate(kPi, Axis::x()));
  const Mat2c w1 = unitary_from_gate(OneQubitGate(kPi, Axis::y()));
  const Mat2c w2 = unitary_from_gate(OneQubitGate(kPi, Axis::z()));
  return LadderCircuit({1.0 / 3.0, 0.5},
                       {gate_from_unitary(w0), gate_from_unitary(w1 * w0.adjoint()),
                        gate_from_unitary(w2 * w1.adjoint())});
}

}  // namespace unot
