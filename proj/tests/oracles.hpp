#pragma once

// Reference computations used only by the tests. Each one is written from
// first principles without calling the library routine it checks.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

inline const Mat2& pauli(int i) {
  static const Mat2 p[3] = {
      (Mat2() << 0, 1, 1, 0).finished(),
      (Mat2() << 0, cd(0, -1), cd(0, 1), 0).finished(),
      (Mat2() << 1, 0, 0, -1).finished(),
  };
  return p[i];
}

/// cos(t/2) I - i sin(t/2) n.sigma
inline Mat2 gate_unitary(double theta, const Vec3& n) {
  Mat2 ns = n.x() * pauli(0) + n.y() * pauli(1) + n.z() * pauli(2);
  return std::cos(theta / 2) * Mat2::Identity() - cd(0, 1) * std::sin(theta / 2) * ns;
}

/// R_ij = Tr(sigma_i U sigma_j U^dag) / 2
inline Mat3 conjugation_rotation(const Mat2& u) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = 0.5 * (pauli(i) * u * pauli(j) * u.adjoint()).trace().real();
  return r;
}

/// A1 from the explicit angle/axis expansion of Tr(R_k R_l^T + R_k R_l).
inline double a1_explicit(double tk, const Vec3& nk, double tl, const Vec3& nl) {
  const double ck = std::cos(tk), cl = std::cos(tl), d = nk.dot(nl);
  return 2.0 * (ck * cl + ck + cl + d * d * (1 - ck) * (1 - cl));
}

/// Plain sphere sampler built on the standard library only.
class Sphere {
 public:
  explicit Sphere(std::uint64_t seed) : engine_(seed) {}
  Vec3 operator()() {
    Vec3 v;
    do {
      v = {normal_(engine_), normal_(engine_), normal_(engine_)};
    } while (v.norm() < 1e-12);
    return v.normalized();
  }
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
  double sd = 0.0;
};

template <typename F>
MeanSe sample_mean(int n, F&& draw) {
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = draw();
    s += x;
    s2 += x * x;
  }
  const double m = s / n;
  const double var = std::max(0.0, s2 / n - m * m);
  return {m, std::sqrt(var * n / (n - 1) / n), std::sqrt(var)};
}

/// Pure qubit state with Bloch vector a, and its orthogonal partner.
inline Eigen::Vector2cd ket(const Vec3& a) {
  const double th = std::acos(std::max(-1.0, std::min(1.0, a.z())));
  const double ph = std::atan2(a.y(), a.x());
  return {std::cos(th / 2), std::polar(std::sin(th / 2), ph)};
}
inline Eigen::Vector2cd ket_perp(const Eigen::Vector2cd& psi) {
  return {-std::conj(psi(1)), std::conj(psi(0))};
}

/// <psi_perp| Tr_anc[U (|psi><psi| x |0..0><0..0|) U^dag] |psi_perp> for a
/// unitary on 2^n dimensions with the system as the most significant bit.
inline double pointwise_unot_fidelity(const Eigen::MatrixXcd& u, const Eigen::Vector2cd& psi) {
  const Eigen::Index dim = u.rows(), half = dim / 2;
  Eigen::VectorXcd in = Eigen::VectorXcd::Zero(dim);
  in(0) = psi(0);
  in(half) = psi(1);
  const Eigen::VectorXcd out = u * in;
  const Eigen::Vector2cd perp = ket_perp(psi);
  double f = 0.0;
  for (Eigen::Index m = 0; m < half; ++m) {
    const cd amp = std::conj(perp(0)) * out(m) + std::conj(perp(1)) * out(half + m);
    f += std::norm(amp);
  }
  return f;
}

/// Full ladder unitary assembled gate by gate from projectors. Qubit 0 is
/// the system (most significant); ancilla j sits at position j.
inline Eigen::MatrixXcd ladder(const std::vector<double>& v, const std::vector<Mat2>& gates) {
  const int n = static_cast<int>(gates.size());
  const int dim = 1 << n;
  auto bit = [n](int index, int qubit) { return (index >> (n - 1 - qubit)) & 1; };

  Eigen::MatrixXcd total = Eigen::MatrixXcd::Identity(dim, dim);
  // ancilla preparations
  for (int j = 1; j < n; ++j) {
    const double c = std::sqrt(v[j - 1]), s = std::sqrt(1 - v[j - 1]);
    Eigen::Matrix2d vj;
    vj << c, -s, s, c;
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int col = 0; col < dim; ++col) {
        if ((r ^ col) & ~(1 << (n - 1 - j))) continue;
        op(r, col) = vj(bit(r, j), bit(col, j));
      }
    total = op * total;
  }
  // controlled system gates
  for (int k = 0; k < n; ++k) {
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int col = 0; col < dim; ++col) {
        if ((r ^ col) & ~(1 << (n - 1))) continue;
        bool active = true;
        for (int j = 1; j <= k; ++j) active = active && bit(col, j) == 1;
        op(r, col) = active ? gates[k](bit(r, 0), bit(col, 0)) : cd(r == col ? 1.0 : 0.0);
      }
    total = op * total;
  }
  return total;
}

/// Partial trace onto the most significant qubit.
inline Mat2 reduce(const Eigen::MatrixXcd& rho) {
  const Eigen::Index half = rho.rows() / 2;
  Mat2 out = Mat2::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (Eigen::Index m = 0; m < half; ++m) out(a, b) += rho(a * half + m, b * half + m);
  return out;
}

}  // namespace oracle
