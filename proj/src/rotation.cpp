#include "unot/rotation.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/LU>

#include "unot/errors.hpp"

namespace unot {

namespace {

constexpr double kAxisTol = 1e-12;
constexpr double kMatrixTol = 1e-10;

using cd = std::complex<double>;

}  // namespace

Axis::Axis(const Vec3& v) : n_(v) {
  if (!v.allFinite() || std::abs(v.norm() - 1.0) > kAxisTol) {
    std::ostringstream msg;
    msg << "axis is not unit-norm (|n| = " << v.norm() << ")";
    throw InvalidInput(msg.str());
  }
}

Axis Axis::normalized(const Vec3& v) {
  const double norm = v.norm();
  if (!std::isfinite(norm) || norm == 0.0) {
    throw InvalidInput("cannot normalize a zero or non-finite vector");
  }
  return Axis(v / norm, Trusted{});
}

OneQubitGate::OneQubitGate(double angle, const Axis& axis) : angle_(angle), axis_(axis) {
  if (!std::isfinite(angle)) {
    throw InvalidInput("gate angle must be finite");
  }
  angle_ = std::fmod(angle, kTwoPi);
  if (angle_ < 0.0) angle_ += kTwoPi;
  // fmod of a value just below a multiple of 2pi can land on 2pi after the shift
  if (angle_ >= kTwoPi) angle_ = 0.0;
}

Rotation3::Rotation3(const Mat3& m) : m_(m) {
  const double orth = (m * m.transpose() - Mat3::Identity()).cwiseAbs().maxCoeff();
  const double det = m.determinant();
  if (!m.allFinite() || orth > kMatrixTol || std::abs(det - 1.0) > kMatrixTol) {
    std::ostringstream msg;
    msg << "not a proper rotation (orthogonality residual " << orth << ", det " << det << ")";
    throw InvalidInput(msg.str());
  }
}

const std::array<Mat2c, 3>& pauli() {
  static const std::array<Mat2c, 3> paulis = [] {
    std::array<Mat2c, 3> p;
    p[0] << 0, 1, 1, 0;
    p[1] << 0, cd(0, -1), cd(0, 1), 0;
    p[2] << 1, 0, 0, -1;
    return p;
  }();
  return paulis;
}

Mat3 skew_from_axis(const Axis& axis) {
  const Vec3& n = axis.vector();
  Mat3 s;
  s << 0.0, n.z(), -n.y(),
       -n.z(), 0.0, n.x(),
       n.y(), -n.x(), 0.0;
  return s;
}

Rotation3 rotation_from_gate(const OneQubitGate& gate) {
  const Mat3 s = skew_from_axis(gate.axis());
  const double t = gate.angle();
  return Rotation3(Mat3::Identity() - std::sin(t) * s + (1.0 - std::cos(t)) * s * s);
}

double trace_R(const OneQubitGate& gate) { return 2.0 * std::cos(gate.angle()) + 1.0; }

double trace_R_squared(const OneQubitGate& gate) {
  const double c = std::cos(gate.angle());
  return 4.0 * c * c - 1.0;
}

Mat2c unitary_from_gate(const OneQubitGate& gate) {
  const double half = 0.5 * gate.angle();
  const auto& s = pauli();
  const Vec3& n = gate.axis().vector();
  const Mat2c n_sigma = n.x() * s[0] + n.y() * s[1] + n.z() * s[2];
  return std::cos(half) * Mat2c::Identity() - cd(0.0, std::sin(half)) * n_sigma;
}

Rotation3 rotation_from_unitary(const Mat2c& u) {
  const auto& s = pauli();
  const Mat2c u_dag = u.adjoint();
  Mat3 r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      r(i, j) = 0.5 * (s[i] * u * s[j] * u_dag).trace().real();
    }
  }
  return Rotation3(r);
}

OneQubitGate gate_from_unitary(const Mat2c& u) {
  const cd det = u.determinant();
  if (std::abs(std::abs(det) - 1.0) > kMatrixTol) {
    throw InvalidInput("matrix is not unitary");
  }
  Mat2c v = u / std::sqrt(det);
  cd a0 = 0.5 * v.trace();
  if (a0.real() < 0.0) {
    v = -v;
    a0 = -a0;
  }
  const auto& s = pauli();
  Vec3 a;
  for (int k = 0; k < 3; ++k) {
    a[k] = (cd(0.0, 0.5) * (s[k] * v).trace()).real();
  }
  const double sin_half = a.norm();
  if (sin_half < 1e-15) {
    return OneQubitGate::identity();
  }
  return {2.0 * std::atan2(sin_half, a0.real()), Axis::normalized(a)};
}

}  // namespace unot
