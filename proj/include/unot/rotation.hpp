#pragma once

#include <array>

#include <Eigen/Core>

namespace unot {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat2c = Eigen::Matrix2cd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Unit direction in R^3. Construction rejects vectors whose norm is not 1
/// within 1e-12; use `Axis::normalized` to project an arbitrary vector.
class Axis {
 public:
  explicit Axis(const Vec3& v);
  Axis(double x, double y, double z) : Axis(Vec3(x, y, z)) {}

  static Axis normalized(const Vec3& v);
  static Axis x() { return Axis(1.0, 0.0, 0.0); }
  static Axis y() { return Axis(0.0, 1.0, 0.0); }
  static Axis z() { return Axis(0.0, 0.0, 1.0); }

  const Vec3& vector() const { return n_; }
  double operator[](int i) const { return n_[i]; }
  double dot(const Axis& other) const { return n_.dot(other.n_); }

 private:
  struct Trusted {};
  Axis(const Vec3& v, Trusted) : n_(v) {}

  Vec3 n_;
};

/// A one-qubit unitary exp(-i angle/2 n.sigma), stored as (angle, axis).
/// The angle is reduced into [0, 2pi) on construction.
class OneQubitGate {
 public:
  OneQubitGate(double angle, const Axis& axis);

  static OneQubitGate identity() { return {0.0, Axis::z()}; }

  double angle() const { return angle_; }
  const Axis& axis() const { return axis_; }

 private:
  double angle_;
  Axis axis_;
};

/// Proper orthogonal 3x3 matrix acting on Bloch vectors.
class Rotation3 {
 public:
  /// Checks R R^T = I and det R = +1 to 1e-10 per entry.
  explicit Rotation3(const Mat3& m);

  static Rotation3 identity() { return Rotation3(Mat3::Identity()); }

  const Mat3& matrix() const { return m_; }
  double trace() const { return m_.trace(); }
  Vec3 apply(const Vec3& a) const { return m_ * a; }
  Rotation3 operator*(const Rotation3& rhs) const { return Rotation3(m_ * rhs.m_); }

 private:
  Mat3 m_;
};

/// Pauli matrices indexed 0 = x, 1 = y, 2 = z.
const std::array<Mat2c, 3>& pauli();

/// Skew matrix S_ij = eps_ijk n_k, so that S^2 = n n^T - I.
Mat3 skew_from_axis(const Axis& axis);

/// Rodrigues form R = I - sin(t) S + (1 - cos(t)) S^2.
Rotation3 rotation_from_gate(const OneQubitGate& gate);

/// Tr R = 2 cos(t) + 1.
double trace_R(const OneQubitGate& gate);

/// Tr R^2 = 4 cos^2(t) - 1.
double trace_R_squared(const OneQubitGate& gate);

/// cos(t/2) I - i sin(t/2) n.sigma
Mat2c unitary_from_gate(const OneQubitGate& gate);

/// Bloch-sphere action of rho -> U rho U^dagger, R_ij = Tr(sigma_i U sigma_j U^dagger) / 2.
/// Global phase of `u` is irrelevant.
Rotation3 rotation_from_unitary(const Mat2c& u);

/// Recovers (angle, axis) of a 2x2 unitary up to global phase, with the angle
/// chosen in [0, pi]. Any axis is returned for the identity.
OneQubitGate gate_from_unitary(const Mat2c& u);

}  // namespace unot
