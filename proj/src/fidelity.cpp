#include "unot/fidelity.hpp"

#include <cmath>
#include <sstream>

#include "unot/errors.hpp"

namespace unot {

namespace {

constexpr double kBallTol = 1e-9;
constexpr double kNegativeVarianceTol = 1e-12;

// Fixed, well-spread probe directions for the contraction check.
const std::vector<Vec3>& fibonacci_sphere() {
  static const std::vector<Vec3> points = [] {
    constexpr int kCount = 100;
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    std::vector<Vec3> pts;
    pts.reserve(kCount);
    for (int i = 0; i < kCount; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / kCount;
      const double r = std::sqrt(1.0 - z * z);
      const double phi = golden * i;
      pts.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
    }
    return pts;
  }();
  return points;
}

double checked_deviation(double variance) {
  if (variance >= 0.0) return std::sqrt(variance);
  if (variance >= -kNegativeVarianceTol) return 0.0;
  std::ostringstream msg;
  msg << "fidelity variance is negative beyond round-off: " << variance;
  throw ConsistencyError(msg.str());
}

FidelityStats checked(FidelityStats s) {
  if (!s.satisfies_global_bound()) {
    std::ostringstream msg;
    msg << "deviation " << s.deviation << " exceeds sqrt(F(1-F)) for F = " << s.avg_fidelity;
    throw ConsistencyError(msg.str());
  }
  return s;
}

}  // namespace

AffineBlochChannel::AffineBlochChannel(const Mat3& linear, const Vec3& shift) : m_(linear), c_(shift) {
  if (!linear.allFinite() || !shift.allFinite()) {
    throw InvalidInput("affine channel entries must be finite");
  }
  for (const Vec3& a : fibonacci_sphere()) {
    if ((m_ * a + c_).norm() > 1.0 + kBallTol) {
      throw InvalidInput("affine map sends a pure state outside the Bloch ball");
    }
  }
}

double fidelity_pointwise(const Rotation3& rotation, const Axis& bloch) {
  const Vec3& a = bloch.vector();
  return 0.5 * (1.0 - a.dot(rotation.matrix() * a));
}

FidelityStats stats_one_qubit(const OneQubitGate& gate) {
  const double f = 0.5 - trace_R(gate) / 6.0;
  return checked({f, f / std::sqrt(5.0)});
}

double second_moment_rotation_pair(const Rotation3& rk, const Rotation3& rl) {
  const Mat3& a = rk.matrix();
  const Mat3& b = rl.matrix();
  return (a.trace() * b.trace() + (a * b.transpose()).trace() + (a * b).trace()) / 15.0;
}

double covariance_pair(const Rotation3& rk, const Rotation3& rl) {
  const Mat3& a = rk.matrix();
  const Mat3& b = rl.matrix();
  const double a1 = (a * b.transpose()).trace() + (a * b).trace();
  const double a2 = a.trace() * b.trace();
  return (3.0 * a1 - 2.0 * a2) / 180.0;
}

double covariance_pair(const OneQubitGate& gk, const OneQubitGate& gl) {
  return covariance_pair(rotation_from_gate(gk), rotation_from_gate(gl));
}

Eigen::MatrixXd covariance_matrix(const StochasticMap& map) {
  const auto n = static_cast<Eigen::Index>(map.size());
  Eigen::MatrixXd c(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = k; l < n; ++l) {
      c(k, l) = covariance_pair(map[k].rotation, map[l].rotation);
      c(l, k) = c(k, l);
    }
  }
  return c;
}

FidelityStats stats_stochastic_map(const StochasticMap& map) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(map.size()));
  double f = 0.0;
  for (std::size_t k = 0; k < map.size(); ++k) {
    w[static_cast<Eigen::Index>(k)] = map[k].weight;
    f += map[k].weight * (0.5 - map[k].rotation.trace() / 6.0);
  }
  const double variance = w.dot(covariance_matrix(map) * w);
  return checked({f, checked_deviation(variance)});
}

FidelityStats stats_affine_channel(const AffineBlochChannel& channel) {
  const Mat3& m = channel.linear_part();
  const double tr = m.trace();
  const double second = (tr * tr + (m * m.transpose()).trace() + (m * m).trace()) / 15.0;
  const double variance = 0.25 * (second + channel.shift().squaredNorm() / 3.0 - tr * tr / 9.0);
  return checked({0.5 - tr / 6.0, checked_deviation(variance)});
}

double avg_fidelity_unitary(const Eigen::MatrixXcd& u) {
  const Eigen::Index dim = u.rows();
  if (dim != u.cols() || dim < 2 || (dim & (dim - 1)) != 0) {
    throw InvalidInput("unitary must be square with power-of-two dimension >= 2");
  }
  const Eigen::Index half = dim / 2;
  double sum = 0.0;
  for (Eigen::Index m = 0; m < half; ++m) {
    sum += std::norm(u(m, 0) + u(half + m, half));
  }
  return 2.0 / 3.0 - sum / 6.0;
}

double avg_fidelity_3q_unitary(const Eigen::MatrixXcd& u) {
  if (u.rows() != 8 || u.cols() != 8) {
    throw InvalidInput("three-qubit unitary must be 8x8");
  }
  const double residual = (u * u.adjoint() - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff();
  if (residual > 1e-8) {
    std::ostringstream msg;
    msg << "matrix is not unitary (residual " << residual << ")";
    throw InvalidInput(msg.str());
  }
  return avg_fidelity_unitary(u);
}

std::string_view to_string(Region region) {
  switch (region) {
    case Region::Outside: return "outside";
    case Region::OnLine: return "on-line";
    case Region::LowerBoundary: return "lower-boundary";
    case Region::UpperBoundary: return "upper-boundary";
    case Region::Interior: return "interior";
  }
  return "unknown";
}

Region region_membership(const FidelityStats& stats, int qubit_count, double tol) {
  if (qubit_count < 1) {
    throw InvalidInput("qubit count must be positive");
  }
  const double f = stats.avg_fidelity;
  const double d = stats.deviation;
  const double upper = f / std::sqrt(5.0);
  if (qubit_count == 1) {
    return std::abs(d - upper) <= tol ? Region::OnLine : Region::Outside;
  }
  const double lower = qubit_count == 2 ? upper / 2.0 : 0.0;
  if (std::abs(d - lower) <= tol) return Region::LowerBoundary;
  if (std::abs(d - upper) <= tol) return Region::UpperBoundary;
  if (d > lower && d < upper) return Region::Interior;
  return Region::Outside;
}

}  // namespace unot
