#pragma once

#include <string_view>

#include <Eigen/Core>

#include "unot/rotation.hpp"
#include "unot/stochastic_map.hpp"

namespace unot {

/// Average fidelity F to the U-NOT target and fidelity deviation Delta
/// (standard deviation of the pointwise fidelity over pure inputs).
struct FidelityStats {
  double avg_fidelity = 0.0;
  double deviation = 0.0;

  /// Delta^2 <= F (1 - F), valid for every channel.
  bool satisfies_global_bound(double tol = 1e-12) const {
    return deviation * deviation <= avg_fidelity * (1.0 - avg_fidelity) + tol;
  }
};

/// Qubit channel in Bloch form a -> M a + c.
///
/// The constructor checks the necessary condition |M a + c| <= 1 + 1e-9 on a
/// fixed 100-point Fibonacci lattice of the sphere. Complete positivity is
/// not checked.
class AffineBlochChannel {
 public:
  AffineBlochChannel(const Mat3& linear, const Vec3& shift);

  static AffineBlochChannel from_rotation(const Rotation3& r) { return {r.matrix(), Vec3::Zero()}; }

  const Mat3& linear_part() const { return m_; }
  const Vec3& shift() const { return c_; }
  Vec3 apply(const Vec3& a) const { return m_ * a + c_; }

 private:
  Mat3 m_;
  Vec3 c_;
};

/// f[a] = (1 - a^T R a) / 2 for a unit Bloch vector a.
double fidelity_pointwise(const Rotation3& rotation, const Axis& bloch);

/// F = 1/2 - Tr(R)/6 and Delta = F / sqrt(5).
FidelityStats stats_one_qubit(const OneQubitGate& gate);

/// Haar average of (a^T R_k a)(a^T R_l a) over the unit sphere:
/// [Tr R_k Tr R_l + Tr(R_k R_l^T) + Tr(R_k R_l)] / 15.
double second_moment_rotation_pair(const Rotation3& rk, const Rotation3& rl);

/// Covariance of the pointwise fidelities of two rotations, (3 A1 - 2 A2) / 180
/// with A1 = Tr(R_k R_l^T + R_k R_l) and A2 = Tr R_k Tr R_l.
double covariance_pair(const Rotation3& rk, const Rotation3& rl);
double covariance_pair(const OneQubitGate& gk, const OneQubitGate& gl);

/// Full covariance matrix C_kl over the branches of a stochastic map.
Eigen::MatrixXd covariance_matrix(const StochasticMap& map);

/// F = sum_k w_k F_k and Delta^2 = sum_kl w_k w_l C_kl. Round-off negatives
/// down to -1e-12 are clipped; anything below raises ConsistencyError.
FidelityStats stats_stochastic_map(const StochasticMap& map);

/// F = 1/2 - Tr(M)/6,
/// Delta^2 = [(Tr(M)^2 + Tr(M M^T) + Tr(M^2))/15 + |c|^2/3 - Tr(M)^2/9] / 4.
FidelityStats stats_affine_channel(const AffineBlochChannel& channel);

/// Average fidelity of a system qubit coupled to ancillas prepared in |0...0>
/// by a unitary on 2^n dimensions (system is the most significant bit):
/// F = 2/3 - (1/6) sum_m |u[m, 0] + u[h + m, h]|^2 with h = dim / 2.
double avg_fidelity_unitary(const Eigen::MatrixXcd& u);

/// The 8x8 case of `avg_fidelity_unitary`; rejects any other shape and
/// non-unitary input (1e-8).
double avg_fidelity_3q_unitary(const Eigen::MatrixXcd& u);

enum class Region {
  Outside,
  OnLine,         // one qubit: Delta = F / sqrt(5)
  LowerBoundary,  // on the lower edge of the admissible band
  UpperBoundary,  // on Delta = F / sqrt(5)
  Interior,
};

std::string_view to_string(Region region);

inline bool is_admissible(Region region) { return region != Region::Outside; }

/// Locates (F, Delta) relative to the admissible region for `qubit_count`
/// qubits: the line Delta = F/sqrt(5) for 1, the band F/(2 sqrt 5) <= Delta <= F/sqrt(5)
/// for 2, and 0 <= Delta <= F/sqrt(5) for 3 or more.
Region region_membership(const FidelityStats& stats, int qubit_count, double tol = 1e-9);

}  // namespace unot
