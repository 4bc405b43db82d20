#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "unot/circuit.hpp"
#include "unot/errors.hpp"
#include "unot/evolve.hpp"
#include "unot/fidelity.hpp"
#include "unot/haar.hpp"
#include "unot/sampling.hpp"

using namespace unot;

namespace {

const double kSqrt5 = std::sqrt(5.0);

OneQubitGate pi_about(const Vec3& n) { return {kPi, Axis::normalized(n)}; }

}  // namespace

TEST_CASE("pointwise fidelity examples") {
  const Rotation3 rz = rotation_from_gate(pi_about(Vec3::UnitZ()));
  CHECK(fidelity_pointwise(rz, Axis::z()) == doctest::Approx(0.0));
  CHECK(fidelity_pointwise(rz, Axis::x()) == doctest::Approx(1.0));
  CHECK(fidelity_pointwise(Rotation3::identity(), Axis::normalized({1, 2, 3})) == doctest::Approx(0.0));
}

TEST_CASE("one-qubit statistics") {
  const auto s_pi = stats_one_qubit(pi_about(Vec3::UnitX()));
  CHECK(std::abs(s_pi.avg_fidelity - 2.0 / 3.0) < 1e-12);
  CHECK(std::abs(s_pi.deviation - 2.0 / (3.0 * kSqrt5)) < 1e-12);
  CHECK(s_pi.deviation == doctest::Approx(0.29814).epsilon(1e-5));

  const auto s0 = stats_one_qubit(OneQubitGate::identity());
  CHECK(s0.avg_fidelity == 0.0);
  CHECK(s0.deviation == 0.0);

  SeededSampler rng(21);
  for (int i = 0; i < 1000; ++i) {
    const auto s = stats_one_qubit(random_gate(rng));
    CHECK(std::abs(s.deviation - s.avg_fidelity / kSqrt5) < 1e-12);
    CHECK(s.satisfies_global_bound());
  }
}

TEST_CASE("second moment of rotation pairs") {
  const Rotation3 id = Rotation3::identity();
  const Rotation3 rz = rotation_from_gate(pi_about(Vec3::UnitZ()));
  const Rotation3 rx = rotation_from_gate(pi_about(Vec3::UnitX()));
  CHECK(second_moment_rotation_pair(id, id) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(second_moment_rotation_pair(rz, rz) == doctest::Approx(7.0 / 15.0).epsilon(1e-14));
  CHECK(second_moment_rotation_pair(rz, rx) == doctest::Approx(-1.0 / 15.0).epsilon(1e-14));

  // brute-force sphere average of (a.Rz a)^2
  oracle::Sphere sphere(22);
  const auto est = oracle::sample_mean(1000000, [&] {
    const Vec3 a = sphere();
    const double q = a.dot(rz.matrix() * a);
    return q * q;
  });
  CHECK(std::abs(est.mean - 7.0 / 15.0) < 0.002);
}

TEST_CASE("covariance examples") {
  const auto gx = pi_about(Vec3::UnitX());
  const auto gy = pi_about(Vec3::UnitY());
  CHECK(std::abs(covariance_pair(gx, gy) + 2.0 / 45.0) < 1e-12);
  CHECK(std::abs(covariance_pair(gx, gx) - 4.0 / 45.0) < 1e-12);
  // parallel and antiparallel axes reach the same upper bound for pi rotations
  CHECK(std::abs(covariance_pair(gx, pi_about(-Vec3::UnitX())) - 4.0 / 45.0) < 1e-12);

  SeededSampler rng(23);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_gate(rng);
    const double d = stats_one_qubit(g).deviation;
    CHECK(std::abs(covariance_pair(g, g) - d * d) < 1e-12);
  }
}

TEST_CASE("covariance agrees with the explicit angle-axis expansion") {
  SeededSampler rng(24);
  for (int i = 0; i < 1000; ++i) {
    const auto gk = random_gate(rng);
    const auto gl = random_gate(rng);
    const double a1 = oracle::a1_explicit(gk.angle(), gk.axis().vector(), gl.angle(), gl.axis().vector());
    const double a2 = (2 * std::cos(gk.angle()) + 1) * (2 * std::cos(gl.angle()) + 1);
    CHECK(std::abs(covariance_pair(gk, gl) - (3 * a1 - 2 * a2) / 180.0) < 1e-13);
  }
}

TEST_CASE("covariance agrees with a brute-force sphere average") {
  SeededSampler rng(25);
  oracle::Sphere sphere(26);
  for (int i = 0; i < 5; ++i) {
    const auto gk = random_gate(rng);
    const auto gl = random_gate(rng);
    const Mat3 rk = oracle::conjugation_rotation(oracle::gate_unitary(gk.angle(), gk.axis().vector()));
    const Mat3 rl = oracle::conjugation_rotation(oracle::gate_unitary(gl.angle(), gl.axis().vector()));
    const double fk = 0.5 - rk.trace() / 6.0, fl = 0.5 - rl.trace() / 6.0;
    const auto est = oracle::sample_mean(200000, [&] {
      const Vec3 a = sphere();
      return (0.5 * (1 - a.dot(rk * a)) - fk) * (0.5 * (1 - a.dot(rl * a)) - fl);
    });
    CHECK(std::abs(est.mean - covariance_pair(gk, gl)) < 5 * est.se + 1e-12);
  }
}

TEST_CASE("property: covariance bounds hold and are attained") {
  SeededSampler rng(27);
  for (int i = 0; i < 1000; ++i) {
    const auto gk = random_gate(rng);
    const auto gl = random_gate(rng);
    const double c = covariance_pair(gk, gl);
    const double dk = stats_one_qubit(gk).deviation, dl = stats_one_qubit(gl).deviation;
    CHECK(c <= dk * dl + 1e-12);
    CHECK(c >= -0.5 * dk * dl - 1e-12);
  }
  for (int i = 0; i < 100; ++i) {
    const Vec3 n = sample_bloch(rng).vector();
    const OneQubitGate a(rng.uniform(0, kTwoPi), Axis(n));
    const OneQubitGate b(rng.uniform(0, kTwoPi), Axis(n));
    const double da = stats_one_qubit(a).deviation, db = stats_one_qubit(b).deviation;
    CHECK(std::abs(covariance_pair(a, b) - da * db) < 1e-12);

    const Vec3 m = n.cross(std::abs(n.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY()).normalized();
    const auto pa = pi_about(n), pb = pi_about(m);
    const double dp = stats_one_qubit(pa).deviation;
    CHECK(std::abs(covariance_pair(pa, pb) + 0.5 * dp * dp) < 1e-12);
  }
}

TEST_CASE("covariance matrix is symmetric with one-qubit variances on the diagonal") {
  SeededSampler rng(28);
  const auto map = random_stochastic_map(rng, 5);
  const Eigen::MatrixXd c = covariance_matrix(map);
  CHECK((c - c.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  for (std::size_t k = 0; k < map.size(); ++k) {
    const double d = stats_one_qubit(gate_from_unitary(map[k].unitary)).deviation;
    CHECK(std::abs(c(k, k) - d * d) < 1e-12);
  }
}

TEST_CASE("stochastic-map statistics") {
  const auto optimal = StochasticMap::from_gates(
      {{1.0 / 3, pi_about(Vec3::UnitX())}, {1.0 / 3, pi_about(Vec3::UnitY())}, {1.0 / 3, pi_about(Vec3::UnitZ())}});
  const auto s3 = stats_stochastic_map(optimal);
  CHECK(std::abs(s3.avg_fidelity - 2.0 / 3.0) < 1e-12);
  CHECK(s3.deviation < 1e-12);

  const auto two = StochasticMap::from_gates({{0.5, pi_about(Vec3::UnitX())}, {0.5, pi_about(Vec3::UnitY())}});
  const auto s2 = stats_stochastic_map(two);
  CHECK(std::abs(s2.avg_fidelity - 2.0 / 3.0) < 1e-12);
  CHECK(std::abs(s2.deviation - 1.0 / (3.0 * kSqrt5)) < 1e-12);

  SeededSampler rng(29);
  const auto g = random_gate(rng);
  const auto single = stats_stochastic_map(StochasticMap::from_gates({{1.0, g}}));
  const auto direct = stats_one_qubit(g);
  CHECK(std::abs(single.avg_fidelity - direct.avg_fidelity) < 1e-12);
  CHECK(std::abs(single.deviation - direct.deviation) < 1e-12);
}

TEST_CASE("stochastic maps reject bad weights") {
  const auto g = pi_about(Vec3::UnitX());
  CHECK_THROWS_AS(StochasticMap::from_gates({{0.5, g}, {0.6, g}}), InvalidInput);
  CHECK_THROWS_AS(StochasticMap::from_gates({{1.5, g}, {-0.5, g}}), InvalidInput);
  CHECK_THROWS_AS(StochasticMap::from_gates({}), InvalidInput);
  CHECK_THROWS_AS(StochasticMap::from_gates({{std::nan(""), g}}), InvalidInput);
  CHECK_NOTHROW(StochasticMap::from_gates({{0.5 + 5e-11, g}, {0.5, g}}));
}

TEST_CASE("property: n-qubit bounds for random stochastic maps") {
  SeededSampler rng(30);
  for (int i = 0; i < 1000; ++i) {
    const auto s = stats_stochastic_map(random_stochastic_map(rng, 2 + i % 4));
    CHECK(s.deviation <= s.avg_fidelity / kSqrt5 + 1e-10);
    CHECK(s.satisfies_global_bound());
    CHECK(s.avg_fidelity <= 2.0 / 3.0 + 1e-12);
  }
  for (int i = 0; i < 1000; ++i) {
    const auto s = stats_stochastic_map(random_stochastic_map(rng, 2));
    CHECK(s.deviation >= s.avg_fidelity / (2 * kSqrt5) - 1e-10);
  }
}

TEST_CASE("affine channel statistics") {
  SeededSampler rng(31);
  const auto g = random_gate(rng);
  const auto a = stats_affine_channel(AffineBlochChannel::from_rotation(rotation_from_gate(g)));
  const auto b = stats_one_qubit(g);
  CHECK(std::abs(a.avg_fidelity - b.avg_fidelity) < 1e-12);
  CHECK(std::abs(a.deviation - b.deviation) < 1e-12);

  const auto depol = stats_affine_channel({Mat3::Zero(), Vec3::Zero()});
  CHECK(depol.avg_fidelity == doctest::Approx(0.5));
  CHECK(depol.deviation == 0.0);

  const auto opt = stats_affine_channel({-Mat3::Identity() / 3.0, Vec3::Zero()});
  CHECK(std::abs(opt.avg_fidelity - 2.0 / 3.0) < 1e-12);
  CHECK(opt.deviation < 1e-12);

  // amplitude-damping-like shift: f = (1 - a.c)/2 has deviation |c|/(2 sqrt 3)
  const auto shifted = stats_affine_channel({Mat3::Zero(), Vec3(0, 0, 0.6)});
  CHECK(std::abs(shifted.deviation - 0.6 / (2 * std::sqrt(3.0))) < 1e-12);
}

TEST_CASE("property: affine statistics match the stochastic-map statistics") {
  SeededSampler rng(32);
  for (int i = 0; i < 500; ++i) {
    const auto map = random_stochastic_map(rng, 1 + i % 5);
    const auto s = stats_stochastic_map(map);
    const auto t = stats_affine_channel({map.bloch_matrix(), Vec3::Zero()});
    CHECK(std::abs(s.avg_fidelity - t.avg_fidelity) < 1e-10);
    CHECK(std::abs(s.deviation - t.deviation) < 1e-10);
  }
}

TEST_CASE("affine channel rejects maps that leave the Bloch ball") {
  CHECK_THROWS_AS(AffineBlochChannel(Mat3::Identity() * 1.1, Vec3::Zero()), InvalidInput);
  CHECK_THROWS_AS(AffineBlochChannel(Mat3::Identity(), Vec3(0, 0, 0.1)), InvalidInput);
  CHECK_NOTHROW(AffineBlochChannel(Mat3::Identity() * 0.5, Vec3(0, 0, 0.5)));
}

TEST_CASE("affine statistics match a brute-force average for reduced channels") {
  SeededSampler rng(33);
  oracle::Sphere sphere(34);
  for (int i = 0; i < 10; ++i) {
    const Eigen::MatrixXcd u = sample_unitary(rng, i % 2 == 0 ? 4 : 8);
    const auto channel = channel_from_unitary(u);
    const auto stats = stats_affine_channel(channel);
    std::vector<double> f(100000);
    for (auto& x : f) x = oracle::pointwise_unot_fidelity(u, oracle::ket(sphere()));
    double m = 0, m2 = 0;
    for (double x : f) m += x;
    m /= f.size();
    for (double x : f) m2 += (x - m) * (x - m);
    const double sd = std::sqrt(m2 / f.size());
    CHECK(std::abs(m - stats.avg_fidelity) < 5 * sd / std::sqrt(double(f.size())));
    // the standard error of a standard deviation is roughly sd / sqrt(2n) for near-normal data
    CHECK(std::abs(sd - stats.deviation) < 5 * sd / std::sqrt(2.0 * f.size()) + 1e-3 * sd);
  }
}

TEST_CASE("three-qubit average fidelity") {
  CHECK(avg_fidelity_3q_unitary(Eigen::MatrixXcd::Identity(8, 8)) == doctest::Approx(0.0));
  Eigen::MatrixXcd flip = Eigen::MatrixXcd::Zero(8, 8);
  for (int m = 0; m < 4; ++m) {
    flip(m, 4 + m) = 1;
    flip(4 + m, m) = 1;
  }
  CHECK(std::abs(avg_fidelity_3q_unitary(flip) - 2.0 / 3.0) < 1e-12);
  CHECK(std::abs(avg_fidelity_3q_unitary(ladder_unitary(optimal_ladder_circuit())) - 2.0 / 3.0) < 1e-12);

  CHECK_THROWS_AS(avg_fidelity_3q_unitary(Eigen::MatrixXcd::Identity(4, 4)), InvalidInput);
  CHECK_THROWS_AS(avg_fidelity_3q_unitary(Eigen::MatrixXcd::Identity(8, 8) * 1.01), InvalidInput);
}

TEST_CASE("three-qubit ceiling against direct state simulation") {
  SeededSampler rng(35);
  oracle::Sphere sphere(36);
  for (int i = 0; i < 20; ++i) {
    const Eigen::MatrixXcd u = sample_unitary(rng, 8);
    const double f = avg_fidelity_3q_unitary(u);
    CHECK(f <= 2.0 / 3.0 + 1e-10);
    CHECK(f >= -1e-12);
    const auto est = oracle::sample_mean(20000, [&] { return oracle::pointwise_unot_fidelity(u, oracle::ket(sphere())); });
    CHECK(std::abs(est.mean - f) < 5 * est.se);
  }
}

TEST_CASE("general 2^n ceiling against direct state simulation") {
  SeededSampler rng(37);
  oracle::Sphere sphere(38);
  for (int dim : {2, 4, 8, 16}) {
    for (int i = 0; i < 5; ++i) {
      const Eigen::MatrixXcd u = sample_unitary(rng, dim);
      const double f = avg_fidelity_unitary(u);
      CHECK(f <= 2.0 / 3.0 + 1e-10);
      if (dim == 8) CHECK(std::abs(f - avg_fidelity_3q_unitary(u)) < 1e-12);
      const auto est = oracle::sample_mean(20000, [&] { return oracle::pointwise_unot_fidelity(u, oracle::ket(sphere())); });
      CHECK(std::abs(est.mean - f) < 5 * est.se + 1e-12);
    }
  }
  CHECK_THROWS_AS(avg_fidelity_unitary(Eigen::MatrixXcd::Identity(6, 6)), InvalidInput);
}

TEST_CASE("region membership") {
  const double f = 2.0 / 3.0;
  CHECK(region_membership({f, f / kSqrt5}, 1) == Region::OnLine);
  CHECK(region_membership({f, f / kSqrt5 + 1e-6}, 1) == Region::Outside);
  CHECK(region_membership({f, 1.0 / (3 * kSqrt5)}, 2) == Region::LowerBoundary);
  CHECK(region_membership({f, f / kSqrt5}, 2) == Region::UpperBoundary);
  CHECK(region_membership({f, 0.2}, 2) == Region::Interior);
  CHECK(region_membership({f, 0.1}, 2) == Region::Outside);
  CHECK(region_membership({f, 0.0}, 3) == Region::LowerBoundary);
  CHECK(region_membership({f, 0.1}, 3) == Region::Interior);
  CHECK(region_membership({f, 0.4}, 3) == Region::Outside);
  CHECK(region_membership({f, 0.0}, 5) == Region::LowerBoundary);
  CHECK(region_membership({f, f / kSqrt5 + 5e-10}, 3) == Region::UpperBoundary);
  CHECK(to_string(Region::Interior) == "interior");
  CHECK_THROWS_AS(region_membership({f, 0.0}, 0), InvalidInput);
}
