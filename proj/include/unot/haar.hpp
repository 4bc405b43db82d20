#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string_view>

#include <Eigen/Core>

#include "unot/rotation.hpp"

namespace unot {

/// Deterministic random source. The engine is std::mt19937_64 seeded through
/// SplitMix64; doubles take the top 53 bits of one engine draw. Identical
/// seeds give bit-identical streams.
class SeededSampler {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64/splitmix64";

  explicit SeededSampler(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  /// Number of raw 64-bit draws consumed so far.
  std::uint64_t position() const { return position_; }

  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double uniform01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Standard normal via the Marsaglia polar method.
  double normal();
  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n);

  /// Independent child stream; the result depends only on (seed, stream).
  SeededSampler split(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::uint64_t position_ = 0;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// SplitMix64 finalizer, used to derive seeds.
std::uint64_t splitmix64(std::uint64_t x);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t sample_count = 0;
};

struct McFidelityStats {
  McEstimate avg_fidelity;
  McEstimate deviation;
};

/// Haar-random pure state on the Bloch sphere (normalized Gaussian triple).
Axis sample_bloch(SeededSampler& sampler);

/// Haar-random dim x dim unitary: Ginibre matrix, Householder QR, and the
/// phases of R's diagonal folded back into Q.
Eigen::MatrixXcd sample_unitary(SeededSampler& sampler, int dim);

using BlochChannelFn = std::function<Vec3(const Vec3&)>;

/// Monte-Carlo estimate of F (sample mean of f = (1 - a.b)/2) and Delta
/// (population standard deviation of f). Requires n_samples >= 100.
McFidelityStats mc_stats(const BlochChannelFn& channel, SeededSampler& sampler, std::int64_t n_samples);

}  // namespace unot
