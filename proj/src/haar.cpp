#include "unot/haar.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/QR>

#include "unot/errors.hpp"

namespace unot {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SeededSampler::SeededSampler(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

std::uint64_t SeededSampler::next_u64() {
  ++position_;
  return engine_();
}

double SeededSampler::uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double SeededSampler::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * scale;
  has_spare_ = true;
  return u * scale;
}

std::size_t SeededSampler::index(std::size_t n) {
  if (n == 0) {
    throw InvalidInput("cannot draw an index from an empty range");
  }
  // Lemire-style rejection keeps the draw unbiased
  const std::uint64_t bound = n;
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return static_cast<std::size_t>(r % bound);
  }
}

SeededSampler SeededSampler::split(std::uint64_t stream) const {
  return SeededSampler(splitmix64(seed_ ^ splitmix64(stream + 0x632be59bd9b4e019ULL)));
}

Axis sample_bloch(SeededSampler& sampler) {
  for (;;) {
    const Vec3 g(sampler.normal(), sampler.normal(), sampler.normal());
    if (g.squaredNorm() > 1e-24) return Axis::normalized(g);
  }
}

Eigen::MatrixXcd sample_unitary(SeededSampler& sampler, int dim) {
  if (dim < 2) {
    throw InvalidInput("unitary dimension must be at least 2");
  }
  const double scale = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd z(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const double re = sampler.normal();
      const double im = sampler.normal();
      z(i, j) = std::complex<double>(re, im) * scale;
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const std::complex<double> d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

McFidelityStats mc_stats(const BlochChannelFn& channel, SeededSampler& sampler, std::int64_t n_samples) {
  if (n_samples < 100) {
    throw InvalidInput("Monte-Carlo estimates need at least 100 samples");
  }
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n_samples));
  double sum = 0.0;
  for (std::int64_t i = 0; i < n_samples; ++i) {
    const Vec3 a = sample_bloch(sampler).vector();
    // a.a stands in for 1 so that the identity channel scores exactly zero
    const double f = 0.5 * (a.dot(a) - a.dot(channel(a)));
    values.push_back(f);
    sum += f;
  }
  const auto n = static_cast<double>(n_samples);
  const double mean = sum / n;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double f : values) {
    const double d2 = (f - mean) * (f - mean);
    m2 += d2;
    m4 += d2 * d2;
  }
  const double variance = m2 / n;
  m4 /= n;

  const double sd = std::sqrt(variance);
  McFidelityStats out;
  out.avg_fidelity = {mean, std::sqrt(m2 / (n - 1.0)) / std::sqrt(n), n_samples};
  // delta method: Var(s) ~ (m4 - s^4) / (4 s^2 n)
  const double sd_err = variance > 0.0 ? std::sqrt(std::max(0.0, m4 - variance * variance) / (4.0 * variance * n)) : 0.0;
  out.deviation = {sd, sd_err, n_samples};
  return out;
}

}  // namespace unot
