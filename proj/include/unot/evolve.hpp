#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Core>

#include "unot/fidelity.hpp"
#include "unot/haar.hpp"

namespace unot {

/// Real control parameters p of U(p) = exp(-i p.G).
class ControlVector {
 public:
  ControlVector() = default;
  explicit ControlVector(Eigen::VectorXd params);
  static ControlVector zero(Eigen::Index n) { return ControlVector(Eigen::VectorXd::Zero(n)); }

  const Eigen::VectorXd& values() const { return p_; }
  Eigen::Index size() const { return p_.size(); }
  double operator[](Eigen::Index j) const { return p_[j]; }

  bool operator==(const ControlVector& other) const { return p_ == other.p_; }

 private:
  Eigen::VectorXd p_;
};

/// Generalized Gell-Mann basis of su(d), normalized to Tr(g_i g_j) = 2 delta_ij.
///
/// Order: symmetric E_jk + E_kj for j < k (row-major), then antisymmetric
/// -i E_jk + i E_kj in the same order, then the d-1 diagonal generators
/// sqrt(2/(l(l+1))) (sum_{m<l} E_mm - l E_ll), l = 1..d-1.
class GeneratorBasis {
 public:
  static GeneratorBasis gell_mann(int dim);

  int dim() const { return dim_; }
  std::size_t size() const { return generators_.size(); }
  const Eigen::MatrixXcd& operator[](std::size_t i) const { return generators_[i]; }
  const std::vector<Eigen::MatrixXcd>& generators() const { return generators_; }

  /// sum_j p_j g_j
  Eigen::MatrixXcd combine(const ControlVector& p) const;

 private:
  int dim_ = 0;
  std::vector<Eigen::MatrixXcd> generators_;
};

/// exp(-i p.G) via the eigendecomposition of the Hermitian p.G.
Eigen::MatrixXcd unitary_from_controls(const ControlVector& p, const GeneratorBasis& basis);

/// Principal-branch inverse of `unitary_from_controls`, exact up to a global
/// phase: p_j = Tr(H g_j)/2 where U = exp(-i H).
ControlVector controls_from_unitary(const Eigen::MatrixXcd& u, const GeneratorBasis& basis);

/// Reduced dynamics of the system qubit (most significant) when ancillas
/// start in |0...0>. Kraus operators K_m = <m|U|0>, M_ij = Tr(sigma_i
/// sum K sigma_j K^dag)/2, c_i = Tr(sigma_i sum K K^dag)/2.
AffineBlochChannel channel_from_unitary(const Eigen::MatrixXcd& u);

struct Evaluation {
  FidelityStats stats;
  double fitness = 0.0;  // F - Delta
};

/// Fitness of controls on the three-qubit (d = 8) space.
class FitnessFunction {
 public:
  FitnessFunction();

  const GeneratorBasis& basis() const { return basis_; }
  Evaluation evaluate(const ControlVector& p) const;
  double operator()(const ControlVector& p) const { return evaluate(p).fitness; }

 private:
  GeneratorBasis basis_;
};

/// Operational noise p -> p + eta eps with eps_j uniform in [-pi, pi].
struct NoiseModel {
  static constexpr std::int64_t kNever = std::numeric_limits<std::int64_t>::max();

  double degree = 0.0;
  /// 0: one injection at iteration 0; k > 0: at every k-th iteration;
  /// kNever: no injection.
  std::int64_t period = kNever;

  static NoiseModel none() { return {}; }
  void validate() const;
  bool injects_at(std::int64_t iteration) const;
};

ControlVector apply_noise(const ControlVector& p, const NoiseModel& model, SeededSampler& sampler);

struct DeConfig {
  int population_size = 10;
  double differential_weight = 0.1;
  double crossover_rate = 0.03;
  std::int64_t max_iterations = 1000;
  std::uint64_t seed = 1;

  void validate() const;
};

struct DeState {
  std::vector<ControlVector> population;
  std::vector<Evaluation> evaluations;
  std::size_t best_index = 0;
  std::int64_t iteration = 0;

  const Evaluation& best() const { return evaluations[best_index]; }
  void refresh_best();
};

/// Uniform [-pi, pi] population of `config.population_size` members.
DeState initial_state(const DeConfig& config, const FitnessFunction& fitness, SeededSampler& sampler);

/// nu_i = p_a + D (p_b - p_c) with a, b, c mutually distinct and distinct from i.
ControlVector de_mutate(const DeState& state, std::size_t i, double differential_weight, SeededSampler& sampler);

/// Component j keeps p_j when r_j > CR and takes nu_j otherwise.
ControlVector de_crossover(const ControlVector& p, const ControlVector& nu, double crossover_rate,
                           SeededSampler& sampler);

/// Replaces member i only on strict improvement. Returns true on replacement.
bool de_select(DeState& state, std::size_t i, const ControlVector& trial, const Evaluation& trial_eval);
bool de_select(DeState& state, std::size_t i, const ControlVector& trial, const FitnessFunction& fitness);

struct TraceRecord {
  std::int64_t iteration = 0;
  double best_fidelity = 0.0;
  double best_deviation = 0.0;
  double best_fitness = 0.0;
  bool noise_injected = false;
};

using TraceSink = std::function<void(const TraceRecord&)>;

struct FeedbackResult {
  DeState final_state;
  std::vector<TraceRecord> trace;
};

/// Runs the differential-evolution feedback loop. Record 0 describes the
/// initial population and record t the population at the end of iteration
/// t. Scheduled noise hits every member after that iteration's sweep, so a
/// flagged record shows the freshly contaminated population.
FeedbackResult run_feedback(const DeConfig& config, const NoiseModel& noise, const FitnessFunction& fitness,
                            const TraceSink& sink = {});

/// Same loop, continuing from an existing population.
FeedbackResult run_feedback_from(DeState state, const DeConfig& config, const NoiseModel& noise,
                                 const FitnessFunction& fitness, SeededSampler& sampler, const TraceSink& sink = {});

}  // namespace unot
