#include "unot/evolve.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "unot/errors.hpp"

namespace unot {

namespace {

using cd = std::complex<double>;

constexpr double kKrausTol = 1e-9;

}  // namespace

ControlVector::ControlVector(Eigen::VectorXd params) : p_(std::move(params)) {
  if (!p_.allFinite()) {
    throw InvalidInput("control parameters must be finite");
  }
}

GeneratorBasis GeneratorBasis::gell_mann(int dim) {
  if (dim < 2) {
    throw InvalidInput("generator basis needs dimension >= 2");
  }
  GeneratorBasis basis;
  basis.dim_ = dim;
  basis.generators_.reserve(static_cast<std::size_t>(dim * dim - 1));
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(dim, dim);
      g(j, k) = 1.0;
      g(k, j) = 1.0;
      basis.generators_.push_back(std::move(g));
    }
  }
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(dim, dim);
      g(j, k) = cd(0.0, -1.0);
      g(k, j) = cd(0.0, 1.0);
      basis.generators_.push_back(std::move(g));
    }
  }
  for (int l = 1; l < dim; ++l) {
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(dim, dim);
    const double norm = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int m = 0; m < l; ++m) g(m, m) = norm;
    g(l, l) = -l * norm;
    basis.generators_.push_back(std::move(g));
  }
  return basis;
}

Eigen::MatrixXcd GeneratorBasis::combine(const ControlVector& p) const {
  if (static_cast<std::size_t>(p.size()) != generators_.size()) {
    std::ostringstream msg;
    msg << "expected " << generators_.size() << " control parameters, got " << p.size();
    throw InvalidInput(msg.str());
  }
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim_, dim_);
  for (std::size_t j = 0; j < generators_.size(); ++j) {
    h += p[static_cast<Eigen::Index>(j)] * generators_[j];
  }
  return h;
}

Eigen::MatrixXcd unitary_from_controls(const ControlVector& p, const GeneratorBasis& basis) {
  const Eigen::MatrixXcd h = basis.combine(p);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  Eigen::VectorXcd phases(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    phases[k] = std::polar(1.0, -lambda[k]);
  }
  const Eigen::MatrixXcd& v = solver.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

ControlVector controls_from_unitary(const Eigen::MatrixXcd& u, const GeneratorBasis& basis) {
  if (u.rows() != basis.dim() || u.cols() != basis.dim()) {
    throw InvalidInput("unitary does not match the generator basis dimension");
  }
  // A unitary is normal, so its complex Schur form is diagonal up to round-off.
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(u);
  const Eigen::MatrixXcd& q = schur.matrixU();
  const Eigen::MatrixXcd& t = schur.matrixT();
  Eigen::VectorXd angles(u.rows());
  for (Eigen::Index k = 0; k < u.rows(); ++k) {
    angles[k] = std::arg(t(k, k));
  }
  // U = exp(-i H) with H = -Q diag(arg) Q^dag
  const Eigen::MatrixXcd h = -(q * angles.cast<cd>().asDiagonal() * q.adjoint());
  Eigen::VectorXd p(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    p[static_cast<Eigen::Index>(j)] = 0.5 * (h * basis[j]).trace().real();
  }
  return ControlVector(std::move(p));
}

AffineBlochChannel channel_from_unitary(const Eigen::MatrixXcd& u) {
  const Eigen::Index dim = u.rows();
  if (dim != u.cols() || dim < 2 || (dim & (dim - 1)) != 0) {
    throw InvalidInput("unitary must be square with power-of-two dimension");
  }
  const Eigen::Index half = dim / 2;
  const auto& s = pauli();

  Mat2c completeness = Mat2c::Zero();
  Mat2c out_of_identity = Mat2c::Zero();
  std::array<Mat2c, 3> images{Mat2c::Zero(), Mat2c::Zero(), Mat2c::Zero()};
  for (Eigen::Index m = 0; m < half; ++m) {
    Mat2c k;
    k << u(m, 0), u(m, half), u(half + m, 0), u(half + m, half);
    const Mat2c k_dag = k.adjoint();
    completeness += k_dag * k;
    out_of_identity += k * k_dag;
    for (int j = 0; j < 3; ++j) {
      images[static_cast<std::size_t>(j)] += k * s[static_cast<std::size_t>(j)] * k_dag;
    }
  }
  const double residual = (completeness - Mat2c::Identity()).cwiseAbs().maxCoeff();
  if (residual > kKrausTol) {
    std::ostringstream msg;
    msg << "Kraus operators are not complete (residual " << residual << ")";
    throw ConsistencyError(msg.str());
  }
  Mat3 m;
  Vec3 c;
  for (int i = 0; i < 3; ++i) {
    const auto si = static_cast<std::size_t>(i);
    for (int j = 0; j < 3; ++j) {
      m(i, j) = 0.5 * (s[si] * images[static_cast<std::size_t>(j)]).trace().real();
    }
    c[i] = 0.5 * (s[si] * out_of_identity).trace().real();
  }
  return {m, c};
}

FitnessFunction::FitnessFunction() : basis_(GeneratorBasis::gell_mann(8)) {}

Evaluation FitnessFunction::evaluate(const ControlVector& p) const {
  const FidelityStats stats = stats_affine_channel(channel_from_unitary(unitary_from_controls(p, basis_)));
  return {stats, stats.avg_fidelity - stats.deviation};
}

void NoiseModel::validate() const {
  if (!(degree >= 0.0 && degree <= 1.0)) {
    throw InvalidInput("noise degree must lie in [0, 1]");
  }
  if (period < 0) {
    throw InvalidInput("noise period must be non-negative");
  }
}

bool NoiseModel::injects_at(std::int64_t iteration) const {
  if (period == kNever) return false;
  if (period == 0) return iteration == 0;
  return iteration > 0 && iteration % period == 0;
}

ControlVector apply_noise(const ControlVector& p, const NoiseModel& model, SeededSampler& sampler) {
  model.validate();
  Eigen::VectorXd out = p.values();
  for (Eigen::Index j = 0; j < out.size(); ++j) {
    const double eps = sampler.uniform(-kPi, kPi);
    out[j] += model.degree * eps;
  }
  return ControlVector(std::move(out));
}

void DeConfig::validate() const {
  if (population_size < 4) {
    throw InvalidInput("population size must be at least 4");
  }
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
    throw InvalidInput("crossover rate must lie in [0, 1]");
  }
  if (!std::isfinite(differential_weight)) {
    throw InvalidInput("differential weight must be finite");
  }
  if (max_iterations < 1) {
    throw InvalidInput("at least one iteration is required");
  }
}

void DeState::refresh_best() {
  best_index = 0;
  for (std::size_t i = 1; i < evaluations.size(); ++i) {
    if (evaluations[i].fitness > evaluations[best_index].fitness) best_index = i;
  }
}

DeState initial_state(const DeConfig& config, const FitnessFunction& fitness, SeededSampler& sampler) {
  config.validate();
  const auto n_params = static_cast<Eigen::Index>(fitness.basis().size());
  DeState state;
  state.population.reserve(static_cast<std::size_t>(config.population_size));
  for (int i = 0; i < config.population_size; ++i) {
    Eigen::VectorXd p(n_params);
    for (Eigen::Index j = 0; j < n_params; ++j) p[j] = sampler.uniform(-kPi, kPi);
    state.population.emplace_back(std::move(p));
  }
  for (const auto& p : state.population) state.evaluations.push_back(fitness.evaluate(p));
  state.refresh_best();
  return state;
}

ControlVector de_mutate(const DeState& state, std::size_t i, double differential_weight, SeededSampler& sampler) {
  const std::size_t n = state.population.size();
  if (n < 4) {
    throw InvalidInput("mutation needs a population of at least 4");
  }
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t c = 0;
  do { a = sampler.index(n); } while (a == i);
  do { b = sampler.index(n); } while (b == i || b == a);
  do { c = sampler.index(n); } while (c == i || c == a || c == b);
  return ControlVector(state.population[a].values() +
                       differential_weight * (state.population[b].values() - state.population[c].values()));
}

ControlVector de_crossover(const ControlVector& p, const ControlVector& nu, double crossover_rate,
                           SeededSampler& sampler) {
  if (p.size() != nu.size()) {
    throw InvalidInput("crossover needs vectors of equal length");
  }
  Eigen::VectorXd trial = p.values();
  for (Eigen::Index j = 0; j < trial.size(); ++j) {
    if (!(sampler.uniform01() > crossover_rate)) trial[j] = nu[j];
  }
  return ControlVector(std::move(trial));
}

bool de_select(DeState& state, std::size_t i, const ControlVector& trial, const Evaluation& trial_eval) {
  if (!(trial_eval.fitness > state.evaluations[i].fitness)) return false;
  state.population[i] = trial;
  state.evaluations[i] = trial_eval;
  if (trial_eval.fitness > state.evaluations[state.best_index].fitness) state.best_index = i;
  return true;
}

bool de_select(DeState& state, std::size_t i, const ControlVector& trial, const FitnessFunction& fitness) {
  return de_select(state, i, trial, fitness.evaluate(trial));
}

namespace {

TraceRecord record_of(const DeState& state, bool injected) {
  const Evaluation& best = state.best();
  return {state.iteration, best.stats.avg_fidelity, best.stats.deviation, best.fitness, injected};
}

void inject(DeState& state, const NoiseModel& noise, const FitnessFunction& fitness, SeededSampler& sampler) {
  for (std::size_t i = 0; i < state.population.size(); ++i) {
    state.population[i] = apply_noise(state.population[i], noise, sampler);
    state.evaluations[i] = fitness.evaluate(state.population[i]);
  }
  state.refresh_best();
}

}  // namespace

FeedbackResult run_feedback_from(DeState state, const DeConfig& config, const NoiseModel& noise,
                                 const FitnessFunction& fitness, SeededSampler& sampler, const TraceSink& sink) {
  config.validate();
  noise.validate();
  FeedbackResult result;
  result.trace.reserve(static_cast<std::size_t>(config.max_iterations));
  const std::size_t n = state.population.size();
  std::vector<ControlVector> trials(n);
  const std::int64_t start = state.iteration;
  for (std::int64_t t = start + 1; t <= start + config.max_iterations; ++t) {
    state.iteration = t;
    // all trials come from the same snapshot; selection commits afterwards
    for (std::size_t i = 0; i < n; ++i) {
      const ControlVector nu = de_mutate(state, i, config.differential_weight, sampler);
      trials[i] = de_crossover(state.population[i], nu, config.crossover_rate, sampler);
    }
    for (std::size_t i = 0; i < n; ++i) {
      // a trial identical to its parent cannot win a strict comparison
      if (trials[i] == state.population[i]) continue;
      de_select(state, i, trials[i], fitness);
    }
    const bool injected = noise.injects_at(t);
    if (injected) inject(state, noise, fitness, sampler);
    result.trace.push_back(record_of(state, injected));
    if (sink) sink(result.trace.back());
  }
  result.final_state = std::move(state);
  return result;
}

FeedbackResult run_feedback(const DeConfig& config, const NoiseModel& noise, const FitnessFunction& fitness,
                            const TraceSink& sink) {
  config.validate();
  noise.validate();
  SeededSampler sampler(config.seed);
  DeState state = initial_state(config, fitness, sampler);
  const bool injected = noise.injects_at(0);
  if (injected) inject(state, noise, fitness, sampler);
  const TraceRecord first = record_of(state, injected);
  if (sink) sink(first);
  FeedbackResult result = run_feedback_from(std::move(state), config, noise, fitness, sampler, sink);
  result.trace.insert(result.trace.begin(), first);
  return result;
}

}  // namespace unot
