#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "unot/evolve.hpp"

namespace unot {

enum class Experiment { Verify, Tradeoff, NoiseSweep, Optimize, Recover, Compensate };
enum class OutputFormat { Csv, JsonLines };

std::string_view to_string(Experiment experiment);
std::optional<Experiment> parse_experiment(std::string_view name);

/// Settings shared by every experiment. Zero-valued counts mean "use the
/// experiment's default" (see `resolved_trials` / `resolved_stride`).
///
/// Config files hold one `key = value` per line; `#` starts a comment. Keys
/// match the long CLI flags: seed, trials, samples, npop, dweight, cr, iters,
/// eta, period, stride, eta-step, base, bases, alpha-max, alpha-step,
/// tol-scale, out, format.
struct ExperimentConfig {
  Experiment experiment = Experiment::Verify;
  std::uint64_t seed = 1;
  std::int64_t trials = 0;
  std::int64_t samples = 100000;
  int population_size = 10;
  double differential_weight = 0.1;
  double crossover_rate = 0.03;
  std::int64_t iterations = 1000;
  std::optional<double> eta;
  std::optional<std::int64_t> period;  // NoiseModel::kNever disables noise
  std::int64_t stride = 0;
  double eta_step = 0.05;
  std::string base = "de";  // noise-sweep base controls: "de" or "analytic"
  std::int64_t base_count = 20;
  double alpha_max = 0.25;
  double alpha_step = 0.025;
  double tolerance_scale = 1.0;
  std::string out;
  OutputFormat format = OutputFormat::Csv;

  /// Applies one key/value pair; throws InvalidInput on unknown keys or bad values.
  void set(std::string_view key, std::string_view value);
  void validate() const;

  std::int64_t resolved_trials() const;
  std::int64_t resolved_stride() const;
  double resolved_eta() const;
  DeConfig de_config(std::uint64_t run_seed) const;

  /// Effective settings, in a stable order, as `key = value` pairs.
  std::vector<std::pair<std::string, std::string>> effective() const;
};

/// Reads `path` and applies its entries on top of `config`.
ExperimentConfig load_config_file(const std::string& path, ExperimentConfig config);

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// CSV with a header line, or one JSON object per row. Doubles use 12
/// significant digits.
void write_table(const Table& table, OutputFormat format, std::ostream& out);

struct ExperimentResult {
  Table table;
  bool ok = true;
  std::vector<std::string> report;
};

/// Seed of trial k under master seed `master`.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t k);

/// Runs `count(fn)` independent tasks on worker threads; fn(i) must only
/// touch slot i of its output.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

struct IterationSummary {
  std::int64_t iteration = 0;
  double mean_fidelity = 0.0;
  double std_fidelity = 0.0;
  double median_fidelity = 0.0;
  double mean_deviation = 0.0;
  double std_deviation = 0.0;
  double median_deviation = 0.0;
  double mean_fitness = 0.0;
  bool noise_injected = false;
};

/// `trials` feedback runs with seeds trial_seed(config.seed, k).
std::vector<FeedbackResult> run_trials(const ExperimentConfig& config, const NoiseModel& noise,
                                       const FitnessFunction& fitness);

/// Per-iteration statistics across runs of equal length.
std::vector<IterationSummary> summarize(const std::vector<FeedbackResult>& runs);

struct NoisePoint {
  double eta = 0.0;
  double mean_fidelity = 0.0;
  double std_fidelity = 0.0;
  double mean_deviation = 0.0;
  double std_deviation = 0.0;
  std::int64_t trials = 0;
};

/// Base controls for the noise sweep. "de": the best member of each of
/// `base_count` noise-free feedback runs; "analytic": the principal-branch
/// controls of the optimal three-qubit ladder circuit.
std::vector<ControlVector> noise_sweep_bases(const ExperimentConfig& config, const FitnessFunction& fitness);

/// Applies noise of degree `eta` to the bases round-robin over `trials` trials.
NoisePoint noise_point(const std::vector<ControlVector>& bases, double eta, std::int64_t trials,
                       SeededSampler& sampler, const FitnessFunction& fitness);

struct VerifyFamily {
  std::string name;
  std::int64_t cases = 0;
  double worst_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

std::vector<VerifyFamily> run_verify(const ExperimentConfig& config);

ExperimentResult cmd_verify(const ExperimentConfig& config);
ExperimentResult cmd_tradeoff(const ExperimentConfig& config);
ExperimentResult cmd_noise_sweep(const ExperimentConfig& config);
ExperimentResult cmd_optimize(const ExperimentConfig& config);
ExperimentResult cmd_recover(const ExperimentConfig& config);
ExperimentResult cmd_compensate(const ExperimentConfig& config);

ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace unot
