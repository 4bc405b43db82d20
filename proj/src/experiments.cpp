#include "unot/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include <Eigen/Geometry>

#include "unot/circuit.hpp"
#include "unot/errors.hpp"
#include "unot/fidelity.hpp"
#include "unot/sampling.hpp"

namespace unot {

namespace {

constexpr std::pair<Experiment, std::string_view> kExperimentNames[] = {
    {Experiment::Verify, "verify"},         {Experiment::Tradeoff, "tradeoff"},
    {Experiment::NoiseSweep, "noise-sweep"}, {Experiment::Optimize, "optimize"},
    {Experiment::Recover, "recover"},       {Experiment::Compensate, "compensate"},
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw InvalidInput("bad value for '" + std::string(key) + "': '" + std::string(text) + "'");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) throw InvalidInput("non-finite value for '" + std::string(key) + "'");
  }
  return value;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string period_text(std::int64_t period) {
  return period == NoiseModel::kNever ? std::string("never") : std::to_string(period);
}

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

// Sample standard deviation (n - 1); zero for fewer than two values.
double std_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

double median_of(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

bool row_in_bounds(double f, double delta) {
  return f >= 0.0 && f <= 1.0 && delta >= 0.0 && delta <= 0.5;
}

}  // namespace

std::string_view to_string(Experiment experiment) {
  for (const auto& [e, name] : kExperimentNames) {
    if (e == experiment) return name;
  }
  return "unknown";
}

std::optional<Experiment> parse_experiment(std::string_view name) {
  for (const auto& [e, n] : kExperimentNames) {
    if (n == name) return e;
  }
  return std::nullopt;
}

void ExperimentConfig::set(std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "experiment") {
    const auto e = parse_experiment(value);
    if (!e) throw InvalidInput("unknown experiment '" + std::string(value) + "'");
    experiment = *e;
  } else if (key == "seed") {
    seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "trials") {
    trials = parse_number<std::int64_t>(key, value);
  } else if (key == "samples") {
    samples = parse_number<std::int64_t>(key, value);
  } else if (key == "npop") {
    population_size = parse_number<int>(key, value);
  } else if (key == "dweight") {
    differential_weight = parse_number<double>(key, value);
  } else if (key == "cr") {
    crossover_rate = parse_number<double>(key, value);
  } else if (key == "iters") {
    iterations = parse_number<std::int64_t>(key, value);
  } else if (key == "eta") {
    eta = value == "default" ? std::nullopt : std::optional(parse_number<double>(key, value));
  } else if (key == "period") {
    if (value == "default") {
      period.reset();
    } else {
      period = value == "never" ? NoiseModel::kNever : parse_number<std::int64_t>(key, value);
    }
  } else if (key == "stride") {
    stride = parse_number<std::int64_t>(key, value);
  } else if (key == "eta-step") {
    eta_step = parse_number<double>(key, value);
  } else if (key == "base") {
    base = std::string(value);
  } else if (key == "bases") {
    base_count = parse_number<std::int64_t>(key, value);
  } else if (key == "alpha-max") {
    alpha_max = parse_number<double>(key, value);
  } else if (key == "alpha-step") {
    alpha_step = parse_number<double>(key, value);
  } else if (key == "tol-scale") {
    tolerance_scale = parse_number<double>(key, value);
  } else if (key == "out") {
    out = value == "-" ? std::string() : std::string(value);
  } else if (key == "rng") {
    // informational in the echo; accepted back only if it names this build's generator
    if (value != SeededSampler::kAlgorithm) throw InvalidInput("unsupported rng '" + std::string(value) + "'");
  } else if (key == "format") {
    if (value == "csv") {
      format = OutputFormat::Csv;
    } else if (value == "jsonl") {
      format = OutputFormat::JsonLines;
    } else {
      throw InvalidInput("format must be csv or jsonl, got '" + std::string(value) + "'");
    }
  } else {
    throw InvalidInput("unknown config key '" + std::string(key) + "'");
  }
}

void ExperimentConfig::validate() const {
  if (trials < 0) throw InvalidInput("trials must be >= 1");
  if (samples < 100) throw InvalidInput("samples must be >= 100");
  if (eta && !(*eta >= 0.0 && *eta <= 1.0)) throw InvalidInput("eta must lie in [0, 1]");
  if (period && *period < 0) throw InvalidInput("period must be >= 0 or 'never'");
  if (stride < 0) throw InvalidInput("stride must be >= 1");
  if (!(eta_step > 0.0 && eta_step <= 1.0)) throw InvalidInput("eta-step must lie in (0, 1]");
  if (base != "de" && base != "analytic") throw InvalidInput("base must be 'de' or 'analytic'");
  if (base_count < 1) throw InvalidInput("bases must be >= 1");
  if (!(alpha_max >= 0.0 && alpha_max < 0.3)) throw InvalidInput("alpha-max must lie in [0, 0.3)");
  if (!(alpha_step > 0.0)) throw InvalidInput("alpha-step must be positive");
  if (!(tolerance_scale >= 0.0)) throw InvalidInput("tol-scale must be >= 0");
  de_config(seed).validate();
}

std::int64_t ExperimentConfig::resolved_trials() const {
  if (trials > 0) return trials;
  switch (experiment) {
    case Experiment::Tradeoff:
    case Experiment::NoiseSweep:
      return 1000;
    case Experiment::Optimize:
    case Experiment::Recover:
      return 20;
    default:
      return 1;
  }
}

std::int64_t ExperimentConfig::resolved_stride() const {
  if (stride > 0) return stride;
  return experiment == Experiment::Optimize ? 20 : 1;
}

double ExperimentConfig::resolved_eta() const {
  if (eta) return *eta;
  return experiment == Experiment::Recover ? 0.5 : 0.1;
}

DeConfig ExperimentConfig::de_config(std::uint64_t run_seed) const {
  DeConfig de;
  de.population_size = population_size;
  de.differential_weight = differential_weight;
  de.crossover_rate = crossover_rate;
  de.max_iterations = iterations;
  de.seed = run_seed;
  return de;
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::effective() const {
  std::vector<std::pair<std::string, std::string>> kv = {
      {"experiment", std::string(to_string(experiment))},
      {"seed", std::to_string(seed)},
      {"rng", std::string(SeededSampler::kAlgorithm)},
      {"trials", std::to_string(resolved_trials())},
      {"samples", std::to_string(samples)},
      {"npop", std::to_string(population_size)},
      {"dweight", format_double(differential_weight)},
      {"cr", format_double(crossover_rate)},
      {"iters", std::to_string(iterations)},
      {"eta", eta ? format_double(*eta) : std::string("default")},
      {"period", period ? period_text(*period) : std::string("default")},
      {"stride", std::to_string(resolved_stride())},
      {"eta-step", format_double(eta_step)},
      {"base", base},
      {"bases", std::to_string(base_count)},
      {"alpha-max", format_double(alpha_max)},
      {"alpha-step", format_double(alpha_step)},
      {"tol-scale", format_double(tolerance_scale)},
      {"out", out.empty() ? std::string("-") : out},
      {"format", format == OutputFormat::Csv ? "csv" : "jsonl"},
  };
  return kv;
}

ExperimentConfig load_config_file(const std::string& path, ExperimentConfig config) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read config file '" + path + "'");
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidInput(path + ":" + std::to_string(line_no) + ": expected key = value");
    }
    config.set(view.substr(0, eq), view.substr(eq + 1));
  }
  return config;
}

void write_table(const Table& table, OutputFormat format, std::ostream& out) {
  auto cell_text = [](const Cell& c, bool quote_strings) {
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&c)) {
      if (!std::isfinite(*d)) return quote_strings ? std::string("null") : std::string("nan");
      return format_double(*d);
    }
    const auto& s = std::get<std::string>(c);
    if (!quote_strings) return s;
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"' || ch == '\\') q += '\\';
      q += ch;
    }
    return q + "\"";
  };

  if (format == OutputFormat::Csv) {
    for (std::size_t j = 0; j < table.columns.size(); ++j) out << (j ? "," : "") << table.columns[j];
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << cell_text(row[j], false);
      out << '\n';
    }
    return;
  }
  for (const auto& row : table.rows) {
    out << '{';
    for (std::size_t j = 0; j < row.size(); ++j) {
      out << (j ? "," : "") << '"' << table.columns[j] << "\":" << cell_text(row[j], true);
    }
    out << "}\n";
  }
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t k) {
  return splitmix64(splitmix64(master) + k);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count && !failed; i = next++) {
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<FeedbackResult> run_trials(const ExperimentConfig& config, const NoiseModel& noise,
                                       const FitnessFunction& fitness) {
  const auto n = static_cast<std::size_t>(config.resolved_trials());
  std::vector<FeedbackResult> runs(n);
  parallel_for(n, [&](std::size_t k) {
    runs[k] = run_feedback(config.de_config(trial_seed(config.seed, k)), noise, fitness);
  });
  return runs;
}

std::vector<IterationSummary> summarize(const std::vector<FeedbackResult>& runs) {
  std::vector<IterationSummary> out;
  if (runs.empty()) return out;
  const std::size_t length = runs.front().trace.size();
  for (const auto& r : runs) {
    if (r.trace.size() != length) throw InvalidInput("runs have different trace lengths");
  }
  std::vector<double> f(runs.size()), d(runs.size()), xi(runs.size());
  for (std::size_t t = 0; t < length; ++t) {
    bool injected = false;
    for (std::size_t k = 0; k < runs.size(); ++k) {
      const auto& rec = runs[k].trace[t];
      f[k] = rec.best_fidelity;
      d[k] = rec.best_deviation;
      xi[k] = rec.best_fitness;
      injected = injected || rec.noise_injected;
    }
    IterationSummary s;
    s.iteration = runs.front().trace[t].iteration;
    s.mean_fidelity = mean_of(f);
    s.std_fidelity = std_of(f);
    s.median_fidelity = median_of(f);
    s.mean_deviation = mean_of(d);
    s.std_deviation = std_of(d);
    s.median_deviation = median_of(d);
    s.mean_fitness = mean_of(xi);
    s.noise_injected = injected;
    out.push_back(s);
  }
  return out;
}

std::vector<ControlVector> noise_sweep_bases(const ExperimentConfig& config, const FitnessFunction& fitness) {
  if (config.base == "analytic") {
    const auto u = ladder_unitary(optimal_ladder_circuit());
    return {controls_from_unitary(u, fitness.basis())};
  }
  ExperimentConfig base_cfg = config;
  base_cfg.trials = config.base_count;
  const auto runs = run_trials(base_cfg, NoiseModel::none(), fitness);
  std::vector<ControlVector> bases;
  bases.reserve(runs.size());
  for (const auto& r : runs) bases.push_back(r.final_state.population[r.final_state.best_index]);
  return bases;
}

NoisePoint noise_point(const std::vector<ControlVector>& bases, double eta, std::int64_t trials,
                       SeededSampler& sampler, const FitnessFunction& fitness) {
  if (bases.empty()) throw InvalidInput("noise_point needs at least one base");
  if (trials < 1) throw InvalidInput("trials must be >= 1");
  const NoiseModel model{eta, 0};
  std::vector<double> f, d;
  f.reserve(static_cast<std::size_t>(trials));
  d.reserve(static_cast<std::size_t>(trials));
  for (std::int64_t k = 0; k < trials; ++k) {
    const auto& base = bases[static_cast<std::size_t>(k) % bases.size()];
    const auto ev = fitness.evaluate(apply_noise(base, model, sampler));
    f.push_back(ev.stats.avg_fidelity);
    d.push_back(ev.stats.deviation);
  }
  return {eta, mean_of(f), std_of(f), mean_of(d), std_of(d), trials};
}

// ---------------------------------------------------------------------------
// verify

namespace {

struct Family {
  std::string name;
  double tolerance;
  std::int64_t cases = 0;
  double worst = 0.0;

  void add(double residual) {
    ++cases;
    // NaN must never look like a pass
    worst = std::isnan(residual) ? std::numeric_limits<double>::infinity() : std::max(worst, residual);
  }
};

double band_violation(const FidelityStats& s, double lower_ratio) {
  const double upper = s.avg_fidelity / std::sqrt(5.0);
  const double lower = lower_ratio * upper;
  return std::max({0.0, s.deviation - upper, lower - s.deviation});
}

}  // namespace

std::vector<VerifyFamily> run_verify(const ExperimentConfig& config) {
  config.validate();
  SeededSampler root(config.seed);
  const double scale = config.tolerance_scale;

  Family trace{"trace-identities", 1e-12};
  Family law{"one-qubit-law", 1e-12};
  {
    auto rng = root.split(1);
    for (int i = 0; i < 1000; ++i) {
      const auto g = random_gate(rng);
      const Mat3 r = rotation_from_gate(g).matrix();
      const double tr = r.trace();
      trace.add(std::max(std::abs(tr - (2.0 * std::cos(g.angle()) + 1.0)),
                         std::abs(tr * tr - (r * r).trace() - 2.0 * tr)));
      const auto s = stats_one_qubit(g);
      law.add(std::abs(s.deviation - s.avg_fidelity / std::sqrt(5.0)));
    }
  }

  Family cov{"covariance-bounds", 1e-12};
  {
    auto rng = root.split(2);
    for (int i = 0; i < 1000; ++i) {
      const auto gk = random_gate(rng);
      const auto gl = random_gate(rng);
      const double c = covariance_pair(gk, gl);
      const double dk = stats_one_qubit(gk).deviation;
      const double dl = stats_one_qubit(gl).deviation;
      cov.add(std::max({0.0, c - dk * dl, -0.5 * dk * dl - c}));
    }
    // attained at parallel and orthogonal axes
    for (int i = 0; i < 100; ++i) {
      const auto gk = random_gate(rng);
      const double tl = rng.uniform(0.0, kTwoPi);
      const OneQubitGate parallel(tl, gk.axis());
      const double dk = stats_one_qubit(gk).deviation;
      cov.add(std::abs(covariance_pair(gk, parallel) - dk * stats_one_qubit(parallel).deviation));
      const OneQubitGate pk(kPi, gk.axis());
      const Vec3 n = gk.axis().vector();
      const Vec3 helper = std::abs(n.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
      const OneQubitGate pl(kPi, Axis::normalized(n.cross(helper)));
      const double dp = stats_one_qubit(pk).deviation;
      cov.add(std::abs(covariance_pair(pk, pl) + 0.5 * dp * dp));
    }
  }

  Family global{"global-bound", 1e-12};
  Family region2{"region-2q", 1e-9};
  Family region3{"region-3q", 1e-9};
  {
    auto rng = root.split(3);
    for (int i = 0; i < 1000; ++i) {
      const auto map = random_stochastic_map(rng, 1 + static_cast<std::size_t>(i % 6));
      const auto s = stats_stochastic_map(map);
      global.add(std::max(0.0, s.deviation * s.deviation - s.avg_fidelity * (1.0 - s.avg_fidelity)));
      region2.add(band_violation(stats_stochastic_map(stochastic_map_from_circuit(random_ladder_circuit(rng, 2))),
                                 0.5));
      region3.add(band_violation(stats_stochastic_map(stochastic_map_from_circuit(random_ladder_circuit(rng, 3))),
                                 0.0));
    }
  }

  Family ceiling{"ceiling-3q", 1e-10};
  Family ceiling_mc{"ceiling-3q-oracle-sigma", 5.0};
  {
    auto rng = root.split(4);
    for (int i = 0; i < 100; ++i) {
      const auto u = sample_unitary(rng, 8);
      const double f = avg_fidelity_3q_unitary(u);
      ceiling.add(std::max(0.0, f - 2.0 / 3.0));
      const auto channel = channel_from_unitary(u);
      auto mc_rng = rng.split(static_cast<std::uint64_t>(i));
      const auto est = mc_stats([&](const Vec3& a) { return channel.apply(a); }, mc_rng, config.samples);
      ceiling_mc.add(std::abs(est.avg_fidelity.mean - f) / est.avg_fidelity.std_error);
    }
  }

  Family equivalence{"stochastic-map-equivalence", 1e-10};
  {
    auto rng = root.split(5);
    for (int i = 0; i < 200; ++i) {
      const auto circuit = random_ladder_circuit(rng, 1 + i % 4);
      const auto map = stochastic_map_from_circuit(circuit);
      for (int j = 0; j < 10; ++j) {
        const auto in = random_pure_state(rng);
        const Eigen::Matrix2cd direct = simulate_full(circuit, in).matrix();
        equivalence.add((direct - map.apply(in.matrix())).cwiseAbs().maxCoeff());
      }
    }
  }

  std::vector<VerifyFamily> out;
  for (const Family* fam : {&trace, &law, &cov, &global, &region2, &region3, &ceiling, &ceiling_mc, &equivalence}) {
    const double tol = fam->tolerance * scale;
    out.push_back({fam->name, fam->cases, fam->worst, tol, fam->worst < tol});
  }
  return out;
}

ExperimentResult cmd_verify(const ExperimentConfig& config) {
  ExperimentResult result;
  result.table.columns = {"family", "cases", "worst_residual", "tolerance", "status"};
  for (const auto& fam : run_verify(config)) {
    result.table.rows.push_back(
        {fam.name, fam.cases, fam.worst_residual, fam.tolerance, std::string(fam.passed ? "pass" : "fail")});
    result.report.push_back((fam.passed ? "PASS " : "FAIL ") + fam.name + " cases=" + std::to_string(fam.cases) +
                            " worst=" + format_double(fam.worst_residual) + " tol=" + format_double(fam.tolerance));
    result.ok = result.ok && fam.passed;
  }
  return result;
}

// ---------------------------------------------------------------------------
// tradeoff

ExperimentResult cmd_tradeoff(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result;
  result.table.columns = {"qubits", "index", "F", "Delta", "region", "seed"};
  const std::int64_t n = config.resolved_trials();
  for (int q = 1; q <= 3; ++q) {
    SeededSampler rng(trial_seed(config.seed, static_cast<std::uint64_t>(q)));
    std::int64_t violations = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      const auto stats = stats_stochastic_map(stochastic_map_from_circuit(random_ladder_circuit(rng, q)));
      const Region region = region_membership(stats, q);
      if (!is_admissible(region) || !row_in_bounds(stats.avg_fidelity, stats.deviation)) ++violations;
      result.table.rows.push_back({std::int64_t{q}, i, stats.avg_fidelity, stats.deviation,
                                   std::string(to_string(region)), static_cast<std::int64_t>(config.seed)});
    }
    result.report.push_back(std::to_string(q) + "-qubit: " + std::to_string(n) + " circuits, " +
                            std::to_string(violations) + " region violations");
    result.ok = result.ok && violations == 0;
  }
  return result;
}

// ---------------------------------------------------------------------------
// noise-sweep

ExperimentResult cmd_noise_sweep(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result;
  result.table.columns = {"eta", "mean_F", "std_F", "mean_Delta", "std_Delta", "trials", "base", "seed"};

  std::vector<double> grid;
  if (config.eta) {
    grid.push_back(*config.eta);
  } else {
    const auto steps = static_cast<int>(std::floor(1.0 / config.eta_step + 1e-9));
    for (int k = 0; k <= steps; ++k) grid.push_back(std::min(1.0, k * config.eta_step));
    if (grid.back() < 1.0 - 1e-12) grid.push_back(1.0);
  }

  const FitnessFunction fitness;
  const auto bases = noise_sweep_bases(config, fitness);
  const SeededSampler root(config.seed);
  std::vector<NoisePoint> points(grid.size());
  parallel_for(grid.size(), [&](std::size_t k) {
    auto rng = root.split(k + 1);
    points[k] = noise_point(bases, grid[k], config.resolved_trials(), rng, fitness);
  });

  for (const auto& p : points) {
    result.ok = result.ok && row_in_bounds(p.mean_fidelity, p.mean_deviation);
    result.table.rows.push_back({p.eta, p.mean_fidelity, p.std_fidelity, p.mean_deviation, p.std_deviation,
                                 p.trials, config.base, static_cast<std::int64_t>(config.seed)});
    result.report.push_back("eta=" + format_double(p.eta) + " F=" + format_double(p.mean_fidelity) + " +- " +
                            format_double(p.std_fidelity) + " Delta=" + format_double(p.mean_deviation) + " +- " +
                            format_double(p.std_deviation));
  }
  return result;
}

// ---------------------------------------------------------------------------
// optimize / recover

namespace {

const std::vector<std::string> kTraceColumns = {
    "period", "iteration", "mean_F", "std_F", "median_F", "mean_Delta", "std_Delta",
    "median_Delta", "mean_fitness", "noise", "trials", "seed"};

void append_trace_rows(Table& table, const std::vector<IterationSummary>& rows, std::int64_t period,
                       const ExperimentConfig& config, bool& ok) {
  const std::int64_t stride = config.resolved_stride();
  const std::int64_t last = rows.empty() ? 0 : rows.back().iteration;
  for (const auto& s : rows) {
    if (s.iteration % stride != 0 && s.iteration != last && !s.noise_injected) continue;
    ok = ok && row_in_bounds(s.mean_fidelity, s.mean_deviation) && s.std_fidelity >= 0.0 && s.std_deviation >= 0.0;
    table.rows.push_back({period_text(period), s.iteration, s.mean_fidelity, s.std_fidelity, s.median_fidelity,
                          s.mean_deviation, s.std_deviation, s.median_deviation, s.mean_fitness,
                          std::int64_t{s.noise_injected ? 1 : 0}, config.resolved_trials(),
                          static_cast<std::int64_t>(config.seed)});
  }
}

}  // namespace

ExperimentResult cmd_optimize(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result;
  result.table.columns = kTraceColumns;
  const FitnessFunction fitness;
  const auto summary = summarize(run_trials(config, NoiseModel::none(), fitness));
  append_trace_rows(result.table, summary, NoiseModel::kNever, config, result.ok);
  const auto& fin = summary.back();
  result.report.push_back("final iteration " + std::to_string(fin.iteration) + ": median F=" +
                          format_double(fin.median_fidelity) + " median Delta=" +
                          format_double(fin.median_deviation));
  return result;
}

ExperimentResult cmd_recover(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result;
  result.table.columns = kTraceColumns;
  const FitnessFunction fitness;
  const std::vector<std::int64_t> periods =
      config.period ? std::vector<std::int64_t>{*config.period} : std::vector<std::int64_t>{50, 100};
  for (const std::int64_t period : periods) {
    const NoiseModel noise{config.resolved_eta(), period};
    const auto summary = summarize(run_trials(config, noise, fitness));
    append_trace_rows(result.table, summary, period, config, result.ok);

    std::int64_t injections = 0;
    double worst_drop = 0.0;
    double weakest_recovery = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < summary.size(); ++t) {
      if (!summary[t].noise_injected) continue;
      ++injections;
      worst_drop = std::max(worst_drop, summary[t].median_fidelity);
      double peak = summary[t].median_fidelity;
      std::size_t u = t + 1;
      for (; u < summary.size() && !summary[u].noise_injected; ++u) peak = std::max(peak, summary[u].median_fidelity);
      if (u > t + 1) weakest_recovery = std::min(weakest_recovery, peak);
    }
    std::string line = "period " + period_text(period) + ": " + std::to_string(injections) + " injections";
    if (injections > 0) {
      line += ", highest median F at injection " + format_double(worst_drop);
      if (std::isfinite(weakest_recovery)) line += ", lowest median recovery peak " + format_double(weakest_recovery);
    }
    result.report.push_back(line);
  }
  return result;
}

// ---------------------------------------------------------------------------
// compensate

ExperimentResult cmd_compensate(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result;
  result.table.columns = {"alpha", "F_3", "Delta_3", "F_4", "Delta_4", "Delta_3_first_order"};
  const auto steps = static_cast<int>(std::floor(config.alpha_max / config.alpha_step + 1e-9));
  const double first_order = 2.0 / (3.0 * std::sqrt(15.0));
  for (int k = 0; k <= steps; ++k) {
    const double alpha = k * config.alpha_step;
    const auto s3 = stats_stochastic_map(tilted_three_gate_map(alpha));
    const auto s4 = stats_stochastic_map(compensated_four_gate_map(alpha));
    result.ok = result.ok && row_in_bounds(s3.avg_fidelity, s3.deviation) && row_in_bounds(s4.avg_fidelity, s4.deviation);
    result.table.rows.push_back(
        {alpha, s3.avg_fidelity, s3.deviation, s4.avg_fidelity, s4.deviation, first_order * alpha});
  }
  result.report.push_back(std::to_string(steps + 1) + " alpha values in [0, " + format_double(config.alpha_max) + "]");
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  switch (config.experiment) {
    case Experiment::Verify:
      return cmd_verify(config);
    case Experiment::Tradeoff:
      return cmd_tradeoff(config);
    case Experiment::NoiseSweep:
      return cmd_noise_sweep(config);
    case Experiment::Optimize:
      return cmd_optimize(config);
    case Experiment::Recover:
      return cmd_recover(config);
    case Experiment::Compensate:
      return cmd_compensate(config);
  }
  throw InvalidInput("unknown experiment");
}

}  // namespace unot
