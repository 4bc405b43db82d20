// Command-line front end for the experiment runners.
//
// Every flag is collected as text and applied through ExperimentConfig::set,
// after any --config file, so file and command line share one parser.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "unot/errors.hpp"
#include "unot/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitBadConfig = 2;

struct FlagSpec {
  const char* key;
  const char* help;
};

constexpr FlagSpec kFlags[] = {
    {"seed", "master seed"},
    {"trials", "trial count (default depends on the experiment)"},
    {"samples", "Monte-Carlo samples per oracle estimate"},
    {"out", "output file (default: stdout)"},
    {"format", "csv or jsonl"},
    {"npop", "DE population size"},
    {"dweight", "DE differential weight"},
    {"cr", "DE crossover rate"},
    {"iters", "DE iterations"},
    {"eta", "noise degree in [0, 1]"},
    {"period", "noise period in iterations, 0 for once at start, or 'never'"},
    {"stride", "emit every k-th iteration"},
    {"eta-step", "noise-sweep grid step"},
    {"base", "noise-sweep base controls: de or analytic"},
    {"bases", "number of DE optima used as noise-sweep bases"},
    {"alpha-max", "largest tilt for compensate"},
    {"alpha-step", "tilt grid step for compensate"},
    {"tol-scale", "multiplier on verify tolerances"},
};

void write_echo(std::ostream& out, const unot::ExperimentConfig& config, const std::string& prefix) {
  for (const auto& [key, value] : config.effective()) out << prefix << key << " = " << value << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate universal-NOT experiments"};
  app.require_subcommand(1);

  std::optional<std::string> config_path;
  std::map<std::string, std::optional<std::string>> flags;
  for (const auto& f : kFlags) flags[f.key];

  for (const auto& [experiment, name] :
       {std::pair{unot::Experiment::Verify, "verify"}, std::pair{unot::Experiment::Tradeoff, "tradeoff"},
        std::pair{unot::Experiment::NoiseSweep, "noise-sweep"}, std::pair{unot::Experiment::Optimize, "optimize"},
        std::pair{unot::Experiment::Recover, "recover"}, std::pair{unot::Experiment::Compensate, "compensate"}}) {
    (void)experiment;
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "key = value config file; flags override it");
    for (const auto& f : kFlags) sub->add_option(std::string("--") + f.key, flags[f.key], f.help);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadConfig;
  }

  unot::ExperimentConfig config;
  try {
    config.experiment = *unot::parse_experiment(app.get_subcommands().front()->get_name());
    if (config_path) config = unot::load_config_file(*config_path, config);
    for (const auto& [key, value] : flags) {
      if (value) config.set(key, *value);
    }
    config.validate();
  } catch (const unot::InvalidInput& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kExitBadConfig;
  }

  unot::ExperimentResult result;
  try {
    result = unot::run_experiment(config);
  } catch (const unot::InvalidInput& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitViolation;
  }

  if (config.out.empty()) {
    write_echo(std::cerr, config, "# ");
    unot::write_table(result.table, config.format, std::cout);
  } else {
    std::ofstream data(config.out, std::ios::binary);
    std::ofstream echo(config.out + ".config", std::ios::binary);
    if (!data || !echo) {
      std::cerr << "cannot write output '" << config.out << "'\n";
      return kExitBadConfig;
    }
    unot::write_table(result.table, config.format, data);
    write_echo(echo, config, "");
  }
  for (const auto& line : result.report) std::cerr << line << '\n';
  return result.ok ? kExitOk : kExitViolation;
}
