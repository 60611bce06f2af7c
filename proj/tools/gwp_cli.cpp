// gwp: Gaussian wave packet experiments.
//
//   gwp propagate   --config run.ini [--output out.csv]
//   gwp egorov      --config run.ini [--seed 7]
//   gwp convergence --config sweep.ini
//   gwp check       [--seed 7] [--instances 100]
//
// Exit codes: 0 success, 1 config error, 2 numerical failure, 3 check failure.

#include <iostream>
#include <optional>
#include <utility>

#include "CLI11.hpp"
#include "gwp/experiments.hpp"

namespace {

enum ExitCode { kOk = 0, kConfig = 1, kNumerical = 2, kCheckFailed = 3 };

struct Options {
  std::string config;
  std::string output;
  std::optional<std::uint64_t> seed;
  int instances = 100;
  bool quiet = false;
};

gwp::ExperimentConfig resolve(const Options& o, const std::string& mode) {
  gwp::ExperimentConfig cfg = gwp::load_config(o.config);
  cfg.mode = mode;
  if (!o.output.empty()) cfg.output = o.output;
  if (o.seed) cfg.seed = *o.seed;
  return cfg;
}

void emit(const gwp::Table& table, const gwp::ExperimentConfig& cfg, bool quiet) {
  if (cfg.output.empty()) {
    gwp::write_csv(std::cout, table);
    return;
  }
  gwp::write_csv(cfg.output, table);
  if (!quiet) {
    std::cerr << "wrote " << table.rows.size() << " rows to " << cfg.output << '\n';
  }
}

int run(const std::string& mode, const Options& o) {
  if (mode == "check") {
    const std::uint64_t seed = o.seed.value_or(gwp::ExperimentConfig{}.seed);
    const gwp::CheckReport report = gwp::run_checks(seed, o.instances);
    if (!o.quiet) gwp::print_report(std::cout, report);
    return report.all_passed() ? kOk : kCheckFailed;
  }
  const gwp::ExperimentConfig cfg = resolve(o, mode);
  if (mode == "propagate") emit(gwp::run_propagate(cfg), cfg, o.quiet);
  if (mode == "egorov") emit(gwp::run_egorov(cfg), cfg, o.quiet);
  if (mode == "convergence") emit(gwp::run_convergence(cfg), cfg, o.quiet);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian wave packet dynamics and Egorov reference runs"};
  app.require_subcommand(1);
  Options o;
  std::string mode;

  const std::pair<const char*, const char*> runs[] = {
      {"propagate", "wave packet, moment and classical trajectories"},
      {"egorov", "Monte Carlo expectation curves"},
      {"convergence", "endpoint errors over an hbar sweep"}};
  for (const auto& [name, about] : runs) {
    auto* sub = app.add_subcommand(name, about);
    sub->add_option("--config", o.config, "experiment config file")->required();
    sub->add_option("--output", o.output, "CSV path (default: stdout)");
    sub->add_option("--seed", o.seed, "override the sampler seed");
    sub->add_flag("--quiet", o.quiet, "suppress progress messages");
    sub->callback([&mode, name] { mode = name; });
  }
  auto* check = app.add_subcommand("check", "run the invariant suite");
  check->add_option("--config", o.config, "accepted for symmetry; unused");
  check->add_option("--seed", o.seed, "seed of the randomized instances");
  check->add_option("--instances", o.instances, "randomized instances")
      ->check(CLI::PositiveNumber);
  check->add_flag("--quiet", o.quiet, "only set the exit code");
  check->callback([&mode] { mode = "check"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    return run(mode, o);
  } catch (const gwp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const gwp::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  }
}
