#pragma once

// Experiment configuration and the drivers behind the command-line tool.
//
// Config files are flat `key = value` text grouped under section headers:
//
//   [system]      potential, dimension, mass, hbar (scalar or [list])
//   [initial]     q0, p0, A0, B0
//   [integrator]  dt, t_final, record_stride
//   [egorov]      n_samples, seed
//   [output]      path, mode
//
// '#' starts a comment. Matrices use the bracketed row-major forms of
// matrix_io.hpp.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "gwp/brackets.hpp"
#include "gwp/egorov.hpp"
#include "gwp/integrators.hpp"

namespace gwp {

struct ExperimentConfig {
  std::string potential = "torsional";
  Index dim = 2;
  double mass = 1.0;
  std::vector<double> hbar{0.1};
  Vector q0;
  Vector p0;
  Matrix a0;
  Matrix b0;
  double dt = 0.01;
  double t_final = 5.0;
  int record_stride = 1;
  Index n_samples = 10000;
  std::uint64_t seed = 20240601;
  std::string output;
  std::string mode = "propagate";

  /// The paper's torsional setup at ħ = 0.1.
  static ExperimentConfig torsional_default();

  /// Throws ConfigError naming the offending field.
  void validate() const;

  StepperConfig stepper() const { return StepperConfig(dt, t_final, record_stride); }
  GwpState initial_packet() const;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Throws ConfigError with the 1-based line of the first problem.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& cfg);

/// A named-column numeric table; the CSV contract of every driver.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Throws std::out_of_range for an unknown column.
  std::size_t index(const std::string& name) const;
  std::vector<double> column(const std::string& name) const;
};

void write_csv(std::ostream& os, const Table& table);
/// Throws std::runtime_error if the file cannot be opened.
void write_csv(const std::string& path, const Table& table);

/// Ensemble snapshot with columns i, q1..qd, p1..pd.
Table ensemble_table(const Ensemble& e);

/// Advances the classical, wave packet and moment representations side by
/// side. Columns: t, q*, p*, A*, B*, S* (Σ, row-major), H, h_moment, qm*,
/// pm*, qcl*, pcl*, Vhbar, Vcl.
Table run_propagate(const ExperimentConfig& cfg);

/// Egorov expectation curves. Columns: t, q*, p*, V, se_q*, se_p*, se_V.
Table run_egorov(const ExperimentConfig& cfg, Execution exec = Execution::kParallel);

/// Errors of the wave packet and classical centers against the Egorov mean
/// at t_final, Euclidean norm on R^2d; mc_se is the norm of the per-component
/// standard errors.
struct ConvergencePoint {
  double hbar;
  double err_semi;
  double err_cl;
  double mc_se;
};

/// Evaluates one ħ of the sweep with cfg.n_samples samples.
ConvergencePoint convergence_point(const ExperimentConfig& cfg, double hbar,
                                   Execution exec = Execution::kParallel);

/// One row per ħ: hbar, err_semi, err_cl, mc_se, log_hbar, log_err_semi,
/// log_err_cl. Needs at least two ħ values (ConfigError otherwise).
Table run_convergence(const ExperimentConfig& cfg,
                      Execution exec = Execution::kParallel);

/// Operations the check suite exercises; replaceable for mutation tests.
struct CheckOps {
  std::function<SymElement(const SymElement&, const SymElement&)> ad_star = gwp::ad_star;
  std::function<SymElement(const SymplecticMatrix&, const SymElement&)> coadjoint =
      gwp::coadjoint_action;
  std::function<SymElement(const SiegelPoint&)> sigma = gwp::sigma;
};

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed() const { return residual <= tolerance; }
};

struct CheckReport {
  std::vector<CheckResult> results;
  bool all_passed() const;
};

/// Randomized invariant suite over `instances` draws from `seed`.
CheckReport run_checks(std::uint64_t seed, int instances = 100,
                       const CheckOps& ops = CheckOps{});

void print_report(std::ostream& os, const CheckReport& report);

}  // namespace gwp
