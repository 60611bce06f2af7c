#pragma once

// Gaussian Wigner states and the Egorov/IVR Monte-Carlo reference: sample
// the initial Wigner density, transport every sample with Störmer–Verlet and
// average observables.
//
// Each kernel comes in a serial reference form and an OpenMP form. Samples
// are drawn from per-sample generator streams keyed by (seed, index) and
// reductions run in index order after the parallel section, so both forms
// produce identical bits for any thread count.

#include <cstdint>
#include <functional>
#include <vector>

#include "gwp/dynamics.hpp"
#include "gwp/integrators.hpp"

namespace gwp {

/// Gaussian Wigner density with mean z and symplectic covariance parameter
/// Σ; the statistical covariance is (ħ/2)Σ.
struct GaussianState {
  GaussianState(PhasePoint z_in, SymElement sigma_in, double hbar_in);

  /// The Wigner transform of the wave packet (z, C): Σ = σ(C).
  static GaussianState from_wave_packet(const PhasePoint& z, const SiegelPoint& c,
                                        double hbar);

  Index dim() const { return z.dim(); }
  /// (ħ/2)Σ.
  Matrix covariance() const { return 0.5 * hbar * sigma.matrix(); }

  PhasePoint z;
  SymElement sigma;
  double hbar;
};

/// N phase-space samples (columns of a 2d×N matrix) with uniform weights.
struct Ensemble {
  Matrix samples;
  std::uint64_t seed = 0;

  Index size() const { return samples.cols(); }
  Index phase_dim() const { return samples.rows(); }
};

/// Mean and standard error (sample std / √N) of an observable.
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
};

using Observable = std::function<double(const Vector&)>;

enum class Execution { kSerial, kParallel };

/// W(ζ) = exp(−(ζ−z)ᵀΣ⁻¹(ζ−z)/ħ) / ((πħ)^d √det Σ).
double wigner_density(const GaussianState& state, const Vector& zeta);

/// ζ_i = z + L g_i with LLᵀ = (ħ/2)Σ and g_i standard normal from the
/// stream keyed by (seed, i). Throws kIllConditioned if Σ is not SPD.
Ensemble sample(const GaussianState& state, Index n, std::uint64_t seed,
                Execution exec = Execution::kParallel);

/// Advances every sample by `steps` Verlet steps.
void advance_ensemble(Ensemble& e, long steps, double dt, const SimParams& params,
                      const Potential& v, Execution exec = Execution::kParallel);

/// Snapshots at t = 0, stride·dt, 2·stride·dt, ..., ending at the last
/// multiple of the stride not beyond t_final.
std::vector<Ensemble> propagate_ensemble(const Ensemble& e, const SimParams& params,
                                         const Potential& v, const StepperConfig& cfg,
                                         Execution exec = Execution::kParallel);

/// Throws kEmptyEnsemble for an empty ensemble.
Estimate expect(const Ensemble& e, const Observable& observable,
                Execution exec = Execution::kParallel);

/// Expectation curves recorded along the Egorov transport.
struct ExpectationSeries {
  std::vector<double> times;
  /// means[k][j], std_errors[k][j]: record k, observable j.
  std::vector<std::vector<double>> means;
  std::vector<std::vector<double>> std_errors;
};

/// Samples `state`, transports the ensemble and records the observables at
/// every record_stride step without keeping the snapshots.
ExpectationSeries egorov_expectations(const GaussianState& state, Index n,
                                      std::uint64_t seed, const SimParams& params,
                                      const Potential& v, const StepperConfig& cfg,
                                      const std::vector<Observable>& observables,
                                      Execution exec = Execution::kParallel);

}  // namespace gwp
