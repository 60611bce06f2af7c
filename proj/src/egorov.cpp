#include "gwp/egorov.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace gwp {

GaussianState::GaussianState(PhasePoint z_in, SymElement sigma_in, double hbar_in)
    : z(std::move(z_in)), sigma(std::move(sigma_in)), hbar(hbar_in) {
  if (!(hbar > 0.0)) {
    throw NumericalError(ErrorKind::kInvalidArgument, "hbar must be positive");
  }
  if (sigma.dim() != z.dim()) {
    throw NumericalError(ErrorKind::kDimensionMismatch,
                         "covariance and mean dimensions differ");
  }
  if (!(min_eigenvalue(sigma.matrix()) > 0.0)) {
    throw NumericalError(ErrorKind::kIllConditioned,
                         "covariance is not positive definite");
  }
}

GaussianState GaussianState::from_wave_packet(const PhasePoint& z, const SiegelPoint& c,
                                              double hbar) {
  return GaussianState(z, gwp::sigma(c), hbar);
}

double wigner_density(const GaussianState& state, const Vector& zeta) {
  const Index d = state.dim();
  const Vector delta = zeta - state.z.stacked();
  Eigen::LLT<Matrix> llt(state.sigma.matrix());
  const double quad = delta.dot(llt.solve(delta));
  const double sqrt_det = llt.matrixL().toDenseMatrix().diagonal().prod();
  return std::exp(-quad / state.hbar) /
         (std::pow(std::numbers::pi * state.hbar, double(d)) * sqrt_det);
}

namespace {

// Per-sample generator keyed by (seed, index); independent of visit order.
std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

// Mean and standard error of values in index order.
Estimate reduce(const std::vector<double>& values) {
  if (values.empty()) {
    throw NumericalError(ErrorKind::kEmptyEnsemble, "no samples to average");
  }
  const auto n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double x : values) sum += x;
  const double mean = sum / n;
  if (values.size() < 2) return Estimate{mean, 0.0};
  double ss = 0.0;
  for (double x : values) ss += (x - mean) * (x - mean);
  return Estimate{mean, std::sqrt(ss / (n - 1.0) / n)};
}

std::vector<double> evaluate(const Ensemble& e, const Observable& observable,
                             Execution exec) {
  const Index n = e.size();
  std::vector<double> values(static_cast<std::size_t>(n));
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < n; ++i) {
      values[static_cast<std::size_t>(i)] = observable(e.samples.col(i));
    }
  } else {
    for (Index i = 0; i < n; ++i) {
      values[static_cast<std::size_t>(i)] = observable(e.samples.col(i));
    }
  }
  return values;
}

void advance_sample(Eigen::Ref<Vector> zeta, long steps, double dt,
                    const SimParams& params, const Potential& v) {
  PhasePoint z = PhasePoint::from_stacked(zeta);
  for (long k = 0; k < steps; ++k) z = verlet_step(z, dt, params, v);
  zeta = z.stacked();
}

}  // namespace

Ensemble sample(const GaussianState& state, Index n, std::uint64_t seed,
                Execution exec) {
  if (n < 1) throw NumericalError(ErrorKind::kEmptyEnsemble, "need at least one sample");
  Eigen::LLT<Matrix> llt(state.covariance());
  if (llt.info() != Eigen::Success) {
    throw NumericalError(ErrorKind::kIllConditioned,
                         "covariance factorization failed");
  }
  const Matrix l = llt.matrixL();
  const Vector mean = state.z.stacked();
  const Index dim = mean.size();

  Ensemble e;
  e.seed = seed;
  e.samples.resize(dim, n);
  auto draw = [&](Index i) {
    auto gen = sample_stream(seed, static_cast<std::uint64_t>(i));
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector g(dim);
    for (Index k = 0; k < dim; ++k) g(k) = normal(gen);
    e.samples.col(i) = mean + l * g;
  };
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < n; ++i) draw(i);
  } else {
    for (Index i = 0; i < n; ++i) draw(i);
  }
  return e;
}

void advance_ensemble(Ensemble& e, long steps, double dt, const SimParams& params,
                      const Potential& v, Execution exec) {
  const Index n = e.size();
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < n; ++i) advance_sample(e.samples.col(i), steps, dt, params, v);
  } else {
    for (Index i = 0; i < n; ++i) advance_sample(e.samples.col(i), steps, dt, params, v);
  }
}

std::vector<Ensemble> propagate_ensemble(const Ensemble& e, const SimParams& params,
                                         const Potential& v, const StepperConfig& cfg,
                                         Execution exec) {
  std::vector<Ensemble> snapshots{e};
  Ensemble current = e;
  const long records = cfg.steps() / cfg.record_stride;
  for (long k = 0; k < records; ++k) {
    advance_ensemble(current, cfg.record_stride, cfg.dt, params, v, exec);
    snapshots.push_back(current);
  }
  return snapshots;
}

Estimate expect(const Ensemble& e, const Observable& observable, Execution exec) {
  if (e.size() == 0) throw NumericalError(ErrorKind::kEmptyEnsemble, "empty ensemble");
  return reduce(evaluate(e, observable, exec));
}

ExpectationSeries egorov_expectations(const GaussianState& state, Index n,
                                      std::uint64_t seed, const SimParams& params,
                                      const Potential& v, const StepperConfig& cfg,
                                      const std::vector<Observable>& observables,
                                      Execution exec) {
  ExpectationSeries out;
  Ensemble e = sample(state, n, seed, exec);
  auto record = [&](double t) {
    out.times.push_back(t);
    std::vector<double> means, errors;
    for (const auto& obs : observables) {
      const Estimate est = expect(e, obs, exec);
      means.push_back(est.mean);
      errors.push_back(est.std_error);
    }
    out.means.push_back(std::move(means));
    out.std_errors.push_back(std::move(errors));
  };
  record(0.0);
  const long records = cfg.steps() / cfg.record_stride;
  for (long k = 1; k <= records; ++k) {
    advance_ensemble(e, cfg.record_stride, cfg.dt, params, v, exec);
    record(static_cast<double>(k * cfg.record_stride) * cfg.dt);
  }
  return out;
}

}  // namespace gwp
