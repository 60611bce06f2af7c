// Serial vs OpenMP timing of the Egorov kernels on the torsional setup.
//
// Usage: bench_egorov [n_samples] [threads]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "gwp/egorov.hpp"

using namespace gwp;

namespace {

template <typename F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    if (dt.count() < best) best = dt.count();
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const Index n = argc > 1 ? std::atol(argv[1]) : 20000;
  if (argc > 2) omp_set_num_threads(std::atoi(argv[2]));

  const Matrix w{{1.0, 0.5}, {0.5, 1.0}};
  const auto state = GaussianState::from_wave_packet(
      PhasePoint{Vector{{1.0, 0.0}}, Vector{{-1.0, 1.0}}}, SiegelPoint(w, w), 0.1);
  const TorsionalPotential v;
  const SimParams params(0.1, 1.0);
  auto energy = [&v](const Vector& z) { return v.value(z.head(2)); };

  std::printf("samples %ld, threads %d\n", static_cast<long>(n), omp_get_max_threads());
  std::printf("%-10s %12s %12s %8s\n", "kernel", "serial [s]", "openmp [s]", "speedup");

  auto row = [](const char* name, double s, double p) {
    std::printf("%-10s %12.4f %12.4f %8.2f\n", name, s, p, s / p);
  };

  const double ss = best_of(3, [&] { sample(state, n, 1, Execution::kSerial); });
  const double sp = best_of(3, [&] { sample(state, n, 1, Execution::kParallel); });
  row("sample", ss, sp);

  const Ensemble e0 = sample(state, n, 1);
  auto advance = [&](Execution exec) {
    Ensemble e = e0;
    advance_ensemble(e, 500, 0.01, params, v, exec);
  };
  row("advance", best_of(2, [&] { advance(Execution::kSerial); }),
      best_of(2, [&] { advance(Execution::kParallel); }));

  row("expect", best_of(5, [&] { expect(e0, energy, Execution::kSerial); }),
      best_of(5, [&] { expect(e0, energy, Execution::kParallel); }));
  return 0;
}
