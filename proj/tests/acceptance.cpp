// End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit
// status if any criterion fails.
//
// Usage: acceptance <path-to-gwp-binary> <configs-dir> <scratch-dir>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gwp/experiments.hpp"

namespace {

using namespace gwp;

struct Verdict {
  bool passed;
  std::string detail;
};

int g_failures = 0;

void report(int id, const std::string& title, const Verdict& v) {
  std::cout << (v.passed ? "PASS" : "FAIL") << "  [" << id << "] " << title << ": "
            << v.detail << std::endl;
  if (!v.passed) ++g_failures;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

// Criteria 1 and 2 share the sweep.
struct SweepPoint {
  ConvergencePoint point;
  Index n_samples;
  bool gated;
};

std::vector<SweepPoint> hbar_sweep() {
  std::vector<SweepPoint> out;
  for (double hbar : {0.2, 0.1, 0.05}) {
    ExperimentConfig cfg = ExperimentConfig::torsional_default();
    SweepPoint sp{};
    for (Index n : {Index{10000}, Index{40000}}) {
      cfg.n_samples = n;
      sp.point = convergence_point(cfg, hbar);
      sp.n_samples = n;
      const double noise = 3.0 * sp.point.mc_se;
      sp.gated = sp.point.err_semi > noise && sp.point.err_cl > noise;
      if (sp.gated) break;
    }
    out.push_back(sp);
  }
  return out;
}

Verdict error_ordering(const std::vector<SweepPoint>& sweep) {
  bool ok = true;
  std::ostringstream os;
  for (const auto& s : sweep) {
    const bool ordered = s.point.err_semi < s.point.err_cl;
    ok = ok && ordered && s.gated;
    os << "hbar=" << s.point.hbar << " N=" << s.n_samples << " semi=" << fmt(s.point.err_semi)
       << " cl=" << fmt(s.point.err_cl) << " 3se=" << fmt(3 * s.point.mc_se)
       << (s.gated ? "" : " (noise-gated)") << "; ";
  }
  return {ok, os.str()};
}

Verdict convergence_rate(const std::vector<SweepPoint>& sweep) {
  const auto& hi = sweep.front().point;
  const auto& lo = sweep.back().point;
  const double dlog = std::log(hi.hbar) - std::log(lo.hbar);
  const double semi = (std::log(hi.err_semi) - std::log(lo.err_semi)) / dlog;
  const double cl = (std::log(hi.err_cl) - std::log(lo.err_cl)) / dlog;
  const bool gated = sweep.front().gated && sweep.back().gated;
  return {gated && semi >= 1.3 && semi > cl,
          "semiclassical slope " + fmt(semi) + " (>= 1.3), classical slope " + fmt(cl)};
}

Verdict corrected_potential() {
  ExperimentConfig cfg = ExperimentConfig::torsional_default();
  const Table p = run_propagate(cfg);
  const Table e = run_egorov(cfg);
  if (p.rows.size() != e.rows.size()) return {false, "record times differ"};
  const auto vh = p.column("Vhbar"), vc = p.column("Vcl"), ve = e.column("V");
  double semi = 0.0, cl = 0.0;
  for (std::size_t k = 0; k < ve.size(); ++k) {
    semi += std::abs(vh[k] - ve[k]);
    cl += std::abs(vc[k] - ve[k]);
  }
  semi /= double(ve.size());
  cl /= double(ve.size());
  return {semi <= 0.5 * cl, "mean |V_hbar - <V>| = " + fmt(semi) + ", mean |V(q_cl) - <V>| = " +
                                fmt(cl) + ", ratio " + fmt(semi / cl)};
}

Verdict quadratic_exactness() {
  std::mt19937_64 rng(20240601);
  std::normal_distribution<double> normal;
  auto gaussian = [&](Index r, Index c, double s) {
    Matrix m(r, c);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j) m(i, j) = s * normal(rng);
    return m;
  };
  double worst_step = 0.0, ratio_min = INFINITY, ratio_max = 0.0;
  double hag_min = INFINITY, hag_max = 0.0;
  for (Index d : {1, 2}) {
    const Matrix g = gaussian(d, d, 0.6);
    const Matrix k = g * g.transpose() + 0.5 * Matrix::Identity(d, d);
    const QuadraticPotential v(k, Vector::Zero(d));
    const SimParams params(0.1, 1.0);
    const Matrix g2 = gaussian(d, d, 0.5);
    const GwpState start{PhasePoint{gaussian(d, 1, 1.0), gaussian(d, 1, 1.0)},
                         SiegelPoint(symmetrize(gaussian(d, d, 0.5)),
                                     g2 * g2.transpose() + 0.5 * Matrix::Identity(d, d))};

    // (a) per-step intertwining over 10⁴ steps.
    GwpState packet = start;
    MomentState moments{start.z, sigma(start.c)};
    for (int n = 0; n < 10000; ++n) {
      packet = splitting_step(packet, 0.01, params, v);
      moments = moment_splitting_step(moments, 0.01, params, v);
      worst_step = std::max(worst_step,
                            max_abs(sigma(packet.c).matrix() - moments.sigma.matrix()));
    }

    // (b) global error against the exact linear flow at t = 1.
    Matrix hess = Matrix::Identity(2 * d, 2 * d);
    hess.topLeftCorner(d, d) = k;
    const SymplecticMatrix exact(expm(symplectic_unit(d) * hess));
    const Vector z_exact = exact.matrix() * start.z.stacked();
    const SiegelPoint c_exact = moebius(exact, start.c);
    auto global_error = [&](long steps) {
      GwpState s = start;
      for (long n = 0; n < steps; ++n) s = splitting_step(s, 1.0 / double(steps), params, v);
      return std::max({max_abs(s.z.stacked() - z_exact), max_abs(s.c.real() - c_exact.real()),
                       max_abs(s.c.imag() - c_exact.imag())});
    };
    const double r = global_error(20) / global_error(40);
    ratio_min = std::min(ratio_min, r);
    ratio_max = std::max(ratio_max, r);

    // (c) Hagedorn factor S_n S_nᵀ against the moment splitting Σ_n.
    auto hagedorn_gap = [&](long steps) {
      const double dt = 1.0 / double(steps);
      Matrix s = xi_factor(start.c).matrix();
      MomentState m{start.z, sigma(start.c)};
      for (long n = 0; n < steps; ++n) {
        const MomentState next = moment_splitting_step(m, dt, params, v);
        const PhasePoint mid{0.5 * (m.z.q + next.z.q), 0.5 * (m.z.p + next.z.p)};
        s = cayley_step(s, mid, dt, params, v);
        m = next;
      }
      return max_abs(s * s.transpose() - m.sigma.matrix());
    };
    const double h = hagedorn_gap(20) / hagedorn_gap(40);
    hag_min = std::min(hag_min, h);
    hag_max = std::max(hag_max, h);
  }
  const bool ok = worst_step <= 1e-11 && ratio_min >= 3.5 && ratio_max <= 4.5 &&
                  hag_min >= 3.5 && hag_max <= 4.5;
  return {ok, "(a) max step residual " + fmt(worst_step) + " (<= 1e-11); (b) ratios [" +
                  fmt(ratio_min) + ", " + fmt(ratio_max) + "]; (c) ratios [" + fmt(hag_min) +
                  ", " + fmt(hag_max) + "]"};
}

Verdict geometry_suite() {
  const CheckReport r = run_checks(20240601, 100);
  std::ostringstream os;
  int failed = 0;
  double worst_margin = 0.0;
  for (const auto& c : r.results) {
    if (!c.passed()) {
      ++failed;
      os << "failed: " << c.name << " " << fmt(c.residual) << "; ";
    }
    worst_margin = std::max(worst_margin, c.residual / c.tolerance);
  }
  os << r.results.size() << " invariants over 100 instances, worst residual/tolerance "
     << fmt(worst_margin);
  return {failed == 0, os.str()};
}

Verdict appendix_suite() {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  auto gaussian = [&](Index r, Index c, double s) {
    Matrix m(r, c);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j) m(i, j) = s * normal(rng);
    return m;
  };
  auto siegel = [&] {
    const Matrix g = gaussian(2, 2, 0.5);
    return SiegelPoint(symmetrize(gaussian(2, 2, 0.5)),
                       g * g.transpose() + 0.5 * Matrix::Identity(2, 2));
  };

  double closed = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double hbar = 0.05 + 0.02 * k;
    const PhasePoint z{gaussian(2, 1, 1.0), gaussian(2, 1, 1.0)};
    const auto state = GaussianState::from_wave_packet(z, siegel(), hbar);
    const IotaImage img = iota(untangle(moment_map_gaussian(state)));
    closed = std::max({closed, std::abs(img.alpha - 1.0), max_abs(img.z - z.stacked()),
                       max_abs(img.mu.matrix() - 0.25 * hbar * state.sigma.matrix())});
  }

  // Ensemble estimate of the raw moments against per-entry standard errors.
  const PhasePoint z0{Vector{{1.0, 0.0}}, Vector{{-1.0, 1.0}}};
  const auto state = GaussianState::from_wave_packet(z0, siegel(), 0.1);
  const Index n = 10000;
  const Ensemble e = sample(state, n, 20240601);
  const Matrix j = symplectic_unit(2);
  const JacDual exact = moment_map_gaussian(state), est = moment_map_ensemble(e);
  const Matrix m2_exact = 2.0 * j * exact.pi, m2_est = 2.0 * j * est.pi;
  const Vector m1_exact = j * exact.lambda, m1_est = j * est.lambda;
  double worst_z = 0.0;
  auto se = [n](const Eigen::ArrayXd& x) {
    return std::sqrt((x - x.mean()).square().sum() / double(n - 1) / double(n));
  };
  for (Index a = 0; a < 4; ++a) {
    const Eigen::ArrayXd xa = e.samples.row(a).transpose().array();
    worst_z = std::max(worst_z, std::abs(m1_est(a) - m1_exact(a)) / se(xa));
    for (Index b = 0; b < 4; ++b) {
      const Eigen::ArrayXd prod = xa * e.samples.row(b).transpose().array();
      worst_z = std::max(worst_z, std::abs(m2_est(a, b) - m2_exact(a, b)) / se(prod));
    }
  }

  // α = 1 restriction of the weighted moment bracket.
  const MomentState ms{z0, state.sigma};
  auto f = [](const auto& x) { return x.z.q(0) * x.sigma.matrix()(0, 3) + std::sin(x.z.p(1)); };
  auto g = [](const auto& x) {
    return std::cos(x.sigma.matrix()(1, 2)) * x.z.q(1) + x.sigma.matrix()(2, 2);
  };
  const double restricted = std::abs(
      bracket_moments_weighted(f, g, WeightedMoments{1.0, ms.z, ms.sigma}, 0.1) -
      bracket_moments(f, g, ms, 0.1));

  return {closed <= 1e-12 && worst_z <= 5.0 && restricted <= 1e-12,
          "closed form " + fmt(closed) + " (<= 1e-12); ensemble worst |dev|/se " + fmt(worst_z) +
              " (<= 5); alpha=1 restriction " + fmt(restricted) + " (<= 1e-12)"};
}

Verdict conservation() {
  ExperimentConfig cfg = ExperimentConfig::torsional_default();
  cfg.t_final = 10.0;
  const Table t = run_propagate(cfg);
  const auto h = t.column("H"), times = t.column("t");
  double first = 0.0, second = 0.0, min_b = INFINITY;
  for (std::size_t k = 0; k < h.size(); ++k) {
    const double drift = std::abs(h[k] - h[0]) / std::abs(h[0]);
    (times[k] <= 5.0 ? first : second) = std::max(times[k] <= 5.0 ? first : second, drift);
    const Matrix b{{t.rows[k][t.index("B11")], t.rows[k][t.index("B12")]},
                   {t.rows[k][t.index("B21")], t.rows[k][t.index("B22")]}};
    min_b = std::min(min_b, min_eigenvalue(b));
  }
  const double drift = std::max(first, second);
  // Bounded oscillation: the late-window drift does not outgrow the early one.
  const bool bounded = second <= 2.0 * first;
  return {drift <= 1e-3 && bounded && min_b > 0.0,
          "max relative drift " + fmt(drift) + " (<= 1e-3), [0,5] " + fmt(first) + " vs [5,10] " +
              fmt(second) + ", min eig B " + fmt(min_b)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Verdict determinism(const std::string& exe, const std::filesystem::path& configs,
                    const std::filesystem::path& scratch) {
  std::filesystem::create_directories(scratch);
  const std::vector<std::pair<std::string, std::string>> runs{
      {"propagate", "torsional.ini"}, {"egorov", "egorov.ini"}, {"convergence", "convergence.ini"}};
  std::ostringstream os;
  bool ok = true;
  for (const auto& [mode, config] : runs) {
    std::string bytes[2];
    for (int k = 0; k < 2; ++k) {
      const auto out = scratch / (mode + "_" + std::to_string(k) + ".csv");
      const std::string cmd = "\"" + exe + "\" " + mode + " --config \"" +
                              (configs / config).string() + "\" --seed 20240601 --quiet --output \"" +
                              out.string() + "\"";
      if (std::system(cmd.c_str()) != 0) return {false, mode + " exited with an error"};
      bytes[k] = slurp(out);
    }
    const bool same = !bytes[0].empty() && bytes[0] == bytes[1];
    ok = ok && same;
    os << mode << " " << (same ? "identical" : "DIFFERENT") << " (" << bytes[0].size()
       << " bytes); ";
  }
  return {ok, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::cerr << "usage: acceptance <gwp-binary> <configs-dir> <scratch-dir>\n";
    return 2;
  }
  const auto sweep = hbar_sweep();
  report(1, "error ordering semiclassical < classical vs Egorov", error_ordering(sweep));
  report(2, "semiclassical convergence rate in hbar", convergence_rate(sweep));
  report(3, "corrected potential tracks Egorov <V>", corrected_potential());
  report(4, "quadratic exactness and intertwining", quadratic_exactness());
  report(5, "geometry invariant suite", geometry_suite());
  report(6, "appendix momentum map suite", appendix_suite());
  report(7, "energy conservation and width positivity", conservation());
  report(8, "byte-identical CSV across runs", determinism(argv[1], argv[2], argv[3]));
  std::cout << (g_failures == 0 ? "all criteria passed" : "criteria failed: " +
                                                              std::to_string(g_failures))
            << std::endl;
  return g_failures == 0 ? 0 : 1;
}
