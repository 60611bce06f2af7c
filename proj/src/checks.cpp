#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>

#include "gwp/experiments.hpp"

namespace gwp {

namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double normal(double scale = 1.0) { return scale * normal_(rng_); }

  Matrix gaussian(Index r, Index c, double scale) {
    Matrix m(r, c);
    for (Index i = 0; i < r; ++i) {
      for (Index j = 0; j < c; ++j) m(i, j) = normal(scale);
    }
    return m;
  }

  Matrix symmetric(Index n, double scale) { return symmetrize(gaussian(n, n, scale)); }

  Vector vector(Index n, double scale) { return gaussian(n, 1, scale); }

  SiegelPoint siegel(Index d) {
    const Matrix m = gaussian(d, d, 0.5);
    return SiegelPoint(symmetric(d, 0.5), m * m.transpose() + 0.5 * Matrix::Identity(d, d));
  }

  SymplecticMatrix symplectic(Index d) {
    return SymplecticMatrix(expm(tilde(SymElement(symmetric(2 * d, 0.3)))));
  }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
};

double scaled(double diff, double ref) { return std::abs(diff) / std::max(1.0, std::abs(ref)); }

double scaled(const Matrix& diff, const Matrix& ref) {
  return max_abs(diff) / std::max(1.0, max_abs(ref));
}

struct Tracker {
  CheckResult result;
  void update(double r) {
    // NaN must register as a failure.
    if (std::isnan(r) || r > result.residual) result.residual = std::isnan(r) ? INFINITY : r;
  }
};

}  // namespace

bool CheckReport::all_passed() const {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.passed(); });
}

CheckReport run_checks(std::uint64_t seed, int instances, const CheckOps& ops) {
  Tracker equivariance{{"equivariance sigma(S.C) = Ad*(S) sigma(C)", 0.0, 1e-10}};
  Tracker left_action{{"moebius left action", 0.0, 1e-10}};
  Tracker poisson_map{{"poisson map (fd)", 0.0, 1e-6}};
  Tracker kks{{"kks pullback", 0.0, 1e-9}};
  Tracker defining{{"momentum map defining equation (fd)", 0.0, 1e-6}};
  Tracker sigma_roundtrip{{"sigma inverse round trip", 0.0, 1e-10}};
  Tracker factor{{"xi factor: pi_u and jhat", 0.0, 1e-10}};
  Tracker duality{{"ad_star duality with bracket", 0.0, 1e-12}};
  Tracker lie_poisson{{"moment flow is lie-poisson", 0.0, 1e-12}};
  Tracker collective{{"h_moment(z, sigma(C)) = H_gwp", 0.0, 1e-12}};
  Tracker intertwining{{"intertwining sigma(C_n) = Sigma_n", 0.0, 1e-10}};
  Tracker monitor{{"Sigma J Sigma = J along trajectories", 0.0, 1e-9}};
  Tracker hagedorn{{"hagedorn factor stays symplectic", 0.0, 1e-9}};
  Tracker appendix{{"iota(untangle(J(W))) = (1, z, hbar Sigma/4)", 0.0, 1e-12}};

  Sampler rnd(seed);
  const auto torsional = make_potential("torsional", 2);
  constexpr long kTrajectorySteps = 100;

  for (int n = 0; n < instances; ++n) {
    const Index d = 1 + n % 3;
    const SiegelPoint c = rnd.siegel(d);
    const SymplecticMatrix s1 = rnd.symplectic(d);
    const SymplecticMatrix s2 = rnd.symplectic(d);
    const SymElement xi(rnd.symmetric(2 * d, 1.0));
    const SymElement eta(rnd.symmetric(2 * d, 1.0));
    const SymElement mu(rnd.symmetric(2 * d, 1.0));
    const SymElement sig = ops.sigma(c);

    const Matrix lhs = sigma(moebius(s1, c)).matrix();
    equivariance.update(scaled(lhs - ops.coadjoint(s1, sig).matrix(), lhs));

    const SiegelPoint once = moebius(s1 * s2, c);
    const SiegelPoint twice = moebius(s1, moebius(s2, c));
    left_action.update(std::max(scaled(once.real() - twice.real(), once.real()),
                                scaled(once.imag() - twice.imag(), once.imag())));

    const double lp = lie_poisson_sym(sig, xi, eta);
    poisson_map.update(poisson_map_check(c, xi, eta) / std::max(1.0, std::abs(lp)));

    const TangentHd gx = infinitesimal_generator(xi, c);
    const TangentHd gy = infinitesimal_generator(eta, c);
    const double kks_value = kks_form(sig, xi, eta, +1);
    kks.update(scaled(omega_hd(c, gx, gy) - kks_value, kks_value));

    const TangentHd v{rnd.symmetric(d, 1.0), rnd.symmetric(d, 0.3)};
    const double h = 1e-5;
    auto along = [&](double t) {
      return pairing(xi, sigma(SiegelPoint(c.real() + t * v.dA, c.imag() + t * v.dB)));
    };
    const double directional = (along(h) - along(-h)) / (2.0 * h);
    defining.update(scaled(omega_hd(c, gx, v) - directional, directional));

    const SiegelPoint back = sigma_inverse(sig);
    sigma_roundtrip.update(std::max(scaled(back.real() - c.real(), c.real()),
                                    scaled(back.imag() - c.imag(), c.imag())));

    const SymplecticMatrix x = xi_factor(c);
    const SiegelPoint pu = pi_u(x);
    factor.update(std::max({scaled(pu.real() - c.real(), c.real()),
                            scaled(pu.imag() - c.imag(), c.imag()),
                            scaled(jhat(x).matrix() - sig.matrix(), sig.matrix())}));

    const double paired = pairing(ops.ad_star(xi, mu), eta);
    duality.update(scaled(paired - pairing(mu, bracket_sym(xi, eta)), paired));

    // Torsional trajectories live in d = 2.
    const SiegelPoint c2 = d == 2 ? c : rnd.siegel(2);
    const PhasePoint z{rnd.vector(2, 1.0), rnd.vector(2, 1.0)};
    const SimParams params(rnd.uniform(0.05, 0.5), 1.0);
    const double h_gwp = gwp_hamiltonian(z, c2, params, *torsional);
    collective.update(
        scaled(moment_hamiltonian(z, sigma(c2), params, *torsional) - h_gwp, h_gwp));

    const SymElement sig2 = sigma(c2);
    const Matrix rhs = moment_rhs(z, sig2, params, *torsional).dSigma;
    const Matrix hess = classical_hessian(z.q, params, *torsional);
    lie_poisson.update(scaled(rhs - ops.ad_star(SymElement(hess), sig2).matrix(), rhs));

    const auto state = GaussianState::from_wave_packet(z, c2, params.hbar);
    const IotaImage image = iota(untangle(moment_map_gaussian(state)));
    const Matrix expected_mu = 0.25 * params.hbar * state.sigma.matrix();
    appendix.update(std::max({std::abs(image.alpha - 1.0),
                              max_abs(image.z - z.stacked()),
                              max_abs(image.mu.matrix() - expected_mu)}));

    const Matrix j = symplectic_unit(2);
    GwpState packet{z, c2};
    MomentState moments{z, sig2};
    Matrix factor_s = xi_factor(c2).matrix();
    const double dt = 0.01;
    for (long k = 0; k < kTrajectorySteps; ++k) {
      const GwpState next = splitting_step(packet, dt, params, *torsional);
      const PhasePoint mid{0.5 * (packet.z.q + next.z.q), 0.5 * (packet.z.p + next.z.p)};
      factor_s = cayley_step(factor_s, mid, dt, params, *torsional);
      packet = next;
      moments = moment_splitting_step(moments, dt, params, *torsional);
      const Matrix sn = moments.sigma.matrix();
      intertwining.update(scaled(sigma(packet.c).matrix() - sn, sn));
      monitor.update(max_abs(sn * j * sn - j));
      hagedorn.update(symplectic_defect(factor_s));
    }
  }

  CheckReport report;
  for (const Tracker* t :
       {&equivariance, &left_action, &poisson_map, &kks, &defining, &sigma_roundtrip,
        &factor, &duality, &lie_poisson, &collective, &intertwining, &monitor, &hagedorn,
        &appendix}) {
    report.results.push_back(t->result);
  }
  return report;
}

void print_report(std::ostream& os, const CheckReport& report) {
  const auto flags = os.flags();
  for (const CheckResult& r : report.results) {
    os << (r.passed() ? "PASS  " : "FAIL  ") << std::left << std::setw(48) << r.name
       << std::right << std::scientific << std::setprecision(3) << std::setw(12)
       << r.residual << "  <= " << r.tolerance << '\n';
  }
  os.flags(flags);
}

}  // namespace gwp
