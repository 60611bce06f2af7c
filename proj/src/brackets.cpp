#include "gwp/brackets.hpp"

#include <cmath>

namespace gwp {

namespace {

double step_for(double x, double rel) { return rel * std::max(1.0, std::abs(x)); }

// Canonical bracket of two gradients on R^2d split as (q, p).
double canonical_from_gradients(const Vector& gf, const Vector& gg) {
  const Index d = gf.size() / 2;
  return gf.head(d).dot(gg.tail(d)) - gg.head(d).dot(gf.tail(d));
}

Vector gradient_z(const auto& f, const auto& state) {
  auto fz = [&](const Vector& z) {
    auto s = state;
    s.z = PhasePoint::from_stacked(z);
    return f(s);
  };
  return fd_gradient(fz, state.z.stacked());
}

Matrix gradient_sigma(const auto& f, const auto& state) {
  auto fs = [&](const Matrix& m) {
    auto s = state;
    s.sigma = SymElement(m);
    return f(s);
  };
  return fd_gradient_sym(fs, state.sigma.matrix());
}

struct SiegelGradients {
  Matrix wrt_a;
  Matrix wrt_w;  // W = B⁻¹
};

SiegelGradients gradients_hd(const ScalarField<SiegelPoint>& f, const SiegelPoint& c) {
  const Matrix& b = c.imag();
  auto fa = [&](const Matrix& a) { return f(SiegelPoint(a, b)); };
  auto fw = [&](const Matrix& w) { return f(SiegelPoint(c.real(), spd_inverse(w))); };
  return {fd_gradient_sym(fa, c.real()), fd_gradient_sym(fw, spd_inverse(b))};
}

double hd_from_gradients(const SiegelGradients& gf, const SiegelGradients& gg) {
  return -((gf.wrt_w.cwiseProduct(gg.wrt_a)).sum() -
           (gg.wrt_w.cwiseProduct(gf.wrt_a)).sum());
}

}  // namespace

Vector fd_gradient(const ScalarField<Vector>& f, const Vector& x, double rel_step) {
  Vector g(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    const double h = step_for(x(i), rel_step);
    Vector xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    g(i) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return g;
}

Matrix fd_gradient_sym(const ScalarField<Matrix>& f, const Matrix& m, double rel_step) {
  const Index n = m.rows();
  Matrix g(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index k = j; k < n; ++k) {
      const double h = step_for(m(j, k), rel_step);
      Matrix mp = m, mm = m;
      mp(j, k) += h;
      mm(j, k) -= h;
      if (j != k) {
        mp(k, j) += h;
        mm(k, j) -= h;
      }
      // A paired off-diagonal perturbation moves two entries of the sum.
      const double scale = (j == k) ? 1.0 : 2.0;
      const double v = (f(mp) - f(mm)) / (2.0 * h * scale);
      g(j, k) = v;
      g(k, j) = v;
    }
  }
  return g;
}

double bracket_canonical(const ScalarField<Vector>& f, const ScalarField<Vector>& g,
                         const Vector& z) {
  return canonical_from_gradients(fd_gradient(f, z), fd_gradient(g, z));
}

double bracket_hd(const ScalarField<SiegelPoint>& f, const ScalarField<SiegelPoint>& g,
                  const SiegelPoint& c) {
  return hd_from_gradients(gradients_hd(f, c), gradients_hd(g, c));
}

double lie_poisson_sym(const SymElement& mu, const SymElement& df, const SymElement& dg,
                       int sign) {
  return (sign >= 0 ? 1.0 : -1.0) * pairing(mu, bracket_sym(df, dg));
}

double bracket_lp_sym(const ScalarField<SymElement>& f, const ScalarField<SymElement>& g,
                      const SymElement& sigma, int sign) {
  auto fm = [&](const Matrix& m) { return f(SymElement(m)); };
  auto gm = [&](const Matrix& m) { return g(SymElement(m)); };
  return lie_poisson_sym(sigma, SymElement(fd_gradient_sym(fm, sigma.matrix())),
                         SymElement(fd_gradient_sym(gm, sigma.matrix())), sign);
}

double bracket_gwp(const ScalarField<GwpState>& f, const ScalarField<GwpState>& g,
                   const GwpState& state, double hbar) {
  const double canonical =
      canonical_from_gradients(gradient_z(f, state), gradient_z(g, state));
  auto on_c = [&](const ScalarField<GwpState>& h) {
    return ScalarField<SiegelPoint>([&h, &state](const SiegelPoint& c) {
      return h(GwpState{state.z, c});
    });
  };
  return canonical - (4.0 / hbar) * bracket_hd(on_c(f), on_c(g), state.c);
}

double bracket_moments(const ScalarField<MomentState>& f,
                       const ScalarField<MomentState>& g, const MomentState& state,
                       double hbar) {
  const double canonical =
      canonical_from_gradients(gradient_z(f, state), gradient_z(g, state));
  const double lp = lie_poisson_sym(state.sigma, SymElement(gradient_sigma(f, state)),
                                    SymElement(gradient_sigma(g, state)));
  return canonical - (4.0 / hbar) * lp;
}

double bracket_moments_weighted(const ScalarField<WeightedMoments>& f,
                                const ScalarField<WeightedMoments>& g,
                                const WeightedMoments& m, double hbar) {
  const double canonical = canonical_from_gradients(gradient_z(f, m), gradient_z(g, m));
  const double lp = lie_poisson_sym(m.sigma, SymElement(gradient_sigma(f, m)),
                                    SymElement(gradient_sigma(g, m)));
  return m.alpha * canonical - (4.0 / hbar) * lp;
}

double bracket_iota(const ScalarField<IotaImage>& f, const ScalarField<IotaImage>& g,
                    const IotaImage& m) {
  auto grad_z = [&](const ScalarField<IotaImage>& h) {
    return fd_gradient(
        [&](const Vector& z) {
          IotaImage s = m;
          s.z = z;
          return h(s);
        },
        m.z);
  };
  auto grad_mu = [&](const ScalarField<IotaImage>& h) {
    return fd_gradient_sym(
        [&](const Matrix& mu) {
          IotaImage s = m;
          s.mu = SymElement(mu);
          return h(s);
        },
        m.mu.matrix());
  };
  return m.alpha * canonical_from_gradients(grad_z(f), grad_z(g)) -
         lie_poisson_sym(m.mu, SymElement(grad_mu(f)), SymElement(grad_mu(g)));
}

double bracket_jac(const ScalarField<JacDual>& f, const ScalarField<JacDual>& g,
                   const JacDual& m) {
  const Matrix jt = symplectic_unit(m.dim()).transpose();
  auto grad_lambda = [&](const ScalarField<JacDual>& h) {
    return fd_gradient(
        [&](const Vector& lambda) {
          JacDual s = m;
          s.lambda = lambda;
          return h(s);
        },
        m.lambda);
  };
  // δh/δΠ ∈ sp: perturb Π along Jᵀ·(symmetric) directions.
  auto grad_pi = [&](const ScalarField<JacDual>& h) -> Matrix {
    const Matrix sym_grad = fd_gradient_sym(
        [&](const Matrix& delta) {
          JacDual s = m;
          s.pi = m.pi + jt * delta;
          return h(s);
        },
        Matrix::Zero(m.pi.rows(), m.pi.cols()));
    return jt * sym_grad;
  };
  const Vector fl = grad_lambda(f);
  const Vector gl = grad_lambda(g);
  const Matrix fp = grad_pi(f);
  const Matrix gp = grad_pi(g);
  const double heisenberg = m.alpha * canonical_from_gradients(fl, gl);
  const double cross = m.lambda.dot(fp * gl - gp * fl);
  const double sp = (m.pi.transpose() * (fp * gp - gp * fp)).trace();
  return heisenberg - cross - sp;
}

double poisson_map_check(const SiegelPoint& c, const SymElement& p, const SymElement& q) {
  auto f = [&](const SiegelPoint& x) { return pairing(p, sigma(x)); };
  auto g = [&](const SiegelPoint& x) { return pairing(q, sigma(x)); };
  const double lhs = bracket_hd(f, g, c);
  const double rhs = lie_poisson_sym(sigma(c), p, q, +1);
  return std::abs(lhs - rhs);
}

JacDual moment_map_gaussian(const GaussianState& state) {
  const Index d = state.dim();
  const Matrix jt = symplectic_unit(d).transpose();
  const Vector z = state.z.stacked();
  const Matrix second = z * z.transpose() + state.covariance();
  return JacDual{0.5 * jt * second, jt * z, 1.0};
}

JacDual moment_map_ensemble(const Ensemble& e) {
  if (e.size() == 0) throw NumericalError(ErrorKind::kEmptyEnsemble, "empty ensemble");
  const Index d = e.phase_dim() / 2;
  const Matrix jt = symplectic_unit(d).transpose();
  const auto n = static_cast<double>(e.size());
  const Vector first = e.samples.rowwise().sum() / n;
  const Matrix second = e.samples * e.samples.transpose() / n;
  return JacDual{0.5 * jt * symmetrize(second), jt * first, 1.0};
}

JacDual untangle(const JacDual& m) {
  if (m.alpha == 0.0) {
    throw NumericalError(ErrorKind::kSingularUntangle, "alpha is zero");
  }
  const Matrix jt = symplectic_unit(m.dim()).transpose();
  const Matrix shift = (0.5 / m.alpha) * (m.lambda * m.lambda.transpose()) * jt;
  return JacDual{m.pi - shift, m.lambda, m.alpha};
}

IotaImage iota(const JacDual& m) {
  const Matrix j = symplectic_unit(m.dim());
  return IotaImage{m.alpha, j * m.lambda, SymElement(j * m.pi)};
}

GaussianState jacobi_action_gaussian(const SymplecticMatrix& s, const Vector& zshift,
                                     const GaussianState& state) {
  const SymplecticMatrix inv = s.inverse();
  const Vector mean = inv.matrix() * (state.z.stacked() - zshift);
  return GaussianState(PhasePoint::from_stacked(mean), coadjoint_action(inv, state.sigma),
                       state.hbar);
}

}  // namespace gwp
