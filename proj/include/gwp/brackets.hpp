#pragma once

// Poisson brackets of the wave packet and moment formulations, evaluated
// from central-difference gradients of user-supplied scalar fields, and the
// Jacobi-group momentum map of Gaussian Wigner data with its untangling.
//
// Symmetric-matrix coordinates follow the full-index summation convention:
// the gradient G of f at M satisfies df = Σ_jk G_jk dM_jk with G symmetric,
// obtained by perturbing (j,k) and (k,j) together.

#include <functional>

#include "gwp/dynamics.hpp"
#include "gwp/egorov.hpp"

namespace gwp {

template <class Point>
using ScalarField = std::function<double(const Point&)>;

/// Central-difference step h = rel·max(1, |x|).
inline constexpr double kFdRelativeStep = 1e-5;

Vector fd_gradient(const ScalarField<Vector>& f, const Vector& x,
                   double rel_step = kFdRelativeStep);

/// Symmetric gradient of f at the symmetric matrix m (full-index convention).
Matrix fd_gradient_sym(const ScalarField<Matrix>& f, const Matrix& m,
                       double rel_step = kFdRelativeStep);

/// Element (Π, λ, α) of jac(R^2d)*. Π is stored as the sp(2d) matrix it is
/// paired against (Π = Jᵀμ for a symmetric μ on the image of Gaussian data).
struct JacDual {
  Matrix pi;
  Vector lambda;
  double alpha = 1.0;

  Index dim() const { return lambda.size() / 2; }
};

/// (α, z, μ) ∈ R^{2d+1} × sym(2d).
struct IotaImage {
  double alpha;
  Vector z;
  SymElement mu;
};

/// Moments with an explicit zeroth moment α.
struct WeightedMoments {
  double alpha;
  PhasePoint z;
  SymElement sigma;
};

/// {F, G}_{R^2d} = ∂F/∂q·∂G/∂p − ∂G/∂q·∂F/∂p.
double bracket_canonical(const ScalarField<Vector>& f, const ScalarField<Vector>& g,
                         const Vector& z);

/// −(∂F/∂W_jk ∂G/∂A_jk − ∂G/∂W_jk ∂F/∂A_jk) in coordinates (A, W = B⁻¹).
double bracket_hd(const ScalarField<SiegelPoint>& f, const ScalarField<SiegelPoint>& g,
                  const SiegelPoint& c);

/// ±tr(μ[δF/δμ, δG/δμ]) from supplied variational derivatives.
double lie_poisson_sym(const SymElement& mu, const SymElement& df, const SymElement& dg,
                       int sign = +1);

/// ±tr(Σ[δF/δΣ, δG/δΣ]) with finite-difference derivatives.
double bracket_lp_sym(const ScalarField<SymElement>& f, const ScalarField<SymElement>& g,
                      const SymElement& sigma, int sign = +1);

/// {F, G}_{R^2d} − (4/ħ){F, G}_{H_d}.
double bracket_gwp(const ScalarField<GwpState>& f, const ScalarField<GwpState>& g,
                   const GwpState& state, double hbar);

/// {F, G}_{R^2d} − (4/ħ) tr(Σ[δF/δΣ, δG/δΣ]).
double bracket_moments(const ScalarField<MomentState>& f,
                       const ScalarField<MomentState>& g, const MomentState& state,
                       double hbar);

/// α{F, G}_{R^2d} − (4/ħ) tr(Σ[δF/δΣ, δG/δΣ]).
double bracket_moments_weighted(const ScalarField<WeightedMoments>& f,
                                const ScalarField<WeightedMoments>& g,
                                const WeightedMoments& m, double hbar);

/// α{f, g}_{R^2d} − tr(μ[δf/δμ, δg/δμ]) on (α, z, μ).
double bracket_iota(const ScalarField<IotaImage>& f, const ScalarField<IotaImage>& g,
                    const IotaImage& m);

/// (−) Lie–Poisson bracket on jac(R^2d)*:
///   α{f,g}_λ − λ·(δf/δΠ ∂g/∂λ − δg/δΠ ∂f/∂λ) − tr(Πᵀ[δf/δΠ, δg/δΠ]),
/// with {·,·}_λ the canonical bracket in λ and δ/δΠ ∈ sp(2d) taken through
/// the tilde identification.
double bracket_jac(const ScalarField<JacDual>& f, const ScalarField<JacDual>& g,
                   const JacDual& m);

/// |{F∘σ, G∘σ}_{H_d}(C) − {F, G}⁺(σ(C))| for F = tr(P·), G = tr(Q·).
double poisson_map_check(const SiegelPoint& c, const SymElement& p, const SymElement& q);

/// (½Jᵀ⟨ζ⊗ζ⟩, Jᵀ⟨ζ⟩, 1) with ⟨ζ⊗ζ⟩ = z⊗z + (ħ/2)Σ.
JacDual moment_map_gaussian(const GaussianState& state);

/// The same map with sample means; throws kEmptyEnsemble.
JacDual moment_map_ensemble(const Ensemble& e);

/// (Π − (1/2α)(λ⊗λ)Jᵀ, λ, α); throws kSingularUntangle when α = 0.
JacDual untangle(const JacDual& m);

/// (α, Jλ, JΠ).
IotaImage iota(const JacDual& m);

/// Action W ↦ W(S· + zshift) on a Gaussian: mean ↦ S⁻¹(mean − zshift),
/// Σ ↦ S⁻¹ΣS⁻ᵀ.
GaussianState jacobi_action_gaussian(const SymplecticMatrix& s, const Vector& zshift,
                                     const GaussianState& state);

}  // namespace gwp
