#pragma once

// Hamiltonians and vector fields for the classical, Gaussian wave packet
// (z, C) and Gaussian moment (z, Σ) descriptions, plus the Hagedorn flow of
// the symplectic factor S with Σ = SSᵀ.

#include "gwp/geometry.hpp"
#include "gwp/potentials.hpp"

namespace gwp {

/// Phase-space point z = (q, p).
struct PhasePoint {
  Vector q;
  Vector p;

  Index dim() const { return q.size(); }
  /// (q, p) stacked into a 2d-vector.
  Vector stacked() const;
  static PhasePoint from_stacked(const Vector& z);
};

struct SimParams {
  SimParams(double hbar_in, double mass_in);

  double hbar;
  double mass;
};

/// Wave packet parameters (z, C) on R^2d × H_d.
struct GwpState {
  PhasePoint z;
  SiegelPoint c;
};

/// Gaussian moments (z, Σ) on R^2d × sym(2d).
struct MomentState {
  PhasePoint z;
  SymElement sigma;
};

/// Time derivative of a wave-packet state (q, p, A, B).
struct GwpTangent {
  Vector dq;
  Vector dp;
  Matrix dA;
  Matrix dB;
};

/// Time derivative of a moment state (q, p, Σ).
struct MomentTangent {
  Vector dq;
  Vector dp;
  Matrix dSigma;
};

/// D²H_cl(q) = [[D²V(q), 0], [0, I/m]].
Matrix classical_hessian(const Vector& q, const SimParams& params, const Potential& v);

/// p²/2m + V(q).
double classical_hamiltonian(const PhasePoint& z, const SimParams& params,
                             const Potential& v);

/// H_cl + (ħ/4) tr[B⁻¹((A² + B²)/m + D²V(q))].
double gwp_hamiltonian(const PhasePoint& z, const SiegelPoint& c,
                       const SimParams& params, const Potential& v);

/// H_cl + (ħ/4) tr(Σ22/m + Σ11 D²V(q)).
double moment_hamiltonian(const PhasePoint& z, const SymElement& sigma,
                          const SimParams& params, const Potential& v);

/// h_sym(Σ) = −tr(Σ D²H_cl(q)), the collective Hamiltonian on sym(2d).
double collective_hamiltonian(const SymElement& sigma, const Vector& q,
                              const SimParams& params, const Potential& v);

/// H_{H_d}(C) = −tr[B⁻¹((A² + B²)/m + D²V(q))].
double siegel_hamiltonian(const SiegelPoint& c, const Vector& q,
                          const SimParams& params, const Potential& v);

/// (p/m, −∇V(q)).
PhasePoint classical_rhs(const PhasePoint& z, const SimParams& params,
                         const Potential& v);

/// Wave packet equations with the ħ-corrected force:
///   q̇ = p/m, ṗ = −∇_q[V + (ħ/4)tr(B⁻¹D²V)],
///   Ȧ = −(A² − B²)/m − D²V, Ḃ = −(AB + BA)/m.
GwpTangent gwp_rhs(const PhasePoint& z, const SiegelPoint& c, const SimParams& params,
                   const Potential& v);

/// Moment equations: ṗ uses Σ11 in the corrected force and
/// Σ̇ = J D²H_cl Σ − Σ D²H_cl J.
MomentTangent moment_rhs(const PhasePoint& z, const SymElement& sigma,
                         const SimParams& params, const Potential& v);

/// Ṡ = J D²H_cl(z) S.
Matrix hagedorn_rhs(const PhasePoint& z, const Matrix& s, const SimParams& params,
                    const Potential& v);

}  // namespace gwp
