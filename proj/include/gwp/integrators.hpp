#pragma once

// Time steppers. The wave packet integrator is a Strang splitting of H into
// its kinetic part (drift of q plus the exact Riccati flow Ċ = −C²/m) and
// its potential part (kick of p with the corrected force, A ← A − τD²V),
// both exact subflows. Its image on (z, Σ) applies the same symplectic
// factors as congruences, so Σ_n = σ(C_n) step by step.

#include <functional>

#include "gwp/dynamics.hpp"

namespace gwp {

struct StepperConfig {
  StepperConfig(double dt_in, double t_final_in, int record_stride_in = 10);

  /// Number of steps to reach t_final (rounded to nearest).
  long steps() const;

  double dt;
  double t_final;
  int record_stride;
};

/// Kick-drift-kick Störmer–Verlet for H_cl.
PhasePoint verlet_step(const PhasePoint& z, double dt, const SimParams& params,
                       const Potential& v);

/// Kinetic factor [[I, τI/m], [0, I]].
SymplecticMatrix kinetic_factor(Index d, double tau, double mass);
/// Potential factor [[I, 0], [−τD²V, I]].
SymplecticMatrix potential_factor(const Matrix& hessian, double tau);

/// One Strang step of the wave packet system. Throws kStepTooLarge if the
/// Riccati drift is singular.
GwpState splitting_step(const GwpState& s, double dt, const SimParams& params,
                        const Potential& v);

/// The same splitting acting on (z, Σ) by congruences.
MomentState moment_splitting_step(const MomentState& s, double dt,
                                  const SimParams& params, const Potential& v);

/// Cayley transform (I − X/2)⁻¹(I + X/2); throws kStepTooLarge when singular.
Matrix cayley(const Matrix& x);

/// S' = cay(dt·J·D²H_cl(z_mid))·S.
Matrix cayley_step(const Matrix& s, const PhasePoint& z_mid, double dt,
                   const SimParams& params, const Potential& v);

using VectorField = std::function<Vector(const Vector&)>;

/// Classical fourth-order Runge–Kutta on a flat state (reference only).
Vector rk4_step(const VectorField& rhs, const Vector& x, double dt);

/// Flattening of (q, p, A, B) for the generic steppers.
Vector flatten(const GwpState& s);
GwpState unflatten_gwp(const Vector& x, Index d);
/// gwp_rhs on the flat representation.
VectorField gwp_vector_field(const SimParams& params, const Potential& v, Index d);

}  // namespace gwp
