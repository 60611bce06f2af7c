#include "gwp/integrators.hpp"

#include <cmath>

namespace gwp {

StepperConfig::StepperConfig(double dt_in, double t_final_in, int record_stride_in)
    : dt(dt_in), t_final(t_final_in), record_stride(record_stride_in) {
  if (!(dt > 0.0) || !(t_final >= 0.0) || record_stride < 1) {
    throw NumericalError(ErrorKind::kInvalidArgument,
                         "stepper needs dt > 0, t_final >= 0, record_stride >= 1");
  }
}

long StepperConfig::steps() const { return std::lround(t_final / dt); }

PhasePoint verlet_step(const PhasePoint& z, double dt, const SimParams& params,
                       const Potential& v) {
  const Vector p_half = z.p - 0.5 * dt * v.gradient(z.q);
  const Vector q_new = z.q + dt * p_half / params.mass;
  return PhasePoint{q_new, p_half - 0.5 * dt * v.gradient(q_new)};
}

SymplecticMatrix kinetic_factor(Index d, double tau, double mass) {
  Matrix s = Matrix::Identity(2 * d, 2 * d);
  s.topRightCorner(d, d) = (tau / mass) * Matrix::Identity(d, d);
  return SymplecticMatrix(s);
}

SymplecticMatrix potential_factor(const Matrix& hessian, double tau) {
  const Index d = hessian.rows();
  Matrix s = Matrix::Identity(2 * d, 2 * d);
  s.bottomLeftCorner(d, d) = -tau * symmetrize(hessian);
  return SymplecticMatrix(s, 1e-8);
}

namespace {

// Exact flow of the potential part for time tau: q and B frozen.
GwpState potential_kick(const GwpState& s, double tau, const SimParams& params,
                        const Potential& v) {
  const Matrix binv = spd_inverse(s.c.imag());
  const Vector force =
      v.gradient(s.z.q) + 0.25 * params.hbar * v.hessian_contract_grad(binv, s.z.q);
  const Matrix hess = v.hessian(s.z.q);
  return GwpState{PhasePoint{s.z.q, s.z.p - tau * force},
                  moebius(potential_factor(hess, tau), s.c)};
}

// Exact flow of the kinetic part: free drift and C ← C(I + (τ/m)C)⁻¹.
GwpState kinetic_drift(const GwpState& s, double tau, const SimParams& params) {
  const Index d = s.z.dim();
  try {
    return GwpState{PhasePoint{s.z.q + tau * s.z.p / params.mass, s.z.p},
                    moebius(kinetic_factor(d, tau, params.mass), s.c)};
  } catch (const NumericalError& e) {
    if (e.kind() != ErrorKind::kDegenerateAction) throw;
    throw NumericalError(ErrorKind::kStepTooLarge,
                         "Riccati drift is singular; reduce dt");
  }
}

MomentState moment_kick(const MomentState& s, double tau, const SimParams& params,
                        const Potential& v) {
  const Vector force = v.gradient(s.z.q) + 0.25 * params.hbar *
                                               v.hessian_contract_grad(
                                                   s.sigma.block11(), s.z.q);
  const Matrix hess = v.hessian(s.z.q);
  return MomentState{PhasePoint{s.z.q, s.z.p - tau * force},
                     coadjoint_action(potential_factor(hess, tau), s.sigma)};
}

MomentState moment_drift(const MomentState& s, double tau, const SimParams& params) {
  const Index d = s.z.dim();
  return MomentState{PhasePoint{s.z.q + tau * s.z.p / params.mass, s.z.p},
                     coadjoint_action(kinetic_factor(d, tau, params.mass), s.sigma)};
}

}  // namespace

GwpState splitting_step(const GwpState& s, double dt, const SimParams& params,
                        const Potential& v) {
  GwpState out = potential_kick(s, 0.5 * dt, params, v);
  out = kinetic_drift(out, dt, params);
  return potential_kick(out, 0.5 * dt, params, v);
}

MomentState moment_splitting_step(const MomentState& s, double dt,
                                  const SimParams& params, const Potential& v) {
  MomentState out = moment_kick(s, 0.5 * dt, params, v);
  out = moment_drift(out, dt, params);
  return moment_kick(out, 0.5 * dt, params, v);
}

Matrix cayley(const Matrix& x) {
  const Matrix id = Matrix::Identity(x.rows(), x.cols());
  Eigen::PartialPivLU<Matrix> lu(id - 0.5 * x);
  if (!(lu.rcond() > 1.0 / kMaxConditionNumber)) {
    throw NumericalError(ErrorKind::kStepTooLarge, "Cayley transform is singular");
  }
  return lu.solve(id + 0.5 * x);
}

Matrix cayley_step(const Matrix& s, const PhasePoint& z_mid, double dt,
                   const SimParams& params, const Potential& v) {
  const Matrix m = symplectic_unit(z_mid.dim()) * classical_hessian(z_mid.q, params, v);
  return cayley(dt * m) * s;
}

Vector rk4_step(const VectorField& rhs, const Vector& x, double dt) {
  const Vector k1 = rhs(x);
  const Vector k2 = rhs(x + 0.5 * dt * k1);
  const Vector k3 = rhs(x + 0.5 * dt * k2);
  const Vector k4 = rhs(x + dt * k3);
  return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Vector flatten(const GwpState& s) {
  const Index d = s.z.dim();
  Vector x(2 * d + 2 * d * d);
  x.head(d) = s.z.q;
  x.segment(d, d) = s.z.p;
  x.segment(2 * d, d * d) = s.c.real().reshaped();
  x.tail(d * d) = s.c.imag().reshaped();
  return x;
}

GwpState unflatten_gwp(const Vector& x, Index d) {
  const Matrix a = x.segment(2 * d, d * d).reshaped(d, d);
  const Matrix b = x.tail(d * d).reshaped(d, d);
  return GwpState{PhasePoint{x.head(d), x.segment(d, d)}, SiegelPoint(a, b)};
}

VectorField gwp_vector_field(const SimParams& params, const Potential& v, Index d) {
  return [params, &v, d](const Vector& x) {
    const GwpState s = unflatten_gwp(x, d);
    const GwpTangent t = gwp_rhs(s.z, s.c, params, v);
    Vector out(x.size());
    out.head(d) = t.dq;
    out.segment(d, d) = t.dp;
    out.segment(2 * d, d * d) = t.dA.reshaped();
    out.tail(d * d) = t.dB.reshaped();
    return out;
  };
}

}  // namespace gwp
