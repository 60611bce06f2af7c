#include "gwp/dynamics.hpp"

namespace gwp {

Vector PhasePoint::stacked() const {
  Vector z(2 * dim());
  z << q, p;
  return z;
}

PhasePoint PhasePoint::from_stacked(const Vector& z) {
  const Index d = z.size() / 2;
  return PhasePoint{z.head(d), z.tail(d)};
}

SimParams::SimParams(double hbar_in, double mass_in) : hbar(hbar_in), mass(mass_in) {
  if (!(hbar >= 0.0) || !(mass > 0.0)) {
    throw NumericalError(ErrorKind::kInvalidArgument,
                         "hbar must be non-negative and mass positive");
  }
}

Matrix classical_hessian(const Vector& q, const SimParams& params, const Potential& v) {
  const Index d = q.size();
  Matrix h = Matrix::Zero(2 * d, 2 * d);
  h.topLeftCorner(d, d) = v.hessian(q);
  h.bottomRightCorner(d, d) = Matrix::Identity(d, d) / params.mass;
  return h;
}

double classical_hamiltonian(const PhasePoint& z, const SimParams& params,
                             const Potential& v) {
  return 0.5 * z.p.squaredNorm() / params.mass + v.value(z.q);
}

double gwp_hamiltonian(const PhasePoint& z, const SiegelPoint& c,
                       const SimParams& params, const Potential& v) {
  const Matrix& a = c.real();
  const Matrix& b = c.imag();
  const Matrix binv = spd_inverse(b);
  const Matrix inner = (a * a + b * b) / params.mass + v.hessian(z.q);
  return classical_hamiltonian(z, params, v) + 0.25 * params.hbar * (binv * inner).trace();
}

double moment_hamiltonian(const PhasePoint& z, const SymElement& sigma,
                          const SimParams& params, const Potential& v) {
  const double width =
      (sigma.block22().trace()) / params.mass + (sigma.block11() * v.hessian(z.q)).trace();
  return classical_hamiltonian(z, params, v) + 0.25 * params.hbar * width;
}

double collective_hamiltonian(const SymElement& sigma, const Vector& q,
                              const SimParams& params, const Potential& v) {
  return -(sigma.matrix() * classical_hessian(q, params, v)).trace();
}

double siegel_hamiltonian(const SiegelPoint& c, const Vector& q, const SimParams& params,
                          const Potential& v) {
  const Matrix& a = c.real();
  const Matrix& b = c.imag();
  return -(spd_inverse(b) * ((a * a + b * b) / params.mass + v.hessian(q))).trace();
}

PhasePoint classical_rhs(const PhasePoint& z, const SimParams& params,
                         const Potential& v) {
  return PhasePoint{z.p / params.mass, -v.gradient(z.q)};
}

GwpTangent gwp_rhs(const PhasePoint& z, const SiegelPoint& c, const SimParams& params,
                   const Potential& v) {
  const Matrix& a = c.real();
  const Matrix& b = c.imag();
  const Matrix binv = spd_inverse(b);
  GwpTangent out;
  out.dq = z.p / params.mass;
  out.dp = -(v.gradient(z.q) + 0.25 * params.hbar * v.hessian_contract_grad(binv, z.q));
  out.dA = -(a * a - b * b) / params.mass - v.hessian(z.q);
  out.dB = -(a * b + b * a) / params.mass;
  return out;
}

MomentTangent moment_rhs(const PhasePoint& z, const SymElement& sigma,
                         const SimParams& params, const Potential& v) {
  const Matrix j = symplectic_unit(z.dim());
  const Matrix h = classical_hessian(z.q, params, v);
  const Matrix& s = sigma.matrix();
  MomentTangent out;
  out.dq = z.p / params.mass;
  out.dp = -(v.gradient(z.q) +
             0.25 * params.hbar * v.hessian_contract_grad(sigma.block11(), z.q));
  out.dSigma = j * h * s - s * h * j;
  return out;
}

Matrix hagedorn_rhs(const PhasePoint& z, const Matrix& s, const SimParams& params,
                    const Potential& v) {
  return symplectic_unit(z.dim()) * classical_hessian(z.q, params, v) * s;
}

}  // namespace gwp
