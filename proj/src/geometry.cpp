#include "gwp/geometry.hpp"

#include <algorithm>
#include <string>

namespace gwp {

namespace {

void require_square(const Matrix& m, Index n, const char* what) {
  if (m.rows() != n || m.cols() != n) {
    throw NumericalError(ErrorKind::kDimensionMismatch,
                         std::string(what) + " has shape " + std::to_string(m.rows()) +
                             "x" + std::to_string(m.cols()) + ", expected " +
                             std::to_string(n) + "x" + std::to_string(n));
  }
}

}  // namespace

SiegelPoint::SiegelPoint(const Matrix& a, const Matrix& b)
    : a_(symmetrize(a)), b_(symmetrize(b)) {
  require_square(a, a.rows(), "A");
  require_square(b, a.rows(), "B");
  if (a.rows() == 0) {
    throw NumericalError(ErrorKind::kDimensionMismatch, "empty Siegel point");
  }
  if (!(min_eigenvalue(b_) > 0.0)) {
    throw NumericalError(ErrorKind::kIllConditioned,
                         "imaginary part is not positive definite");
  }
}

SiegelPoint SiegelPoint::identity(Index d) {
  return SiegelPoint(Matrix::Zero(d, d), Matrix::Identity(d, d));
}

double symplectic_defect(const Matrix& s) {
  const Matrix j = symplectic_unit(s.rows() / 2);
  return max_abs(s.transpose() * j * s - j);
}

SymplecticMatrix::SymplecticMatrix(const Matrix& s, double tol) : s_(s) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0 || s.rows() == 0) {
    throw NumericalError(ErrorKind::kDimensionMismatch,
                         "symplectic matrix must be 2d x 2d");
  }
  const double defect = symplectic_defect(s_);
  // The block conditions S11ᵀS21 = S21ᵀS11, S12ᵀS22 = S22ᵀS12 and
  // S11ᵀS22 − S21ᵀS12 = I are the block form of SᵀJS = J.
  const double block_defect =
      std::max({max_abs(s11().transpose() * s21() - s21().transpose() * s11()),
                max_abs(s12().transpose() * s22() - s22().transpose() * s12()),
                max_abs(s11().transpose() * s22() - s21().transpose() * s12() -
                        Matrix::Identity(dim(), dim()))});
  if (!(defect <= tol) || !(block_defect <= tol)) {
    throw NumericalError(ErrorKind::kInvalidArgument,
                         "matrix is not symplectic (defect " +
                             std::to_string(std::max(defect, block_defect)) + ")");
  }
}

SymplecticMatrix SymplecticMatrix::identity(Index d) {
  return SymplecticMatrix(Matrix::Identity(2 * d, 2 * d));
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& other) const {
  return SymplecticMatrix(s_ * other.s_, 1e-8);
}

SymplecticMatrix SymplecticMatrix::inverse() const {
  const Matrix j = symplectic_unit(dim());
  return SymplecticMatrix(-j * s_.transpose() * j, 1e-8);
}

SymElement::SymElement(const Matrix& m) : m_(symmetrize(m)) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0) {
    throw NumericalError(ErrorKind::kDimensionMismatch,
                         "sym(2d) element must be 2d x 2d");
  }
}

TangentHd::TangentHd(const Matrix& da, const Matrix& db)
    : dA(symmetrize(da)), dB(symmetrize(db)) {
  if (da.rows() != db.rows() || da.cols() != db.cols()) {
    throw NumericalError(ErrorKind::kDimensionMismatch, "tangent blocks differ in size");
  }
}

SymElement sigma(const SiegelPoint& c) {
  const Index d = c.dim();
  if (condition_number(c.imag()) > kMaxConditionNumber) {
    throw NumericalError(ErrorKind::kIllConditioned, "B is numerically singular");
  }
  const Matrix binv = spd_inverse(c.imag());
  const Matrix& a = c.real();
  Matrix s(2 * d, 2 * d);
  s.topLeftCorner(d, d) = binv;
  s.topRightCorner(d, d) = binv * a;
  s.bottomLeftCorner(d, d) = a * binv;
  s.bottomRightCorner(d, d) = a * binv * a + c.imag();
  return SymElement(s);
}

SiegelPoint sigma_inverse(const SymElement& sig, double tol) {
  const Index d = sig.dim();
  const Matrix j = symplectic_unit(d);
  const Matrix& s = sig.matrix();
  const double defect = max_abs(s * j * s - j);
  if (!(defect <= tol)) {
    throw NumericalError(ErrorKind::kNotPureState,
                         "covariance is not symplectic (defect " +
                             std::to_string(defect) + ")");
  }
  const Matrix b = spd_inverse(sig.block11());
  return SiegelPoint(b * sig.block12(), b);
}

SiegelPoint moebius(const SymplecticMatrix& s, const SiegelPoint& c) {
  const Index d = c.dim();
  if (s.dim() != d) {
    throw NumericalError(ErrorKind::kDimensionMismatch, "action dimension mismatch");
  }
  const Matrix& a = c.real();
  const Matrix& b = c.imag();
  // X = S11 + S12 C = P + iQ, Y = S21 + S22 C = R + iT, result Z = Y X⁻¹.
  // Z is symmetric, so Xᵀ Z = Yᵀ, solved as a real 2d×2d block system.
  const Matrix p = s.s11() + s.s12() * a;
  const Matrix q = s.s12() * b;
  const Matrix r = s.s21() + s.s22() * a;
  const Matrix t = s.s22() * b;

  Matrix lhs(2 * d, 2 * d);
  lhs << p.transpose(), -q.transpose(), q.transpose(), p.transpose();
  Matrix rhs(2 * d, d);
  rhs << r.transpose(), t.transpose();

  Eigen::PartialPivLU<Matrix> lu(lhs);
  if (!(lu.rcond() > 1.0 / kMaxConditionNumber)) {
    throw NumericalError(ErrorKind::kDegenerateAction,
                         "S11 + S12 C is numerically singular");
  }
  const Matrix z = lu.solve(rhs);
  return SiegelPoint(z.topRows(d), z.bottomRows(d));
}

SymplecticMatrix xi_factor(const SiegelPoint& c) {
  const Index d = c.dim();
  const Matrix root = spd_sqrt(c.imag());
  const Matrix inv_root = spd_inv_sqrt(c.imag());
  Matrix s = Matrix::Zero(2 * d, 2 * d);
  s.topLeftCorner(d, d) = inv_root;
  s.bottomLeftCorner(d, d) = c.real() * inv_root;
  s.bottomRightCorner(d, d) = root;
  return SymplecticMatrix(s, 1e-8);
}

SiegelPoint pi_u(const SymplecticMatrix& s) {
  return moebius(s, SiegelPoint::identity(s.dim()));
}

SymElement jhat(const SymplecticMatrix& s) {
  return SymElement(s.matrix() * s.matrix().transpose());
}

Matrix tilde(const SymElement& xi) {
  return symplectic_unit(xi.dim()).transpose() * xi.matrix();
}

SymElement bracket_sym(const SymElement& xi, const SymElement& eta) {
  const Matrix jt = symplectic_unit(xi.dim()).transpose();
  return SymElement(xi.matrix() * jt * eta.matrix() - eta.matrix() * jt * xi.matrix());
}

SymElement ad_star(const SymElement& xi, const SymElement& mu) {
  const Matrix j = symplectic_unit(xi.dim());
  return SymElement(j * xi.matrix() * mu.matrix() - mu.matrix() * xi.matrix() * j);
}

SymElement coadjoint_action(const SymplecticMatrix& s, const SymElement& mu) {
  return SymElement(s.matrix() * mu.matrix() * s.matrix().transpose());
}

double pairing(const SymElement& xi, const SymElement& eta) {
  return (xi.matrix() * eta.matrix()).trace();
}

TangentHd infinitesimal_generator(const SymElement& xi, const SiegelPoint& c) {
  const Matrix& a = c.real();
  const Matrix& b = c.imag();
  const Matrix x11 = xi.block11();
  const Matrix x12 = xi.block12();
  const Matrix x22 = xi.block22();
  const Matrix da =
      x11 + x12 * a + a * x12.transpose() + a * x22 * a - b * x22 * b;
  const Matrix db = b * x12.transpose() + x12 * b + b * x22 * a + a * x22 * b;
  return TangentHd(da, db);
}

double omega_hd(const SiegelPoint& c, const TangentHd& v1, const TangentHd& v2) {
  const Matrix binv = spd_inverse(c.imag());
  return (binv * v1.dB * binv * v2.dA).trace() - (binv * v2.dB * binv * v1.dA).trace();
}

double theta_hd(const SiegelPoint& c, const TangentHd& v) {
  const Matrix binv = spd_inverse(c.imag());
  return (c.real() * binv * v.dB * binv).trace();
}

double kks_form(const SymElement& mu, const SymElement& xi, const SymElement& eta,
                int sign) {
  return (sign >= 0 ? 1.0 : -1.0) * pairing(mu, bracket_sym(xi, eta));
}

}  // namespace gwp
