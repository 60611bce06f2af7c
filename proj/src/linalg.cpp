#include "gwp/linalg.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace gwp {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIllConditioned:
      return "ill-conditioned input";
    case ErrorKind::kNotPureState:
      return "not a pure state";
    case ErrorKind::kDegenerateAction:
      return "degenerate action";
    case ErrorKind::kStepTooLarge:
      return "step too large";
    case ErrorKind::kSingularUntangle:
      return "singular untangle";
    case ErrorKind::kDimensionMismatch:
      return "dimension mismatch";
    case ErrorKind::kEmptyEnsemble:
      return "empty ensemble";
    case ErrorKind::kInvalidArgument:
      return "invalid argument";
  }
  return "unknown error";
}

Matrix symplectic_unit(Index d) {
  Matrix j = Matrix::Zero(2 * d, 2 * d);
  j.topRightCorner(d, d).setIdentity();
  j.bottomLeftCorner(d, d) = -Matrix::Identity(d, d);
  return j;
}

Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double condition_number(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

double min_eigenvalue(const Matrix& sym) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
  return eig.eigenvalues()(0);
}

namespace {

Eigen::SelfAdjointEigenSolver<Matrix> checked_spd_eigen(const Matrix& sym) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetrize(sym));
  if (eig.info() != Eigen::Success) {
    throw NumericalError(ErrorKind::kIllConditioned, "eigendecomposition failed");
  }
  const auto& ev = eig.eigenvalues();
  if (!(ev(0) > 0.0) || ev(ev.size() - 1) / ev(0) > kMaxConditionNumber) {
    throw NumericalError(ErrorKind::kIllConditioned,
                         "matrix is not positive definite (min eigenvalue " +
                             std::to_string(ev(0)) + ")");
  }
  return eig;
}

}  // namespace

Matrix spd_inverse(const Matrix& sym) {
  Eigen::LLT<Matrix> llt(sym);
  if (llt.info() != Eigen::Success) {
    throw NumericalError(ErrorKind::kIllConditioned,
                         "Cholesky factorization failed");
  }
  const auto& l = llt.matrixLLT();
  const double ratio = l.diagonal().maxCoeff() / l.diagonal().minCoeff();
  if (ratio * ratio > kMaxConditionNumber) {
    throw NumericalError(ErrorKind::kIllConditioned,
                         "condition number above threshold");
  }
  return symmetrize(llt.solve(Matrix::Identity(sym.rows(), sym.cols())));
}

Matrix spd_sqrt(const Matrix& sym) {
  const auto eig = checked_spd_eigen(sym);
  const Matrix& v = eig.eigenvectors();
  return symmetrize(v * eig.eigenvalues().cwiseSqrt().asDiagonal() * v.transpose());
}

Matrix spd_inv_sqrt(const Matrix& sym) {
  const auto eig = checked_spd_eigen(sym);
  const Matrix& v = eig.eigenvectors();
  return symmetrize(v * eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                    v.transpose());
}

Matrix expm(const Matrix& m) { return m.exp(); }

Matrix right_solve(const Matrix& m, const Matrix& r, ErrorKind kind) {
  Eigen::PartialPivLU<Matrix> lu(m.transpose());
  const double rc = lu.rcond();
  if (!(rc > 1.0 / kMaxConditionNumber)) {
    throw NumericalError(kind, "linear solve is singular (rcond " +
                                   std::to_string(rc) + ")");
  }
  return lu.solve(r.transpose()).transpose();
}

}  // namespace gwp
