#pragma once

// Dense linear-algebra vocabulary shared by every module.

#include <Eigen/Dense>

#include "gwp/errors.hpp"

namespace gwp {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Condition numbers above this are treated as numerically singular.
inline constexpr double kMaxConditionNumber = 1e12;

/// Standard symplectic unit [[0, I], [-I, 0]] of size 2d.
Matrix symplectic_unit(Index d);

/// (M + Mᵀ)/2.
Matrix symmetrize(const Matrix& m);

/// max |m_ij|.
double max_abs(const Matrix& m);

/// 2-norm condition number via singular values; infinity when singular.
double condition_number(const Matrix& m);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Matrix& sym);

/// Inverse of a symmetric positive-definite matrix by Cholesky.
/// Throws NumericalError(kIllConditioned) when not SPD or badly conditioned.
Matrix spd_inverse(const Matrix& sym);

/// Unique SPD square root (and its inverse) via eigendecomposition.
Matrix spd_sqrt(const Matrix& sym);
Matrix spd_inv_sqrt(const Matrix& sym);

/// Matrix exponential (Padé with scaling and squaring).
Matrix expm(const Matrix& m);

/// Solves X·M = R for X, i.e. X = R·M⁻¹, throwing `kind` when M is singular.
Matrix right_solve(const Matrix& m, const Matrix& r, ErrorKind kind);

}  // namespace gwp
