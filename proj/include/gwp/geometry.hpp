#pragma once

// Siegel upper half space H_d = {A + iB : A, B symmetric, B > 0}, the
// symplectic group acting on it by linear fractional transformations, the
// Lie algebra sym(2d) ≅ sp(2d), and the covariance momentum map.
//
// Complex d×d matrices are carried as real (A, B) pairs.

#include "gwp/linalg.hpp"

namespace gwp {

inline constexpr double kSymplecticTolerance = 1e-10;

/// A point C = A + iB of H_d.
class SiegelPoint {
 public:
  /// Symmetrizes both parts; throws kIllConditioned unless B is positive
  /// definite, or kDimensionMismatch on shape errors.
  SiegelPoint(const Matrix& a, const Matrix& b);

  /// iI in H_d.
  static SiegelPoint identity(Index d);

  const Matrix& real() const { return a_; }
  const Matrix& imag() const { return b_; }
  Index dim() const { return a_.rows(); }

 private:
  Matrix a_;
  Matrix b_;
};

/// Element of Sp(2d, R): SᵀJS = J.
class SymplecticMatrix {
 public:
  /// Throws kInvalidArgument when ‖SᵀJS − J‖_max or the block conditions
  /// exceed `tol`.
  explicit SymplecticMatrix(const Matrix& s, double tol = kSymplecticTolerance);

  static SymplecticMatrix identity(Index d);

  const Matrix& matrix() const { return s_; }
  Index dim() const { return s_.rows() / 2; }

  auto s11() const { return s_.topLeftCorner(dim(), dim()); }
  auto s12() const { return s_.topRightCorner(dim(), dim()); }
  auto s21() const { return s_.bottomLeftCorner(dim(), dim()); }
  auto s22() const { return s_.bottomRightCorner(dim(), dim()); }

  SymplecticMatrix operator*(const SymplecticMatrix& other) const;
  /// S⁻¹ = −J Sᵀ J.
  SymplecticMatrix inverse() const;

 private:
  Matrix s_;
};

/// max |SᵀJS − J|.
double symplectic_defect(const Matrix& s);

/// Symmetric 2d×2d matrix: an element of sym(2d), its dual, or a covariance.
class SymElement {
 public:
  explicit SymElement(const Matrix& m);

  static SymElement zero(Index d) { return SymElement(Matrix::Zero(2 * d, 2 * d)); }
  static SymElement identity(Index d) {
    return SymElement(Matrix::Identity(2 * d, 2 * d));
  }

  const Matrix& matrix() const { return m_; }
  Index dim() const { return m_.rows() / 2; }

  auto block11() const { return m_.topLeftCorner(dim(), dim()); }
  auto block12() const { return m_.topRightCorner(dim(), dim()); }
  auto block22() const { return m_.bottomRightCorner(dim(), dim()); }

 private:
  Matrix m_;
};

/// Tangent vector (dA, dB) to H_d.
struct TangentHd {
  TangentHd(const Matrix& da, const Matrix& db);

  Matrix dA;
  Matrix dB;
};

/// σ(C) = [[B⁻¹, B⁻¹A], [AB⁻¹, AB⁻¹A + B]].
SymElement sigma(const SiegelPoint& c);

/// Inverse of σ on symplectic positive-definite Σ: B = Σ11⁻¹, A = Σ11⁻¹Σ12.
SiegelPoint sigma_inverse(const SymElement& sigma, double tol = kSymplecticTolerance);

/// (S21 + S22 C)(S11 + S12 C)⁻¹.
SiegelPoint moebius(const SymplecticMatrix& s, const SiegelPoint& c);

/// Ξ(C) = [[B^{-1/2}, 0], [A B^{-1/2}, B^{1/2}]], so moebius(Ξ(C), iI) = C.
SymplecticMatrix xi_factor(const SiegelPoint& c);

/// Quotient map Sp(2d) → H_d, S ↦ moebius(S, iI).
SiegelPoint pi_u(const SymplecticMatrix& s);

/// S Sᵀ.
SymElement jhat(const SymplecticMatrix& s);

/// Jᵀξ ∈ sp(2d).
Matrix tilde(const SymElement& xi);

/// [ξ, η] = ξJᵀη − ηJᵀξ.
SymElement bracket_sym(const SymElement& xi, const SymElement& eta);

/// ad*_ξ μ = Jξμ − μξJ.
SymElement ad_star(const SymElement& xi, const SymElement& mu);

/// Ad*_{S⁻¹} μ = SμSᵀ.
SymElement coadjoint_action(const SymplecticMatrix& s, const SymElement& mu);

/// Trace pairing tr(ξη).
double pairing(const SymElement& xi, const SymElement& eta);

/// Infinitesimal generator ξ_{H_d}(C) of the Möbius action:
///   Ȧ = ξ11 + ξ12A + Aξ12ᵀ + Aξ22A − Bξ22B,
///   Ḃ = Bξ12ᵀ + ξ12B + Bξ22A + Aξ22B.
TangentHd infinitesimal_generator(const SymElement& xi, const SiegelPoint& c);

/// Ω(v1, v2) = tr(B⁻¹dB₁B⁻¹dA₂) − tr(B⁻¹dB₂B⁻¹dA₁).
double omega_hd(const SiegelPoint& c, const TangentHd& v1, const TangentHd& v2);

/// Θ(v) = −tr(A d(B⁻¹)[dB]) = tr(A B⁻¹ dB B⁻¹); Ω = −dΘ.
double theta_hd(const SiegelPoint& c, const TangentHd& v);

/// (±) KKS form ±tr(μ[ξ, η]) evaluated on (ad*_ξ μ, ad*_η μ).
double kks_form(const SymElement& mu, const SymElement& xi, const SymElement& eta,
                int sign = +1);

}  // namespace gwp
