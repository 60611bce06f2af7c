#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "gwp/linalg.hpp"

namespace gwp {

/// Potential energy V(q) on R^d with derivatives up to the contracted third
/// derivative ∇_q tr(M·D²V(q)) used by the ħ-corrected force.
///
/// Implementations are immutable and reentrant.
class Potential {
 public:
  virtual ~Potential() = default;

  virtual Index dim() const = 0;
  virtual double value(const Vector& q) const = 0;
  virtual Vector gradient(const Vector& q) const = 0;
  virtual Matrix hessian(const Vector& q) const = 0;
  /// ∇_q tr(M·D²V(q)) for symmetric M.
  virtual Vector hessian_contract_grad(const Matrix& m, const Vector& q) const = 0;
  /// Round-trippable description, e.g. "torsional" or "harmonic(1)".
  virtual std::string describe() const = 0;

  /// V + (ħ/4) tr(M·D²V), M = B⁻¹ or Σ11.
  double corrected_value(const Vector& q, const Matrix& m, double hbar) const;

 protected:
  void check_dim(const Vector& q) const;
};

/// V(q) = 2 − cos q¹ − cos q² (d = 2).
class TorsionalPotential final : public Potential {
 public:
  Index dim() const override { return 2; }
  double value(const Vector& q) const override;
  Vector gradient(const Vector& q) const override;
  Matrix hessian(const Vector& q) const override;
  Vector hessian_contract_grad(const Matrix& m, const Vector& q) const override;
  std::string describe() const override { return "torsional"; }
};

/// V(q) = ½ qᵀKq + c·q.
class QuadraticPotential : public Potential {
 public:
  QuadraticPotential(const Matrix& k, const Vector& c);

  /// ½ ω² |q|² in d dimensions.
  static QuadraticPotential harmonic(Index d, double omega);

  const Matrix& stiffness() const { return k_; }
  const Vector& linear() const { return c_; }

  Index dim() const override { return k_.rows(); }
  double value(const Vector& q) const override;
  Vector gradient(const Vector& q) const override;
  Matrix hessian(const Vector& q) const override;
  Vector hessian_contract_grad(const Matrix& m, const Vector& q) const override;
  std::string describe() const override;

 private:
  Matrix k_;
  Vector c_;
  double omega_ = -1.0;  // > 0 when built by harmonic()
};

/// Derivatives of a value-only potential by central differences
/// (h = 1e-5·max(1,|q_i|) for gradients, 1e-4·max(1,|q_i|) for
/// Hessian-level quantities).
class FiniteDifferencePotential final : public Potential {
 public:
  using ValueFn = std::function<double(const Vector&)>;

  FiniteDifferencePotential(Index d, ValueFn value, std::string name = "fd");

  Index dim() const override { return d_; }
  double value(const Vector& q) const override;
  Vector gradient(const Vector& q) const override;
  Matrix hessian(const Vector& q) const override;
  Vector hessian_contract_grad(const Matrix& m, const Vector& q) const override;
  std::string describe() const override { return name_; }

 private:
  Index d_;
  ValueFn value_;
  std::string name_;
};

/// Wraps the value of an existing potential into a FiniteDifferencePotential.
std::shared_ptr<const Potential> fd_fallback(std::shared_ptr<const Potential> base);

/// Parses `torsional` | `harmonic(omega)` | `quadratic(K, c)` where K and c
/// use the bracketed row-major matrix syntax. `d` is the configured
/// dimension; throws ConfigError on mismatch or syntax errors.
std::shared_ptr<const Potential> make_potential(std::string_view spec, Index d);

}  // namespace gwp
