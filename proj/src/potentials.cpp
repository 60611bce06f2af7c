#include "gwp/potentials.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "gwp/matrix_io.hpp"

namespace gwp {

void Potential::check_dim(const Vector& q) const {
  if (q.size() != dim()) {
    throw NumericalError(ErrorKind::kDimensionMismatch,
                         "potential of dimension " + std::to_string(dim()) +
                             " evaluated at a point of dimension " +
                             std::to_string(q.size()));
  }
}

double Potential::corrected_value(const Vector& q, const Matrix& m, double hbar) const {
  return value(q) + 0.25 * hbar * (m * hessian(q)).trace();
}

double TorsionalPotential::value(const Vector& q) const {
  check_dim(q);
  return 2.0 - std::cos(q(0)) - std::cos(q(1));
}

Vector TorsionalPotential::gradient(const Vector& q) const {
  check_dim(q);
  return Vector{{std::sin(q(0)), std::sin(q(1))}};
}

Matrix TorsionalPotential::hessian(const Vector& q) const {
  check_dim(q);
  Matrix h = Matrix::Zero(2, 2);
  h(0, 0) = std::cos(q(0));
  h(1, 1) = std::cos(q(1));
  return h;
}

Vector TorsionalPotential::hessian_contract_grad(const Matrix& m, const Vector& q) const {
  check_dim(q);
  return Vector{{-m(0, 0) * std::sin(q(0)), -m(1, 1) * std::sin(q(1))}};
}

QuadraticPotential::QuadraticPotential(const Matrix& k, const Vector& c)
    : k_(symmetrize(k)), c_(c) {
  if (k.rows() != k.cols() || c.size() != k.rows() || k.rows() == 0) {
    throw NumericalError(ErrorKind::kDimensionMismatch,
                         "quadratic potential needs a square K and matching c");
  }
}

QuadraticPotential QuadraticPotential::harmonic(Index d, double omega) {
  QuadraticPotential v(omega * omega * Matrix::Identity(d, d), Vector::Zero(d));
  v.omega_ = omega;
  return v;
}

double QuadraticPotential::value(const Vector& q) const {
  check_dim(q);
  return 0.5 * q.dot(k_ * q) + c_.dot(q);
}

Vector QuadraticPotential::gradient(const Vector& q) const {
  check_dim(q);
  return k_ * q + c_;
}

Matrix QuadraticPotential::hessian(const Vector& q) const {
  check_dim(q);
  return k_;
}

Vector QuadraticPotential::hessian_contract_grad(const Matrix&, const Vector& q) const {
  check_dim(q);
  return Vector::Zero(dim());
}

std::string QuadraticPotential::describe() const {
  if (omega_ > 0.0) return "harmonic(" + format_real(omega_) + ")";
  return "quadratic(" + format_matrix(k_) + ", " + format_vector(c_) + ")";
}

FiniteDifferencePotential::FiniteDifferencePotential(Index d, ValueFn value,
                                                     std::string name)
    : d_(d), value_(std::move(value)), name_(std::move(name)) {}

double FiniteDifferencePotential::value(const Vector& q) const {
  check_dim(q);
  return value_(q);
}

namespace {

double step_for(double x, double rel) { return rel * std::max(1.0, std::abs(x)); }

}  // namespace

Vector FiniteDifferencePotential::gradient(const Vector& q) const {
  check_dim(q);
  Vector g(d_);
  for (Index i = 0; i < d_; ++i) {
    const double h = step_for(q(i), 1e-5);
    Vector qp = q, qm = q;
    qp(i) += h;
    qm(i) -= h;
    g(i) = (value_(qp) - value_(qm)) / (2.0 * h);
  }
  return g;
}

Matrix FiniteDifferencePotential::hessian(const Vector& q) const {
  check_dim(q);
  Matrix h(d_, d_);
  for (Index i = 0; i < d_; ++i) {
    for (Index j = i; j < d_; ++j) {
      const double hi = step_for(q(i), 1e-4);
      const double hj = step_for(q(j), 1e-4);
      auto shifted = [&](double si, double sj) {
        Vector x = q;
        x(i) += si;
        x(j) += sj;
        return value_(x);
      };
      const double v = (shifted(hi, hj) - shifted(hi, -hj) - shifted(-hi, hj) +
                        shifted(-hi, -hj)) /
                       (4.0 * hi * hj);
      h(i, j) = v;
      h(j, i) = v;
    }
  }
  return h;
}

Vector FiniteDifferencePotential::hessian_contract_grad(const Matrix& m,
                                                        const Vector& q) const {
  check_dim(q);
  Vector g(d_);
  for (Index i = 0; i < d_; ++i) {
    const double h = step_for(q(i), 1e-3);
    Vector qp = q, qm = q;
    qp(i) += h;
    qm(i) -= h;
    g(i) = ((m * hessian(qp)).trace() - (m * hessian(qm)).trace()) / (2.0 * h);
  }
  return g;
}

std::shared_ptr<const Potential> fd_fallback(std::shared_ptr<const Potential> base) {
  const Index d = base->dim();
  std::string name = base->describe();
  return std::make_shared<FiniteDifferencePotential>(
      d, [base = std::move(base)](const Vector& q) { return base->value(q); },
      std::move(name));
}

std::shared_ptr<const Potential> make_potential(std::string_view spec, Index d) {
  const std::string s = trim(spec);
  if (s == "torsional") {
    if (d != 2) throw ConfigError("torsional potential requires dimension 2");
    return std::make_shared<TorsionalPotential>();
  }
  const auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')') {
    throw ConfigError("unknown potential '" + s + "'");
  }
  const std::string name = trim(s.substr(0, open));
  const std::string args = s.substr(open + 1, s.size() - open - 2);
  if (name == "harmonic") {
    const double omega = parse_real(args);
    if (!(omega > 0.0)) throw ConfigError("harmonic frequency must be positive");
    return std::make_shared<QuadraticPotential>(QuadraticPotential::harmonic(d, omega));
  }
  if (name == "quadratic") {
    // Split at the top-level comma between K and c.
    int depth = 0;
    std::size_t split = std::string::npos;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == '[') ++depth;
      if (args[i] == ']') --depth;
      if (args[i] == ',' && depth == 0) {
        split = i;
        break;
      }
    }
    if (split == std::string::npos) {
      throw ConfigError("quadratic potential expects quadratic(K, c)");
    }
    const Matrix k = parse_matrix(args.substr(0, split));
    const Vector c = parse_vector(args.substr(split + 1));
    if (k.rows() != d || c.size() != d) {
      throw ConfigError("quadratic potential does not match dimension " +
                        std::to_string(d));
    }
    return std::make_shared<QuadraticPotential>(k, c);
  }
  throw ConfigError("unknown potential '" + name + "'");
}

}  // namespace gwp
