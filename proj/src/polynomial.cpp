#include "kkbounds/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kkbounds/errors.hpp"

namespace kkbounds {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) { trim(); }

Polynomial Polynomial::constant(double c) { return Polynomial(std::vector<double>{c}); }

Polynomial Polynomial::monomial(int power, double c) {
  if (power < 0) throw PreconditionError("monomial power must be nonnegative");
  std::vector<double> coeffs(static_cast<std::size_t>(power) + 1, 0.0);
  coeffs.back() = c;
  return Polynomial(std::move(coeffs));
}

Polynomial Polynomial::from_roots(std::span<const double> roots) {
  std::vector<double> c{1.0};
  for (double r : roots) {
    c.push_back(0.0);
    for (std::size_t j = c.size() - 1; j > 0; --j) c[j] = c[j - 1] - r * c[j];
    c[0] *= -r;
  }
  return Polynomial(std::move(c));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && std::abs(coeffs_.back()) <= kTrimTolerance) coeffs_.pop_back();
}

double Polynomial::coeff(int j) const {
  if (j < 0 || j > degree()) return 0.0;
  return coeffs_[static_cast<std::size_t>(j)];
}

double Polynomial::max_abs_coeff() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double Polynomial::operator()(double t) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t j = 1; j < coeffs_.size(); ++j) d[j - 1] = static_cast<double>(j) * coeffs_[j];
  return Polynomial(std::move(d));
}

double Polynomial::derivative_at(double t, int order) const {
  if (order < 0) throw PreconditionError("derivative order must be nonnegative");
  Polynomial d = *this;
  for (int i = 0; i < order && !d.is_zero(); ++i) d = d.derivative();
  return d(t);
}

Polynomial Polynomial::compose_square() const {
  if (coeffs_.empty()) return {};
  std::vector<double> c(2 * coeffs_.size() - 1, 0.0);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) c[2 * j] = coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial::LinearDivision Polynomial::divide_linear(double a) const {
  if (coeffs_.empty()) return {Polynomial{}, 0.0};
  std::vector<double> q(coeffs_.size() - 1, 0.0);
  double carry = coeffs_.back();
  for (std::size_t j = coeffs_.size() - 1; j > 0; --j) {
    q[j - 1] = carry;
    carry = coeffs_[j - 1] + a * carry;
  }
  return {Polynomial(std::move(q)), carry};
}

Polynomial Polynomial::deflate(double root) const {
  auto [q, rem] = divide_linear(root);
  const double scale = std::max(1.0, max_abs_coeff());
  if (std::abs(rem) > 1e-10 * scale) {
    throw NumericalError("deflation by (t - " + std::to_string(root) +
                         ") left remainder " + std::to_string(rem));
  }
  return q;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t j = 0; j < other.coeffs_.size(); ++j) coeffs_[j] += other.coeffs_[j];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t j = 0; j < other.coeffs_.size(); ++j) coeffs_[j] -= other.coeffs_[j];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(double c) {
  for (double& x : coeffs_) x *= c;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

double monomial_moment(int n, int l) {
  if (n < 2) throw PreconditionError("dimension n must be at least 2");
  if (l < 0) throw PreconditionError("moment order must be nonnegative");
  if (l % 2 == 1) return 0.0;
  // c_l = 1*3*...*(l-1) / (n*(n+2)*...*(n+l-2))
  double c = 1.0;
  for (int j = 0; j < l / 2; ++j) c *= static_cast<double>(2 * j + 1) / static_cast<double>(n + 2 * j);
  return c;
}

double integrate_mu(int n, const Polynomial& p) {
  if (n < 2) throw PreconditionError("dimension n must be at least 2");
  double sum = 0.0;
  double c = 1.0;  // running c_{2j}
  const auto coeffs = p.coeffs();
  for (std::size_t j = 0; j < coeffs.size(); j += 2) {
    sum += coeffs[j] * c;
    const int half = static_cast<int>(j / 2);
    c *= static_cast<double>(2 * half + 1) / static_cast<double>(n + 2 * half);
  }
  return sum;
}

}  // namespace kkbounds
