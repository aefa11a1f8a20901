#pragma once

#include <initializer_list>
#include <span>
#include <vector>

namespace kkbounds {

/// Dense real polynomial in the monomial basis; coeffs()[j] multiplies t^j.
///
/// Trailing coefficients with magnitude at most kTrimTolerance are dropped on
/// construction, so a nonzero polynomial always has a nonzero leading
/// coefficient. The zero polynomial has degree -1.
class Polynomial {
 public:
  static constexpr double kTrimTolerance = 1e-14;

  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);
  Polynomial(std::initializer_list<double> coeffs);

  static Polynomial constant(double c);
  static Polynomial monomial(int power, double c = 1.0);
  /// Monic polynomial with the given roots.
  static Polynomial from_roots(std::span<const double> roots);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const double> coeffs() const { return coeffs_; }
  double coeff(int j) const;
  double leading() const { return coeffs_.empty() ? 0.0 : coeffs_.back(); }
  double max_abs_coeff() const;

  /// Horner evaluation.
  double operator()(double t) const;
  double derivative_at(double t, int order = 1) const;
  Polynomial derivative() const;

  /// q(t) := p(t^2); coefficient j of p moves to index 2j.
  Polynomial compose_square() const;

  struct LinearDivision;
  /// Synthetic division by (t - a).
  LinearDivision divide_linear(double a) const;
  /// Quotient of exact division by (t - root); throws NumericalError when the
  /// remainder is not negligible relative to the coefficients.
  Polynomial deflate(double root) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(double c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double c) { return a *= c; }
  friend Polynomial operator*(double c, Polynomial a) { return a *= c; }
  friend Polynomial operator-(Polynomial a) { return a *= -1.0; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  void trim();

  std::vector<double> coeffs_;
};

struct Polynomial::LinearDivision {
  Polynomial quotient;
  double remainder = 0.0;
};

/// c_l = integral of t^l against mu_n (closed form).
double monomial_moment(int n, int l);

/// Integral of p against the probability measure mu_n on [-1, 1],
/// d mu_n = gamma_n (1 - t^2)^((n-3)/2) dt, evaluated through monomial moments.
double integrate_mu(int n, const Polynomial& p);

}  // namespace kkbounds
