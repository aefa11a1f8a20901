#pragma once

#include <vector>

#include "kkbounds/polynomial.hpp"
#include "kkbounds/quadrature.hpp"

namespace kkbounds {

/// <f, g> against d nu_s = (s^2 - t^2) d mu_n, computed from exact moments.
double inner_product_nu(int n, double s, const Polynomial& f, const Polynomial& g);

/// Smallest admissible distance of s above the largest zero of P_{k+1}^{(n)}.
inline constexpr double kSignedMeasureMargin = 1e-9;

/// Monic nu_s-orthogonal polynomials q_{0,s}, ..., q_{k,s} obtained by
/// Gram-Schmidt on 1, t, ..., t^k (with one re-orthogonalization pass).
///
/// Construction requires largest_gauss_node(n, k) + kSignedMeasureMargin <= s <= 1,
/// the range on which nu_s is positive definite up to degree k - 1.
class SignedMeasureContext {
 public:
  SignedMeasureContext(int n, int k, double s);

  int dimension() const { return n_; }
  int order() const { return k_; }
  double s() const { return s_; }
  /// Largest zero of P_{k+1}^{(n)}.
  double gauss_node_max() const { return alpha_max_; }
  const std::vector<Polynomial>& basis() const { return basis_; }
  const Polynomial& top() const { return basis_.back(); }
  /// <q_j, q_j>_{nu_s}; positive for j < k.
  const std::vector<double>& norms() const { return norms_; }

 private:
  int n_;
  int k_;
  double s_;
  double alpha_max_;
  std::vector<Polynomial> basis_;
  std::vector<double> norms_;
};

SignedMeasureContext build_context(int n, int k, double s);

/// Rule at -s, the k zeros of q_{k,s}, and s; exact on polynomials of degree 2k+1.
QuadratureRule rule_lambda(const SignedMeasureContext& ctx);

}  // namespace kkbounds
