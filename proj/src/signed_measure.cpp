#include "kkbounds/signed_measure.hpp"

#include <cmath>
#include <sstream>

#include "kkbounds/errors.hpp"

namespace kkbounds {

double inner_product_nu(int n, double s, const Polynomial& f, const Polynomial& g) {
  const Polynomial weight{s * s, 0.0, -1.0};
  return integrate_mu(n, f * g * weight);
}

SignedMeasureContext::SignedMeasureContext(int n, int k, double s) : n_(n), k_(k), s_(s) {
  if (n < 2) throw PreconditionError("dimension n must be at least 2");
  if (k < 1) throw PreconditionError("design order k must be at least 1");
  if (!(s <= 1.0)) throw PreconditionError("s must not exceed 1 (mu_n is supported on [-1, 1])");
  alpha_max_ = largest_gauss_node(n, k);
  if (!(s >= alpha_max_ + kSignedMeasureMargin)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "s=" << s << " must exceed the largest zero " << alpha_max_ << " of P_" << k + 1 << "^(" << n
        << "); nu_s is not positive definite up to degree " << k - 1 << " otherwise";
    throw PreconditionError(msg.str());
  }

  basis_.reserve(static_cast<std::size_t>(k) + 1);
  norms_.reserve(static_cast<std::size_t>(k) + 1);
  for (int j = 0; j <= k; ++j) {
    Polynomial q = Polynomial::monomial(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < j; ++i) {
        const double c = inner_product_nu(n, s, q, basis_[i]) / norms_[i];
        q -= c * basis_[i];
      }
    }
    const double norm = inner_product_nu(n, s, q, q);
    if (j < k && !(norm > 0.0)) {
      std::ostringstream msg;
      msg << "nu_s lost positive definiteness numerically at degree " << j << " (<q,q>=" << norm << ")";
      throw NumericalError(msg.str());
    }
    basis_.push_back(std::move(q));
    norms_.push_back(norm);
  }
}

SignedMeasureContext build_context(int n, int k, double s) { return SignedMeasureContext(n, k, s); }

QuadratureRule rule_lambda(const SignedMeasureContext& ctx) {
  const double s = ctx.s();
  QuadratureRule rule;
  rule.kind = "lambda";
  rule.n = ctx.dimension();
  rule.k = ctx.order();
  rule.s = s;
  const std::vector<double> interior = symmetric_roots(ctx.top(), s);
  if (interior.size() != static_cast<std::size_t>(ctx.order()))
    throw NumericalError("q_{k,s} does not have k simple zeros in (-s, s)");
  for (double x : interior) {
    if (!(std::abs(x) < s - 1e-12)) throw NumericalError("zero of q_{k,s} not strictly inside (-s, s)");
  }
  rule.nodes.push_back(-s);
  rule.nodes.insert(rule.nodes.end(), interior.begin(), interior.end());
  rule.nodes.push_back(s);
  rule.weights = interpolatory_weights(rule.n, rule.nodes);
  rule.exact_degree = 2 * ctx.order() + 1;
  for (double w : rule.weights) {
    if (!(w > 0.0)) throw NumericalError("rule_lambda produced a non-positive weight");
  }
  return rule;
}

}  // namespace kkbounds
