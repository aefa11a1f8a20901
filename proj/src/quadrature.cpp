#include "kkbounds/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kkbounds/errors.hpp"
#include "kkbounds/gegenbauer.hpp"

namespace kkbounds {

namespace {

void check_nk(int n, int k) {
  if (n < 2) throw PreconditionError("dimension n must be at least 2");
  if (k < 1) throw PreconditionError("design order k must be at least 1");
}

double refine_root(const Polynomial& p, double lo, double hi, double f_lo) {
  while (hi - lo > 1e-15) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = p(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  const double fx = p(x);
  const double dfx = p.derivative_at(x);
  if (dfx != 0.0) {
    const double polished = x - fx / dfx;
    if (polished >= lo && polished <= hi && std::abs(p(polished)) <= std::abs(fx)) x = polished;
  }
  return x;
}

void check_weights(const QuadratureRule& rule) {
  for (std::size_t i = 0; i < rule.weights.size(); ++i) {
    if (!(rule.weights[i] > 0.0)) {
      std::ostringstream msg;
      msg << "rule_" << rule.kind << "(n=" << rule.n << ", k=" << rule.k << ") produced non-positive weight "
          << rule.weights[i] << " at node " << rule.nodes[i];
      throw NumericalError(msg.str());
    }
  }
}

}  // namespace

double QuadratureRule::apply(const Polynomial& p) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * p(nodes[i]);
  return sum;
}

std::vector<double> poly_roots_in_interval(const Polynomial& p, double a, double b,
                                           std::optional<std::size_t> expected) {
  if (!(a < b)) throw PreconditionError("root search interval must satisfy a < b");
  std::vector<double> roots;
  if (p.degree() >= 1) {
    const int cells = std::max(64 * p.degree(), 256);
    double x0 = a;
    double f0 = p(a);
    for (int i = 1; i <= cells; ++i) {
      const double x1 = (i == cells) ? b : a + (b - a) * static_cast<double>(i) / cells;
      const double f1 = p(x1);
      if (i < cells && f1 == 0.0) {
        roots.push_back(x1);
      } else if (f0 != 0.0 && f1 != 0.0 && ((f0 < 0.0) != (f1 < 0.0))) {
        roots.push_back(refine_root(p, x0, x1, f0));
      }
      x0 = x1;
      f0 = f1;
    }
  }
  const double tol = 1e-13 * std::max(1.0, p.max_abs_coeff());
  for (double r : roots) {
    if (std::abs(p(r)) > tol) {
      std::ostringstream msg;
      msg << "root refinement did not converge at t=" << r << " (|p|=" << std::abs(p(r)) << ")";
      throw NumericalError(msg.str());
    }
  }
  if (expected && roots.size() != *expected) {
    std::ostringstream msg;
    msg << "expected " << *expected << " roots in (" << a << ", " << b << "), found " << roots.size();
    throw NumericalError(msg.str());
  }
  return roots;
}

std::vector<double> symmetric_roots(const Polynomial& p, double bound) {
  const int deg = p.degree();
  if (deg < 1) return {};
  const bool odd = deg % 2 == 1;
  Polynomial even = p;
  if (odd) {
    // drop the factor t
    std::vector<double> c(p.coeffs().begin() + 1, p.coeffs().end());
    even = Polynomial(std::move(c));
  }
  const std::size_t half = static_cast<std::size_t>(deg / 2);
  std::vector<double> pos = poly_roots_in_interval(even, 0.0, bound, half);
  std::vector<double> roots;
  roots.reserve(static_cast<std::size_t>(deg));
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) roots.push_back(-*it);
  if (odd) roots.push_back(0.0);
  roots.insert(roots.end(), pos.begin(), pos.end());
  return roots;
}

std::vector<double> interpolatory_weights(int n, std::span<const double> nodes) {
  const Polynomial omega = Polynomial::from_roots(nodes);
  std::vector<double> w;
  w.reserve(nodes.size());
  for (double x : nodes) {
    const Polynomial numerator = omega.deflate(x);
    w.push_back(integrate_mu(n, numerator) / numerator(x));
  }
  return w;
}

QuadratureRule rule_alpha(int n, int k) {
  check_nk(n, k);
  QuadratureRule rule;
  rule.kind = "alpha";
  rule.n = n;
  rule.k = k;
  rule.nodes = symmetric_roots(gegenbauer(n, k + 1), 1.0);
  if (rule.nodes.size() != static_cast<std::size_t>(k + 1)) throw NumericalError("rule_alpha: wrong node count");
  rule.weights = interpolatory_weights(n, rule.nodes);
  rule.exact_degree = 2 * k + 1;
  check_weights(rule);
  return rule;
}

QuadratureRule rule_beta(int n, int k) {
  check_nk(n, k);
  QuadratureRule rule;
  rule.kind = "beta";
  rule.n = n;
  rule.k = k;
  rule.nodes.push_back(-1.0);
  const std::vector<double> interior = symmetric_roots(gegenbauer(n + 2, k), 1.0);
  if (interior.size() != static_cast<std::size_t>(k)) throw NumericalError("rule_beta: wrong node count");
  rule.nodes.insert(rule.nodes.end(), interior.begin(), interior.end());
  rule.nodes.push_back(1.0);
  rule.weights = interpolatory_weights(n, rule.nodes);
  rule.exact_degree = 2 * k + 1;
  check_weights(rule);
  return rule;
}

double largest_gauss_node(int n, int k) {
  check_nk(n, k);
  return symmetric_roots(gegenbauer(n, k + 1), 1.0).back();
}

double verify_exactness(const QuadratureRule& rule, int n, int max_degree) {
  double worst = 0.0;
  for (int j = 0; j <= max_degree; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], j);
    worst = std::max(worst, std::abs(sum - monomial_moment(n, j)));
  }
  return worst;
}

}  // namespace kkbounds
