#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kkbounds/polynomial.hpp"

namespace kkbounds {

/// Interpolatory rule for integration against mu_n.
struct QuadratureRule {
  std::string kind;  // "alpha", "beta" or "lambda"
  int n = 0;
  int k = 0;
  std::vector<double> nodes;    // strictly increasing in [-1, 1]
  std::vector<double> weights;  // positive, same length as nodes
  int exact_degree = -1;
  std::optional<double> s;  // endpoint of the lambda rule

  std::size_t size() const { return nodes.size(); }
  /// sum_i w_i p(x_i)
  double apply(const Polynomial& p) const;
};

/// Simple real roots of p in the open interval (a, b), ascending.
///
/// Brackets sign changes on a uniform grid of at least 64*deg(p) cells, then
/// bisects to width 1e-15 and applies one Newton polish. Throws NumericalError
/// when `expected` is given and a different number of roots is found.
std::vector<double> poly_roots_in_interval(const Polynomial& p, double a, double b,
                                           std::optional<std::size_t> expected = std::nullopt);

/// All roots of an even or odd polynomial with only simple real roots in
/// (-bound, bound): the positive ones are located, mirrored, and 0 is inserted
/// exactly when deg(p) is odd.
std::vector<double> symmetric_roots(const Polynomial& p, double bound);

/// w_i = integral of the i-th fundamental Lagrange polynomial of `nodes`.
std::vector<double> interpolatory_weights(int n, std::span<const double> nodes);

/// Gauss-Gegenbauer rule at the k+1 zeros of P_{k+1}^{(n)}.
QuadratureRule rule_alpha(int n, int k);

/// Rule at -1, the k zeros of P_k^{(n+2)}, and 1.
QuadratureRule rule_beta(int n, int k);

/// Largest zero of P_{k+1}^{(n)}.
double largest_gauss_node(int n, int k);

/// max_{j <= max_degree} |sum_i w_i x_i^j - c_j|
double verify_exactness(const QuadratureRule& rule, int n, int max_degree);

}  // namespace kkbounds
