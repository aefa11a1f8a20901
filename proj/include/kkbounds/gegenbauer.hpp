#pragma once

#include <vector>

#include "kkbounds/polynomial.hpp"

namespace kkbounds {

/// Gegenbauer polynomial P_l^{(n)} orthogonal for mu_n and normalized by
/// P_l^{(n)}(1) = 1, in monomial coefficients.
Polynomial gegenbauer(int n, int degree);

/// P_0^{(n)}, ..., P_L^{(n)} built once and shared.
class GegenbauerFamily {
 public:
  GegenbauerFamily(int n, int max_degree);

  int dimension() const { return n_; }
  int max_degree() const { return static_cast<int>(polys_.size()) - 1; }
  const Polynomial& operator[](int degree) const;

  /// Three-term recurrence evaluation; independent of the stored coefficients.
  double evaluate(int degree, double t) const;

 private:
  int n_;
  std::vector<Polynomial> polys_;
};

}  // namespace kkbounds
