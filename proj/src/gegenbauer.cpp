#include "kkbounds/gegenbauer.hpp"

#include "kkbounds/errors.hpp"

namespace kkbounds {

namespace {

// (l + n - 2) P_{l+1} = (2l + n - 2) t P_l - l P_{l-1},  l >= 1.
std::vector<Polynomial> build_family(int n, int max_degree) {
  if (n < 2) throw PreconditionError("dimension n must be at least 2");
  if (max_degree < 0) throw PreconditionError("Gegenbauer degree must be nonnegative");
  std::vector<Polynomial> p;
  p.reserve(static_cast<std::size_t>(max_degree) + 1);
  p.push_back(Polynomial::constant(1.0));
  if (max_degree >= 1) p.push_back(Polynomial::monomial(1));
  const Polynomial t = Polynomial::monomial(1);
  for (int l = 1; l < max_degree; ++l) {
    const double a = static_cast<double>(2 * l + n - 2) / static_cast<double>(l + n - 2);
    const double b = static_cast<double>(l) / static_cast<double>(l + n - 2);
    p.push_back(a * (t * p[l]) - b * p[l - 1]);
  }
  return p;
}

}  // namespace

Polynomial gegenbauer(int n, int degree) { return build_family(n, degree).back(); }

GegenbauerFamily::GegenbauerFamily(int n, int max_degree) : n_(n), polys_(build_family(n, max_degree)) {}

const Polynomial& GegenbauerFamily::operator[](int degree) const {
  if (degree < 0 || degree > max_degree()) throw PreconditionError("Gegenbauer degree outside cached range");
  return polys_[static_cast<std::size_t>(degree)];
}

double GegenbauerFamily::evaluate(int degree, double t) const {
  if (degree < 0) throw PreconditionError("Gegenbauer degree must be nonnegative");
  if (degree == 0) return 1.0;
  double prev = 1.0;
  double cur = t;
  for (int l = 1; l < degree; ++l) {
    const double next = (static_cast<double>(2 * l + n_ - 2) * t * cur - static_cast<double>(l) * prev) /
                        static_cast<double>(l + n_ - 2);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace kkbounds
