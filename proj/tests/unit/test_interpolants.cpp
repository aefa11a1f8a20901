#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "kkbounds/errors.hpp"
#include "kkbounds/interpolants.hpp"
#include "kkbounds/polynomial.hpp"
#include "kkbounds/quadrature.hpp"
#include "kkbounds/signed_measure.hpp"

using namespace kkbounds;

namespace {

void check_even(const Polynomial& p) {
  for (int c = 1; c <= p.degree(); c += 2) CHECK(std::abs(p.coeff(c)) <= 1e-10);
}

// grid of [a, b] with the given extra points merged in
std::vector<double> grid_with(double a, double b, int size, const std::vector<double>& extra) {
  std::vector<double> g;
  for (int i = 0; i < size; ++i) g.push_back(a + (b - a) * i / (size - 1));
  g.insert(g.end(), extra.begin(), extra.end());
  return g;
}

Polynomial random_even(std::mt19937_64& rng, int k, double scale) {
  std::uniform_real_distribution<double> coef(-scale, scale);
  std::vector<double> c(static_cast<std::size_t>(2 * k + 1), 0.0);
  for (int j = 0; j <= 2 * k; j += 2) c[static_cast<std::size_t>(j)] = coef(rng);
  return Polynomial(c);
}

std::vector<Potential> lower_alpha_potentials() {
  return {Potential::pframe(3.0), Potential::pframe(4.0), Potential::pframe(5.0), Potential::riesz(1.0),
          Potential::riesz(2.0),  Potential::cosh(),      Potential::arcsine(),   Potential::monomial(2)};
}

}  // namespace

TEST_CASE("Hermite interpolation: tangent line") {
  for (int n = 2; n <= 5; ++n) {
    const double p = 4.0;
    InterpolationScheme scheme{{{1.0 / n, 2}}, Side::Below, 1.0};
    const double u = 1.0 / n;
    const double v[] = {std::pow(u, p / 2)};
    const double s[] = {(p / 2) * std::pow(u, p / 2 - 1)};
    const Polynomial G = hermite_confluent(scheme, v, s);
    CHECK(G.degree() == 1);
    CHECK(G(u) == doctest::Approx(v[0]));
    CHECK(G.coeff(1) == doctest::Approx(s[0]));
  }
}

TEST_CASE("Hermite interpolation reproduces polynomials of degree <= k") {
  const Polynomial g({0.3, -1.0, 2.0, 0.5});
  InterpolationScheme scheme{{{0.0, 1}, {0.4, 2}, {1.0, 1}}, Side::Below, 1.0};
  std::vector<double> v, s;
  for (const UNode& node : scheme.nodes) {
    v.push_back(g(node.u));
    s.push_back(g.derivative_at(node.u));
  }
  const Polynomial G = hermite_confluent(scheme, v, s);
  for (int c = 0; c <= 3; ++c) CHECK(G.coeff(c) == doctest::Approx(g.coeff(c)).epsilon(1e-12));
}

TEST_CASE("Hermite interpolation of u^2 at 0 and 1") {
  InterpolationScheme scheme{{{0.0, 1}, {1.0, 1}}, Side::Below, 1.0};
  const double v[] = {0.0, 1.0};
  const double s[] = {0.0, 0.0};
  const Polynomial G = hermite_confluent(scheme, v, s);
  CHECK(G.degree() == 1);
  CHECK(std::abs(G.coeff(0)) <= 1e-15);
  CHECK(G.coeff(1) == doctest::Approx(1.0));
  for (double u = 0.05; u < 1.0; u += 0.05) CHECK(G(u) >= u * u);
}

TEST_CASE("Hermite scheme validation") {
  const double v[] = {1.0, 2.0};
  const double s[] = {0.0, 0.0};
  CHECK_THROWS_AS(hermite_confluent({{{0.5, 1}, {0.5, 1}}, Side::Below, 1.0}, v, s), PreconditionError);
  CHECK_THROWS_AS(hermite_confluent({{{0.0, 2}, {0.5, 1}}, Side::Below, 1.0}, v, s), PreconditionError);
  CHECK_THROWS_AS(hermite_confluent({{{0.5, 1}, {1.0, 2}}, Side::Below, 1.0}, v, s), PreconditionError);
  CHECK_THROWS_AS(hermite_confluent({{{0.5, 3}, {0.7, 1}}, Side::Below, 1.0}, v, s), PreconditionError);
  CHECK_THROWS_AS(hermite_confluent({{{0.5, 1}}, Side::Below, 1.0}, v, s), PreconditionError);
}

TEST_CASE("node schemes carry k+1 conditions") {
  for (int k = 1; k <= 6; ++k) {
    const Interpolant a = build_H2k(3, k, Potential::cosh());
    CHECK(a.scheme.conditions() == k + 1);
    const bool has_zero_a = std::any_of(a.scheme.nodes.begin(), a.scheme.nodes.end(), [](const UNode& x) { return x.u == 0.0; });
    CHECK(has_zero_a == (k % 2 == 0));
    const Interpolant b = build_H2k_tilde(3, k, Potential::pframe(2.0 * k - 1.0));
    CHECK(b.scheme.conditions() == k + 1);
    const bool has_zero_b = std::any_of(b.scheme.nodes.begin(), b.scheme.nodes.end(), [](const UNode& x) { return x.u == 0.0; });
    CHECK(has_zero_b == (k % 2 == 1));
    CHECK(b.scheme.nodes.back().u == 1.0);
    CHECK(b.scheme.nodes.back().multiplicity == 1);
  }
}

TEST_CASE("monomial potentials are reproduced exactly") {
  for (int n = 2; n <= 5; ++n) {
    for (int k = 1; k <= 5; ++k) {
      const Potential pot = Potential::monomial(k);
      const double s = std::min(1.0, largest_gauss_node(n, k) + 0.05);
      for (const Interpolant& I :
           {build_H2k(n, k, pot), build_H2k_tilde(n, k, pot), build_H2k_s(SignedMeasureContext(n, k, s), pot)}) {
        REQUIRE(I.in_t.degree() == 2 * k);
        for (int c = 0; c < 2 * k; ++c) CHECK(std::abs(I.in_t.coeff(c)) <= 1e-9);
        CHECK(I.in_t.coeff(2 * k) == doctest::Approx(1.0).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("tangent-line interpolant for the 4-frame potential on S^2") {
  const Interpolant I = build_H2k(3, 1, Potential::pframe(4.0));
  REQUIRE(I.in_u.degree() == 1);
  CHECK(I.in_u.coeff(1) == doctest::Approx(2.0 / 3.0));
  CHECK(I.in_u.coeff(0) == doctest::Approx(-1.0 / 9.0));
  CHECK(I.in_u(1.0 / 3.0) == doctest::Approx(1.0 / 9.0));
  CHECK(verify_one_sided(I.in_t, Potential::pframe(4.0), Side::Below, -1.0, 1.0) >= -1e-12);
}

TEST_CASE("endpoint interpolant for the 1-frame potential") {
  const Interpolant I = build_H2k_tilde(3, 1, Potential::pframe(1.0));
  REQUIRE(I.in_t.degree() == 2);
  CHECK(std::abs(I.in_t.coeff(0)) <= 1e-15);
  CHECK(I.in_t.coeff(2) == doctest::Approx(1.0));
  CHECK(verify_one_sided(I.in_t, Potential::pframe(1.0), Side::Below, -1.0, 1.0) >= 0.0);
}

TEST_CASE("signed-measure interpolant for Riesz s-energy stays above on [-s, s]") {
  const Interpolant I = build_H2k_s(SignedMeasureContext(3, 1, 0.8), Potential::riesz(2.0));
  CHECK(verify_one_sided(I.in_t, Potential::riesz(2.0), Side::Above, -0.8, 0.8, 10000) >= -1e-9);
  check_even(I.in_t);
}

TEST_CASE("at s = 1 the signed-measure interpolant equals the upper endpoint interpolant") {
  for (int n = 2; n <= 5; ++n) {
    for (int k = 1; k <= 4; ++k) {
      for (const Potential& pot : {Potential::cosh(), Potential::pframe(3.0 + 2.0 * k)}) {
        const Interpolant upper = build_H2k_s(SignedMeasureContext(n, k, 1.0), pot);
        const Interpolant neg = build_H2k_tilde(rule_beta(n, k), pot.negated());
        const Polynomial other = -neg.in_t;
        REQUIRE(upper.in_t.degree() == other.degree());
        for (int c = 0; c <= other.degree(); ++c)
          CHECK(std::abs(upper.in_t.coeff(c) - other.coeff(c)) <= 1e-10 * std::max(1.0, std::abs(other.coeff(c))));
      }
    }
  }
}

TEST_CASE("one-sided verification") {
  const Potential pot = Potential::pframe(4.0);
  const Interpolant I = build_H2k(3, 1, pot);
  CHECK(verify_one_sided(I.in_t, pot, Side::Below, -1.0, 1.0) >= -1e-12);
  const double shifted = verify_one_sided(I.in_t + Polynomial::constant(0.01), pot, Side::Below, -1.0, 1.0);
  CHECK(shifted == doctest::Approx(-0.01).epsilon(1e-6));
  CHECK(shifted < kOneSidedTolerance);
  const Polynomial h4 = Polynomial::monomial(4);
  CHECK(std::abs(verify_one_sided(h4, pot, Side::Below, -1.0, 1.0)) <= 1e-15);
  CHECK(std::abs(verify_one_sided(h4, pot, Side::Above, -1.0, 1.0)) <= 1e-15);
  CHECK_THROWS_AS(verify_one_sided(h4, pot, Side::Below, -1.0, 1.0, 999), PreconditionError);
}

TEST_CASE("one-sided margins, residuals and parity over potentials and branches") {
  for (int n = 2; n <= 5; ++n) {
    for (int k = 1; k <= 5; ++k) {
      for (const Potential& pot : lower_alpha_potentials()) {
        if (!admits_nonnegative(pot.certify_sign(k, 1.0).sign)) continue;
        const Interpolant I = build_H2k(n, k, pot);
        CHECK(verify_one_sided(I.in_t, pot, Side::Below, -1.0, 1.0, 10000) >= -1e-9);
        CHECK(I.max_residual <= 1e-9);
        check_even(I.in_t);
        const double s = std::min(0.99, largest_gauss_node(n, k) + 0.05);
        if (s >= largest_gauss_node(n, k) + kSignedMeasureMargin) {
          const Interpolant U = build_H2k_s(SignedMeasureContext(n, k, s), pot);
          CHECK(verify_one_sided(U.in_t, pot, Side::Above, -s, s, 10000) >= -1e-9);
          CHECK(U.max_residual <= 1e-9);
          check_even(U.in_t);
        }
      }
      for (const Potential& pot : {Potential::pframe(1.0), Potential::pframe(2.5), Potential::pframe(0.5),
                                   Potential::pframe(2.0 * k - 1.0)}) {
        if (!admits_nonpositive(pot.certify_sign(k, 1.0).sign)) continue;
        const Interpolant I = build_H2k_tilde(n, k, pot);
        CHECK(verify_one_sided(I.in_t, pot, Side::Below, -1.0, 1.0, 10000) >= -1e-9);
        CHECK(I.max_residual <= 1e-9);
        check_even(I.in_t);
      }
    }
  }
}

TEST_CASE("no feasible lower polynomial beats the Gauss-node interpolant") {
  std::mt19937_64 rng(17);
  for (const auto& [n, k] : {std::pair{3, 1}, std::pair{3, 2}, std::pair{4, 3}, std::pair{2, 2}}) {
    for (const Potential& pot : {Potential::pframe(2.0 * k + 1.0), Potential::riesz(1.0), Potential::cosh()}) {
      const QuadratureRule rule = rule_alpha(n, k);
      const Interpolant I = build_H2k(rule, pot);
      const double best = integrate_mu(n, I.in_t);
      const auto grid = grid_with(-1.0, 1.0, 4001, rule.nodes);
      for (int trial = 0; trial < 100; ++trial) {
        Polynomial f = I.in_t + random_even(rng, k, 0.05);
        double excess = -std::numeric_limits<double>::infinity();
        for (double t : grid) excess = std::max(excess, f(t) - pot.h(t));
        f = f - Polynomial::constant(std::max(0.0, excess));
        CHECK(integrate_mu(n, f) <= best + 1e-9);
      }
    }
  }
}

TEST_CASE("no feasible upper polynomial beats the signed-measure interpolant") {
  std::mt19937_64 rng(23);
  for (const auto& [n, k, s] : {std::tuple{3, 1, 0.8}, std::tuple{3, 2, 0.9}, std::tuple{4, 2, 0.85}}) {
    for (const Potential& pot : {Potential::riesz(2.0), Potential::pframe(5.0), Potential::arcsine()}) {
      const QuadratureRule rule = rule_lambda(SignedMeasureContext(n, k, s));
      const Interpolant I = build_H2k_s(rule, pot);
      const double best = integrate_mu(n, I.in_t);
      const auto grid = grid_with(-s, s, 4001, rule.nodes);
      for (int trial = 0; trial < 100; ++trial) {
        Polynomial q = I.in_t + random_even(rng, k, 0.05);
        double deficit = -std::numeric_limits<double>::infinity();
        for (double t : grid) deficit = std::max(deficit, pot.h(t) - q(t));
        q = q + Polynomial::constant(std::max(0.0, deficit));
        CHECK(integrate_mu(n, q) >= best - 1e-9);
      }
    }
  }
}

TEST_CASE("builders refuse missing certificates") {
  CHECK_THROWS_AS(build_H2k(3, 1, Potential::pframe(1.0)), PreconditionError);
  CHECK_THROWS_AS(build_H2k_tilde(3, 1, Potential::pframe(4.0)), PreconditionError);
  CHECK_THROWS_AS(build_H2k_tilde(3, 1, Potential::riesz(2.0)), PreconditionError);
  CHECK_THROWS_AS(build_H2k_s(SignedMeasureContext(3, 1, 0.8), Potential::pframe(1.0)), PreconditionError);
  const Potential wiggle = Potential::custom("sin", [](double u) { return std::sin(12.0 * u); });
  CHECK_THROWS_AS(build_H2k(3, 1, wiggle), PreconditionError);
}

TEST_CASE("custom potentials use numeric derivatives") {
  const Potential e = Potential::custom("exp", [](double u) { return std::exp(u); });
  const Interpolant I = build_H2k(3, 2, e);
  CHECK(I.numeric_derivatives);
  CHECK(verify_one_sided(I.in_t, e, Side::Below, -1.0, 1.0) >= kOneSidedTolerance);
}
