#include "kkbounds/interpolants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

#include "kkbounds/errors.hpp"

namespace kkbounds {

int InterpolationScheme::conditions() const {
  int total = 0;
  for (const UNode& node : nodes) total += node.multiplicity;
  return total;
}

Polynomial hermite_confluent(const InterpolationScheme& scheme, std::span<const double> values,
                             std::span<const double> slopes) {
  const std::size_t count = scheme.nodes.size();
  if (count == 0) throw PreconditionError("interpolation scheme has no nodes");
  if (values.size() != count || slopes.size() != count)
    throw PreconditionError("interpolation data size does not match the scheme");

  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scheme.nodes[a].u < scheme.nodes[b].u; });
  for (std::size_t i = 0; i < count; ++i) {
    const UNode& node = scheme.nodes[order[i]];
    if (node.multiplicity != 1 && node.multiplicity != 2)
      throw PreconditionError("node multiplicity must be 1 or 2");
    if (node.multiplicity == 2 && (node.u == 0.0 || node.u == scheme.u_max))
      throw PreconditionError("nodes at u=0 and u=u_max carry a value condition only");
    if (i > 0 && !(node.u - scheme.nodes[order[i - 1]].u > 1e-14))
      throw PreconditionError("duplicate u-values in interpolation scheme");
  }

  // Expanded node sequence z with repeats adjacent, and its Newton table.
  std::vector<double> z;
  std::vector<double> c;
  std::vector<double> slope_at;
  for (std::size_t idx : order) {
    for (int r = 0; r < scheme.nodes[idx].multiplicity; ++r) {
      z.push_back(scheme.nodes[idx].u);
      c.push_back(values[idx]);
      slope_at.push_back(slopes[idx]);
    }
  }
  const std::size_t m = z.size();
  for (std::size_t j = 1; j < m; ++j) {
    for (std::size_t i = m - 1; i >= j; --i) {
      if (z[i] == z[i - j]) {
        c[i] = slope_at[i];  // only j == 1 can repeat
      } else {
        c[i] = (c[i] - c[i - 1]) / (z[i] - z[i - j]);
      }
    }
  }

  Polynomial result = Polynomial::constant(c[m - 1]);
  for (std::size_t i = m - 1; i-- > 0;) {
    result = result * Polynomial{-z[i], 1.0} + Polynomial::constant(c[i]);
  }

  for (std::size_t i = 0; i < count; ++i) {
    const UNode& node = scheme.nodes[i];
    const double err = std::abs(result(node.u) - values[i]);
    if (err > 1e-10 * (1.0 + std::abs(values[i]))) {
      std::ostringstream msg;
      msg << "Hermite interpolant misses value at u=" << node.u << " by " << err;
      throw NumericalError(msg.str());
    }
    if (node.multiplicity == 2) {
      const double derr = std::abs(result.derivative_at(node.u) - slopes[i]);
      if (derr > 1e-8 * (1.0 + std::abs(slopes[i]))) {
        std::ostringstream msg;
        msg << "Hermite interpolant misses slope at u=" << node.u << " by " << derr;
        throw NumericalError(msg.str());
      }
    }
  }
  return result;
}

namespace {

// Nodes t >= 0 of a symmetric rule become u = t^2; interior nonzero nodes get
// a slope condition, 0 and the endpoint +-endpoint only a value condition.
Interpolant interpolate_rule(const QuadratureRule& rule, const Potential& pot, Side side,
                             std::optional<double> endpoint) {
  Interpolant out;
  out.scheme.side = side;
  out.scheme.u_max = endpoint ? (*endpoint) * (*endpoint) : 1.0;
  out.numeric_derivatives = !pot.analytic_derivative();
  std::vector<double> values;
  std::vector<double> slopes;
  for (double t : rule.nodes) {
    if (t < 0.0) continue;
    const double u = t * t;
    const bool value_only = t == 0.0 || (endpoint && t == *endpoint);
    out.scheme.nodes.push_back({u, value_only ? 1 : 2});
    const double v = pot.g(u);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << pot.name() << " is infinite at interpolation node t=" << t;
      throw PreconditionError(msg.str());
    }
    values.push_back(v);
    slopes.push_back(value_only ? 0.0 : pot.g_prime(u));
  }
  if (out.scheme.conditions() != rule.k + 1) throw NumericalError("interpolation scheme must carry k+1 conditions");
  out.in_u = hermite_confluent(out.scheme, values, slopes);
  out.in_t = out.in_u.compose_square();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double u = out.scheme.nodes[i].u;
    out.max_residual = std::max(out.max_residual, std::abs(out.in_u(u) - values[i]) / (1.0 + std::abs(values[i])));
    if (out.scheme.nodes[i].multiplicity == 2) {
      out.max_residual = std::max(out.max_residual,
                                  std::abs(out.in_u.derivative_at(u) - slopes[i]) / (1.0 + std::abs(slopes[i])));
    }
  }
  return out;
}

void require_sign(const Potential& pot, int k, double u_max, bool want_nonnegative, const char* what) {
  const SignCertificate cert = pot.certify_sign(k, u_max);
  const bool ok = want_nonnegative ? admits_nonnegative(cert.sign) : admits_nonpositive(cert.sign);
  if (!ok) {
    std::ostringstream msg;
    msg << what << " needs g^(" << k + 1 << ") " << (want_nonnegative ? ">= 0" : "<= 0") << " on (0, " << u_max
        << ") for " << pot.name() << ", certificate is " << to_string(cert.sign) << " (" << to_string(cert.source)
        << ")";
    throw PreconditionError(msg.str());
  }
}

}  // namespace

Interpolant build_H2k(const QuadratureRule& alpha_rule, const Potential& pot) {
  require_sign(pot, alpha_rule.k, 1.0, true, "lower interpolant at Gauss-Gegenbauer nodes");
  return interpolate_rule(alpha_rule, pot, Side::Below, std::nullopt);
}

Interpolant build_H2k(int n, int k, const Potential& pot) { return build_H2k(rule_alpha(n, k), pot); }

Interpolant build_H2k_tilde(const QuadratureRule& beta_rule, const Potential& pot) {
  require_sign(pot, beta_rule.k, 1.0, false, "lower interpolant at endpoint-augmented nodes");
  if (!std::isfinite(pot.h_at_one()))
    throw PreconditionError("lower interpolant at endpoint-augmented nodes needs finite h(1); " + pot.name() +
                            " is infinite there");
  return interpolate_rule(beta_rule, pot, Side::Below, 1.0);
}

Interpolant build_H2k_tilde(int n, int k, const Potential& pot) { return build_H2k_tilde(rule_beta(n, k), pot); }

Interpolant build_H2k_s(const QuadratureRule& lambda_rule, const Potential& pot) {
  const double s = lambda_rule.nodes.back();
  require_sign(pot, lambda_rule.k, s * s, true, "upper interpolant at signed-measure nodes");
  return interpolate_rule(lambda_rule, pot, Side::Above, s);
}

Interpolant build_H2k_s(const SignedMeasureContext& ctx, const Potential& pot) {
  require_sign(pot, ctx.order(), ctx.s() * ctx.s(), true, "upper interpolant at signed-measure nodes");
  return build_H2k_s(rule_lambda(ctx), pot);
}

double verify_one_sided(const Polynomial& p, const Potential& pot, Side side, double a, double b, int grid_size) {
  if (grid_size < 1000) throw PreconditionError("one-sided verification needs at least 1000 grid points");
  if (!(a <= b)) throw PreconditionError("one-sided verification interval must satisfy a <= b");
  double margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_size; ++i) {
    const double t = (i == grid_size - 1) ? b : a + (b - a) * static_cast<double>(i) / (grid_size - 1);
    const double h = pot.h(t);
    const double gap = side == Side::Below ? h - p(t) : p(t) - h;
    margin = std::min(margin, gap);
  }
  return margin;
}

}  // namespace kkbounds
