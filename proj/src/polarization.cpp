#include "kkbounds/polarization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "kkbounds/errors.hpp"
#include "kkbounds/interpolants.hpp"
#include "kkbounds/polynomial.hpp"
#include "kkbounds/quadrature.hpp"
#include "kkbounds/signed_measure.hpp"

namespace kkbounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

void check_bound_args(int n, int k, std::size_t N) {
  if (n < 2) throw PreconditionError("dimension n must be at least 2");
  if (k < 1) throw PreconditionError("design order k must be at least 1");
  if (N < 1) throw PreconditionError("code cardinality N must be at least 1");
}

BoundReport assemble(BoundKind kind, const QuadratureRule& rule, const Polynomial& in_t, const Interpolant& interp,
                     Side side, double a, double b, std::size_t N, const Potential& pot, SignCertificate cert) {
  BoundReport r;
  r.kind = kind;
  r.n = rule.n;
  r.k = rule.k;
  r.N = N;
  r.s = rule.s;
  r.nodes = rule.nodes;
  r.weights = rule.weights;
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * pot.h(rule.nodes[i]);
  if (!std::isfinite(sum)) throw NumericalError("bound value is not finite for " + pot.name());
  r.per_point_bound = sum;
  r.bound_value = static_cast<double>(N) * sum;
  r.interpolant_t_coeffs.assign(in_t.coeffs().begin(), in_t.coeffs().end());
  r.interpolant_integral = static_cast<double>(N) * integrate_mu(rule.n, in_t);
  r.certificate = cert;
  r.one_sided_margin = verify_one_sided(in_t, pot, side, a, b);
  r.interpolation_residual = interp.max_residual;
  r.exactness_residual = verify_exactness(rule, rule.n, rule.exact_degree);
  r.numeric_derivatives = interp.numeric_derivatives;
  r.potential_name = pot.name();
  r.potential_spec = pot.spec();
  if (cert.source == CertificateSource::Sampled)
    r.notes.push_back("sign certificate is sampled, not proved; the bound is heuristic");
  if (r.one_sided_margin < kOneSidedTolerance)
    r.notes.push_back("interpolant fails the one-sided check (margin " + fmt(r.one_sided_margin) + ")");
  return r;
}

BoundReport alpha_bound(int n, int k, std::size_t N, const Potential& pot, SignCertificate cert) {
  const QuadratureRule rule = rule_alpha(n, k);
  const Interpolant interp = build_H2k(rule, pot);
  return assemble(BoundKind::UlbAlpha, rule, interp.in_t, interp, Side::Below, -1.0, 1.0, N, pot, cert);
}

BoundReport beta_lower_bound(int n, int k, std::size_t N, const Potential& pot, SignCertificate cert) {
  const QuadratureRule rule = rule_beta(n, k);
  const Interpolant interp = build_H2k_tilde(rule, pot);
  return assemble(BoundKind::UlbBeta, rule, interp.in_t, interp, Side::Below, -1.0, 1.0, N, pot, cert);
}

bool agree(double a, double b) { return std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)); }

// Sign-adjusted objective: minimized in both directions.
double objective(std::span<const double> x, const SphericalCode& code, const Potential& pot, Direction d) {
  const double u = potential_U(x, code, pot);
  return d == Direction::Min ? u : -u;
}

ExtremizationResult extremize_circle(const SphericalCode& code, const Potential& pot, Direction d) {
  auto f = [&](double theta) {
    const double x[2] = {std::cos(theta), std::sin(theta)};
    return objective(x, code, pot, d);
  };
  // U(-x) = U(x), so half a turn suffices
  const int grid = std::max<int>(4096, 256 * static_cast<int>(code.size()));
  const double dtheta = std::numbers::pi / grid;
  std::vector<double> values(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) values[static_cast<std::size_t>(i)] = f(i * dtheta);
  std::vector<std::pair<double, int>> minima;
  for (int i = 0; i < grid; ++i) {
    const double prev = values[static_cast<std::size_t>((i + grid - 1) % grid)];
    const double next = values[static_cast<std::size_t>((i + 1) % grid)];
    const double v = values[static_cast<std::size_t>(i)];
    if (v <= prev && v <= next) minima.emplace_back(v, i);
  }
  std::sort(minima.begin(), minima.end());
  if (minima.size() > 8) minima.resize(8);

  double best_theta = minima.empty() ? 0.0 : minima.front().second * dtheta;
  double best = f(best_theta);
  for (const auto& [v, i] : minima) {
    const double theta = golden_section(f, (i - 1) * dtheta, (i + 1) * dtheta);
    const double value = f(theta);
    if (value < best) {
      best = value;
      best_theta = theta;
    }
  }
  ExtremizationResult out;
  out.direction = d;
  out.method = "angle-sweep+golden-section";
  out.restarts = static_cast<int>(minima.size());
  out.argpoint = {std::cos(best_theta), std::sin(best_theta)};
  constexpr double h = 1e-6;
  const double slope = (f(best_theta + h) - f(best_theta - h)) / (2.0 * h);
  out.stationarity_norm = std::isfinite(slope) ? std::abs(slope) : kInf;
  return out;
}

ExtremizationResult extremize_descent(const SphericalCode& code, const Potential& pot, Direction d,
                                      const SearchOptions& options) {
  const int n = code.dimension();
  SphereFunction f = [&](std::span<const double> x) { return objective(x, code, pot, d); };
  std::vector<std::vector<double>> starts;
  std::string method;
  if (n == 3) {
    method = "hemisphere-grid+descent";
    const auto grid = hemisphere_grid(100, 400);
    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) scored.emplace_back(f(grid[i]), i);
    std::sort(scored.begin(), scored.end());
    for (const auto& [value, idx] : scored) {
      bool separated = true;
      for (const auto& s : starts) separated = separated && std::abs(dot(s, grid[idx])) < std::cos(0.05);
      if (separated) starts.push_back(grid[idx]);
      if (starts.size() >= 10) break;
    }
  } else {
    method = "random-restarts+descent";
    std::mt19937_64 rng(options.seed);
    const int count = std::max(128, options.restarts);
    for (int i = 0; i < count; ++i) starts.push_back(random_unit_vector(rng, n));
  }
  ExtremizationResult out;
  out.direction = d;
  out.method = method;
  out.restarts = static_cast<int>(starts.size());
  double best = kInf;
  for (auto& start : starts) {
    LocalMinimum m = minimize_on_sphere(f, std::move(start));
    if (m.value < best || out.argpoint.empty()) {
      best = m.value;
      out.argpoint = std::move(m.x);
      out.stationarity_norm = m.gradient_norm;
    }
  }
  return out;
}

}  // namespace

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::UlbAlpha: return "ULB_ALPHA";
    case BoundKind::UlbBeta: return "ULB_BETA";
    case BoundKind::UubBeta: return "UUB_BETA";
    case BoundKind::UubLambda: return "UUB_LAMBDA";
  }
  return "?";
}

std::string to_string(Direction d) { return d == Direction::Min ? "min" : "max"; }

double potential_U(std::span<const double> x, const SphericalCode& code, const Potential& pot) {
  if (x.size() != static_cast<std::size_t>(code.dimension())) throw PreconditionError("dimension mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < code.size(); ++i) {
    double t = dot(x, code.point(i));
    // rounding may leave x . x_i slightly off +-1 when x is a code point
    if (std::abs(t) > 1.0 - 1e-14) t = t > 0.0 ? 1.0 : -1.0;
    const double v = pot.h(t);
    if (v == kInf) return kInf;
    sum += v;
  }
  return sum;
}

ExtremizationResult extremize(const SphericalCode& code, const Potential& pot, Direction direction,
                              const SearchOptions& options) {
  if (direction == Direction::Max && pot.h_at_one() == kInf) {
    ExtremizationResult out;
    out.direction = direction;
    out.value = kInf;
    out.argpoint.assign(code.point(0).begin(), code.point(0).end());
    out.method = "infinite-at-code-point";
    return out;
  }
  ExtremizationResult out = code.dimension() == 2 ? extremize_circle(code, pot, direction)
                                                  : extremize_descent(code, pot, direction, options);
  out.value = potential_U(out.argpoint, code, pot);
  return out;
}

BoundReport lower_bound(int n, int k, std::size_t N, const Potential& pot) {
  check_bound_args(n, k, N);
  const SignCertificate cert = pot.certify_sign(k, 1.0);
  switch (cert.sign) {
    case DerivativeSign::Nonnegative: return alpha_bound(n, k, N, pot, cert);
    case DerivativeSign::Nonpositive: return beta_lower_bound(n, k, N, pot, cert);
    case DerivativeSign::Zero: {
      BoundReport r = alpha_bound(n, k, N, pot, cert);
      const BoundReport other = beta_lower_bound(n, k, N, pot, cert);
      r.cross_check = other.bound_value;
      if (!agree(r.bound_value, other.bound_value))
        throw NumericalError("lower bound branches disagree: " + fmt(r.bound_value) + " vs " +
                             fmt(other.bound_value));
      r.notes.push_back("g^(k+1) vanishes; both lower-bound branches computed and agree");
      return r;
    }
    case DerivativeSign::Unknown: break;
  }
  throw PreconditionError("no sign certificate for g^(" + std::to_string(k + 1) + ") of " + pot.name() +
                          " on (0, 1); lower bound refused");
}

BoundReport upper_bound_finite(int n, int k, std::size_t N, const Potential& pot) {
  check_bound_args(n, k, N);
  const SignCertificate cert = pot.certify_sign(k, 1.0);
  if (!admits_nonnegative(cert.sign))
    throw PreconditionError("upper bound at endpoint-augmented nodes needs g^(" + std::to_string(k + 1) +
                            ") >= 0 on (0, 1); certificate for " + pot.name() + " is " + to_string(cert.sign));
  if (!std::isfinite(pot.h_at_one()))
    throw PreconditionError(pot.name() + " is infinite at t = 1; use upper_bound_s (bounds --s) instead");
  const QuadratureRule rule = rule_beta(n, k);
  // -h satisfies the hypotheses of the lower interpolant at the same nodes
  const Interpolant interp = build_H2k_tilde(rule, pot.negated());
  return assemble(BoundKind::UubBeta, rule, -interp.in_t, interp, Side::Above, -1.0, 1.0, N, pot, cert);
}

BoundReport upper_bound_s(int n, int k, std::size_t N, double s, const Potential& pot,
                          std::optional<double> code_r) {
  check_bound_args(n, k, N);
  const double alpha = largest_gauss_node(n, k);
  if (!(s < 1.0))
    throw PreconditionError("s must be below 1 (got " + fmt(s) + "); use upper_bound_finite at s = 1");
  if (!(s >= alpha + kSignedMeasureMargin))
    throw PreconditionError("s = " + fmt(s) + " must exceed alpha_{k+1} = " + fmt(alpha));
  if (code_r && !(s > *code_r))
    throw PreconditionError("s = " + fmt(s) + " must exceed the covering radius r(C) = " + fmt(*code_r));
  const SignCertificate cert = pot.certify_sign(k, s * s);
  if (!admits_nonnegative(cert.sign))
    throw PreconditionError("upper bound at signed-measure nodes needs g^(" + std::to_string(k + 1) +
                            ") >= 0 on (0, s^2); certificate for " + pot.name() + " is " + to_string(cert.sign));
  const SignedMeasureContext ctx(n, k, s);
  const QuadratureRule rule = rule_lambda(ctx);
  const Interpolant interp = build_H2k_s(rule, pot);
  BoundReport r = assemble(BoundKind::UubLambda, rule, interp.in_t, interp, Side::Above, -s, s, N, pot, cert);
  r.code_r = code_r;
  r.notes.push_back(
      "valid for codes with r(C) < s; the hypothesis over all N-point designs cannot be checked and is replaced by "
      "the per-code covering radius");
  return r;
}

CertificationReport certify_design(const SphericalCode& code, int k, const Potential& pot,
                                   const SearchOptions& options) {
  CertificationReport rep;
  const int n = code.dimension();
  const std::size_t N = code.size();
  rep.design = is_kk_design(code, k);
  rep.covering = covering_radius_r(code, options);
  rep.minimum = extremize(code, pot, Direction::Min, options);
  rep.maximum = extremize(code, pot, Direction::Max, options);

  auto attempt = [&](const char* label, auto&& fn) -> std::optional<BoundReport> {
    try {
      return fn();
    } catch (const PreconditionError& e) {
      rep.skipped.push_back(std::string(label) + ": " + e.what());
    }
    return std::nullopt;
  };
  rep.lower = attempt("lower_bound", [&] { return lower_bound(n, k, N, pot); });
  rep.upper_finite = attempt("upper_bound_finite", [&] { return upper_bound_finite(n, k, N, pot); });
  const double s = rep.covering.r + 1e-6;
  if (s < 1.0) {
    rep.upper_s = attempt("upper_bound_s", [&] { return upper_bound_s(n, k, N, s, pot, rep.covering.r); });
  } else {
    rep.skipped.push_back("upper_bound_s: r(C) + 1e-6 is not below 1");
  }

  auto add = [&](std::string name, bool passed, std::string detail) {
    rep.checks.push_back({std::move(name), passed, std::move(detail)});
  };
  auto leq = [&](std::string name, double a, double b) {
    const double slack = kSandwichSlack * std::max(1.0, std::abs(b));
    add(std::move(name), a <= b + slack, fmt(a) + " <= " + fmt(b));
  };

  const double m = rep.minimum.value;
  const double M = rep.maximum.value;
  rep.checks.push_back({"min <= max", m <= M + kSandwichSlack * std::max(1.0, std::abs(M)), fmt(m) + " <= " + fmt(M)});
  if (rep.design.is_design) {
    if (rep.lower) leq("lower_bound <= min", rep.lower->bound_value, m);
    if (rep.upper_finite) leq("max <= upper_bound_finite", M, rep.upper_finite->bound_value);
    if (rep.upper_s) leq("min <= upper_bound_s", m, rep.upper_s->bound_value);
    const double alpha = largest_gauss_node(n, k);
    add("r(C) >= alpha_{k+1}", rep.covering.r >= alpha - 1e-9, fmt(rep.covering.r) + " >= " + fmt(alpha));
  }
  if (pot.monomial_power() == k) {
    const double target = monomial_moment(n, 2 * k) * static_cast<double>(N);
    const double tol = 1e-8 * std::max(1.0, target);
    if (rep.design.is_design) {
      add("min = c_2k N", std::abs(m - target) <= tol, fmt(m) + " vs " + fmt(target));
      add("max = c_2k N", std::abs(M - target) <= tol, fmt(M) + " vs " + fmt(target));
    } else {
      add("min < c_2k N", m < target - tol, fmt(m) + " < " + fmt(target));
      add("max > c_2k N", M > target + tol, fmt(M) + " > " + fmt(target));
    }
  }
  rep.all_passed = std::all_of(rep.checks.begin(), rep.checks.end(), [](const Check& c) { return c.passed; });
  return rep;
}

AverageCheck average_check(const SphericalCode& code, int k, int samples, std::uint64_t seed) {
  if (samples < 10000) throw PreconditionError("average check needs at least 1e4 samples");
  if (k < 1) throw PreconditionError("design order k must be at least 1");
  std::mt19937_64 rng(seed);
  double mean = 0.0;
  double m2 = 0.0;
  for (int i = 1; i <= samples; ++i) {
    const std::vector<double> x = random_unit_vector(rng, code.dimension());
    double u = 0.0;
    for (std::size_t j = 0; j < code.size(); ++j) u += std::pow(dot(x, code.point(j)), 2 * k);
    const double delta = u - mean;
    mean += delta / i;
    m2 += delta * (u - mean);
  }
  AverageCheck out;
  out.samples = samples;
  out.mean = mean;
  out.expected = monomial_moment(code.dimension(), 2 * k) * static_cast<double>(code.size());
  out.deviation = mean - out.expected;
  out.standard_error = std::sqrt(m2 / (samples - 1) / samples);
  return out;
}

}  // namespace kkbounds
