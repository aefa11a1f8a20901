#include "kkbounds/potential.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include "kkbounds/errors.hpp"

namespace kkbounds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_real(double x) {
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

double binomial(int m, int i) {
  double c = 1.0;
  for (int j = 1; j <= i; ++j) c = c * static_cast<double>(m - i + j) / static_cast<double>(j);
  return c;
}

double central_difference(const Potential::ScalarFn& g, double u) {
  constexpr double step = 1e-6;
  const double lo = std::max(0.0, u - step);
  const double hi = std::min(1.0, u + step);
  return (g(hi) - g(lo)) / (hi - lo);
}

}  // namespace

std::string to_string(DerivativeSign s) {
  switch (s) {
    case DerivativeSign::Nonnegative: return "NONNEGATIVE";
    case DerivativeSign::Nonpositive: return "NONPOSITIVE";
    case DerivativeSign::Zero: return "ZERO";
    case DerivativeSign::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

std::string to_string(CertificateSource s) { return s == CertificateSource::Analytic ? "analytic" : "sampled"; }

Potential::Potential(std::string name, std::string spec, ScalarFn g, ScalarFn g_prime, SignFn sign,
                     CertificateSource source)
    : name_(std::move(name)),
      spec_(std::move(spec)),
      g_(std::move(g)),
      g_prime_(std::move(g_prime)),
      sign_(std::move(sign)),
      source_(source) {}

Potential Potential::monomial(int k) {
  if (k < 1) throw PreconditionError("monomial potential t^{2k} needs k >= 1");
  auto g = [k](double u) { return std::pow(u, k); };
  auto gp = [k](double u) { return k * std::pow(u, k - 1); };
  // g^{(j+1)} = k!/(k-j-1)! u^{k-j-1} >= 0, identically zero once j >= k.
  auto sign = [k](int order_k, double) { return order_k + 1 > k ? DerivativeSign::Zero : DerivativeSign::Nonnegative; };
  Potential pot("t^" + std::to_string(2 * k), "monomial:k=" + std::to_string(k), g, gp, sign,
                CertificateSource::Analytic);
  pot.monomial_power_ = k;
  return pot;
}

Potential Potential::pframe(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw PreconditionError("p-frame exponent must be positive");
  const double a = p / 2.0;
  auto g = [a](double u) { return std::pow(u, a); };
  auto gp = [a](double u) { return a * std::pow(u, a - 1.0); };
  // g^{(k+1)}(u) = prod_{j=0}^{k} (p/2 - j) * u^{p/2-k-1}
  auto sign = [a](int k, double) {
    if (a == std::floor(a) && a <= k) return DerivativeSign::Zero;
    double prod = 1.0;
    for (int j = 0; j <= k; ++j) prod *= (a - j);
    return prod > 0.0 ? DerivativeSign::Nonnegative : DerivativeSign::Nonpositive;
  };
  return Potential("|t|^" + format_real(p), "pframe:p=" + format_real(p), g, gp, sign, CertificateSource::Analytic);
}

Potential Potential::riesz(double m) {
  if (!(m > 0.0) || !std::isfinite(m)) throw PreconditionError("Riesz exponent must be positive");
  auto h = [m](double t) { return std::pow(2.0 - 2.0 * t, -m / 2.0) + std::pow(2.0 + 2.0 * t, -m / 2.0); };
  auto g = [h](double u) { return h(std::sqrt(u)); };
  auto gp = [m](double u) {
    const double r = std::sqrt(u);
    if (r < 1e-6) return m * (m + 2.0) * std::pow(2.0, -m / 2.0 - 2.0);
    const double dh = m * std::pow(2.0 - 2.0 * r, -m / 2.0 - 1.0) - m * std::pow(2.0 + 2.0 * r, -m / 2.0 - 1.0);
    return dh / (2.0 * r);
  };
  // g(t^2) has a Taylor series in t^2 with positive coefficients.
  auto sign = [](int, double) { return DerivativeSign::Nonnegative; };
  return Potential("riesz_sym(" + format_real(m) + ")", "riesz:m=" + format_real(m), g, gp, sign,
                   CertificateSource::Analytic);
}

Potential Potential::cosh() {
  auto g = [](double u) { return std::cosh(std::sqrt(u)); };
  auto gp = [](double u) {
    const double r = std::sqrt(u);
    if (r < 1e-6) return 0.5 + u / 12.0;
    return std::sinh(r) / (2.0 * r);
  };
  // cosh(sqrt(u)) = sum_j u^j / (2j)!
  auto sign = [](int, double) { return DerivativeSign::Nonnegative; };
  return Potential("cosh", "cosh", g, gp, sign, CertificateSource::Analytic);
}

Potential Potential::arcsine() {
  auto g = [](double u) { return u >= 1.0 ? kInf : 1.0 / std::sqrt(1.0 - u); };
  auto gp = [](double u) { return u >= 1.0 ? kInf : 0.5 * std::pow(1.0 - u, -1.5); };
  auto sign = [](int, double) { return DerivativeSign::Nonnegative; };
  return Potential("arcsine", "arcsine", g, gp, sign, CertificateSource::Analytic);
}

Potential Potential::custom(std::string name, ScalarFn g, ScalarFn g_prime) {
  const bool analytic = static_cast<bool>(g_prime);
  auto sign = [g](int k, double u_max) { return sampled_derivative_sign(g, k + 1, u_max); };
  Potential pot(std::move(name), "", g, std::move(g_prime), sign, CertificateSource::Sampled);
  pot.analytic_derivative_ = analytic;
  return pot;
}

double Potential::g_prime(double u) const {
  if (g_prime_) return g_prime_(u);
  return central_difference(g_, u);
}

double Potential::h(double t) const {
  if (!(std::abs(t) <= 1.0)) throw DomainError("potential evaluated at |t| > 1: t=" + format_real(t));
  return g_(t * t);
}

SignCertificate Potential::certify_sign(int k, double u_max) const {
  if (k < 1) throw PreconditionError("sign certificate needs k >= 1");
  if (!(u_max > 0.0 && u_max <= 1.0)) throw PreconditionError("sign certificate needs 0 < u_max <= 1");
  return {sign_(k, u_max), source_};
}

Potential Potential::negated() const {
  if (!std::isfinite(h_at_one())) throw PreconditionError("cannot negate " + name_ + ": h(1) is infinite");
  auto g = [f = g_](double u) { return -f(u); };
  ScalarFn gp;
  if (g_prime_) gp = [f = g_prime_](double u) { return -f(u); };
  auto sign = [s = sign_](int k, double u_max) {
    switch (s(k, u_max)) {
      case DerivativeSign::Nonnegative: return DerivativeSign::Nonpositive;
      case DerivativeSign::Nonpositive: return DerivativeSign::Nonnegative;
      case DerivativeSign::Zero: return DerivativeSign::Zero;
      case DerivativeSign::Unknown: break;
    }
    return DerivativeSign::Unknown;
  };
  Potential pot("-" + name_, "", g, std::move(gp), sign, source_);
  if (!g_prime_) {
    // keep differencing the original g so both potentials see the same derivative data
    pot.g_prime_ = [f = g_](double u) { return -central_difference(f, u); };
  }
  pot.analytic_derivative_ = analytic_derivative_;
  return pot;
}

double eval_h(const Potential& pot, double t) { return pot.h(t); }

SignCertificate certify_sign(const Potential& pot, int k, double u_max) { return pot.certify_sign(k, u_max); }

DerivativeSign sampled_derivative_sign(const Potential::ScalarFn& g, int order, double u_max, int samples) {
  if (order < 1 || samples < 1 || !(u_max > 0.0 && u_max <= 1.0)) return DerivativeSign::Unknown;
  // A forward difference of order m equals g^{(m)}(xi) for some xi inside its
  // stencil, so each sample reports the derivative sign somewhere in (0, u_max).
  const double step = u_max / (4.0 * order);
  const double edge = 1e-6 * u_max;
  const double span = u_max - order * step - 2.0 * edge;
  int positive = 0;
  int negative = 0;
  for (int j = 0; j < samples; ++j) {
    const double a = edge + (samples == 1 ? 0.5 : static_cast<double>(j) / (samples - 1)) * span;
    double acc = 0.0;
    for (int i = 0; i <= order; ++i) {
      const double sgn = ((order - i) % 2 == 0) ? 1.0 : -1.0;
      acc += sgn * binomial(order, i) * g(a + i * step);
    }
    const double d = acc / std::pow(step, order);
    if (!std::isfinite(d)) return DerivativeSign::Unknown;
    if (d > 1e-9) {
      ++positive;
    } else if (d < -1e-9) {
      ++negative;
    } else {
      return DerivativeSign::Unknown;
    }
  }
  if (positive == samples) return DerivativeSign::Nonnegative;
  if (negative == samples) return DerivativeSign::Nonpositive;
  return DerivativeSign::Unknown;
}

namespace {

double parse_param(std::string_view body, std::string_view key, std::string_view spec) {
  const std::string prefix = std::string(key) + "=";
  if (body.substr(0, prefix.size()) != prefix) {
    throw InputError("potential spec '" + std::string(spec) + "' expects parameter " + std::string(key));
  }
  const std::string text(body.substr(prefix.size()));
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw InputError("potential spec '" + std::string(spec) + "': cannot parse '" + text + "'");
  }
  return value;
}

}  // namespace

Potential parse_potential(std::string_view spec) {
  if (spec == "cosh") return Potential::cosh();
  if (spec == "arcsine") return Potential::arcsine();
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw InputError("unknown potential spec '" + std::string(spec) + "'");
  const std::string_view family = spec.substr(0, colon);
  const std::string_view body = spec.substr(colon + 1);
  try {
    if (family == "monomial") {
      const double k = parse_param(body, "k", spec);
      if (k != std::floor(k)) throw InputError("monomial:k must be an integer");
      return Potential::monomial(static_cast<int>(k));
    }
    if (family == "pframe") return Potential::pframe(parse_param(body, "p", spec));
    if (family == "riesz") return Potential::riesz(parse_param(body, "m", spec));
  } catch (const PreconditionError& e) {
    throw InputError(std::string("potential spec '") + std::string(spec) + "': " + e.what());
  }
  throw InputError("unknown potential family '" + std::string(family) + "'");
}

}  // namespace kkbounds
