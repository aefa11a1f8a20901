#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace kkbounds {

/// Sign of g^{(k+1)} on an interval (0, u_max).
///
/// `Zero` means g^{(k+1)} vanishes identically, so both one-sided hypotheses
/// hold at once.
enum class DerivativeSign { Nonnegative, Nonpositive, Zero, Unknown };

enum class CertificateSource { Analytic, Sampled };

struct SignCertificate {
  DerivativeSign sign = DerivativeSign::Unknown;
  CertificateSource source = CertificateSource::Analytic;
};

constexpr bool admits_nonnegative(DerivativeSign s) {
  return s == DerivativeSign::Nonnegative || s == DerivativeSign::Zero;
}
constexpr bool admits_nonpositive(DerivativeSign s) {
  return s == DerivativeSign::Nonpositive || s == DerivativeSign::Zero;
}

std::string to_string(DerivativeSign s);
std::string to_string(CertificateSource s);

/// Even potential h(t) = g(t^2) with g : [0, 1] -> (-inf, +inf].
///
/// +infinity is represented by IEEE infinity and may only occur at u = 1.
class Potential {
 public:
  using ScalarFn = std::function<double(double)>;
  using SignFn = std::function<DerivativeSign(int k, double u_max)>;

  static Potential monomial(int k);
  static Potential pframe(double p);
  static Potential riesz(double m);
  static Potential cosh();
  static Potential arcsine();
  /// Black-box g; the sign certificate is sampled and, without g_prime,
  /// derivatives use central differences with step 1e-6.
  static Potential custom(std::string name, ScalarFn g, ScalarFn g_prime = {});

  const std::string& name() const { return name_; }
  /// Spec string accepted by parse_potential (empty for custom potentials).
  const std::string& spec() const { return spec_; }
  /// k when h(t) = t^{2k}.
  std::optional<int> monomial_power() const { return monomial_power_; }

  double g(double u) const { return g_(u); }
  double g_prime(double u) const;
  bool analytic_derivative() const { return analytic_derivative_; }
  /// h(t) = g(t^2); throws DomainError for |t| > 1.
  double h(double t) const;
  double h_at_one() const { return g_(1.0); }

  SignCertificate certify_sign(int k, double u_max) const;

  /// -h; requires a finite h(1).
  Potential negated() const;

 private:
  Potential(std::string name, std::string spec, ScalarFn g, ScalarFn g_prime, SignFn sign,
            CertificateSource source);

  std::string name_;
  std::string spec_;
  ScalarFn g_;
  ScalarFn g_prime_;
  SignFn sign_;
  CertificateSource source_;
  bool analytic_derivative_ = true;
  std::optional<int> monomial_power_;
};

double eval_h(const Potential& pot, double t);
SignCertificate certify_sign(const Potential& pot, int k, double u_max);

/// Sign of the `order`-th derivative of g estimated by centered finite
/// differences at `samples` interior points of (0, u_max). Unknown unless
/// every estimate clears +-1e-9 with one common sign.
DerivativeSign sampled_derivative_sign(const Potential::ScalarFn& g, int order, double u_max, int samples = 200);

/// "monomial:k=<int>", "pframe:p=<real>", "riesz:m=<real>", "cosh", "arcsine".
Potential parse_potential(std::string_view spec);

}  // namespace kkbounds
