#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kkbounds/codes.hpp"
#include "kkbounds/potential.hpp"
#include "kkbounds/sphere_search.hpp"

namespace kkbounds {

enum class BoundKind { UlbAlpha, UlbBeta, UubBeta, UubLambda };

std::string to_string(BoundKind kind);

struct BoundReport {
  BoundKind kind = BoundKind::UlbAlpha;
  int n = 0;
  int k = 0;
  std::size_t N = 0;
  std::optional<double> s;
  std::vector<double> nodes;    // copied from the quadrature rule
  std::vector<double> weights;  // copied from the quadrature rule
  double per_point_bound = 0.0;  // sum_i w_i h(x_i)
  double bound_value = 0.0;      // N * per_point_bound
  std::vector<double> interpolant_t_coeffs;
  double interpolant_integral = 0.0;  // N * integral of the interpolant against mu_n
  SignCertificate certificate;
  double one_sided_margin = 0.0;
  double interpolation_residual = 0.0;
  double exactness_residual = 0.0;
  bool numeric_derivatives = false;
  std::string potential_name;
  std::string potential_spec;
  std::optional<double> cross_check;  // value of the other branch when both apply
  std::optional<double> code_r;       // r(C) of a supplied code
  std::vector<std::string> notes;
};

/// U^h(x, C) = sum_i h(x . x_i), with +infinity absorbing.
double potential_U(std::span<const double> x, const SphericalCode& code, const Potential& pot);

enum class Direction { Min, Max };

std::string to_string(Direction d);

struct ExtremizationResult {
  Direction direction = Direction::Min;
  double value = 0.0;
  std::vector<double> argpoint;
  int restarts = 0;
  double stationarity_norm = 0.0;
  std::string method;
};

/// Heuristic global extremum of U^h(., C) over the sphere: angle sweep plus golden
/// section (n = 2), hemisphere grid plus local descent (n = 3), or random
/// restarts of projected gradient descent (n >= 4). MAX of a potential with
/// h(1) = +infinity is +infinity at any point of C, reported without search.
ExtremizationResult extremize(const SphericalCode& code, const Potential& pot, Direction direction,
                              const SearchOptions& options = {});

/// Lower bound on m^h(C) over N-point (k,k)-designs: the Gauss-Gegenbauer
/// branch when g^{(k+1)} >= 0, the endpoint branch when g^{(k+1)} <= 0. When
/// g^{(k+1)} vanishes both are computed and must agree.
BoundReport lower_bound(int n, int k, std::size_t N, const Potential& pot);

/// Upper bound on M^h(C) over N-point (k,k)-designs; needs g^{(k+1)} >= 0 and finite h(1).
BoundReport upper_bound_finite(int n, int k, std::size_t N, const Potential& pot);

/// Upper bound on m^h(C) at the signed-measure nodes for s in (alpha_{k+1}, 1).
/// With code_r, also requires s > code_r.
BoundReport upper_bound_s(int n, int k, std::size_t N, double s, const Potential& pot,
                          std::optional<double> code_r = std::nullopt);

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CertificationReport {
  DesignCertificate design;
  CoveringRadius covering;
  ExtremizationResult minimum;
  ExtremizationResult maximum;
  std::optional<BoundReport> lower;
  std::optional<BoundReport> upper_finite;
  std::optional<BoundReport> upper_s;
  std::vector<Check> checks;
  std::vector<std::string> skipped;
  bool all_passed = true;
};

inline constexpr double kSandwichSlack = 1e-8;

CertificationReport certify_design(const SphericalCode& code, int k, const Potential& pot,
                                   const SearchOptions& options = {});

struct AverageCheck {
  double mean = 0.0;
  double expected = 0.0;  // c_{2k} N
  double deviation = 0.0;  // mean - expected
  double standard_error = 0.0;
  int samples = 0;
};

/// Monte Carlo mean of sum_i (x . x_i)^{2k} over uniform x; needs samples >= 1e4.
AverageCheck average_check(const SphericalCode& code, int k, int samples, std::uint64_t seed = 0);

}  // namespace kkbounds
