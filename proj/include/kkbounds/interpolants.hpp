#pragma once

#include <span>
#include <vector>

#include "kkbounds/polynomial.hpp"
#include "kkbounds/potential.hpp"
#include "kkbounds/quadrature.hpp"
#include "kkbounds/signed_measure.hpp"

namespace kkbounds {

/// Which side of h the interpolant must stay on.
enum class Side { Below, Above };

struct UNode {
  double u = 0.0;
  int multiplicity = 1;  // 1: value only, 2: value and first derivative
};

/// Confluent interpolation conditions in u = t^2 on [0, u_max].
struct InterpolationScheme {
  std::vector<UNode> nodes;
  Side side = Side::Below;
  double u_max = 1.0;

  /// Sum of multiplicities; the interpolant has degree at most this minus one.
  int conditions() const;
};

/// Unique polynomial G of degree < scheme.conditions() with G(u_i) = values[i]
/// and, for multiplicity-2 nodes, G'(u_i) = slopes[i] (slopes of simple nodes
/// are ignored). Newton divided differences on the ascending node sequence
/// with repeated nodes adjacent.
Polynomial hermite_confluent(const InterpolationScheme& scheme, std::span<const double> values,
                             std::span<const double> slopes);

/// Even interpolant of h together with the data that produced it.
struct Interpolant {
  InterpolationScheme scheme;
  Polynomial in_u;  // G_k
  Polynomial in_t;  // G_k(t^2)
  bool numeric_derivatives = false;
  double max_residual = 0.0;  // worst relative mismatch in the interpolation conditions
};

/// Interpolant of the Gauss-Gegenbauer nodes: stays below h on [-1, 1] when
/// g^{(k+1)} >= 0 on (0, 1).
Interpolant build_H2k(int n, int k, const Potential& pot);
Interpolant build_H2k(const QuadratureRule& alpha_rule, const Potential& pot);

/// Interpolant at the endpoint-augmented nodes: stays below h on [-1, 1] when
/// g^{(k+1)} <= 0 on (0, 1) and h(1) is finite.
Interpolant build_H2k_tilde(int n, int k, const Potential& pot);
Interpolant build_H2k_tilde(const QuadratureRule& beta_rule, const Potential& pot);

/// Interpolant at the signed-measure nodes: stays above h on [-s, s] when
/// g^{(k+1)} >= 0 on (0, s^2).
Interpolant build_H2k_s(const SignedMeasureContext& ctx, const Potential& pot);
Interpolant build_H2k_s(const QuadratureRule& lambda_rule, const Potential& pot);

/// min over a uniform grid of [a, b] of (h - p) for Side::Below or (p - h) for
/// Side::Above. A margin >= kOneSidedTolerance counts as membership.
double verify_one_sided(const Polynomial& p, const Potential& pot, Side side, double a, double b,
                        int grid_size = 10001);

inline constexpr double kOneSidedTolerance = -1e-9;

}  // namespace kkbounds
