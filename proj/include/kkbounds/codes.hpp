#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kkbounds/sphere_search.hpp"

namespace kkbounds {

/// N distinct unit vectors in R^n, stored row-major.
class SphericalCode {
 public:
  /// Throws InputError unless every row has unit norm within 1e-12, N >= 1,
  /// and no two rows coincide within 1e-12.
  SphericalCode(int dimension, std::vector<std::vector<double>> points);

  int dimension() const { return n_; }
  std::size_t size() const { return data_.size() / static_cast<std::size_t>(n_); }
  std::span<const double> point(std::size_t i) const {
    return {data_.data() + i * static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)};
  }
  std::vector<std::vector<double>> rows() const;
  SphericalCode negated() const;

 private:
  int n_;
  std::vector<double> data_;
};

/// M_l(C) = sum_{i,j} P_l^{(n)}(x_i . x_j)
double moment(const SphericalCode& code, int l);

struct DesignCertificate {
  int k = 0;
  std::size_t N = 0;
  int n = 0;
  std::vector<std::pair<int, double>> even_moments;  // (l, M_l) for l = 2, 4, ..., 2k
  double max_even_moment_residual = 0.0;
  double tolerance = 0.0;
  bool is_design = false;
};

/// Default tolerance is 1e-9 * N^2.
DesignCertificate is_kk_design(const SphericalCode& code, int k, std::optional<double> tolerance = std::nullopt);

/// sum_i (x . x_i)^l - c_l N
double waring_residual(const SphericalCode& code, std::span<const double> x, int l);

struct CoveringRadius {
  double r = 0.0;
  std::vector<double> witness;
  std::string method;     // "angle-sweep" (exact, n = 2) or "multistart"
  int starts = 0;
  int active_points = 0;  // points of C u -C within 1e-9 of r at the witness
  double smoothed_gradient_norm = 0.0;
};

/// r(C) = min over unit x of max_i |x . x_i|, with a minimizing witness.
/// Exact for n = 2; otherwise an upper estimate from a multistart search.
CoveringRadius covering_radius_r(const SphericalCode& code, const SearchOptions& options = {});

/// onb:n, cross_half:n, simplex_frame:n, cube_half, polygon_half:m,
/// icosahedron_half, cell24_half
SphericalCode catalog(std::string_view name);
std::vector<std::string> catalog_names();

/// {"dim": n, "points": [[...], ...]}; rows within 1e-9 of unit norm are renormalized.
SphericalCode code_from_json(std::string_view text);
std::string code_to_json(const SphericalCode& code);
SphericalCode load_code(const std::filesystem::path& path);
void save_code(const SphericalCode& code, const std::filesystem::path& path);

}  // namespace kkbounds
