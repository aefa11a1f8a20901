#include "kkbounds/codes.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "kkbounds/errors.hpp"
#include "kkbounds/gegenbauer.hpp"
#include "kkbounds/polynomial.hpp"

namespace kkbounds {

SphericalCode::SphericalCode(int dimension, std::vector<std::vector<double>> points) : n_(dimension) {
  if (dimension < 2) throw InputError("spherical code dimension must be at least 2");
  if (points.empty()) throw InputError("a spherical code is a finite nonempty set of points");
  data_.reserve(points.size() * static_cast<std::size_t>(dimension));
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& row = points[i];
    if (row.size() != static_cast<std::size_t>(dimension)) {
      throw InputError("point " + std::to_string(i) + " has " + std::to_string(row.size()) +
                       " coordinates, expected " + std::to_string(dimension));
    }
    const double r = norm(row);
    if (!(std::abs(r - 1.0) <= 1e-12))
      throw InputError("point " + std::to_string(i) + " is not a unit vector (norm " + std::to_string(r) + ")");
    data_.insert(data_.end(), row.begin(), row.end());
  }
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      double dist2 = 0.0;
      for (int c = 0; c < n_; ++c) {
        const double d = point(i)[c] - point(j)[c];
        dist2 += d * d;
      }
      if (std::sqrt(dist2) <= 1e-12)
        throw InputError("points " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
    }
  }
}

std::vector<std::vector<double>> SphericalCode::rows() const {
  std::vector<std::vector<double>> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.emplace_back(point(i).begin(), point(i).end());
  return out;
}

SphericalCode SphericalCode::negated() const {
  auto r = rows();
  for (auto& row : r)
    for (double& v : row) v = -v;
  return SphericalCode(n_, std::move(r));
}

double moment(const SphericalCode& code, int l) {
  if (l < 1) throw PreconditionError("moment order must be positive");
  const GegenbauerFamily family(code.dimension(), 0);
  double sum = 0.0;
  for (std::size_t i = 0; i < code.size(); ++i) {
    sum += 1.0;  // P_l(1) = 1 on the diagonal
    for (std::size_t j = 0; j < i; ++j) sum += 2.0 * family.evaluate(l, dot(code.point(i), code.point(j)));
  }
  return sum;
}

DesignCertificate is_kk_design(const SphericalCode& code, int k, std::optional<double> tolerance) {
  if (k < 1) throw PreconditionError("design order k must be at least 1");
  DesignCertificate cert;
  cert.k = k;
  cert.N = code.size();
  cert.n = code.dimension();
  const double nn = static_cast<double>(code.size());
  cert.tolerance = tolerance.value_or(1e-9 * nn * nn);
  for (int l = 2; l <= 2 * k; l += 2) {
    const double m = moment(code, l);
    cert.even_moments.emplace_back(l, m);
    cert.max_even_moment_residual = std::max(cert.max_even_moment_residual, std::abs(m));
  }
  cert.is_design = cert.max_even_moment_residual <= cert.tolerance;
  return cert;
}

double waring_residual(const SphericalCode& code, std::span<const double> x, int l) {
  if (l < 0 || l % 2 != 0) throw PreconditionError("Waring residual needs an even exponent");
  if (x.size() != static_cast<std::size_t>(code.dimension())) throw PreconditionError("dimension mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < code.size(); ++i) sum += std::pow(dot(x, code.point(i)), l);
  return sum - monomial_moment(code.dimension(), l) * static_cast<double>(code.size());
}

namespace {

double max_abs_dot(const SphericalCode& code, std::span<const double> x) {
  double m = 0.0;
  for (std::size_t i = 0; i < code.size(); ++i) m = std::max(m, std::abs(dot(x, code.point(i))));
  return m;
}

CoveringRadius covering_radius_circle(const SphericalCode& code) {
  std::vector<double> angles;
  for (std::size_t i = 0; i < code.size(); ++i) {
    const double a = std::atan2(code.point(i)[1], code.point(i)[0]);
    angles.push_back(a);
    angles.push_back(a + std::numbers::pi);
  }
  for (double& a : angles) a = std::fmod(a + 4.0 * std::numbers::pi, 2.0 * std::numbers::pi);
  std::sort(angles.begin(), angles.end());
  double best_gap = -1.0;
  double best_mid = 0.0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double next = (i + 1 < angles.size()) ? angles[i + 1] : angles[0] + 2.0 * std::numbers::pi;
    const double gap = next - angles[i];
    if (gap > best_gap) {
      best_gap = gap;
      best_mid = angles[i] + 0.5 * gap;
    }
  }
  CoveringRadius out;
  out.method = "angle-sweep";
  out.witness = {std::cos(best_mid), std::sin(best_mid)};
  out.r = max_abs_dot(code, out.witness);
  out.starts = 1;
  return out;
}

// Log-sum-exp smoothing of max_{y in C u -C} x . y with its tangential gradient.
double smoothed_max(const SphericalCode& code, std::span<const double> x, double beta, std::vector<double>* grad) {
  const std::size_t N = code.size();
  std::vector<double> v(N);
  double m = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    v[i] = dot(x, code.point(i));
    m = std::max(m, std::abs(v[i]));
  }
  double total = 0.0;
  if (grad) grad->assign(x.size(), 0.0);
  for (std::size_t i = 0; i < N; ++i) {
    const double wp = std::exp(beta * (v[i] - m));
    const double wm = std::exp(beta * (-v[i] - m));
    total += wp + wm;
    if (grad) {
      for (std::size_t c = 0; c < x.size(); ++c) (*grad)[c] += (wp - wm) * code.point(i)[c];
    }
  }
  if (grad) {
    for (double& g : *grad) g /= total;
    const double radial = dot(*grad, x);
    for (std::size_t c = 0; c < x.size(); ++c) (*grad)[c] -= radial * x[c];
  }
  return m + std::log(total) / beta;
}

struct SmoothedResult {
  std::vector<double> x;
  double gradient_norm = 0.0;
};

SmoothedResult smoothed_descent(const SphericalCode& code, std::vector<double> x) {
  const std::size_t n = x.size();
  std::vector<double> grad;
  std::vector<double> trial(n);
  double gnorm = 0.0;
  for (double beta : {20.0, 100.0, 500.0, 2500.0, 12500.0, 62500.0}) {
    double step = 0.05;
    double f = smoothed_max(code, x, beta, &grad);
    for (int iter = 0; iter < 200; ++iter) {
      gnorm = norm(grad);
      if (gnorm < 1e-14) break;
      bool moved = false;
      while (step > 1e-14) {
        for (std::size_t c = 0; c < n; ++c) trial[c] = x[c] - step * grad[c] / gnorm;
        normalize(trial);
        std::vector<double> trial_grad;
        const double ft = smoothed_max(code, trial, beta, &trial_grad);
        if (ft < f) {
          x = trial;
          f = ft;
          grad = std::move(trial_grad);
          step = std::min(0.5, 1.5 * step);
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
  }
  return {std::move(x), gnorm};
}

// Point equidistant (in inner product) from the near-active points of C u -C.
std::vector<double> polish_active_set(const SphericalCode& code, const std::vector<double>& x) {
  const int n = code.dimension();
  const double current = max_abs_dot(code, x);
  std::vector<double> best = x;
  double best_value = current;
  for (double tol : {1e-2, 3e-3, 1e-3, 1e-4, 1e-6}) {
    std::vector<int> active;  // signed 1-based index
    for (std::size_t i = 0; i < code.size(); ++i) {
      const double v = dot(x, code.point(i));
      if (std::abs(v) >= current - tol) active.push_back(v >= 0.0 ? static_cast<int>(i) + 1 : -static_cast<int>(i) - 1);
    }
    if (active.empty()) continue;
    Eigen::MatrixXd Y(static_cast<Eigen::Index>(active.size()), n);
    for (std::size_t a = 0; a < active.size(); ++a) {
      const std::size_t i = static_cast<std::size_t>(std::abs(active[a]) - 1);
      const double sgn = active[a] > 0 ? 1.0 : -1.0;
      for (int c = 0; c < n; ++c) Y(static_cast<Eigen::Index>(a), c) = sgn * code.point(i)[c];
    }
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(active.size()));
    const Eigen::VectorXd z = Y.completeOrthogonalDecomposition().solve(ones);
    const double zn = z.norm();
    if (!(zn > 0.0) || !std::isfinite(zn)) continue;
    std::vector<double> cand(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) cand[static_cast<std::size_t>(c)] = z(c) / zn;
    const double value = max_abs_dot(code, cand);
    if (value < best_value) {
      best_value = value;
      best = std::move(cand);
    }
  }
  return best;
}

}  // namespace

CoveringRadius covering_radius_r(const SphericalCode& code, const SearchOptions& options) {
  const int n = code.dimension();
  if (n == 2) return covering_radius_circle(code);

  std::vector<std::vector<double>> starts;
  if (n == 3) {
    // best separated points of a dense hemisphere grid (the objective is even)
    auto grid = hemisphere_grid(90, 360);
    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) scored.emplace_back(max_abs_dot(code, grid[i]), i);
    std::sort(scored.begin(), scored.end());
    for (const auto& [value, idx] : scored) {
      bool separated = true;
      for (const auto& s : starts) separated = separated && std::abs(dot(s, grid[idx])) < std::cos(0.1);
      if (separated) starts.push_back(grid[idx]);
      if (starts.size() >= 24) break;
    }
  } else {
    std::mt19937_64 rng(options.seed);
    const int count = std::max(64, options.restarts);
    for (int i = 0; i < count; ++i) starts.push_back(random_unit_vector(rng, n));
  }

  CoveringRadius out;
  out.method = "multistart";
  out.r = std::numeric_limits<double>::infinity();
  out.starts = static_cast<int>(starts.size());
  for (auto& start : starts) {
    SmoothedResult sm = smoothed_descent(code, std::move(start));
    std::vector<double> x = polish_active_set(code, sm.x);
    const double r = max_abs_dot(code, x);
    if (r < out.r) {
      out.r = r;
      out.witness = std::move(x);
      out.smoothed_gradient_norm = sm.gradient_norm;
    }
  }
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (std::abs(std::abs(dot(out.witness, code.point(i))) - out.r) <= 1e-9) ++out.active_points;
  }
  return out;
}

namespace {

int parse_size(std::string_view text, std::string_view name) {
  int value = 0;
  std::size_t used = 0;
  try {
    value = std::stoi(std::string(text), &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || value < 1)
    throw InputError("catalog entry '" + std::string(name) + "' needs a positive integer parameter");
  return value;
}

std::vector<std::vector<double>> identity_rows(int n) {
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
  return rows;
}

// n+1 vertices of a regular simplex, written in the Helmert basis of the
// hyperplane sum(x) = 0 in R^{n+1}.
std::vector<std::vector<double>> simplex_rows(int n) {
  const double scale = std::sqrt(static_cast<double>(n + 1) / n);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i <= n; ++i) {
    std::vector<double> row(static_cast<std::size_t>(n), 0.0);
    for (int j = 1; j <= n; ++j) {
      const double denom = std::sqrt(static_cast<double>(j) * (j + 1));
      double e = 0.0;
      if (i < j) e = 1.0 / denom;
      else if (i == j) e = -static_cast<double>(j) / denom;
      row[static_cast<std::size_t>(j - 1)] = scale * e;
    }
    normalize(row);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

SphericalCode catalog(std::string_view name) {
  const auto colon = name.find(':');
  const std::string_view family = name.substr(0, colon);
  const std::string_view param = colon == std::string_view::npos ? std::string_view{} : name.substr(colon + 1);
  const bool has_param = colon != std::string_view::npos;

  if ((family == "onb" || family == "cross_half") && has_param) {
    const int n = parse_size(param, name);
    return SphericalCode(n, identity_rows(n));
  }
  if (family == "simplex_frame" && has_param) {
    const int n = parse_size(param, name);
    return SphericalCode(n, simplex_rows(n));
  }
  if (family == "polygon_half" && has_param) {
    const int m = parse_size(param, name);
    std::vector<std::vector<double>> rows;
    for (int j = 0; j < m; ++j) {
      const double a = std::numbers::pi * j / m;
      rows.push_back({std::cos(a), std::sin(a)});
    }
    return SphericalCode(2, std::move(rows));
  }
  if (family == "cube_half" && !has_param) {
    const double c = 1.0 / std::sqrt(3.0);
    return SphericalCode(3, {{c, c, c}, {c, -c, -c}, {-c, c, -c}, {-c, -c, c}});
  }
  if (family == "icosahedron_half" && !has_param) {
    const double phi = std::numbers::phi;
    const double r = std::sqrt(1.0 + phi * phi);
    const double a = 1.0 / r;
    const double b = phi / r;
    return SphericalCode(3, {{0, a, b}, {0, a, -b}, {a, b, 0}, {-a, b, 0}, {b, 0, a}, {b, 0, -a}});
  }
  if (family == "cell24_half" && !has_param) {
    const double c = 1.0 / std::sqrt(2.0);
    std::vector<std::vector<double>> rows;
    for (int a = 0; a < 4; ++a) {
      for (int b = a + 1; b < 4; ++b) {
        for (double sb : {1.0, -1.0}) {
          std::vector<double> row(4, 0.0);
          row[static_cast<std::size_t>(a)] = c;
          row[static_cast<std::size_t>(b)] = sb * c;
          rows.push_back(std::move(row));
        }
      }
    }
    return SphericalCode(4, std::move(rows));
  }
  throw InputError("unknown catalog code '" + std::string(name) + "'");
}

std::vector<std::string> catalog_names() {
  return {"onb:<n>", "cross_half:<n>", "simplex_frame:<n>", "cube_half", "polygon_half:<m>", "icosahedron_half",
          "cell24_half"};
}

SphericalCode code_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed code JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("points") || !doc["dim"].is_number_integer() ||
      !doc["points"].is_array()) {
    throw InputError("code JSON must be an object with integer \"dim\" and array \"points\"");
  }
  const int n = doc["dim"].get<int>();
  std::vector<std::vector<double>> rows;
  for (const auto& p : doc["points"]) {
    if (!p.is_array()) throw InputError("each point must be an array of numbers");
    std::vector<double> row;
    for (const auto& v : p) {
      if (!v.is_number()) throw InputError("each point must be an array of numbers");
      row.push_back(v.get<double>());
    }
    const double r = norm(row);
    if (!(std::abs(r - 1.0) <= 1e-9))
      throw InputError("point " + std::to_string(rows.size()) + " has norm " + std::to_string(r) +
                       ", not within 1e-9 of 1");
    // leave rows that are unit up to rounding untouched so save/load is exact
    if (std::abs(r - 1.0) > 1e-15)
      for (double& v : row) v /= r;
    rows.push_back(std::move(row));
  }
  return SphericalCode(n, std::move(rows));
}

std::string code_to_json(const SphericalCode& code) {
  nlohmann::json doc;
  doc["dim"] = code.dimension();
  doc["points"] = code.rows();
  return doc.dump();
}

SphericalCode load_code(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open code file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return code_from_json(buf.str());
}

void save_code(const SphericalCode& code, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write code file " + path.string());
  out << code_to_json(code) << "\n";
}

}  // namespace kkbounds
