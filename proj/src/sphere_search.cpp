#include "kkbounds/sphere_search.hpp"

#include <cmath>
#include <numbers>

namespace kkbounds {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void normalize(std::span<double> x) {
  const double r = norm(x);
  for (double& v : x) v /= r;
}

std::vector<double> random_unit_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> x(static_cast<std::size_t>(n));
  double r = 0.0;
  do {
    for (double& v : x) v = gauss(rng);
    r = norm(x);
  } while (r < 1e-8);
  for (double& v : x) v /= r;
  return x;
}

std::vector<std::vector<double>> hemisphere_grid(int latitudes, int longitudes) {
  std::vector<std::vector<double>> pts;
  pts.reserve(static_cast<std::size_t>(latitudes) * longitudes + 1);
  pts.push_back({0.0, 0.0, 1.0});
  for (int i = 1; i <= latitudes; ++i) {
    const double theta = 0.5 * std::numbers::pi * i / latitudes;
    for (int j = 0; j < longitudes; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / longitudes;
      pts.push_back({std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)});
    }
  }
  return pts;
}

namespace {

std::vector<double> tangential_gradient(const SphereFunction& f, std::span<const double> x) {
  constexpr double step = 1e-7;
  const std::size_t n = x.size();
  std::vector<double> grad(n, 0.0);
  std::vector<double> probe(n);
  for (std::size_t j = 0; j < n; ++j) {
    probe.assign(x.begin(), x.end());
    probe[j] += step;
    normalize(probe);
    const double fp = f(probe);
    probe.assign(x.begin(), x.end());
    probe[j] -= step;
    normalize(probe);
    const double fm = f(probe);
    grad[j] = (fp - fm) / (2.0 * step);
  }
  // f(x/|x|) is 0-homogeneous, so grad is tangential up to differencing error.
  const double radial = dot(grad, x);
  for (std::size_t j = 0; j < n; ++j) grad[j] -= radial * x[j];
  return grad;
}

}  // namespace

LocalMinimum minimize_on_sphere(const SphereFunction& f, std::vector<double> start, int max_iterations) {
  LocalMinimum best;
  normalize(start);
  best.x = std::move(start);
  best.value = f(best.x);
  if (!std::isfinite(best.value)) return best;
  const std::size_t n = best.x.size();
  double step = 0.05;
  std::vector<double> trial(n);
  for (int iter = 0; iter < max_iterations; ++iter) {
    best.iterations = iter + 1;
    const std::vector<double> grad = tangential_gradient(f, best.x);
    const double gnorm = norm(grad);
    best.gradient_norm = gnorm;
    if (!std::isfinite(gnorm) || gnorm < 1e-13) break;
    bool moved = false;
    while (step > 1e-15) {
      for (std::size_t j = 0; j < n; ++j) trial[j] = best.x[j] - step * grad[j] / gnorm;
      normalize(trial);
      const double v = f(trial);
      if (v < best.value) {
        best.x = trial;
        best.value = v;
        step = std::min(0.5, step * 1.5);
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return best;
}

double golden_section(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? c : d;
}

}  // namespace kkbounds
