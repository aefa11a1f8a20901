#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace kkbounds {

/// Controls for the randomized searches over the sphere.
struct SearchOptions {
  std::uint64_t seed = 0;
  int restarts = 128;  // random starts for n >= 4
};

using SphereFunction = std::function<double(std::span<const double>)>;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
/// x / |x|
void normalize(std::span<double> x);

std::vector<double> random_unit_vector(std::mt19937_64& rng, int n);

/// Roughly uniform points on the upper hemisphere of S^2 (latitude-longitude grid).
std::vector<std::vector<double>> hemisphere_grid(int latitudes, int longitudes);

struct LocalMinimum {
  std::vector<double> x;
  double value = 0.0;
  double gradient_norm = 0.0;  // tangential, last iterate
  int iterations = 0;
};

/// Projected gradient descent on the unit sphere with central-difference
/// tangential gradients and a backtracking step.
LocalMinimum minimize_on_sphere(const SphereFunction& f, std::vector<double> start, int max_iterations = 400);

/// Golden-section minimization of f on [lo, hi].
double golden_section(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-13);

}  // namespace kkbounds
