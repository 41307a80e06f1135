#pragma once

#include <cstdint>
#include <vector>

#include "hsk/heat_kernel.hpp"
#include "hsk/sphere.hpp"

namespace hsk {

struct WalkConfig {
  int n = 3;                    // ambient dimension
  double delta = 0.02;          // geodesic step, radians; small-step regime <= 0.1
  std::int64_t num_steps = 0;   // N; diffusion time t = N delta^2 / (2(n-1))
  int num_walkers = 1000;       // W
  std::uint64_t seed = 0;
  UnitVector start;             // empty = north pole e_1
  bool record_paths = false;
};

struct WalkResult {
  std::vector<UnitVector> endpoints;
  // paths[w] holds (num_steps + 1) * n coordinates, step major; only filled
  // when record_paths is set.
  std::vector<std::vector<double>> paths;
  double diffusion_time = 0.0;
  UnitVector start;
};

// Geodesic random walk: each step samples a uniform unit tangent direction
// (ambient normal draw, radial component projected out) and rotates by delta
// in the spanned 2-plane; positions are renormalized every step. Walkers own
// counter-derived RNG streams, so results do not depend on scheduling.
WalkResult walk(const WalkConfig& config);

// Number of steps whose diffusion time best matches t.
std::int64_t steps_for_time(double t, int n, double delta);

struct KernelComparison {
  double ks_statistic = 0.0;
  int n = 0;
  double t = 0.0;
  std::vector<double> bin_centers;
  std::vector<double> histogram_density;  // empirical density of theta
  std::vector<double> predicted_density;  // p(theta) ~ g(cos theta) sin^{n-2}
};

// Kolmogorov-Smirnov distance between the empirical distribution of
// theta = arccos(endpoint . start) and the kernel-predicted marginal.
// Requires at least 1000 walkers.
KernelComparison compare_to_kernel(const std::vector<UnitVector>& endpoints,
                                   const UnitVector& start, int n, double t, int bins);

// Two-sample KS distance between theta samples; used by the equivariance
// checks.
double two_sample_ks(std::vector<double> a, std::vector<double> b);

}  // namespace hsk
