#include "hsk/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hsk/errors.hpp"
#include "hsk/parallel.hpp"
#include "hsk/rng.hpp"

namespace hsk {

std::int64_t steps_for_time(double t, int n, double delta) {
  require(t > 0.0 && delta > 0.0 && n >= 3, Errc::InvalidArgument, "steps_for_time: bad inputs");
  return std::llround(t * 2.0 * (n - 1) / (delta * delta));
}

WalkResult walk(const WalkConfig& config) {
  require(config.n >= 3, Errc::InvalidArgument, "walk: n must be >= 3");
  require(config.delta > 0.0 && config.delta <= 0.1, Errc::InvalidArgument,
          "walk: delta must be in (0, 0.1] (small-step regime)");
  require(config.num_steps >= 0, Errc::InvalidArgument, "walk: negative step count");
  require(config.num_walkers >= 1, Errc::InvalidArgument, "walk: need at least one walker");

  UnitVector start = config.start;
  if (start.values.empty()) {
    start.values.assign(static_cast<std::size_t>(config.n), 0.0);
    start.values[0] = 1.0;
  }
  require(start.dim() == static_cast<std::size_t>(config.n), Errc::DimensionMismatch,
          "walk: start dimension != n");
  require(std::abs(norm(start.values) - 1.0) <= kUnitNormTol, Errc::NotUnit,
          "walk: start is not unit norm");

  WalkResult result;
  result.start = start;
  result.diffusion_time = static_cast<double>(config.num_steps) * config.delta * config.delta /
                          (2.0 * (config.n - 1));
  result.endpoints.resize(static_cast<std::size_t>(config.num_walkers));
  if (config.record_paths) result.paths.resize(static_cast<std::size_t>(config.num_walkers));

  const double cos_d = std::cos(config.delta);
  const double sin_d = std::sin(config.delta);
  const std::size_t n = static_cast<std::size_t>(config.n);

  parallel_for(0, static_cast<std::size_t>(config.num_walkers), [&](std::size_t w) {
    std::mt19937_64 rng = make_engine(config.seed, w);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> x = start.values;
    std::vector<double> u(n);
    std::vector<double>* path = config.record_paths ? &result.paths[w] : nullptr;
    if (path) {
      path->reserve((static_cast<std::size_t>(config.num_steps) + 1) * n);
      path->insert(path->end(), x.begin(), x.end());
    }
    for (std::int64_t step = 0; step < config.num_steps; ++step) {
      // Uniform tangent direction: ambient normal, radial part removed.
      double nu = 0.0;
      do {
        for (std::size_t i = 0; i < n; ++i) u[i] = gauss(rng);
        double radial = 0.0;
        for (std::size_t i = 0; i < n; ++i) radial += u[i] * x[i];
        nu = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          u[i] -= radial * x[i];
          nu += u[i] * u[i];
        }
        nu = std::sqrt(nu);
      } while (nu < 1e-12);
      double r = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = cos_d * x[i] + sin_d * u[i] / nu;
        r += x[i] * x[i];
      }
      r = std::sqrt(r);
      for (std::size_t i = 0; i < n; ++i) x[i] /= r;
      if (path) path->insert(path->end(), x.begin(), x.end());
    }
    result.endpoints[w].values = std::move(x);
  });
  return result;
}

namespace {

// CDF of p(theta) ~ g_exact(cos theta) sin^{n-2} theta on a fine grid.
struct PredictedCdf {
  std::vector<double> theta;
  std::vector<double> cdf;
  std::vector<double> density;  // normalized

  double operator()(double th) const {
    if (th <= theta.front()) return 0.0;
    if (th >= theta.back()) return 1.0;
    const std::size_t hi =
        static_cast<std::size_t>(std::upper_bound(theta.begin(), theta.end(), th) -
                                 theta.begin());
    const double f = (th - theta[hi - 1]) / (theta[hi] - theta[hi - 1]);
    return cdf[hi - 1] + f * (cdf[hi] - cdf[hi - 1]);
  }
};

PredictedCdf predicted_cdf(int n, double t, std::size_t grid_size) {
  PredictedCdf out;
  out.theta.resize(grid_size + 1);
  out.density.resize(grid_size + 1);
  out.cdf.assign(grid_size + 1, 0.0);
  ExactKernelParams params{n, t, {}};
  for (std::size_t i = 0; i <= grid_size; ++i) {
    const double th = M_PI * static_cast<double>(i) / static_cast<double>(grid_size);
    out.theta[i] = th;
    const double g = g_exact(std::cos(th), params).value;
    out.density[i] = std::max(g, 0.0) * std::pow(std::sin(th), n - 2);
  }
  for (std::size_t i = 1; i <= grid_size; ++i)
    out.cdf[i] = out.cdf[i - 1] +
                 0.5 * (out.density[i] + out.density[i - 1]) * (out.theta[i] - out.theta[i - 1]);
  const double total = out.cdf.back();
  require(total > 0.0, Errc::InvalidParams, "predicted density integrates to zero");
  for (std::size_t i = 0; i <= grid_size; ++i) {
    out.cdf[i] /= total;
    out.density[i] /= total;
  }
  return out;
}

}  // namespace

KernelComparison compare_to_kernel(const std::vector<UnitVector>& endpoints,
                                   const UnitVector& start, int n, double t, int bins) {
  require(endpoints.size() >= 1000, Errc::TooFewWalkers,
          "compare_to_kernel needs at least 1000 walkers");
  require(bins >= 2, Errc::InvalidArgument, "compare_to_kernel: bins must be >= 2");

  std::vector<double> thetas;
  thetas.reserve(endpoints.size());
  for (const UnitVector& e : endpoints) thetas.push_back(geodesic_distance(e, start));
  std::sort(thetas.begin(), thetas.end());

  const PredictedCdf cdf = predicted_cdf(n, t, 4096);
  const double W = static_cast<double>(thetas.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    const double F = cdf(thetas[i]);
    ks = std::max(ks, std::abs(F - static_cast<double>(i) / W));
    ks = std::max(ks, std::abs(static_cast<double>(i + 1) / W - F));
  }

  KernelComparison cmp;
  cmp.ks_statistic = ks;
  cmp.n = n;
  cmp.t = t;
  const double width = M_PI / bins;
  cmp.bin_centers.resize(static_cast<std::size_t>(bins));
  cmp.histogram_density.assign(static_cast<std::size_t>(bins), 0.0);
  cmp.predicted_density.resize(static_cast<std::size_t>(bins));
  for (double th : thetas) {
    std::size_t b = std::min(static_cast<std::size_t>(th / width),
                             static_cast<std::size_t>(bins) - 1);
    cmp.histogram_density[b] += 1.0;
  }
  for (int b = 0; b < bins; ++b) {
    const double center = (b + 0.5) * width;
    cmp.bin_centers[static_cast<std::size_t>(b)] = center;
    cmp.histogram_density[static_cast<std::size_t>(b)] /= W * width;
    // Bin-averaged predicted density from the CDF.
    cmp.predicted_density[static_cast<std::size_t>(b)] =
        (cdf(center + 0.5 * width) - cdf(center - 0.5 * width)) / width;
  }
  return cmp;
}

double two_sample_ks(std::vector<double> a, std::vector<double> b) {
  require(!a.empty() && !b.empty(), Errc::InvalidArgument, "two_sample_ks: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double ks = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    ks = std::max(ks, std::abs(static_cast<double>(i) / a.size() -
                               static_cast<double>(j) / b.size()));
  }
  return ks;
}

}  // namespace hsk
