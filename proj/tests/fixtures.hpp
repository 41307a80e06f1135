#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hsk/experiments.hpp"
#include "hsk/kernel.hpp"
#include "hsk/rng.hpp"
#include "hsk/sphere.hpp"

namespace hsk::testfix {

// Classes are direction clusters on S^{n-1}; every sample is then scaled by
// a random radius in [1, 100], so labels carry no information about vector
// norms and the radial degree of freedom is pure noise.
inline LabeledDataset radial_noise_fixture(int n, int classes, int per_class, double spread,
                                           std::uint64_t seed) {
  LabeledDataset data;
  std::mt19937_64 rng = make_engine(seed, 0x11);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> radius(1.0, 100.0);

  std::vector<FeatureVector> centers;
  for (int c = 0; c < classes; ++c) {
    FeatureVector center(static_cast<std::size_t>(n), 0.0);
    center[static_cast<std::size_t>(c) % static_cast<std::size_t>(n)] = 1.0;
    if (2 * c + 1 < n) center[static_cast<std::size_t>(2 * c + 1)] = 0.6;
    centers.push_back(sphere_map(center, SphereMapKind::L2Projective).values);
  }

  for (int c = 0; c < classes; ++c) {
    for (int s = 0; s < per_class; ++s) {
      FeatureVector x(static_cast<std::size_t>(n));
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = centers[c][i] + spread * gauss(rng);
      const UnitVector dir = sphere_map(x, SphereMapKind::L2Projective);
      const double r = radius(rng);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = r * dir[i];
      data.rows.push_back(std::move(x));
      data.labels.push_back("class" + std::to_string(c));
      data.sample_ids.push_back("c" + std::to_string(c) + "_s" + std::to_string(s));
    }
  }
  for (std::size_t i = 0; i < data.n(); ++i) data.feature_names.push_back("f" + std::to_string(i));
  return data;
}

// Reference dual solver: projected gradient ascent with projection onto
// {0 <= a <= C, y.a = 0} by bisection on the equality multiplier. Slow and
// simple; shares no code with the SMO path.
inline std::vector<double> reference_dual_solve(const GramMatrix& K, const std::vector<int>& y,
                                                double C, int iters) {
  const std::size_t m = K.m;
  std::vector<double> alpha(m, 0.0);

  const auto project = [&](std::vector<double>& a) {
    double lo = -1e12, hi = 1e12;
    const auto balance = [&](double nu) {
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        double v = a[i] - nu * y[i];
        v = v < 0.0 ? 0.0 : (v > C ? C : v);
        s += v * y[i];
      }
      return s;
    };
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (balance(mid) > 0.0)
        lo = mid;
      else
        hi = mid;
    }
    const double nu = 0.5 * (lo + hi);
    for (std::size_t i = 0; i < m; ++i) {
      double v = a[i] - nu * y[i];
      a[i] = v < 0.0 ? 0.0 : (v > C ? C : v);
    }
  };

  double norm_q = 1e-12;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) norm_q += std::abs(K.at(i, j));
  const double step = static_cast<double>(m) / norm_q;

  std::vector<double> grad(m);
  for (int it = 0; it < iters; ++it) {
    for (std::size_t i = 0; i < m; ++i) {
      double qa = 0.0;
      for (std::size_t j = 0; j < m; ++j) qa += y[i] * y[j] * K.at(i, j) * alpha[j];
      grad[i] = 1.0 - qa;
    }
    for (std::size_t i = 0; i < m; ++i) alpha[i] += step * grad[i];
    project(alpha);
  }
  return alpha;
}

inline double dual_objective(const GramMatrix& K, const std::vector<int>& y,
                             const std::vector<double>& alpha) {
  double lin = 0.0, quad = 0.0;
  for (std::size_t i = 0; i < K.m; ++i) {
    lin += alpha[i];
    for (std::size_t j = 0; j < K.m; ++j)
      quad += alpha[i] * alpha[j] * y[i] * y[j] * K.at(i, j);
  }
  return lin - 0.5 * quad;
}

}  // namespace hsk::testfix
