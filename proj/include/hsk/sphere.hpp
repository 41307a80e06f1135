#pragma once

#include <cstddef>
#include <vector>

namespace hsk {

// Raw feature vector in the ambient space R^n.
using FeatureVector = std::vector<double>;

// Point on S^{n-1}; Euclidean norm equals 1 within 1e-12.
struct UnitVector {
  std::vector<double> values;

  std::size_t dim() const noexcept { return values.size(); }
  double operator[](std::size_t i) const noexcept { return values[i]; }
};

enum class SphereMapKind {
  SqrtL1,        // x_i -> sqrt(x_i / sum_j x_j); requires nonnegative input
  L2Projective,  // x -> x / |x|; any nonzero input
  None,          // input must already be unit norm
};

constexpr double kUnitNormTol = 1e-12;

UnitVector sphere_map(const FeatureVector& x, SphereMapKind kind);

// x.y / (|x| |y|), clamped to [-1, 1].
double cosine_similarity(const FeatureVector& x, const FeatureVector& y);

// Great-arc length arccos(x.y) in [0, pi].
double geodesic_distance(const UnitVector& x, const UnitVector& y);

// Surface area of S^{n-1} = 2 pi^{n/2} / Gamma(n/2); log-gamma based so large
// n does not overflow the intermediate Gamma.
double surface_area(int n);
double log_surface_area(int n);

double dot(const std::vector<double>& x, const std::vector<double>& y);
double norm(const std::vector<double>& x);
double clamp_to_unit_interval(double w);  // clamp to [-1, 1]

}  // namespace hsk
