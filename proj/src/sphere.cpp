#include "hsk/sphere.hpp"

#include <cmath>
#include <string>

#include "hsk/errors.hpp"

namespace hsk {

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size(), Errc::DimensionMismatch,
          "dot: " + std::to_string(x.size()) + " vs " + std::to_string(y.size()));
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm(const std::vector<double>& x) { return std::sqrt(dot(x, x)); }

double clamp_to_unit_interval(double w) { return w < -1.0 ? -1.0 : (w > 1.0 ? 1.0 : w); }

UnitVector sphere_map(const FeatureVector& x, SphereMapKind kind) {
  require(x.size() >= 2, Errc::DimensionTooSmall, "sphere_map needs n >= 2");
  UnitVector out;
  out.values.resize(x.size());
  switch (kind) {
    case SphereMapKind::SqrtL1: {
      double total = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        require(x[i] >= 0.0, Errc::NegativeEntry,
                "sqrt-L1 map requires nonnegative entries (index " + std::to_string(i) + ")");
        total += x[i];
      }
      require(total > 0.0, Errc::ZeroVector, "sqrt-L1 map requires a nonzero sum");
      for (std::size_t i = 0; i < x.size(); ++i) out.values[i] = std::sqrt(x[i] / total);
      break;
    }
    case SphereMapKind::L2Projective: {
      const double r = norm(x);
      require(r > 0.0, Errc::ZeroVector, "L2 projective map requires a nonzero vector");
      for (std::size_t i = 0; i < x.size(); ++i) out.values[i] = x[i] / r;
      break;
    }
    case SphereMapKind::None: {
      const double r = norm(x);
      require(std::abs(r - 1.0) <= kUnitNormTol, Errc::NotUnit,
              "map=none requires unit-norm input, |x| = " + std::to_string(r));
      out.values = x;
      break;
    }
  }
  return out;
}

double cosine_similarity(const FeatureVector& x, const FeatureVector& y) {
  const double nx = norm(x), ny = norm(y);
  require(nx > 0.0 && ny > 0.0, Errc::ZeroVector, "cosine_similarity requires nonzero vectors");
  return clamp_to_unit_interval(dot(x, y) / (nx * ny));
}

double geodesic_distance(const UnitVector& x, const UnitVector& y) {
  return std::acos(clamp_to_unit_interval(dot(x.values, y.values)));
}

double log_surface_area(int n) {
  require(n >= 2, Errc::DimensionTooSmall, "surface_area needs n >= 2");
  return std::log(2.0) + 0.5 * n * std::log(M_PI) - std::lgamma(0.5 * n);
}

double surface_area(int n) { return std::exp(log_surface_area(n)); }

}  // namespace hsk
