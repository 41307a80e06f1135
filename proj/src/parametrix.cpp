#include "hsk/parametrix.hpp"

#include <algorithm>
#include <cmath>

#include "hsk/errors.hpp"
#include "hsk/quadrature.hpp"

namespace hsk {

double k_prx(double theta, double t) {
  require(theta >= 0.0 && theta <= M_PI, Errc::InvalidArgument, "k_prx needs theta in [0, pi]");
  require(t > 0.0, Errc::InvalidArgument, "k_prx needs t > 0");
  return std::exp(-theta * theta / (4.0 * t));
}

namespace {

void check_radius(double r, int d, bool allow_zero) {
  require(d >= 1, Errc::InvalidArgument, "sphere dimension d must be >= 1");
  require(r >= 0.0 && (allow_zero || r > 0.0), Errc::OutOfDomain, "radius must be positive");
  require(r < M_PI, Errc::OutOfDomain, "parametrix coefficients diverge at r = pi");
}

}  // namespace

double u0(double r, int d) {
  check_radius(r, d, true);
  if (d == 1) return 1.0;  // exponent (d-1)/2 = 0
  if (r == 0.0) return 1.0;
  return std::pow(std::sin(r) / r, -0.5 * (d - 1));
}

double u1(double r, int d) {
  check_radius(r, d, true);
  if (d == 1) return 0.0;
  if (r < 1e-4) return u0(r, d) * d * (d - 1.0) / 6.0;
  const double cot = std::cos(r) / std::sin(r);
  const double bracket = 3.0 - d + (d - 1.0) * r * r + (d - 3.0) * r * cot;
  return u0(r, d) * (d - 1.0) / (4.0 * r * r) * bracket;
}

double u2(double r, int d) {
  check_radius(r, d, false);
  if (d == 1) return 0.0;
  const double sin_r = std::sin(r);
  const double inv_tan = std::cos(r) / sin_r;
  const double d3 = d - 3.0, d5 = d - 5.0, d7 = d - 7.0;
  const double bracket = d3 * d3 * d3 + d3 * d5 * d7 / (r * r * r * r) -
                         d3 * d3 * d5 * inv_tan / (r * r * r) +
                         2.0 * (d - 1.0) * (d - 1.0) * d3 * inv_tan / r +
                         (d + 1.0) * d3 * d5 / (r * r * sin_r);
  return u0(r, d) * (d - 1.0) / 32.0 * bracket;
}

bool unphysical_regime(int n, double t) { return (n - 2.0) * t > 3.0; }

double radial_laplacian_fd(const std::function<double(double)>& f, double r, int d) {
  // Five-point central stencils on the even extension f(|x|); O(h^4).
  const double h = 1e-3;
  const auto fe = [&f](double x) { return f(std::abs(x)); };
  const double fm2 = fe(r - 2 * h), fm1 = fe(r - h), f0 = fe(r), fp1 = fe(r + h),
               fp2 = fe(r + 2 * h);
  const double d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
  if (r >= 0.5) {
    const double d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    return d2 + (d - 1.0) * (std::cos(r) / std::sin(r)) * d1;
  }
  // Near the origin cot(r) f'(r) is 0 * inf; regroup as (r cot r) * (f'(r)/r),
  // where f'(r)/r stays O(h^2)-accurate for even f without the 1/r blowup.
  if (r == 0.0) return d2 * d;  // f'(r)/r -> f''(0), r cot r -> 1
  const double ratio = (fp1 - fm1) / (2.0 * h * r);
  const double r_cot_r = r * std::cos(r) / std::sin(r);
  return d2 + (d - 1.0) * r_cot_r * ratio;
}

std::vector<double> u_recursion_oracle(const std::function<double(double)>& u_k, int k,
                                       const std::vector<double>& r_grid, int d) {
  require(k >= 0, Errc::InvalidArgument, "recursion order k must be >= 0");
  require(d >= 1, Errc::InvalidArgument, "sphere dimension d must be >= 1");
  require(!r_grid.empty(), Errc::InvalidArgument, "empty radius grid");
  require(std::is_sorted(r_grid.begin(), r_grid.end()), Errc::InvalidArgument,
          "radius grid must be ascending");
  require(r_grid.front() > 0.0 && r_grid.back() < M_PI, Errc::OutOfDomain,
          "radii must lie in (0, pi)");

  const auto integrand = [&](double s) {
    return std::pow(s, k) * radial_laplacian_fd(u_k, s, d) / u0(s, d);
  };
  std::vector<double> out(r_grid.size());
  double acc = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    const double r = r_grid[i];
    acc += adaptive_simpson(integrand, prev, r, 1e-11);
    prev = r;
    out[i] = std::pow(r, -(k + 1.0)) * u0(r, d) * acc;
  }
  return out;
}

std::vector<double> u_recursion_oracle(int k, const std::vector<double>& r_grid, int d) {
  require(k == 0 || k == 1, Errc::InvalidArgument,
          "closed forms are available for k in {0, 1}; pass u_k explicitly otherwise");
  if (k == 0)
    return u_recursion_oracle([d](double r) { return u0(r, d); }, 0, r_grid, d);
  return u_recursion_oracle([d](double r) { return u1(r, d); }, 1, r_grid, d);
}

}  // namespace hsk
