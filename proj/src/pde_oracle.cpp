#include "hsk/pde_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "hsk/errors.hpp"
#include "hsk/linalg.hpp"
#include "hsk/sphere.hpp"

namespace hsk {

double RadialHeatSolution::total_mass() const {
  const double dtheta = M_PI / static_cast<double>(theta.size());
  const double ring_area = surface_area(n - 1);
  double s = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i)
    s += values[i] * ring_area * std::pow(std::sin(theta[i]), n - 2) * dtheta;
  return s;
}

namespace {

// Eigenvector of the symmetric tridiagonal (diag, sub) for an accurately
// known eigenvalue, by two-sided shooting. Components under the sin^{n-2}
// weight span hundreds of orders of magnitude; a normwise-accurate solve
// loses all relative accuracy in the tiny polar entries, while the three-term
// recurrence run from each pole toward the equator follows the growing
// solution and keeps every component accurate in a relative sense.
std::vector<double> shooting_eigenvector(const std::vector<double>& diag,
                                         const std::vector<double>& sub, double lambda,
                                         std::size_t match) {
  const std::size_t N = diag.size();
  std::vector<double> fwd(match + 3), bwd(N - match + 3);

  const auto rescale = [](std::vector<double>& half, std::size_t upto, double f) {
    for (std::size_t i = 0; i <= upto; ++i) half[i] *= f;
  };

  // Forward from the first row: (d0 - l) w0 + s0 w1 = 0.
  fwd[0] = 1.0;
  fwd[1] = (lambda - diag[0]) / sub[0];
  for (std::size_t i = 1; i + 1 < fwd.size(); ++i) {
    fwd[i + 1] = ((lambda - diag[i]) * fwd[i] - sub[i - 1] * fwd[i - 1]) / sub[i];
    if (std::abs(fwd[i + 1]) > 1e250) rescale(fwd, i + 1, 1e-250);
  }
  // Backward from the last row: s_{N-2} w_{N-2} + (d_{N-1} - l) w_{N-1} = 0.
  bwd[0] = 1.0;  // bwd[j] holds w_{N-1-j}
  bwd[1] = (lambda - diag[N - 1]) / sub[N - 2];
  for (std::size_t j = 1; j + 1 < bwd.size(); ++j) {
    const std::size_t i = N - 1 - j;  // w_{i-1} from rows i
    bwd[j + 1] = ((lambda - diag[i]) * bwd[j] - sub[i] * bwd[j - 1]) / sub[i - 1];
    if (std::abs(bwd[j + 1]) > 1e250) rescale(bwd, j + 1, 1e-250);
  }

  // Join where both halves are healthy; avoid nodes by maximizing the
  // smaller magnitude over the overlap. fwd covers [0, match + 2], bwd
  // covers [match - 2, N - 1].
  std::size_t best = match;
  double best_score = -1.0;
  for (std::size_t m = match > 2 ? match - 2 : 0; m <= match + 2 && m < N; ++m) {
    if (m >= fwd.size()) break;
    const std::size_t j = N - 1 - m;
    if (j >= bwd.size()) continue;
    const double score = std::min(std::abs(fwd[m]), std::abs(bwd[j]));
    if (score > best_score) {
      best_score = score;
      best = m;
    }
  }
  require(best_score > 0.0, Errc::InvalidArgument, "eigenvector shooting hit a node");

  const double fm = fwd[best];
  const double bm = bwd[N - 1 - best];
  std::vector<double> w(N);
  for (std::size_t i = 0; i <= best; ++i) w[i] = fwd[i] / fm;
  for (std::size_t i = best; i < N; ++i) w[i] = bwd[N - 1 - i] / bm;

  double norm_sq = 0.0;
  double peak = 0.0;
  for (double x : w) peak = std::max(peak, std::abs(x));
  for (double& x : w) x /= peak;
  for (double x : w) norm_sq += x * x;
  const double inv_norm = 1.0 / std::sqrt(norm_sq);
  for (double& x : w) x *= inv_norm;
  return w;
}

}  // namespace

RadialHeatSolution pde_oracle(int n, double t, int grid_points) {
  require(n >= 3, Errc::InvalidParams, "pde_oracle needs n >= 3");
  require(t > 0.0, Errc::InvalidParams, "pde_oracle needs t > 0");
  require(grid_points >= 500, Errc::GridTooCoarse, "pde_oracle needs grid_points >= 500");

  const std::size_t N = static_cast<std::size_t>(grid_points);
  const double h = M_PI / static_cast<double>(N);
  const double p = static_cast<double>(n - 2);

  // Cell centers keep cot(theta) away from the poles; the face weights
  // sin^{n-2} vanish exactly at theta = 0 and pi, so the flux form conserves
  // the weighted mass with no boundary terms.
  std::vector<double> log_center_w(N), face_w(N + 1);
  for (std::size_t i = 0; i < N; ++i)
    log_center_w[i] = p * std::log(std::sin((static_cast<double>(i) + 0.5) * h));
  face_w[0] = 0.0;
  face_w[N] = 0.0;
  for (std::size_t i = 1; i < N; ++i)
    face_w[i] = std::pow(std::sin(static_cast<double>(i) * h), p);

  // Symmetrized operator M = W^{1/2} L W^{-1/2}:
  //   diag_i = -(w_{i-1/2} + w_{i+1/2}) / (w_i h^2),
  //   sub_i  = w_{i+1/2} / (h^2 sqrt(w_i w_{i+1})).
  std::vector<double> diag(N), sub(N - 1);
  for (std::size_t i = 0; i < N; ++i) {
    diag[i] = -(face_w[i] + face_w[i + 1]) / (std::exp(log_center_w[i]) * h * h);
    if (i + 1 < N)
      sub[i] = face_w[i + 1] * std::exp(-0.5 * (log_center_w[i] + log_center_w[i + 1])) / (h * h);
  }

  // Modes below the e^{t lambda} floor contribute nothing; lambda ~ -l(l+n-2).
  int count = 0;
  {
    const double lambda_floor = 745.0 / t;
    double l = 0.0;
    while (l * (l + n - 2.0) < lambda_floor && count < static_cast<int>(N)) {
      ++count;
      l += 1.0;
    }
    count = std::min(std::max(count + 8, 16), static_cast<int>(N));
  }
  const std::vector<double> lambdas = tridiag_top_eigenvalues(diag, sub, count);

  // Match near the equator, where the weight peaks.
  const std::size_t equator = N / 2;

  RadialHeatSolution sol;
  sol.n = n;
  sol.t = t;
  sol.theta.resize(N);
  sol.values.assign(N, 0.0);
  for (std::size_t i = 0; i < N; ++i) sol.theta[i] = (static_cast<double>(i) + 0.5) * h;

  // u_i(t) = sum_k e^{t l_k} w_k(i) w_k(0) / (A' h sqrt(w_0 w_i)), delta mass 1.
  const double ring_area = surface_area(n - 1);
  for (double lambda : lambdas) {
    const double mode_weight = std::exp(t * lambda);
    if (mode_weight == 0.0) continue;
    const std::vector<double> w = shooting_eigenvector(diag, sub, lambda, equator);
    const double source = w[0] * std::exp(-0.5 * log_center_w[0]) / (ring_area * h);
    for (std::size_t i = 0; i < N; ++i)
      sol.values[i] += mode_weight * source * w[i] * std::exp(-0.5 * log_center_w[i]);
  }
  return sol;
}

RadialHeatSolution pde_oracle_refined(int n, double t, int grid_points) {
  RadialHeatSolution coarse = pde_oracle(n, t, grid_points);
  const RadialHeatSolution fine = pde_oracle(n, t, 3 * grid_points);
  // Coarse center i coincides with fine center 3i + 1.
  for (std::size_t i = 0; i < coarse.values.size(); ++i)
    coarse.values[i] = (9.0 * fine.values[3 * i + 1] - coarse.values[i]) / 8.0;
  return coarse;
}

}  // namespace hsk
