#pragma once

#include <cstdint>

namespace hsk {

// Stopping rule for the spectral series: stop once `consecutive_small`
// successive terms fall below rel_tol * |partial sum| and l >= l_min.
// The Gegenbauer ratio vanishes at isolated w, so a single small term is not
// evidence of convergence.
struct TruncationPolicy {
  double rel_tol = 1e-12;
  int consecutive_small = 3;
  std::int64_t l_min = 10;
  std::int64_t l_max = 100000;
};

struct ExactKernelParams {
  int n = 3;       // ambient dimension, >= 3
  double t = 1.0;  // diffusion time, > 0
  TruncationPolicy truncation{};
};

struct SeriesResult {
  double value = 0.0;    // may overflow to inf for very large n; see log_abs
  double log_abs = 0.0;  // log |value|, finite whenever the sum is nonzero
  int sign = 0;
  std::int64_t terms_used = 0;
  double tail_bound = 0.0;  // majorant on the truncation error via Q_l
};

// Heat kernel on S^{n-1} evaluated at w = cos(theta):
//   G(w; t) = sum_l exp(-l(l+n-2)t) (2l+n-2)/(n-2) C_l^{n/2-1}(w) / A_{S^{n-1}}
// Each term is assembled in log space with the sign carried by the normalized
// Gegenbauer ratio, so large n neither overflows nor underflows.
SeriesResult g_exact(double w, const ExactKernelParams& params);

// G(w;t) / G(1;t), clamped to [0, 1]; G(1;t) is memoized per (n, t, policy).
double k_exact(double w, const ExactKernelParams& params);

// t = t_star * log(n) / n, the time scale at which the self-similarity stays
// finite yet above the uniform background.
double sweet_spot_time(int n, double t_star);

// log(A_{S^{n-1}} * G(1; t)); safe for dimensions where G(1;t) itself
// overflows a double.
double log_self_similarity_times_area(int n, double t,
                                      const TruncationPolicy& policy = TruncationPolicy{});

struct SelfSimilarityReport {
  double lhs = 0.0;  // A * G(1; t = log n / n)
  double rhs = 0.0;  // exp(n e^{-nt}) = e at t = log n / n
};

SelfSimilarityReport self_similarity_bound_check(int n);

}  // namespace hsk
