#pragma once

#include <cstdint>
#include <vector>

namespace hsk {

// One degree of the normalized Gegenbauer evaluation: C_l^a(w) expressed as
// ratio * exp(log_value_at_one), with ratio = C_l^a(w) / C_l^a(1) in [-1, 1].
struct GegenbauerEval {
  std::int64_t degree = 0;
  double order = 0.0;
  double ratio = 0.0;
  double log_value_at_one = 0.0;
};

// Hard cap on requested degrees; guards non-convergent caller loops.
constexpr std::int64_t kGegenbauerDegreeCap = 1'000'000;

// Incremental evaluator of the ratio C_l^a(w) / C_l^a(1) by the three-term
// recurrence, rescaled each degree by the exact rational factor
// C_l(1)/C_{l-1}(1) = (l + 2a - 1) / l, so raw values never overflow.
// log C_l^a(1) is accumulated alongside (C_l^a(1) = G(l+2a)/(G(2a) G(l+1))).
class GegenbauerRatioSeries {
 public:
  GegenbauerRatioSeries(double order, double w);

  GegenbauerEval current() const noexcept {
    return {degree_, order_, ratio_, log_value_at_one_};
  }
  void advance();  // to degree + 1

 private:
  double order_;
  double w_;
  std::int64_t degree_ = 0;
  double ratio_ = 1.0;       // r_l
  double prev_ratio_ = 0.0;  // r_{l-1}
  double log_value_at_one_ = 0.0;
};

// Ratios and log-values for l = 0..l_max.
std::vector<GegenbauerEval> eval_normalized_sequence(double order, double w, std::int64_t l_max);

// Bound M_l = c + |b - c| on |C_l^{(n-2)/2}| over [-1, 1], with
// b = G(l+n-2)/(G(n-2) G(l+1)) and c = G((l+n-2)/2)/(G((n-2)/2) G(l/2+1)).
double bound_M(std::int64_t l, int n);
double log_bound_M(std::int64_t l, int n);

}  // namespace hsk
