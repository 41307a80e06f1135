#include "hsk/heat_kernel.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <tuple>

#include "hsk/errors.hpp"
#include "hsk/gegenbauer.hpp"
#include "hsk/sphere.hpp"

namespace hsk {

namespace {

void validate(const ExactKernelParams& p) {
  require(p.n >= 3, Errc::InvalidParams, "exact kernel needs n >= 3 (n=2 is not covered)");
  require(p.t > 0.0, Errc::InvalidParams, "exact kernel needs t > 0");
  const TruncationPolicy& tp = p.truncation;
  require(tp.rel_tol > 0.0 && tp.rel_tol < 1.0, Errc::InvalidParams, "rel_tol must be in (0,1)");
  require(tp.consecutive_small >= 1, Errc::InvalidParams, "consecutive_small must be >= 1");
  require(tp.l_min >= 0 && tp.l_min <= tp.l_max, Errc::InvalidParams, "need 0 <= l_min <= l_max");
  require(tp.l_max <= kGegenbauerDegreeCap, Errc::InvalidParams, "l_max exceeds degree cap");
}

// log of the positive magnitude factor of term l (everything except the
// Gegenbauer ratio): -l(l+n-2)t + log((2l+n-2)/(n-2)) + log C_l(1) - log A.
double log_term_magnitude(std::int64_t l, int n, double t, double log_c_at_one, double log_area) {
  const double dl = static_cast<double>(l);
  return -dl * (dl + n - 2.0) * t + std::log((2.0 * dl + n - 2.0) / (n - 2.0)) + log_c_at_one -
         log_area;
}

// Majorant Q_l / ((n-2) A) on |term_l|, in log space.
double log_tail_term(std::int64_t l, int n, double t, double log_area) {
  const double dl = static_cast<double>(l);
  return -dl * (dl + n - 2.0) * t + std::log(2.0 * dl + n - 2.0) + log_bound_M(l, n) -
         std::log(static_cast<double>(n - 2)) - log_area;
}

// Bound on sum_{l > l_star} Q_l / ((n-2) A). Accumulates explicit terms until
// the term ratio certifies a geometric tail, then closes the sum; the ratio
// e^{-(2l+n-1)t} (2l+n)/(2l+n-2) M_{l+1}/M_l is decreasing in l.
double tail_bound_after(std::int64_t l_star, int n, double t, double log_area) {
  double bound = 0.0;
  double prev_log_q = log_tail_term(l_star + 1, n, t, log_area);
  constexpr std::int64_t kMaxExplicit = 20000;
  for (std::int64_t i = 0;; ++i) {
    if (i >= kMaxExplicit) return std::numeric_limits<double>::infinity();
    const std::int64_t l = l_star + 1 + i;
    const double log_q = (i == 0) ? prev_log_q : log_tail_term(l, n, t, log_area);
    const double q = std::exp(log_q);
    if (i > 0) {
      const double ratio = std::exp(log_q - prev_log_q);
      if (ratio < 0.5) return bound + q / (1.0 - ratio);
    }
    bound += q;
    if (q == 0.0) return bound;
    prev_log_q = log_q;
  }
}

struct ScaledSum {
  double shift = 0.0;  // sum = exp(shift) * scaled
  double scaled = 0.0;

  void add(double log_mag, double signed_ratio) {
    if (scaled == 0.0) {
      shift = log_mag;
      scaled = signed_ratio;
      return;
    }
    if (log_mag - shift > 40.0) {  // rebase before exp() overflows
      scaled *= std::exp(shift - log_mag);
      shift = log_mag;
    }
    scaled += std::exp(log_mag - shift) * signed_ratio;
  }
  double log_abs() const { return shift + std::log(std::abs(scaled)); }
  double value() const { return std::exp(shift) * scaled; }
};

struct SeriesCore {
  ScaledSum sum;
  std::int64_t last_degree = 0;
};

SeriesCore sum_series(double w, const ExactKernelParams& p) {
  const int n = p.n;
  const double alpha = 0.5 * (n - 2);
  const double log_area = log_surface_area(n);
  const TruncationPolicy& tp = p.truncation;

  GegenbauerRatioSeries ratios(alpha, clamp_to_unit_interval(w));
  SeriesCore core;
  int small_streak = 0;
  for (std::int64_t l = 0;; ++l) {
    if (l > 0) ratios.advance();
    const GegenbauerEval ev = ratios.current();
    const double log_mag = log_term_magnitude(l, n, p.t, ev.log_value_at_one, log_area);
    core.sum.add(log_mag, ev.ratio);
    core.last_degree = l;

    const double term_abs = std::exp(log_mag - core.sum.shift) * std::abs(ev.ratio);
    if (term_abs < tp.rel_tol * std::abs(core.sum.scaled))
      ++small_streak;
    else
      small_streak = 0;
    if (small_streak >= tp.consecutive_small && l >= tp.l_min) break;
    if (l >= tp.l_max)
      raise(Errc::TruncationExceeded,
            "series did not satisfy the stopping rule by l = " + std::to_string(tp.l_max));
  }
  return core;
}

struct MemoKey {
  int n;
  double t;
  double rel_tol;
  int consecutive_small;
  std::int64_t l_min;
  std::int64_t l_max;

  bool operator<(const MemoKey& o) const {
    return std::tie(n, t, rel_tol, consecutive_small, l_min, l_max) <
           std::tie(o.n, o.t, o.rel_tol, o.consecutive_small, o.l_min, o.l_max);
  }
};

std::shared_mutex g_self_similarity_mutex;
std::map<MemoKey, double> g_log_self_similarity;  // log G(1; t)

double log_g_at_one(const ExactKernelParams& p) {
  const MemoKey key{p.n,
                    p.t,
                    p.truncation.rel_tol,
                    p.truncation.consecutive_small,
                    p.truncation.l_min,
                    p.truncation.l_max};
  {
    std::shared_lock lock(g_self_similarity_mutex);
    auto it = g_log_self_similarity.find(key);
    if (it != g_log_self_similarity.end()) return it->second;
  }
  std::unique_lock lock(g_self_similarity_mutex);
  auto it = g_log_self_similarity.find(key);
  if (it != g_log_self_similarity.end()) return it->second;
  const SeriesCore core = sum_series(1.0, p);
  const double value = core.sum.log_abs();
  g_log_self_similarity.emplace(key, value);
  return value;
}

}  // namespace

SeriesResult g_exact(double w, const ExactKernelParams& params) {
  validate(params);
  require(std::abs(w) <= 1.0 + 1e-12, Errc::InvalidArgument, "g_exact needs |w| <= 1");
  const SeriesCore core = sum_series(w, params);
  SeriesResult out;
  out.terms_used = core.last_degree + 1;
  out.sign = core.sum.scaled > 0.0 ? 1 : (core.sum.scaled < 0.0 ? -1 : 0);
  out.log_abs = core.sum.log_abs();
  out.value = core.sum.value();
  out.tail_bound = tail_bound_after(core.last_degree, params.n, params.t,
                                    log_surface_area(params.n));
  return out;
}

double k_exact(double w, const ExactKernelParams& params) {
  validate(params);
  const SeriesCore numer = sum_series(w, params);
  if (numer.sum.scaled == 0.0) return 0.0;
  const double log_ratio = numer.sum.log_abs() - log_g_at_one(params);
  double k = (numer.sum.scaled > 0.0 ? 1.0 : -1.0) * std::exp(log_ratio);
  // Truncation can leave a residue just outside [0, 1]; Definition of the
  // normalized kernel pins the range.
  if (k < 0.0 && k > -1e-12) k = 0.0;
  if (k > 1.0 && k < 1.0 + 1e-12) k = 1.0;
  return k;
}

double sweet_spot_time(int n, double t_star) {
  require(n >= 3, Errc::DimensionTooSmall, "sweet_spot_time needs n >= 3");
  require(t_star > 0.0, Errc::InvalidArgument, "t_star must be > 0");
  return t_star * std::log(static_cast<double>(n)) / static_cast<double>(n);
}

double log_self_similarity_times_area(int n, double t, const TruncationPolicy& policy) {
  ExactKernelParams p{n, t, policy};
  validate(p);
  return log_g_at_one(p) + log_surface_area(n);
}

SelfSimilarityReport self_similarity_bound_check(int n) {
  const double t = sweet_spot_time(n, 1.0);
  SelfSimilarityReport report;
  report.lhs = std::exp(log_self_similarity_times_area(n, t));
  report.rhs = std::exp(static_cast<double>(n) * std::exp(-static_cast<double>(n) * t));
  return report;
}

}  // namespace hsk
