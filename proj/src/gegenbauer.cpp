#include "hsk/gegenbauer.hpp"

#include <cmath>
#include <string>

#include "hsk/errors.hpp"

namespace hsk {

GegenbauerRatioSeries::GegenbauerRatioSeries(double order, double w) : order_(order), w_(w) {
  require(order > 0.0, Errc::InvalidOrder, "Gegenbauer order must be > 0");
  require(std::abs(w) <= 1.0, Errc::InvalidArgument, "Gegenbauer argument must be in [-1, 1]");
}

void GegenbauerRatioSeries::advance() {
  const std::int64_t l = degree_ + 1;
  require(l <= kGegenbauerDegreeCap, Errc::InvalidArgument, "Gegenbauer degree cap exceeded");
  double next;
  if (l == 1) {
    next = w_;  // C_1(w)/C_1(1) = 2aw / 2a
  } else {
    // l C_l = 2(l+a-1) w C_{l-1} - (l+2a-2) C_{l-2}, divided through by C_l(1)
    // using C_l(1)/C_{l-1}(1) = (l+2a-1)/l.
    next = (2.0 * (l + order_ - 1.0) * w_ * ratio_ - (l - 1.0) * prev_ratio_) /
           (l + 2.0 * order_ - 1.0);
  }
  prev_ratio_ = ratio_;
  ratio_ = next;
  log_value_at_one_ += std::log((l + 2.0 * order_ - 1.0) / l);
  degree_ = l;
}

std::vector<GegenbauerEval> eval_normalized_sequence(double order, double w, std::int64_t l_max) {
  require(l_max >= 0 && l_max <= kGegenbauerDegreeCap, Errc::InvalidArgument,
          "l_max out of range: " + std::to_string(l_max));
  GegenbauerRatioSeries series(order, w);
  std::vector<GegenbauerEval> out;
  out.reserve(static_cast<std::size_t>(l_max) + 1);
  out.push_back(series.current());
  for (std::int64_t l = 1; l <= l_max; ++l) {
    series.advance();
    out.push_back(series.current());
  }
  return out;
}

namespace {

double log_gamma_ratio_b(std::int64_t l, int n) {
  return std::lgamma(static_cast<double>(l) + n - 2.0) - std::lgamma(n - 2.0) -
         std::lgamma(static_cast<double>(l) + 1.0);
}

double log_gamma_ratio_c(std::int64_t l, int n) {
  return std::lgamma(0.5 * (static_cast<double>(l) + n - 2.0)) - std::lgamma(0.5 * (n - 2.0)) -
         std::lgamma(0.5 * static_cast<double>(l) + 1.0);
}

}  // namespace

double log_bound_M(std::int64_t l, int n) {
  require(n >= 3, Errc::DimensionTooSmall, "bound_M needs n >= 3");
  require(l >= 0, Errc::InvalidArgument, "bound_M needs l >= 0");
  const double log_b = log_gamma_ratio_b(l, n);
  const double log_c = log_gamma_ratio_c(l, n);
  // M = c + |b - c|: equals b when b >= c, else 2c - b.
  if (log_b >= log_c) return log_b;
  return log_c + std::log(2.0 - std::exp(log_b - log_c));
}

double bound_M(std::int64_t l, int n) { return std::exp(log_bound_M(l, n)); }

}  // namespace hsk
