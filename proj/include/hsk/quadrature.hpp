#pragma once

#include <functional>
#include <vector>

namespace hsk {

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule on [a, b]; nodes by Newton iteration on P_n.
QuadRule gauss_legendre(int n, double a, double b);

template <typename F>
double integrate(const QuadRule& rule, F&& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(rule.nodes[i]);
  return s;
}

// Adaptive Simpson on [a, b] with absolute tolerance; throws QuadratureFailure
// if the recursion depth budget is exhausted before the tolerance is met.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double abs_tol,
                        int max_depth = 48);

}  // namespace hsk
