#pragma once

#include <cstdint>
#include <vector>

#include "hsk/kernel.hpp"

namespace hsk {

struct SvmProblem {
  const GramMatrix* gram = nullptr;
  std::vector<int> labels;  // +1 / -1
  double C = 1.0;
  double tol = 1e-3;                  // KKT tolerance
  std::int64_t max_passes = 1000000;  // pair updates before giving up
};

struct SvmModel {
  std::vector<double> dual_coeffs;  // alpha_i y_i
  double bias = 0.0;
  std::vector<std::size_t> support_indices;
  double w_norm_sq = 0.0;  // sum_ij alpha_i alpha_j y_i y_j K_ij
  double dual_objective = 0.0;
  bool converged = true;
  KernelSpec spec;
  std::vector<std::string> sample_ids;

  double margin() const;  // M = 1 / sqrt(w_norm_sq)
};

// Soft-margin dual via SMO with maximal-violating-pair selection. The
// returned model satisfies 0 <= alpha_i <= C and |sum alpha_i y_i| <= 1e-8;
// if max_passes is exhausted the best iterate is returned with
// converged = false rather than throwing.
SvmModel train(const SvmProblem& problem);

// sum_i dual_coeffs_i k_row[i] + bias; k_row holds kernel values against the
// full training set.
double predict(const SvmModel& model, const std::vector<double>& k_row);

struct PairwiseModel {
  int positive_class = 0;
  int negative_class = 0;
  std::vector<std::size_t> indices;  // rows of the training Gram used
  SvmModel model;
};

struct MulticlassModel {
  std::vector<int> classes;  // ascending
  std::vector<PairwiseModel> pairs;
};

// One-vs-one with majority vote; ties broken by summed decision magnitudes,
// then by class id.
MulticlassModel train_multiclass(const GramMatrix& gram, const std::vector<int>& labels, double C,
                                 double tol = 1e-3);
int predict_multiclass(const MulticlassModel& model, const std::vector<double>& k_row);

// Minimum enclosing ball of the mapped points in kernel feature space, by
// Frank-Wolfe on the dual with the (1 + eps) duality-gap certificate. Works
// from Gram entries only. Returns the squared radius.
double meb_radius_sq(const GramMatrix& gram, double eps = 1e-3);

struct VcEstimate {
  double R_sq = 0.0;        // squared enclosing-ball radius in feature space
  double M_sq = 0.0;        // squared margin, 1 / w_norm_sq
  double mu_vc_star = 1.0;  // min{n, R^2/M^2} + 1
  double m_tilde = 0.0;     // m / mu_vc_star
  int n = 0;
};

VcEstimate vc_estimate(const SvmModel& model, const GramMatrix& gram, int n);

// F(m~; mu, eta) = sqrt( (1/m~) [ (log 2m~ + 1) - log(eta/4) / mu ] ).
double generalization_bound(double m_tilde, double mu_vc, double eta);

}  // namespace hsk
