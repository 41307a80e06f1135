#include "hsk/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "hsk/errors.hpp"

namespace hsk {

double SvmModel::margin() const { return 1.0 / std::sqrt(w_norm_sq); }

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_problem(const SvmProblem& p) {
  require(p.gram != nullptr, Errc::InvalidParams, "train: missing Gram matrix");
  require(p.labels.size() == p.gram->m, Errc::DimensionMismatch,
          "train: labels size does not match Gram");
  require(p.C > 0.0, Errc::InvalidParams, "train: C must be > 0");
  require(p.tol > 0.0, Errc::InvalidParams, "train: tol must be > 0");
  bool pos = false, neg = false;
  for (int y : p.labels) {
    require(y == 1 || y == -1, Errc::InvalidParams, "train: labels must be +1/-1");
    pos |= y == 1;
    neg |= y == -1;
  }
  require(pos && neg, Errc::InvalidParams, "train: both classes must be present");
}

}  // namespace

SvmModel train(const SvmProblem& problem) {
  validate_problem(problem);
  const GramMatrix& K = *problem.gram;
  const std::size_t m = K.m;
  const double C = problem.C;
  const std::vector<int>& y = problem.labels;

  std::vector<double> alpha(m, 0.0);
  std::vector<double> grad(m, -1.0);  // gradient of 1/2 a'Qa - e'a at a = 0

  bool converged = false;
  for (std::int64_t pass = 0; pass < problem.max_passes; ++pass) {
    // Maximal violating pair: i maximizes -y g over I_up, j minimizes over
    // I_low; ties resolved to the lowest index so training is deterministic.
    std::size_t i = m, j = m;
    double up = -kInf, low = kInf;
    for (std::size_t k = 0; k < m; ++k) {
      const double v = -y[k] * grad[k];
      const bool in_up = (y[k] == 1 && alpha[k] < C) || (y[k] == -1 && alpha[k] > 0.0);
      const bool in_low = (y[k] == -1 && alpha[k] < C) || (y[k] == 1 && alpha[k] > 0.0);
      if (in_up && v > up) {
        up = v;
        i = k;
      }
      if (in_low && v < low) {
        low = v;
        j = k;
      }
    }
    if (i == m || j == m || up - low <= problem.tol) {
      converged = true;
      break;
    }

    // Two-variable subproblem along a_i += y_i s, a_j -= y_j s.
    double quad = K.at(i, i) + K.at(j, j) - 2.0 * K.at(i, j);
    if (quad <= 1e-12) quad = 1e-12;  // non-Mercer kernels can make this <= 0
    double step = (up - low) / quad;
    const auto feasible = [C](double a, int yy) {
      return yy == 1 ? std::pair<double, double>{-a, C - a}
                     : std::pair<double, double>{a - C, a};
    };
    const auto [lo_i, hi_i] = feasible(alpha[i], y[i]);
    const auto [lo_j_raw, hi_j_raw] = feasible(alpha[j], y[j]);
    // For j the move is -y_j s, so its bounds flip sign.
    const double lo = std::max(lo_i, -hi_j_raw);
    const double hi = std::min(hi_i, -lo_j_raw);
    step = std::clamp(step, lo, hi);
    if (step == 0.0) break;  // box-blocked; cannot make progress on this pair
    alpha[i] += y[i] * step;
    alpha[j] -= y[j] * step;
    alpha[i] = std::clamp(alpha[i], 0.0, C);
    alpha[j] = std::clamp(alpha[j], 0.0, C);
    for (std::size_t k = 0; k < m; ++k)
      grad[k] += step * y[k] * (K.at(i, k) - K.at(j, k));
  }

  SvmModel model;
  model.spec = K.spec;
  model.sample_ids = K.sample_ids;
  model.converged = converged;
  model.dual_coeffs.resize(m);
  double sum_alpha = 0.0, alpha_grad = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    model.dual_coeffs[k] = alpha[k] * y[k];
    sum_alpha += alpha[k];
    alpha_grad += alpha[k] * grad[k];
    if (alpha[k] > 1e-12 * C) model.support_indices.push_back(k);
  }
  model.w_norm_sq = alpha_grad + sum_alpha;  // a'Qa = a'(grad + e)
  model.dual_objective = sum_alpha - 0.5 * model.w_norm_sq;

  // Bias from free support vectors (y_i - f0_i = -y_i grad_i); otherwise the
  // midpoint of the final violating interval.
  double b_sum = 0.0;
  std::size_t b_count = 0;
  double up = -kInf, low = kInf;
  for (std::size_t k = 0; k < m; ++k) {
    const double v = -y[k] * grad[k];
    if (alpha[k] > 1e-8 * C && alpha[k] < C * (1.0 - 1e-8)) {
      b_sum += v;
      ++b_count;
    }
    const bool in_up = (y[k] == 1 && alpha[k] < C) || (y[k] == -1 && alpha[k] > 0.0);
    const bool in_low = (y[k] == -1 && alpha[k] < C) || (y[k] == 1 && alpha[k] > 0.0);
    if (in_up) up = std::max(up, v);
    if (in_low) low = std::min(low, v);
  }
  model.bias = b_count > 0 ? b_sum / static_cast<double>(b_count) : 0.5 * (up + low);
  return model;
}

double predict(const SvmModel& model, const std::vector<double>& k_row) {
  require(k_row.size() == model.dual_coeffs.size(), Errc::DimensionMismatch,
          "predict: kernel row length " + std::to_string(k_row.size()) + " != training size " +
              std::to_string(model.dual_coeffs.size()));
  double f = model.bias;
  for (std::size_t i = 0; i < k_row.size(); ++i) f += model.dual_coeffs[i] * k_row[i];
  return f;
}

MulticlassModel train_multiclass(const GramMatrix& gram, const std::vector<int>& labels, double C,
                                 double tol) {
  require(labels.size() == gram.m, Errc::DimensionMismatch, "train_multiclass: labels size");
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
  require(by_class.size() >= 2, Errc::EmptyClass, "train_multiclass needs at least two classes");
  for (const auto& [cls, members] : by_class)
    require(!members.empty(), Errc::EmptyClass, "class " + std::to_string(cls) + " is empty");

  MulticlassModel model;
  for (const auto& [cls, members] : by_class) {
    (void)members;
    model.classes.push_back(cls);
  }

  for (std::size_t a = 0; a < model.classes.size(); ++a) {
    for (std::size_t b = a + 1; b < model.classes.size(); ++b) {
      PairwiseModel pw;
      pw.positive_class = model.classes[a];
      pw.negative_class = model.classes[b];
      for (std::size_t idx : by_class[pw.positive_class]) pw.indices.push_back(idx);
      for (std::size_t idx : by_class[pw.negative_class]) pw.indices.push_back(idx);
      std::sort(pw.indices.begin(), pw.indices.end());

      GramMatrix sub;
      sub.m = pw.indices.size();
      sub.spec = gram.spec;
      sub.entries.resize(sub.m * sub.m);
      sub.sample_ids.reserve(sub.m);
      std::vector<int> sub_labels(sub.m);
      for (std::size_t r = 0; r < sub.m; ++r) {
        sub.sample_ids.push_back(gram.sample_ids[pw.indices[r]]);
        sub_labels[r] = labels[pw.indices[r]] == pw.positive_class ? 1 : -1;
        for (std::size_t c = 0; c < sub.m; ++c)
          sub.at(r, c) = gram.at(pw.indices[r], pw.indices[c]);
      }
      SvmProblem sub_problem;
      sub_problem.gram = &sub;
      sub_problem.labels = std::move(sub_labels);
      sub_problem.C = C;
      sub_problem.tol = tol;
      pw.model = train(sub_problem);
      model.pairs.push_back(std::move(pw));
    }
  }
  return model;
}

int predict_multiclass(const MulticlassModel& model, const std::vector<double>& k_row) {
  std::map<int, int> votes;
  std::map<int, double> magnitude;
  for (int cls : model.classes) {
    votes[cls] = 0;
    magnitude[cls] = 0.0;
  }
  for (const PairwiseModel& pw : model.pairs) {
    std::vector<double> sub_row(pw.indices.size());
    for (std::size_t r = 0; r < pw.indices.size(); ++r) sub_row[r] = k_row[pw.indices[r]];
    const double decision = predict(pw.model, sub_row);
    const int winner = decision >= 0.0 ? pw.positive_class : pw.negative_class;
    votes[winner] += 1;
    magnitude[winner] += std::abs(decision);
  }
  int best = model.classes.front();
  for (int cls : model.classes) {
    if (votes[cls] > votes[best] ||
        (votes[cls] == votes[best] && magnitude[cls] > magnitude[best]))
      best = cls;
  }
  return best;
}

double meb_radius_sq(const GramMatrix& gram, double eps) {
  const std::size_t m = gram.m;
  require(m >= 1, Errc::InvalidParams, "meb_radius_sq: empty Gram");
  require(eps > 0.0, Errc::InvalidArgument, "meb_radius_sq: eps must be > 0");

  // Dual: maximize g(l) = l'diag(K) - l'Kl over the simplex; g* = R*^2.
  std::vector<double> lambda(m, 0.0), v(m, 0.0);  // v = K lambda
  lambda[0] = 1.0;
  for (std::size_t i = 0; i < m; ++i) v[i] = gram.at(i, 0);
  double d_dot = gram.at(0, 0);  // l'diag(K)
  double s = gram.at(0, 0);      // l'Kl

  double max_dist_sq = 0.0;
  for (std::int64_t iter = 0; iter < 2000000; ++iter) {
    std::size_t p = 0;
    max_dist_sq = -kInf;
    for (std::size_t i = 0; i < m; ++i) {
      const double dist_sq = gram.at(i, i) - 2.0 * v[i] + s;
      if (dist_sq > max_dist_sq) {
        max_dist_sq = dist_sq;
        p = i;
      }
    }
    const double dual = d_dot - s;
    if (max_dist_sq <= (1.0 + eps) * (1.0 + eps) * dual || max_dist_sq <= 1e-15) break;
    double gamma = (max_dist_sq - dual) / (2.0 * max_dist_sq);
    gamma = std::clamp(gamma, 0.0, 1.0);
    if (gamma == 0.0) break;
    const double v_p_old = v[p];
    for (std::size_t i = 0; i < m; ++i) {
      lambda[i] *= (1.0 - gamma);
      v[i] = (1.0 - gamma) * v[i] + gamma * gram.at(i, p);
    }
    lambda[p] += gamma;
    d_dot = (1.0 - gamma) * d_dot + gamma * gram.at(p, p);
    s = (1.0 - gamma) * (1.0 - gamma) * s + 2.0 * gamma * (1.0 - gamma) * v_p_old +
        gamma * gamma * gram.at(p, p);
    // Recompute s from scratch every so often to stop incremental drift.
    if (iter % 4096 == 4095) {
      s = 0.0;
      for (std::size_t i = 0; i < m; ++i) s += lambda[i] * v[i];
    }
  }
  return std::max(max_dist_sq, 0.0);
}

VcEstimate vc_estimate(const SvmModel& model, const GramMatrix& gram, int n) {
  require(n >= 1, Errc::InvalidArgument, "vc_estimate: n must be >= 1");
  require(model.dual_coeffs.size() == gram.m, Errc::DimensionMismatch,
          "vc_estimate: model/Gram size mismatch");
  VcEstimate est;
  est.n = n;
  est.R_sq = meb_radius_sq(gram);
  est.M_sq = 1.0 / model.w_norm_sq;
  const double ratio = est.R_sq / est.M_sq;
  est.mu_vc_star = std::min(static_cast<double>(n), ratio) + 1.0;
  est.m_tilde = static_cast<double>(gram.m) / est.mu_vc_star;
  return est;
}

double generalization_bound(double m_tilde, double mu_vc, double eta) {
  require(m_tilde > 0.0, Errc::InvalidArgument, "generalization_bound: m_tilde must be > 0");
  require(mu_vc >= 1.0, Errc::InvalidArgument, "generalization_bound: mu_vc must be >= 1");
  require(eta > 0.0 && eta < 1.0, Errc::InvalidArgument,
          "generalization_bound: eta must be in (0, 1)");
  return std::sqrt((std::log(2.0 * m_tilde) + 1.0 - std::log(eta / 4.0) / mu_vc) / m_tilde);
}

}  // namespace hsk
