#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "hsk/errors.hpp"
#include "hsk/kernel.hpp"
#include "hsk/svm.hpp"

using namespace hsk;

namespace {

GramMatrix linear_gram(const std::vector<FeatureVector>& rows) {
  KernelSpec lin;
  return gram_matrix(lin, rows);
}

}  // namespace

TEST_SUITE("svm") {

TEST_CASE("two-point analytic fixture") {
  const GramMatrix gram = linear_gram({{1, 0}, {-1, 0}});
  SvmProblem prob;
  prob.gram = &gram;
  prob.labels = {1, -1};
  prob.C = 10.0;
  const SvmModel model = train(prob);
  CHECK(model.converged);
  CHECK(model.dual_coeffs[0] == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(model.dual_coeffs[1] == doctest::Approx(-0.5).epsilon(1e-8));
  CHECK(model.bias == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(model.w_norm_sq == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(model.margin() == doctest::Approx(1.0).epsilon(1e-8));

  // Test point (2, 0): K row against training = (2, -2).
  CHECK(predict(model, {2.0, -2.0}) == doctest::Approx(2.0).epsilon(1e-8));
  // Equidistant test point: zero kernel row, zero decision.
  CHECK(predict(model, {0.0, 0.0}) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(predict(model, {1.0}), Error);
}

TEST_CASE("XOR with Gaussian RBF trains to 100%") {
  KernelSpec rbf;
  rbf.kind = KernelKind::GaussianRbf;
  rbf.gamma = 1.0;
  const std::vector<FeatureVector> rows{{0, 0}, {1, 1}, {0, 1}, {1, 0}};
  const std::vector<int> labels{1, 1, -1, -1};
  const GramMatrix gram = gram_matrix(rbf, rows);
  SvmProblem prob;
  prob.gram = &gram;
  prob.labels = labels;
  prob.C = 10.0;
  const SvmModel model = train(prob);
  CHECK(model.converged);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<double> k_row(rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j) k_row[j] = gram.at(i, j);
    CHECK(predict(model, k_row) * labels[i] > 0.0);
  }
}

TEST_CASE("SMO matches a projected-gradient reference on random problems") {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<int> usize(6, 40);
  std::uniform_real_distribution<double> uc(0.5, 20.0);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t m = static_cast<std::size_t>(usize(rng));
    std::vector<FeatureVector> rows(m);
    std::vector<int> labels(m);
    bool pos = false, neg = false;
    for (std::size_t i = 0; i < m; ++i) {
      rows[i] = {gauss(rng), gauss(rng), gauss(rng)};
      labels[i] = (i % 2 == 0) ? 1 : -1;
      rows[i][0] += labels[i] * 0.5;
      (labels[i] == 1 ? pos : neg) = true;
    }
    REQUIRE(pos);
    REQUIRE(neg);
    const double C = uc(rng);
    const GramMatrix gram = linear_gram(rows);
    SvmProblem prob;
    prob.gram = &gram;
    prob.labels = labels;
    prob.C = C;
    prob.tol = 1e-8;
    const SvmModel model = train(prob);
    const auto ref_alpha = testfix::reference_dual_solve(gram, labels, C, 60000);
    const double ref_obj = testfix::dual_objective(gram, labels, ref_alpha);
    CHECK(model.dual_objective ==
          doctest::Approx(ref_obj).epsilon(1e-6));
    CHECK(model.dual_objective >= ref_obj - 1e-6 * std::abs(ref_obj));  // SMO is the tighter one
  }
}

TEST_CASE("dual feasibility always holds") {
  std::mt19937_64 rng(5150);
  std::normal_distribution<double> gauss;
  for (int rep = 0; rep < 5; ++rep) {
    const std::size_t m = 30;
    std::vector<FeatureVector> rows(m);
    std::vector<int> labels(m);
    for (std::size_t i = 0; i < m; ++i) {
      rows[i] = {gauss(rng), gauss(rng)};
      labels[i] = gauss(rng) > 0 ? 1 : -1;
    }
    labels[0] = 1;
    labels[1] = -1;
    const GramMatrix gram = linear_gram(rows);
    SvmProblem prob;
    prob.gram = &gram;
    prob.labels = labels;
    prob.C = 2.5;
    const SvmModel model = train(prob);
    double balance = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double alpha = model.dual_coeffs[i] * labels[i];
      CHECK(alpha >= -1e-12);
      CHECK(alpha <= prob.C + 1e-12);
      balance += model.dual_coeffs[i];
    }
    CHECK(std::abs(balance) <= 1e-8);
  }
}

TEST_CASE("contradictory labels are flagged, not crashed") {
  const GramMatrix gram = linear_gram({{1, 0}, {1, 0}, {-1, 0}, {-1, 0}});
  SvmProblem prob;
  prob.gram = &gram;
  prob.labels = {1, -1, 1, -1};  // identical points, flipped labels
  prob.C = 5.0;
  SvmModel model;
  CHECK_NOTHROW(model = train(prob));
  // Contradictory pairs end up at the box bounds.
  for (std::size_t i = 0; i < 4; ++i) {
    const double alpha = std::abs(model.dual_coeffs[i]);
    CHECK(alpha == doctest::Approx(prob.C).epsilon(1e-6));
  }
}

TEST_CASE("free support vectors sit on the margin") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> gauss;
  const std::size_t m = 40;
  std::vector<FeatureVector> rows(m);
  std::vector<int> labels(m);
  for (std::size_t i = 0; i < m; ++i) {
    labels[i] = (i % 2 == 0) ? 1 : -1;
    rows[i] = {gauss(rng) + 2.0 * labels[i], gauss(rng)};
  }
  const GramMatrix gram = linear_gram(rows);
  SvmProblem prob;
  prob.gram = &gram;
  prob.labels = labels;
  prob.C = 1.0;
  prob.tol = 1e-6;
  const SvmModel model = train(prob);
  std::vector<double> k_row(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double alpha = model.dual_coeffs[i] * labels[i];
    if (alpha < 1e-6 || alpha > prob.C - 1e-6) continue;
    for (std::size_t j = 0; j < m; ++j) k_row[j] = gram.at(i, j);
    CHECK(std::abs(predict(model, k_row)) == doctest::Approx(1.0).epsilon(1e-4));
  }
}

TEST_CASE("scaling the Gram with C -> C/lambda leaves decisions' signs unchanged") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> gauss;
  const std::size_t m = 24;
  std::vector<FeatureVector> rows(m);
  std::vector<int> labels(m);
  for (std::size_t i = 0; i < m; ++i) {
    labels[i] = (i % 2 == 0) ? 1 : -1;
    rows[i] = {gauss(rng) + 0.7 * labels[i], gauss(rng), gauss(rng)};
  }
  GramMatrix gram = linear_gram(rows);
  const double lambda = 7.3;
  GramMatrix scaled = gram;
  for (auto& v : scaled.entries) v *= lambda;

  SvmProblem p1{&gram, labels, 4.0, 1e-6, 1000000};
  SvmProblem p2{&scaled, labels, 4.0 / lambda, 1e-6, 1000000};
  const SvmModel m1 = train(p1);
  const SvmModel m2 = train(p2);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> row1(m), row2(m);
    for (std::size_t j = 0; j < m; ++j) {
      row1[j] = gram.at(i, j);
      row2[j] = scaled.at(i, j);
    }
    const double d1 = predict(m1, row1), d2 = predict(m2, row2);
    if (std::abs(d1) > 1e-6) CHECK(d1 * d2 > 0.0);
  }
}

TEST_CASE("one-vs-one with two classes reduces to the binary model") {
  const GramMatrix gram = linear_gram({{2, 0}, {1.5, 1}, {-2, 0}, {-1, -1}});
  const std::vector<int> labels{0, 0, 1, 1};
  const MulticlassModel mc = train_multiclass(gram, labels, 5.0);
  REQUIRE(mc.pairs.size() == 1);
  for (std::size_t i = 0; i < 4; ++i) {
    std::vector<double> row(4);
    for (std::size_t j = 0; j < 4; ++j) row[j] = gram.at(i, j);
    CHECK(predict_multiclass(mc, row) == labels[i]);
  }
}

TEST_CASE("four separated direction clusters classify at 99%+ with cosine") {
  const LabeledDataset data = testfix::radial_noise_fixture(10, 4, 20, 0.15, 42);
  KernelSpec cos;
  cos.kind = KernelKind::Cosine;
  cos.map = SphereMapKind::L2Projective;
  const GramMatrix gram = gram_matrix(cos, data.rows, data.sample_ids);
  std::vector<int> labels;
  for (const auto& l : data.labels) labels.push_back(l.back() - '0');
  const MulticlassModel mc = train_multiclass(gram, labels, 10.0);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < gram.m; ++i) {
    std::vector<double> row(gram.m);
    for (std::size_t j = 0; j < gram.m; ++j) row[j] = gram.at(i, j);
    if (predict_multiclass(mc, row) == labels[i]) ++correct;
  }
  CHECK(static_cast<double>(correct) / static_cast<double>(gram.m) >= 0.99);
}

TEST_CASE("multiclass requires two nonempty classes") {
  const GramMatrix gram = linear_gram({{1, 0}, {2, 0}});
  CHECK_THROWS_AS(train_multiclass(gram, {3, 3}, 1.0), Error);
}

TEST_CASE("minimum enclosing ball on known configurations") {
  // Two points at distance 1: R^2 = 1/4.
  {
    const GramMatrix gram = linear_gram({{0, 0}, {1, 0}});
    CHECK(meb_radius_sq(gram) == doctest::Approx(0.25).epsilon(3e-3));
  }
  // Unit vectors at 120 degrees: circumradius 1.
  {
    std::vector<FeatureVector> rows;
    for (int k = 0; k < 3; ++k)
      rows.push_back({std::cos(2 * M_PI * k / 3.0), std::sin(2 * M_PI * k / 3.0)});
    const GramMatrix gram = linear_gram(rows);
    CHECK(meb_radius_sq(gram) == doctest::Approx(1.0).epsilon(3e-3));
  }
  // Coincident points collapse to radius 0.
  {
    const GramMatrix gram = linear_gram({{1, 1}, {1, 1}, {1, 1}});
    CHECK(meb_radius_sq(gram) <= 1e-12);
  }
}

TEST_CASE("vc_estimate basics") {
  // Cosine kernel: mapped points are unit vectors, R <= 1 always.
  const LabeledDataset data = testfix::radial_noise_fixture(8, 2, 25, 0.4, 7);
  KernelSpec cos;
  cos.kind = KernelKind::Cosine;
  cos.map = SphereMapKind::L2Projective;
  const GramMatrix gram = gram_matrix(cos, data.rows, data.sample_ids);
  std::vector<int> labels;
  for (const auto& l : data.labels) labels.push_back(l.back() - '0' ? 1 : -1);
  SvmProblem prob;
  prob.gram = &gram;
  prob.labels = labels;
  prob.C = 1.0;
  const SvmModel model = train(prob);
  const VcEstimate est = vc_estimate(model, gram, static_cast<int>(data.n()));
  CHECK(est.R_sq <= 1.0 + 1e-9);
  CHECK(est.mu_vc_star >= 1.0);
  CHECK(est.m_tilde > 0.0);

  // Coincident points: R^2 = 0, mu* = 1.
  const GramMatrix flat = linear_gram({{1, 0}, {1, 0}, {1, 0}, {1, 0}});
  SvmProblem flat_prob;
  flat_prob.gram = &flat;
  flat_prob.labels = {1, -1, 1, -1};
  flat_prob.C = 1.0;
  const SvmModel flat_model = train(flat_prob);
  const VcEstimate flat_est = vc_estimate(flat_model, flat, 2);
  CHECK(flat_est.R_sq <= 1e-12);
  CHECK(flat_est.mu_vc_star == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("linear kernel on wild radial data hits the dimension cap mu* = n+1") {
  const LabeledDataset data = testfix::radial_noise_fixture(6, 2, 30, 0.4, 11);
  const GramMatrix gram = linear_gram(data.rows);
  std::vector<int> labels;
  for (const auto& l : data.labels) labels.push_back(l.back() - '0' ? 1 : -1);
  SvmProblem prob;
  prob.gram = &gram;
  prob.labels = labels;
  prob.C = 1.0;
  const SvmModel model = train(prob);
  const VcEstimate est = vc_estimate(model, gram, 6);
  CHECK(est.R_sq / est.M_sq > 6.0);  // radii up to 100 force R^2/M^2 >> n
  CHECK(est.mu_vc_star == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("generalization bound shape") {
  CHECK_THROWS_AS(generalization_bound(0.0, 10.0, 0.05), Error);
  CHECK_THROWS_AS(generalization_bound(1.0, 0.5, 0.05), Error);
  CHECK_THROWS_AS(generalization_bound(1.0, 10.0, 1.5), Error);

  // Critical point: F'(m~) flips sign at ~ (eta/4)^{1/mu}/2 ~ 1/2 for mu > 100.
  for (double mu : {150.0, 400.0}) {
    for (double eta : {1e-3, 0.1}) {
      const double crt = 0.5 * std::pow(eta / 4.0, 1.0 / mu);
      const double h = 1e-6;
      const auto dF = [&](double m) {
        return (generalization_bound(m + h, mu, eta) - generalization_bound(m - h, mu, eta)) /
               (2.0 * h);
      };
      CHECK(crt == doctest::Approx(0.5).epsilon(0.05));
      CHECK(dF(crt * 0.9) > 0.0);  // below the critical point the bound still grows
      CHECK(dF(crt * 1.1) < 0.0);
    }
  }

  // Decreasing for m~ > 1 and vanishing as m~ -> infinity.
  double prev = generalization_bound(1.0, 200.0, 0.05);
  for (double m : {2.0, 4.0, 16.0, 256.0}) {
    const double cur = generalization_bound(m, 200.0, 0.05);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK(generalization_bound(1e12, 200.0, 0.05) < 1e-5);
}

}  // TEST_SUITE
