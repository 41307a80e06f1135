#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hsk/heat_kernel.hpp"
#include "hsk/sphere.hpp"

namespace hsk {

enum class KernelKind { Linear, GaussianRbf, Cosine, Parametrix, ExactHeat };

const char* kernel_kind_name(KernelKind k) noexcept;
KernelKind kernel_kind_from_name(const std::string& name);  // lin|rbf|cos|prx|ext
bool is_hyperspherical(KernelKind k) noexcept;
bool is_mercer(KernelKind k) noexcept;

// Closed description of one kernel. Hyperspherical kinds (cos, prx, ext)
// require a sphere map; Euclidean kinds (lin, rbf) forbid one (map = None).
struct KernelSpec {
  KernelKind kind = KernelKind::Linear;
  SphereMapKind map = SphereMapKind::None;
  double gamma = 1.0;  // GaussianRbf
  double t = 1.0;      // Parametrix / ExactHeat
  int n = 0;           // ExactHeat ambient dimension (0 = infer from data)
  TruncationPolicy truncation{};
};

void validate_spec(const KernelSpec& spec);

double kernel_eval(const KernelSpec& spec, const FeatureVector& x, const FeatureVector& y);

struct GramMatrix {
  std::vector<double> entries;  // row-major m x m, symmetric
  std::size_t m = 0;
  KernelSpec spec;
  std::vector<std::string> sample_ids;

  double at(std::size_t i, std::size_t j) const { return entries[i * m + j]; }
  double& at(std::size_t i, std::size_t j) { return entries[i * m + j]; }
};

// Pairwise Gram over the upper triangle (mirrored), pair blocks computed in
// parallel with schedule-independent values. For hyperspherical kinds the
// sphere maps are applied once per sample; ExactHeat additionally memoizes
// evaluations on a 1e-12 quantization of w, and its self-similarity
// normalizer is shared per (n, t) by the k_exact memo.
GramMatrix gram_matrix(const KernelSpec& spec, const std::vector<FeatureVector>& data,
                       std::vector<std::string> sample_ids = {});

struct PsdReport {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  bool pass = false;
};

// Dense symmetric eigensolve; MatrixTooLarge above m = 2000.
// pass iff lambda_min >= -1e-8 * lambda_max.
PsdReport psd_check(const GramMatrix& K);

}  // namespace hsk
