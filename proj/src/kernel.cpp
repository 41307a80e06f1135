#include "hsk/kernel.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <string>
#include <unordered_map>

#include "hsk/errors.hpp"
#include "hsk/linalg.hpp"
#include "hsk/parallel.hpp"
#include "hsk/parametrix.hpp"

namespace hsk {

const char* kernel_kind_name(KernelKind k) noexcept {
  switch (k) {
    case KernelKind::Linear: return "lin";
    case KernelKind::GaussianRbf: return "rbf";
    case KernelKind::Cosine: return "cos";
    case KernelKind::Parametrix: return "prx";
    case KernelKind::ExactHeat: return "ext";
  }
  return "?";
}

KernelKind kernel_kind_from_name(const std::string& name) {
  if (name == "lin") return KernelKind::Linear;
  if (name == "rbf") return KernelKind::GaussianRbf;
  if (name == "cos") return KernelKind::Cosine;
  if (name == "prx") return KernelKind::Parametrix;
  if (name == "ext") return KernelKind::ExactHeat;
  raise(Errc::InvalidArgument, "unknown kernel '" + name + "' (expected lin|rbf|cos|prx|ext)");
}

bool is_hyperspherical(KernelKind k) noexcept {
  return k == KernelKind::Cosine || k == KernelKind::Parametrix || k == KernelKind::ExactHeat;
}

bool is_mercer(KernelKind k) noexcept { return k != KernelKind::Parametrix; }

void validate_spec(const KernelSpec& spec) {
  if (is_hyperspherical(spec.kind)) {
    require(spec.map != SphereMapKind::None, Errc::InvalidParams,
            std::string(kernel_kind_name(spec.kind)) + " kernel requires a sphere map");
  } else {
    require(spec.map == SphereMapKind::None, Errc::InvalidParams,
            std::string(kernel_kind_name(spec.kind)) + " kernel forbids a sphere map");
  }
  if (spec.kind == KernelKind::GaussianRbf)
    require(spec.gamma > 0.0, Errc::InvalidParams, "rbf gamma must be > 0");
  if (spec.kind == KernelKind::Parametrix || spec.kind == KernelKind::ExactHeat)
    require(spec.t > 0.0, Errc::InvalidParams, "diffusion time t must be > 0");
  if (spec.kind == KernelKind::ExactHeat && spec.n != 0)
    require(spec.n >= 3, Errc::InvalidParams, "ext kernel needs n >= 3");
}

namespace {

double squared_distance(const FeatureVector& x, const FeatureVector& y) {
  require(x.size() == y.size(), Errc::DimensionMismatch, "kernel_eval dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

ExactKernelParams exact_params(const KernelSpec& spec, std::size_t dim) {
  int n = spec.n != 0 ? spec.n : static_cast<int>(dim);
  return ExactKernelParams{n, spec.t, spec.truncation};
}

// Hyperspherical kernels depend on the pair only through w = x^ . y^.
double eval_on_w(const KernelSpec& spec, double w, std::size_t dim) {
  switch (spec.kind) {
    case KernelKind::Cosine: return w;
    case KernelKind::Parametrix: return k_prx(std::acos(clamp_to_unit_interval(w)), spec.t);
    case KernelKind::ExactHeat: return k_exact(w, exact_params(spec, dim));
    default: break;
  }
  raise(Errc::InvalidParams, "eval_on_w requires a hyperspherical kernel");
}

// One Gram build's memo for ExactHeat values, keyed by w quantized to a
// 1e-12 grid. The kernel is evaluated on the quantized w itself, so the
// stored value is a pure function of the key and results cannot depend on
// which thread inserts first.
class QuantizedMemo {
 public:
  static std::int64_t key_of(double w) {
    return static_cast<std::int64_t>(std::llround(clamp_to_unit_interval(w) * 1e12));
  }
  static double unquantize(std::int64_t key) { return static_cast<double>(key) * 1e-12; }

  template <typename F>
  double get_or_compute(double w, F&& compute) {
    const std::int64_t key = key_of(w);
    Shard& shard = shards_[static_cast<std::size_t>(key) % kShards];
    {
      std::lock_guard<std::mutex> lock(shard.mutex);
      auto it = shard.map.find(key);
      if (it != shard.map.end()) return it->second;
    }
    const double value = compute(unquantize(key));
    std::lock_guard<std::mutex> lock(shard.mutex);
    return shard.map.emplace(key, value).first->second;
  }

 private:
  static constexpr std::size_t kShards = 64;
  struct Shard {
    std::mutex mutex;
    std::unordered_map<std::int64_t, double> map;
  };
  Shard shards_[kShards];
};

}  // namespace

double kernel_eval(const KernelSpec& spec, const FeatureVector& x, const FeatureVector& y) {
  validate_spec(spec);
  switch (spec.kind) {
    case KernelKind::Linear: return dot(x, y);
    case KernelKind::GaussianRbf: return std::exp(-spec.gamma * squared_distance(x, y));
    default: break;
  }
  const UnitVector xs = sphere_map(x, spec.map);
  const UnitVector ys = sphere_map(y, spec.map);
  return eval_on_w(spec, clamp_to_unit_interval(dot(xs.values, ys.values)), x.size());
}

GramMatrix gram_matrix(const KernelSpec& spec, const std::vector<FeatureVector>& data,
                       std::vector<std::string> sample_ids) {
  validate_spec(spec);
  const std::size_t m = data.size();
  require(m >= 2, Errc::InvalidParams, "gram_matrix needs m >= 2 samples");
  const std::size_t n = data[0].size();
  for (const auto& row : data)
    require(row.size() == n, Errc::DimensionMismatch, "ragged feature matrix");
  if (spec.kind == KernelKind::ExactHeat && spec.n != 0)
    require(static_cast<std::size_t>(spec.n) == n, Errc::InvalidParams,
            "spec.n does not match the data dimension");

  GramMatrix gram;
  gram.m = m;
  gram.spec = spec;
  if (sample_ids.empty()) {
    gram.sample_ids.reserve(m);
    for (std::size_t i = 0; i < m; ++i) gram.sample_ids.push_back("s" + std::to_string(i));
  } else {
    require(sample_ids.size() == m, Errc::InvalidParams, "sample_ids size mismatch");
    gram.sample_ids = std::move(sample_ids);
  }
  gram.entries.assign(m * m, 0.0);

  const bool spherical = is_hyperspherical(spec.kind);
  std::vector<UnitVector> mapped;
  if (spherical) {
    mapped.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      try {
        mapped[i] = sphere_map(data[i], spec.map);
      } catch (const Error& e) {
        raise(e.code(), "sample " + gram.sample_ids[i] + ": " + e.what());
      }
    }
  }

  QuantizedMemo memo;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::atomic<std::size_t> error_row{m};

  parallel_for(0, m, [&](std::size_t i) {
    try {
      for (std::size_t j = i; j < m; ++j) {
        double value;
        if (i == j) {
          // Normalized kinds are exactly 1 on the diagonal by construction.
          switch (spec.kind) {
            case KernelKind::Linear: value = dot(data[i], data[i]); break;
            case KernelKind::GaussianRbf: value = 1.0; break;
            default: value = 1.0; break;
          }
        } else if (spec.kind == KernelKind::ExactHeat) {
          const double w = clamp_to_unit_interval(dot(mapped[i].values, mapped[j].values));
          value = memo.get_or_compute(
              w, [&](double wq) { return eval_on_w(spec, wq, n); });
        } else if (spherical) {
          value = eval_on_w(spec, clamp_to_unit_interval(dot(mapped[i].values, mapped[j].values)),
                            n);
        } else if (spec.kind == KernelKind::Linear) {
          value = dot(data[i], data[j]);
        } else {
          value = std::exp(-spec.gamma * squared_distance(data[i], data[j]));
        }
        gram.at(i, j) = value;
        gram.at(j, i) = value;
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error || i < error_row.load()) {
        first_error = std::current_exception();
        error_row.store(i);
      }
    }
  });
  if (first_error) {
    try {
      std::rethrow_exception(first_error);
    } catch (const Error& e) {
      raise(e.code(), "gram_matrix failed at row " + std::to_string(error_row.load()) + " (" +
                          gram.sample_ids[error_row.load()] + "): " + e.what());
    }
  }
  return gram;
}

PsdReport psd_check(const GramMatrix& K) {
  require(K.m <= 2000, Errc::MatrixTooLarge, "psd_check is dense; m must be <= 2000");
  require(K.m >= 1, Errc::InvalidParams, "empty Gram");
  const std::vector<double> eig = sym_eigenvalues(K.entries, static_cast<int>(K.m));
  PsdReport report;
  report.lambda_min = eig.front();
  report.lambda_max = eig.back();
  report.pass = report.lambda_min >= -1e-8 * report.lambda_max;
  return report;
}

}  // namespace hsk
