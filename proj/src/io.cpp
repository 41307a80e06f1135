#include "hsk/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "hsk/errors.hpp"

namespace hsk {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* map_kind_name(SphereMapKind kind) noexcept {
  switch (kind) {
    case SphereMapKind::SqrtL1: return "sqrt-l1";
    case SphereMapKind::L2Projective: return "l2";
    case SphereMapKind::None: return "none";
  }
  return "?";
}

SphereMapKind map_kind_from_name(const std::string& name) {
  if (name == "sqrt-l1") return SphereMapKind::SqrtL1;
  if (name == "l2") return SphereMapKind::L2Projective;
  if (name == "none") return SphereMapKind::None;
  raise(Errc::InvalidArgument, "unknown map '" + name + "' (expected sqrt-l1|l2|none)");
}

nlohmann::json spec_to_json(const KernelSpec& spec) {
  nlohmann::json j;
  j["kind"] = kernel_kind_name(spec.kind);
  j["map"] = map_kind_name(spec.map);
  switch (spec.kind) {
    case KernelKind::GaussianRbf: j["gamma"] = spec.gamma; break;
    case KernelKind::Parametrix: j["t"] = spec.t; break;
    case KernelKind::ExactHeat:
      j["t"] = spec.t;
      j["n"] = spec.n;
      j["truncation"] = {{"rel_tol", spec.truncation.rel_tol},
                         {"consecutive_small", spec.truncation.consecutive_small},
                         {"l_min", spec.truncation.l_min},
                         {"l_max", spec.truncation.l_max}};
      break;
    default: break;
  }
  return j;
}

KernelSpec spec_from_json(const nlohmann::json& j) {
  KernelSpec spec;
  spec.kind = kernel_kind_from_name(j.at("kind").get<std::string>());
  spec.map = map_kind_from_name(j.value("map", "none"));
  spec.gamma = j.value("gamma", 1.0);
  spec.t = j.value("t", 1.0);
  spec.n = j.value("n", 0);
  if (j.contains("truncation")) {
    const auto& tr = j.at("truncation");
    spec.truncation.rel_tol = tr.value("rel_tol", spec.truncation.rel_tol);
    spec.truncation.consecutive_small =
        tr.value("consecutive_small", spec.truncation.consecutive_small);
    spec.truncation.l_min = tr.value("l_min", spec.truncation.l_min);
    spec.truncation.l_max = tr.value("l_max", spec.truncation.l_max);
  }
  validate_spec(spec);
  return spec;
}

void write_gram_csv(const GramMatrix& gram, std::ostream& os) {
  for (std::size_t i = 0; i < gram.m; ++i) {
    for (std::size_t j = 0; j < gram.m; ++j) {
      if (j) os << ',';
      os << format_double(gram.at(i, j));
    }
    os << '\n';
  }
}

nlohmann::json model_to_json(const SvmModel& model) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "svm-model";
  j["dual_coeffs"] = model.dual_coeffs;
  j["bias"] = model.bias;
  j["support_indices"] = model.support_indices;
  j["w_norm_sq"] = model.w_norm_sq;
  j["converged"] = model.converged;
  j["spec"] = spec_to_json(model.spec);
  j["sample_ids"] = model.sample_ids;
  return j;
}

SvmModel model_from_json(const nlohmann::json& j) {
  require(j.value("schema_version", 0) == kSchemaVersion, Errc::ParseError,
          "unsupported model schema_version");
  SvmModel model;
  model.dual_coeffs = j.at("dual_coeffs").get<std::vector<double>>();
  model.bias = j.at("bias").get<double>();
  model.support_indices = j.at("support_indices").get<std::vector<std::size_t>>();
  model.w_norm_sq = j.at("w_norm_sq").get<double>();
  model.converged = j.value("converged", true);
  model.spec = spec_from_json(j.at("spec"));
  model.sample_ids = j.at("sample_ids").get<std::vector<std::string>>();
  return model;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  require(os.good(), Errc::InvalidArgument, "cannot open '" + path + "' for writing");
  os << content;
  require(os.good(), Errc::InvalidArgument, "write failed on '" + path + "'");
}

void save_model(const SvmModel& model, const std::string& path) {
  write_text_file(path, model_to_json(model).dump(2) + "\n");
}

SvmModel load_model(const std::string& path) {
  std::ifstream is(path);
  require(is.good(), Errc::ParseError, "cannot open '" + path + "'");
  nlohmann::json j;
  is >> j;
  return model_from_json(j);
}

}  // namespace hsk
