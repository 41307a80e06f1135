#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "hsk/kernel.hpp"
#include "hsk/svm.hpp"

namespace hsk {

constexpr int kSchemaVersion = 1;

// 17 significant digits, enough to round-trip a double exactly.
std::string format_double(double v);

const char* map_kind_name(SphereMapKind kind) noexcept;  // sqrt-l1 | l2 | none
SphereMapKind map_kind_from_name(const std::string& name);

nlohmann::json spec_to_json(const KernelSpec& spec);
KernelSpec spec_from_json(const nlohmann::json& j);

// Row-major m x m matrix, one row per line, %.17g cells.
void write_gram_csv(const GramMatrix& gram, std::ostream& os);

nlohmann::json model_to_json(const SvmModel& model);
SvmModel model_from_json(const nlohmann::json& j);
void save_model(const SvmModel& model, const std::string& path);
SvmModel load_model(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace hsk
