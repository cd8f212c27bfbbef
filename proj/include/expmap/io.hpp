#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "expmap/density.hpp"
#include "expmap/families.hpp"
#include "expmap/param_derivative.hpp"
#include "expmap/symbolic.hpp"
#include "expmap/typicality.hpp"

namespace expmap {

inline constexpr const char* kToolVersion = "0.1.0";

/// Lossless decimal formatting (17 significant digits).
std::string format_sig(double x);

std::uint64_t fnv1a(std::string_view s);

/// Field names are documented in schemas/family.schema.json.
/// Unknown keys are rejected with ConfigError.
nlohmann::json family_spec_to_json(const FamilySpec& spec);
FamilySpec family_spec_from_json(const nlohmann::json& j);
FamilySpec load_family_spec(const std::string& path);

/// {"version", "seed", "config", "config_hash"} block embedded in every report.
nlohmann::json report_header(const nlohmann::json& config, std::uint64_t seed);

/// CSV with leading "# key=value" comment lines carrying the header block.
void write_csv(std::ostream& os, const nlohmann::json& header,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

nlohmann::json to_json(const Interval& v);
nlohmann::json to_json(const OrbitRecord& v);
nlohmann::json to_json(const ConditionOneReport& v);
nlohmann::json to_json(const TransversalityReport& v);
nlohmann::json to_json(const ConditionThreeReport& v);
nlohmann::json to_json(const VariationReport& v);
nlohmann::json to_json(const SweepRow& v);
nlohmann::json to_json(const SweepResult& v);

}  // namespace expmap
