#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "qrap/asymptotics.hpp"
#include "qrap/counting.hpp"
#include "qrap/fixtures.hpp"
#include "qrap/weil.hpp"

namespace qrap::io {

using nlohmann::json;

// Family spec documents: {"kind": "ap"|"shift"|"normalized"} plus exactly the
// fields that kind uses. Unknown or missing fields are rejected.
json family_to_json(const FamilySpec& f);
FamilySpec family_from_json(const json& j);
FamilySpec load_family(const std::string& path);

void write_text(const std::string& path, const std::string& text);
void write_json(const std::string& path, const json& j);

json structure_to_json(const StructureReport& r);
json signature_to_json(const SignatureReport& r);
json fixture_expected_to_json(const Fixture& f);

std::string count_csv(std::span<const CountRecord> records);
std::string weil_csv(std::span<const CharSumResult> results);
std::string verify_csv(const VerifyReport& report);
json verify_summary_json(const Target& t, const VerifyReport& report);

// Fixed-width float rendering used by every CSV writer: 6 significant digits.
std::string format_sig6(double v);

}  // namespace qrap::io
