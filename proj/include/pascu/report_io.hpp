#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "pascu/admissibility.hpp"
#include "pascu/beta_solver.hpp"
#include "pascu/transform.hpp"

namespace pascu {

using Json = nlohmann::json;

// JSON encodings. Non-finite numbers are written as null and read back as NaN.
void to_json(Json& j, const BetaResult& r);
void from_json(const Json& j, BetaResult& r);
void to_json(Json& j, const Witness& w);
void from_json(const Json& j, Witness& w);
void to_json(Json& j, const ConditionResult& r);
void from_json(const Json& j, ConditionResult& r);
void to_json(Json& j, const AdmissibilityReport& r);
void from_json(const Json& j, AdmissibilityReport& r);
void to_json(Json& j, const MembershipReport& r);
void from_json(const Json& j, MembershipReport& r);
void to_json(Json& j, const NPiResult& r);
void from_json(const Json& j, NPiResult& r);

Verdict verdict_from_name(const std::string& name);
BetaMethod method_from_name(const std::string& name);

/// RFC 4180 field quoting.
std::string csv_field(const std::string& s);
std::string csv_row(const std::vector<std::string>& fields);

/// Shortest round-trippable decimal form; "nan"/"inf" for non-finite values.
std::string format_number(double v);

}  // namespace pascu
