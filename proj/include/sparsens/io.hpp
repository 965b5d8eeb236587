#pragma once

#include "sparsens/construction.hpp"
#include "sparsens/evolution.hpp"
#include "sparsens/generators.hpp"
#include "sparsens/verification.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace sparsens {

using Json = nlohmann::ordered_json;

inline constexpr const char* field_schema = "sparsens.field/1";
inline constexpr const char* state_schema = "sparsens.state/1";
inline constexpr const char* report_schema = "sparsens.report/1";
inline constexpr const char* family_schema = "sparsens.family/1";
inline constexpr const char* manifest_schema = "sparsens.manifest/1";
inline constexpr const char* tool_version = "0.4.0";

/// {"sign","m","e"} plus "mx" (decimal mantissa) whenever m alone is lossy.
Json to_json(const WideReal& x);
WideReal wide_from_json(const Json& j);
Json to_json(const Frequency& k);
Frequency frequency_from_json(const Json& j);
/// {"num","den"}: the angle pi * num / den.
Json to_json(const Phase& p);
Phase phase_from_json(const Json& j);
Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const SolenoidalField& f);
SolenoidalField field_from_json(const Json& j);

Json to_json(const ConstructionConfig& c);
ConstructionConfig config_from_json(const Json& j);
Json to_json(const ConstructionState& s);
/// Throws FormatError on missing keys, bad types or inconsistent stage/ledger layout.
ConstructionState state_from_json(const Json& j);

Json to_json(const VerificationReport& r);
Json to_json(const FamilyReport& r);
Json to_json(const SteadyComparison& c);
Json to_json(const TruncationInfo& t);

struct JsonMismatch {
    std::string path;
    std::string detail;
};

/// Walks two documents in parallel; WideReal triples and numbers must agree to
/// rel_tol, everything else exactly.
std::vector<JsonMismatch> compare_json(const Json& expected, const Json& actual, double rel_tol);

/// Trajectory CSV: "# " + header on the first line, then
/// t,energy,enstrophy,hm1,distance,sup_bound.
void write_trajectory_csv(std::ostream& os, const Trajectory& tr, const Json& header);

Json read_json_file(const std::string& path);
/// Two-space indent and a trailing newline.
void write_json_file(const std::string& path, const Json& j);

}  // namespace sparsens
