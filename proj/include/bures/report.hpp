#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bures/probability.hpp"

namespace bures::report {

inline constexpr const char* kVersion = "1.0.0";

/// Results of a batch of scenarios, ordered by id.
struct ReportDocument {
  std::string version = kVersion;
  std::vector<probability::ScenarioResult> results;
  bool pass = false;

  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

/// True iff every target row of every result passes.
[[nodiscard]] bool overall_pass(const std::vector<probability::ScenarioResult>& results);

/// {"family", "Z", "S", "p_sep" (number or null), "improper", "err",
///  "converged", "values": [{"name", "value"}],
///  "targets": [{"name", "paper", "computed", "tol", "pass"}]}.
/// Non-finite numbers are written as null and read back as NaN.
[[nodiscard]] nlohmann::ordered_json to_json(const probability::ScenarioResult& r);
/// Throws UsageError on a malformed document.
[[nodiscard]] probability::ScenarioResult result_from_json(const nlohmann::ordered_json& j);

[[nodiscard]] nlohmann::ordered_json to_json(const ReportDocument& doc);
[[nodiscard]] ReportDocument report_from_json(const nlohmann::ordered_json& j);

/// Indented JSON text with a trailing newline.
[[nodiscard]] std::string emit(const nlohmann::ordered_json& j);
/// Throws UsageError on invalid JSON text.
[[nodiscard]] nlohmann::ordered_json parse(const std::string& text);

/// Header "name,computed,paper,tol,abs_diff,pass", then Z, S, p_sep, err and
/// the named values with empty comparison fields, then one row per target.
[[nodiscard]] std::string to_csv(const probability::ScenarioResult& r);

/// Human-readable summary of one result.
[[nodiscard]] std::string to_text(const probability::ScenarioResult& r);

/// Shortest decimal form that reads back to the same double; "nan", "inf"
/// and "-inf" for non-finite values.
[[nodiscard]] std::string format_number(double x);

}  // namespace bures::report
