#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace squarelab {

using Json = nlohmann::ordered_json;

inline constexpr const char* library_version = "1.0.0";

// One output column: a name plus the unit its cells are measured in (use
// "1" for dimensionless quantities and "" for free-form text columns).
struct ReportColumn {
  std::string name;
  std::string unit;

  friend bool operator==(const ReportColumn&, const ReportColumn&) = default;
};

struct Provenance {
  std::uint64_t seed = 0;
  std::string bounds;  // human-readable summary of the bounding parameters
  double wall_seconds = 0.0;
  std::string version = library_version;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

// A deterministic experiment result: named parameters plus a rectangular
// table of rows aligned with the declared columns.  Cells are JSON scalars;
// exact big integers are carried as decimal strings, floating point values
// as JSON numbers (which round-trip exactly through the serializer).
struct ExperimentReport {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> params;  // insertion order
  std::vector<ReportColumn> columns;
  std::vector<std::vector<Json>> rows;
  Provenance provenance;

  void add_param(const std::string& key, const std::string& value) {
    params.emplace_back(key, value);
  }
  void add_row(std::vector<Json> cells) { rows.push_back(std::move(cells)); }

  friend bool operator==(const ExperimentReport&,
                         const ExperimentReport&) = default;
};

// JSON object with stable key order.  stable_output == true omits the
// wall-clock field so byte-identical reruns compare equal.
Json report_to_json(const ExperimentReport& report, bool stable_output);

// Inverse of report_to_json; a missing wall-clock field reads as zero.
// Throws std::invalid_argument on malformed input (missing keys, ragged
// rows, wrong shapes).
ExperimentReport report_from_json(const Json& j);

// Rendered JSON text, indented, newline-terminated.
std::string render_json(const ExperimentReport& report, bool stable_output);

// CSV projection of the named columns, in the order given: header row then
// one line per result row.  "." decimal separator (JSON number rendering),
// fields quoted per RFC 4180 when they contain commas, quotes or newlines,
// every line newline-terminated.  Throws std::invalid_argument when a
// requested column does not exist.
std::string emit_series(const ExperimentReport& report,
                        const std::vector<std::string>& columns);

// CSV of the full table (all columns in declared order).
std::string render_csv(const ExperimentReport& report);

}  // namespace squarelab
