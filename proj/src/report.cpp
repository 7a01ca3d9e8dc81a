#include "squarelab/report.hpp"

#include <stdexcept>

namespace squarelab {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

// RFC 4180 field quoting: wrap in double quotes when the text contains a
// comma, a quote or a line break, doubling any embedded quotes.
std::string csv_escape(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += '"';
  return out;
}

std::string cell_to_csv(const Json& cell) {
  if (cell.is_string()) return csv_escape(cell.get<std::string>());
  return csv_escape(cell.dump());  // numbers, booleans, null: JSON literals
}

}  // namespace

Json report_to_json(const ExperimentReport& report, bool stable_output) {
  Json j;
  j["experiment"] = report.experiment;
  Json params = Json::object();
  for (const auto& [key, value] : report.params) params[key] = value;
  j["params"] = std::move(params);
  Json columns = Json::array();
  for (const ReportColumn& column : report.columns) {
    columns.push_back(Json{{"name", column.name}, {"unit", column.unit}});
  }
  j["columns"] = std::move(columns);
  Json rows = Json::array();
  for (const std::vector<Json>& row : report.rows) {
    Json cells = Json::array();
    for (const Json& cell : row) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  j["results"] = std::move(rows);
  Json provenance;
  provenance["seed"] = report.provenance.seed;
  provenance["bounds"] = report.provenance.bounds;
  if (!stable_output) {
    provenance["wall_seconds"] = report.provenance.wall_seconds;
  }
  provenance["version"] = report.provenance.version;
  j["provenance"] = std::move(provenance);
  return j;
}

ExperimentReport report_from_json(const Json& j) {
  require(j.is_object(), "report must be a JSON object");
  for (const char* key : {"experiment", "params", "columns", "results",
                          "provenance"}) {
    require(j.contains(key), std::string("report is missing '") + key + "'");
  }
  ExperimentReport report;
  report.experiment = j.at("experiment").get<std::string>();

  const Json& params = j.at("params");
  require(params.is_object(), "params must be an object");
  for (auto it = params.begin(); it != params.end(); ++it) {
    require(it.value().is_string(), "param values must be strings");
    report.params.emplace_back(it.key(), it.value().get<std::string>());
  }

  const Json& columns = j.at("columns");
  require(columns.is_array(), "columns must be an array");
  for (const Json& column : columns) {
    require(column.is_object() && column.contains("name") &&
                column.contains("unit"),
            "each column needs a name and a unit");
    report.columns.push_back(ReportColumn{
        column.at("name").get<std::string>(),
        column.at("unit").get<std::string>()});
  }

  const Json& rows = j.at("results");
  require(rows.is_array(), "results must be an array");
  for (const Json& row : rows) {
    require(row.is_array(), "each result row must be an array");
    require(row.size() == report.columns.size(),
            "result rows must match the column count");
    report.rows.emplace_back(row.begin(), row.end());
  }

  const Json& provenance = j.at("provenance");
  require(provenance.is_object() && provenance.contains("seed") &&
              provenance.contains("bounds") && provenance.contains("version"),
          "provenance needs seed, bounds and version");
  report.provenance.seed = provenance.at("seed").get<std::uint64_t>();
  report.provenance.bounds = provenance.at("bounds").get<std::string>();
  report.provenance.wall_seconds =
      provenance.contains("wall_seconds")
          ? provenance.at("wall_seconds").get<double>()
          : 0.0;
  report.provenance.version = provenance.at("version").get<std::string>();
  return report;
}

std::string render_json(const ExperimentReport& report, bool stable_output) {
  return report_to_json(report, stable_output).dump(2) + "\n";
}

std::string emit_series(const ExperimentReport& report,
                        const std::vector<std::string>& columns) {
  std::vector<std::size_t> indices;
  indices.reserve(columns.size());
  for (const std::string& wanted : columns) {
    std::size_t found = report.columns.size();
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
      if (report.columns[i].name == wanted) {
        found = i;
        break;
      }
    }
    require(found < report.columns.size(), "unknown column: " + wanted);
    indices.push_back(found);
  }

  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(columns[i]);
  }
  out += '\n';
  for (const std::vector<Json>& row : report.rows) {
    require(row.size() == report.columns.size(),
            "ragged result row in report");
    for (std::size_t i = 0; i < indices.size(); ++i) {
      if (i) out += ',';
      out += cell_to_csv(row[indices[i]]);
    }
    out += '\n';
  }
  return out;
}

std::string render_csv(const ExperimentReport& report) {
  std::vector<std::string> names;
  names.reserve(report.columns.size());
  for (const ReportColumn& column : report.columns) {
    names.push_back(column.name);
  }
  return emit_series(report, names);
}

}  // namespace squarelab
