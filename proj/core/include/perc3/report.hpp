#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace perc3 {

/// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double v);

/// Tabular experiment output.
///
/// CSV layout: comment lines `# experiment=<name>`, `# confidence=<method>,<level>`
/// and one `# <key>=<value>` per parameter, then a header row and one row per
/// record. JSON layout: {experiment, parameters, rows: [{column: value}],
/// confidence: {method, level}}. Both forms parse back to an equal report.
struct ExperimentReport {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::string confidence_method = "wilson";
  double confidence_level = 0.95;

  void set_parameter(const std::string& key, std::string value);
  std::optional<std::string> parameter(const std::string& key) const;

  /// Throws std::out_of_range for an unknown column.
  std::size_t column(const std::string& name) const;
  double at(std::size_t row, const std::string& name) const { return rows.at(row).at(column(name)); }
  std::vector<double> column_values(const std::string& name) const;

  void add_row(std::vector<double> row);

  std::string to_csv() const;
  std::string to_json() const;
  /// Throws std::invalid_argument on malformed input.
  static ExperimentReport from_csv(const std::string& text);
  static ExperimentReport from_json(const std::string& text);

  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

}  // namespace perc3
