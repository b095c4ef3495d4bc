#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace dyson {

using Cell = std::variant<std::int64_t, double, std::string>;

/// A named CSV table.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  Table(std::string table_name, std::vector<std::string> column_names)
      : name(std::move(table_name)), columns(std::move(column_names)) {}

  /// Throws std::invalid_argument when the row width differs from the header.
  void add_row(std::vector<Cell> row);
};

struct Verdict {
  std::string check;
  bool passed = false;
  double margin = 0.0;  ///< positive when passing with room to spare
  std::string detail;
};

struct ExperimentReport {
  std::string name;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json summary = nlohmann::json::object();
  std::vector<Table> tables;
  std::vector<Verdict> verdicts;

  [[nodiscard]] const Table& table(const std::string& table_name) const;
  [[nodiscard]] const Verdict& verdict(const std::string& check) const;
};

}  // namespace dyson
