#include "dyson/report.hpp"

#include <stdexcept>

namespace dyson {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::invalid_argument("table " + name + ": row has " + std::to_string(row.size()) + " cells, header has " +
                                std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

const Table& ExperimentReport::table(const std::string& table_name) const {
  for (const auto& t : tables) {
    if (t.name == table_name) return t;
  }
  throw std::out_of_range("report " + name + " has no table " + table_name);
}

const Verdict& ExperimentReport::verdict(const std::string& check) const {
  for (const auto& v : verdicts) {
    if (v.check == check) return v;
  }
  throw std::out_of_range("report " + name + " has no verdict " + check);
}

}  // namespace dyson
