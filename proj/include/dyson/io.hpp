#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "dyson/exact.hpp"
#include "dyson/report.hpp"

namespace dyson::io {

/// File-system failure with the offending path in the message.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// printf "%.17g"; round-trips every finite double.
[[nodiscard]] std::string format_double(double value);
/// RFC 4180 field quoting.
[[nodiscard]] std::string csv_field(std::string_view text);
/// Header plus rows, LF line endings.
[[nodiscard]] std::string to_csv(const Table& table);

/// Lowercase hex SHA-1 of "blob <size>\0<content>", as git hashes file contents.
[[nodiscard]] std::string content_hash(std::string_view content);

/// report.json contents: name, parameters, summary, verdicts, table names and
/// the input hash. Keys are sorted.
[[nodiscard]] nlohmann::json report_json(const ExperimentReport& report);

/// <out_dir>/<name>-<first 12 hex of the parameter hash>.
[[nodiscard]] std::filesystem::path run_directory(const ExperimentReport& report, const std::filesystem::path& out_dir);

/// Writes one CSV per table and report.json into run_directory(); returns it.
std::filesystem::path emit_outputs(const ExperimentReport& report, const std::filesystem::path& out_dir);

void write_file(const std::filesystem::path& path, std::string_view content);

[[nodiscard]] nlohmann::json to_json(const exact::ExactResult& result, bool include_wall_time = true);

}  // namespace dyson::io
