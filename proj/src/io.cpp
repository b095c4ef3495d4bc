#include "dyson/io.hpp"

#include <openssl/sha.h>

#include <cmath>
#include <cstdio>
#include <fstream>

namespace dyson::io {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string to_csv(const Table& table) {
  std::string out;
  auto line = [&](const auto& cells, auto&& render) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += ',';
      out += render(cells[i]);
    }
    out += '\n';
  };
  line(table.columns, [](const std::string& c) { return csv_field(c); });
  for (const auto& row : table.rows) {
    line(row, [](const Cell& c) {
      if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
      if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
      return csv_field(std::get<std::string>(c));
    });
  }
  return out;
}

std::string content_hash(std::string_view content) {
  std::string blob = "blob " + std::to_string(content.size());
  blob.push_back('\0');
  blob.append(content);
  unsigned char digest[SHA_DIGEST_LENGTH];
  SHA1(reinterpret_cast<const unsigned char*>(blob.data()), blob.size(), digest);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned char b : digest) {
    hex += kHex[b >> 4];
    hex += kHex[b & 15];
  }
  return hex;
}

namespace {

std::string input_hash(const ExperimentReport& report) {
  const nlohmann::json inputs = {{"name", report.name}, {"parameters", report.parameters}};
  return content_hash(inputs.dump());
}

}  // namespace

nlohmann::json report_json(const ExperimentReport& report) {
  nlohmann::json verdicts = nlohmann::json::array();
  for (const auto& v : report.verdicts) {
    verdicts.push_back({{"check", v.check},
                        {"passed", v.passed},
                        {"margin", std::isfinite(v.margin) ? nlohmann::json(v.margin) : nlohmann::json(nullptr)},
                        {"detail", v.detail}});
  }
  nlohmann::json tables = nlohmann::json::array();
  for (const auto& t : report.tables) {
    tables.push_back({{"name", t.name}, {"file", t.name + ".csv"}, {"columns", t.columns}, {"rows", t.rows.size()}});
  }
  return {{"name", report.name},     {"parameters", report.parameters}, {"summary", report.summary},
          {"verdicts", verdicts},    {"tables", tables},                {"input_hash", input_hash(report)}};
}

std::filesystem::path run_directory(const ExperimentReport& report, const std::filesystem::path& out_dir) {
  return out_dir / (report.name + "-" + input_hash(report).substr(0, 12));
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

std::filesystem::path emit_outputs(const ExperimentReport& report, const std::filesystem::path& out_dir) {
  const auto dir = run_directory(report, out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  for (const auto& t : report.tables) write_file(dir / (t.name + ".csv"), to_csv(t));
  write_file(dir / "report.json", report_json(report).dump(2) + "\n");
  return dir;
}

nlohmann::json to_json(const exact::ExactResult& result, bool include_wall_time) {
  nlohmann::json mag = nlohmann::json::object();
  for (const auto& [site, m] : result.magnetization) mag[std::to_string(site)] = m;
  nlohmann::json j = {{"volume", {{"lo", result.volume.lo()}, {"hi", result.volume.hi()}}},
                      {"boundary", result.boundary},
                      {"model", {{"alpha", result.model.alpha()}, {"beta", result.model.beta()}, {"j1", result.model.j1()}}},
                      {"log_partition", result.log_partition},
                      {"magnetization", mag}};
  if (include_wall_time) j["wall_seconds"] = result.wall_seconds;
  return j;
}

}  // namespace dyson::io
