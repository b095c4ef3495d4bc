#include "dyson/plot_schema.hpp"

#include <algorithm>
#include <stdexcept>

namespace dyson::schema {

const std::vector<FigureKind>& figure_kinds() {
  static const std::vector<FigureKind> kinds = {FigureKind::InterfaceHist, FigureKind::WettingProfile,
                                                FigureKind::FieldProfile, FigureKind::GapCurve,
                                                FigureKind::BoundCheck};
  return kinds;
}

std::string kind_name(FigureKind kind) {
  switch (kind) {
    case FigureKind::InterfaceHist: return "interface_hist";
    case FigureKind::WettingProfile: return "wetting_profile";
    case FigureKind::FieldProfile: return "field_profile";
    case FigureKind::GapCurve: return "gap_curve";
    case FigureKind::BoundCheck: return "bound_check";
  }
  throw std::logic_error("unhandled figure kind");
}

FigureKind kind_from_name(const std::string& name) {
  for (auto k : figure_kinds()) {
    if (kind_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown figure kind '" + name + "'");
}

const std::vector<std::string>& required_columns(FigureKind kind) {
  static const std::vector<std::string> hist = {"theta", "probability", "count"};
  static const std::vector<std::string> wet = {"site", "conditioned", "unconditioned", "frozen", "wet_window"};
  static const std::vector<std::string> field = {"x", "h_x"};
  static const std::vector<std::string> gap = {"n", "plus_past", "minus_past", "gap"};
  static const std::vector<std::string> bound = {"N", "remainder", "bound"};
  switch (kind) {
    case FigureKind::InterfaceHist: return hist;
    case FigureKind::WettingProfile: return wet;
    case FigureKind::FieldProfile: return field;
    case FigureKind::GapCurve: return gap;
    case FigureKind::BoundCheck: return bound;
  }
  throw std::logic_error("unhandled figure kind");
}

std::vector<std::string> missing_columns(FigureKind kind, const std::vector<std::string>& header) {
  std::vector<std::string> missing;
  for (const auto& c : required_columns(kind)) {
    if (std::find(header.begin(), header.end(), c) == header.end()) missing.push_back(c);
  }
  return missing;
}

std::vector<std::string> csv_header(const std::string& csv_text) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < csv_text.size(); ++i) {
    const char ch = csv_text[i];
    if (quoted) {
      if (ch == '"' && i + 1 < csv_text.size() && csv_text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field += ch;
      }
      continue;
    }
    if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else if (ch == '\n' || ch == '\r') {
      break;
    } else {
      field += ch;
    }
  }
  out.push_back(std::move(field));
  return out;
}

std::vector<std::string> report_problems(const nlohmann::json& report) {
  std::vector<std::string> problems;
  if (!report.is_object()) return {"report is not an object"};
  auto need = [&](const char* key, auto predicate, const char* what) {
    if (!report.contains(key)) {
      problems.push_back(std::string("missing key '") + key + "'");
    } else if (!predicate(report.at(key))) {
      problems.push_back(std::string("'") + key + "' is not " + what);
    }
  };
  need("name", [](const nlohmann::json& j) { return j.is_string(); }, "a string");
  need("parameters", [](const nlohmann::json& j) { return j.is_object(); }, "an object");
  need("summary", [](const nlohmann::json& j) { return j.is_object(); }, "an object");
  need("input_hash", [](const nlohmann::json& j) { return j.is_string() && j.get<std::string>().size() == 40; },
       "a 40-digit hash");
  need("verdicts", [](const nlohmann::json& j) { return j.is_array(); }, "an array");
  need("tables", [](const nlohmann::json& j) { return j.is_array(); }, "an array");
  if (!problems.empty()) return problems;

  for (const auto& v : report.at("verdicts")) {
    if (!v.is_object() || !v.contains("check") || !v.at("check").is_string() || !v.contains("passed") ||
        !v.at("passed").is_boolean() || !v.contains("margin") || !(v.at("margin").is_number() || v.at("margin").is_null()) ||
        !v.contains("detail") || !v.at("detail").is_string()) {
      problems.push_back("malformed verdict " + v.dump());
    }
  }
  for (const auto& t : report.at("tables")) {
    if (!t.is_object() || !t.contains("name") || !t.contains("file") || !t.contains("columns") ||
        !t.at("columns").is_array() || !t.contains("rows") || !t.at("rows").is_number_unsigned()) {
      problems.push_back("malformed table entry " + t.dump());
    } else if (t.at("rows").get<std::size_t>() == 0) {
      problems.push_back("table '" + t.at("name").get<std::string>() + "' has no rows");
    }
  }
  return problems;
}

}  // namespace dyson::schema
