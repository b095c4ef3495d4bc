#pragma once

#include <string>
#include <vector>

#include <json.hpp>

/// Contracts between emitted files and the figure renderer: required CSV
/// columns per figure kind and the shape of report.json.
namespace dyson::schema {

enum class FigureKind { InterfaceHist, WettingProfile, FieldProfile, GapCurve, BoundCheck };

[[nodiscard]] const std::vector<FigureKind>& figure_kinds();
/// Name used on the renderer command line, e.g. "interface_hist".
[[nodiscard]] std::string kind_name(FigureKind kind);
[[nodiscard]] FigureKind kind_from_name(const std::string& name);

/// Columns a CSV must contain for the figure kind.
[[nodiscard]] const std::vector<std::string>& required_columns(FigureKind kind);

/// Required columns absent from `header`, in required order.
[[nodiscard]] std::vector<std::string> missing_columns(FigureKind kind, const std::vector<std::string>& header);

/// Splits the first line of a CSV into column names (RFC 4180 quoting).
[[nodiscard]] std::vector<std::string> csv_header(const std::string& csv_text);

/// Problems with a report.json document; empty when it conforms.
[[nodiscard]] std::vector<std::string> report_problems(const nlohmann::json& report);

}  // namespace dyson::schema
