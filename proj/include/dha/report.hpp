#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dha/algebra_bounds.hpp"
#include "dha/grid_oracle.hpp"
#include "dha/shape_chain.hpp"

namespace dha::report {

inline constexpr const char* kToolName = "dha";
inline constexpr const char* kToolVersion = "1.0.0";

using Cell = std::variant<std::monostate, long long, double, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  friend bool operator==(const Table&, const Table&) = default;
};

/// One command's output: metadata plus a table payload and free-form diagnostics.
struct ResultDocument {
  std::string command;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  std::optional<std::string> timestamp;
  Table table;
  nlohmann::ordered_json diagnostics = nlohmann::ordered_json::object();

  friend bool operator==(const ResultDocument&, const ResultDocument&) = default;
};

/// Doubles at 17 significant digits, booleans as true/false, empty cells blank.
std::string format_cell(const Cell& cell);
std::string to_csv(const Table& table);

std::string to_json(const ResultDocument& doc);
ResultDocument from_json(const std::string& text);

Table bounds_table(const TanhAlgebra& algebra, bool with_sharp);
Table bounds_table(const QuarticAlgebra& algebra);
Table spectrum_table(const SpectrumResult& spectrum, bool with_linear);
/// Rows n = 0..max(n_max); cells beyond a spectrum's n_max are empty.
Table figure_table(const SpectrumResult& undeformed, const SpectrumResult& deformed);
Table hlin_table(const HlinCheck& check, const std::vector<std::string>& status);

/// Python/matplotlib script drawing the two level columns of a figure CSV.
std::string plot_script(const std::string& csv_filename);

}  // namespace dha::report
