#include "dha/report.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace dha::report {
namespace {

using Json = nlohmann::ordered_json;

Json cell_to_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else {
          return v;
        }
      },
      cell);
}

Cell cell_from_json(const Json& j) {
  if (j.is_null()) return std::monostate{};
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_number_float()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  throw std::invalid_argument("unsupported JSON cell type");
}

Cell optional_level(const std::vector<Level>& levels, std::size_t n) {
  if (n < levels.size()) return levels[n].e_physical;
  return std::monostate{};
}

}  // namespace

std::string format_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return {};
        } else if constexpr (std::is_same_v<T, double>) {
          return fmt::format("{:.17g}", v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return fmt::format("{}", v);
        }
      },
      cell);
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t k = 0; k < table.columns.size(); ++k) {
    out += (k ? "," : "") + table.columns[k];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      out += (k ? "," : "") + format_cell(row[k]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const ResultDocument& doc) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = doc.command;
  if (doc.timestamp) j["timestamp"] = *doc.timestamp;
  j["parameters"] = doc.parameters;
  j["columns"] = doc.table.columns;
  Json rows = Json::array();
  for (const auto& row : doc.table.rows) {
    Json r = Json::array();
    for (const auto& cell : row) r.push_back(cell_to_json(cell));
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  j["diagnostics"] = doc.diagnostics;
  return j.dump(2) + "\n";
}

ResultDocument from_json(const std::string& text) {
  const Json j = Json::parse(text);
  ResultDocument doc;
  doc.command = j.at("command").get<std::string>();
  if (j.contains("timestamp")) doc.timestamp = j.at("timestamp").get<std::string>();
  doc.parameters = j.at("parameters");
  doc.table.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& r : j.at("rows")) {
    std::vector<Cell> row;
    for (const auto& cell : r) row.push_back(cell_from_json(cell));
    doc.table.rows.push_back(std::move(row));
  }
  doc.diagnostics = j.at("diagnostics");
  return doc;
}

Table bounds_table(const TanhAlgebra& algebra, bool with_sharp) {
  const ConsistencyReport report = check_consistency(algebra);
  Table table{{"algebra", "alpha", "beta", "delta", "consistent", "margin", "dp_min", "dp_max",
               "p2_min", "p2_max", "dtanh_min", "dx_min"},
              {}};
  if (with_sharp) {
    table.columns.insert(table.columns.end(), {"sharp_dp_min", "sharp_dp_max"});
  }
  std::vector<Cell> row{std::string("tanh"), algebra.alpha(), algebra.beta(), algebra.delta(),
                        report.consistent, report.margin};
  if (report.consistent) {
    const TanhWindow w = tanh_window(algebra);
    row.insert(row.end(), {w.dp_min, w.dp_max, w.p2_min, w.p2_max, w.dtanh_min, w.dx_min});
  } else {
    row.resize(table.columns.size() - (with_sharp ? 2 : 0));
  }
  if (with_sharp) {
    if (check_consistency(algebra, Criterion::sharp).consistent) {
      const auto [lo, hi] = tanh_sharp_momentum_window(algebra);
      row.insert(row.end(), {lo, hi});
    } else {
      row.resize(table.columns.size());
    }
  }
  table.rows.push_back(std::move(row));
  return table;
}

Table bounds_table(const QuarticAlgebra& algebra) {
  const ConsistencyReport report = check_consistency(algebra);
  Table table{{"algebra", "alpha", "beta", "consistent", "margin", "p2_max", "dp2_min", "x2_max",
               "dx2_min"},
              {}};
  std::vector<Cell> row{std::string("quartic"), algebra.alpha(), algebra.beta(), report.consistent,
                        report.margin};
  if (report.consistent) {
    const QuarticWindow w = quartic_window(algebra);
    row.insert(row.end(), {w.p2_max, w.dp2_min, w.x2_max, w.dx2_min});
  } else {
    row.resize(table.columns.size());
  }
  table.rows.push_back(std::move(row));
  return table;
}

Table spectrum_table(const SpectrumResult& spectrum, bool with_linear) {
  Table table{{"n", "e_chain", "e_physical"}, {}};
  if (with_linear) table.columns.emplace_back("e_linear");
  for (const Level& level : spectrum.levels) {
    std::vector<Cell> row{static_cast<long long>(level.n), level.e_chain, level.e_physical};
    if (with_linear) {
      row.emplace_back(
          linear_level(spectrum.xi0, spectrum.eta0, spectrum.beta, spectrum.delta, level.n));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

Table figure_table(const SpectrumResult& undeformed, const SpectrumResult& deformed) {
  Table table{{"n", "e_undeformed", "e_deformed"}, {}};
  const std::size_t count = std::max(undeformed.levels.size(), deformed.levels.size());
  for (std::size_t n = 0; n < count; ++n) {
    table.rows.push_back({static_cast<long long>(n), optional_level(undeformed.levels, n),
                          optional_level(deformed.levels, n)});
  }
  return table;
}

Table hlin_table(const HlinCheck& check, const std::vector<std::string>& status) {
  Table table{{"n", "expectation", "e_linear", "abs_diff", "tolerance", "status"}, {}};
  for (std::size_t k = 0; k < check.rows.size(); ++k) {
    const HlinRow& r = check.rows[k];
    table.rows.push_back({static_cast<long long>(r.n), r.expectation, r.linear_value, r.abs_diff,
                          r.tolerance, k < status.size() ? status[k] : std::string()});
  }
  return table;
}

std::string plot_script(const std::string& csv_filename) {
  return fmt::format(R"(#!/usr/bin/env python3
# Draws undeformed and deformed Poschl-Teller levels as two columns.
import csv
import sys

import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else "{0}"
with open(path, newline="") as f:
    rows = list(csv.DictReader(f))

fig, ax = plt.subplots(figsize=(4, 6))
for column, x0, label in (("e_undeformed", 0.0, "undeformed"), ("e_deformed", 1.5, "deformed")):
    for row in rows:
        if row[column]:
            e = float(row[column])
            ax.hlines(e, x0, x0 + 1.0, color="black")
            ax.text(x0 + 1.05, e, "n=" + row["n"], va="center", fontsize=7)
    ax.text(x0 + 0.5, 0.5, label, ha="center")
ax.set_xlim(-0.25, 3.0)
ax.set_xticks([])
ax.set_ylabel("E")
fig.tight_layout()
fig.savefig(path.rsplit(".", 1)[0] + ".png", dpi=150)
)",
                     csv_filename);
}

}  // namespace dha::report
