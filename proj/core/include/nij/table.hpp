#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nij/scenario.hpp"

namespace nij {

// Row and column keys of the verdict grids.
const std::vector<std::string>& table_rows();
const std::vector<std::string>& table_columns();
std::string row_label(const std::string& row);
std::string column_label(const std::string& column);

// Cell symbols keyed by (row, column). Sub-cells are joined with '/'.
using VerdictMatrix = std::map<std::pair<std::string, std::string>, std::string>;

// Desk-scale instance suite covering both tables. The seed and trial count
// are applied to every scenario; abs/rel tolerance overrides are optional.
std::vector<ScenarioConfig> builtin_suite(std::uint64_t seed = 1, int trials = 100,
                                          std::optional<double> tol = std::nullopt);

VerdictMatrix expected_table(int table);

// True when a computed cell is compatible with the expected one: sub-cell
// counts agree and every sub-cell where neither side reads "open" matches.
bool cell_matches(const std::string& expected, const std::string& computed);

struct TableOutput {
  std::string text;
  nlohmann::json report;
  // 0 when every non-open cell matches, 1 otherwise.
  int exit_code = 0;
  std::vector<std::string> mismatches;
  std::map<int, VerdictMatrix> computed;
};

// Runs the suite (scenarios in parallel, results ordered by suite index)
// and compares against the expected matrices per table number.
TableOutput emit_table(const std::vector<ScenarioConfig>& suite, const std::map<int, VerdictMatrix>& expected,
                       bool parallel = true);

}  // namespace nij
