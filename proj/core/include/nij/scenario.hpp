#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nij/algebra.hpp"
#include "nij/operators.hpp"
#include "nij/torsion.hpp"

namespace nij {

inline constexpr int kReportSchemaVersion = 1;

// Invalid scenario configuration; field() names the offending entry as a
// JSON path such as "operator.terms[1].b".
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class CheckKind { Admissible, Nijenhuis, AlmostComplex };

std::string_view to_string(CheckKind k);

struct SamplingConfig {
  std::uint64_t seed = 1;
  int trials = 100;
  // 0 = the algebra's own window / degree cap.
  int window = 0;
  // "generator_pairs", "random", "both" or "constructor".
  std::string strategy = "both";
  std::optional<double> abs_tol;
  std::optional<double> rel_tol;
};

struct AlgebraConfig {
  ModelKind kind = ModelKind::FinFun;
  int n = 0;
  std::vector<int> y;
  std::vector<int> alpha;
  int degree_cap = 4;
  int correction_dim = 4;
  int window = 3;
  std::optional<std::pair<int, int>> block;
};

// Placement of a scenario in the verdict tables.
struct TableCell {
  int table = 1;
  std::string row;
  std::string column;
};

struct ScenarioConfig {
  std::string name;
  AlgebraConfig algebra;
  // Operator description, resolved against the algebra when the scenario
  // runs (element specs need the context).
  nlohmann::json op;
  std::vector<CheckKind> checks;
  SamplingConfig sampling;
  // Not decidable at desk scale: checks still run, symbols read "open".
  bool open = false;
  std::optional<TableCell> cell;
  // Optional expected symbols per check name.
  std::map<std::string, std::string> expect;
};

ScenarioConfig parse_scenario(const nlohmann::json& j);
nlohmann::json to_json(const ScenarioConfig& c);

// Context built from the algebra block plus tolerance overrides.
AlgebraPtr build_algebra(const AlgebraConfig& a, const SamplingConfig& s);
// Element and operator specs, see README for the schema. Errors carry the
// path prefix given.
Element build_element(const Algebra& ctx, const nlohmann::json& j, const std::string& path);
FunctionalSpec build_functional(const Algebra& ctx, const nlohmann::json& j, const std::string& path);
OperatorSpec build_operator(const Algebra& ctx, const nlohmann::json& j, const std::string& path);

struct CheckResult {
  CheckKind kind;
  // "+", "-", "0" or "open".
  std::string symbol;
  nlohmann::json detail;
};

struct RunReport {
  ScenarioConfig config;
  std::vector<CheckResult> results;
  std::vector<std::string> notes;
  double seconds = 0.0;

  const CheckResult* find(CheckKind k) const;
  // Symbol this scenario contributes to its table cell.
  std::string table_symbol() const;
  // Mismatches against config.expect.
  std::vector<std::string> expectation_failures() const;
  nlohmann::json to_json(bool with_timing = false) const;
};

RunReport run_scenario(const ScenarioConfig& config);

nlohmann::json describe_check(const CheckReport& r);
nlohmann::json describe_verdict(const TorsionVerdict& v);

}  // namespace nij
