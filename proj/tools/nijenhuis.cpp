// Command line front end: check, table, counterexample, index.
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nij/crossed.hpp"
#include "nij/scenario.hpp"
#include "nij/table.hpp"
#include "nij/toeplitz.hpp"
#include "nij/torsion.hpp"

using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kConfigError = 2;

struct Globals {
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> window;
  std::optional<double> tol;
  std::string format = "text";
  std::string out;
};

void emit(const Globals& g, const std::string& text, const json& structured) {
  const std::string payload = g.format == "structured" ? structured.dump(2) + "\n" : text;
  if (g.out.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw nij::InputError("cannot open output file " + g.out);
  f << payload;
}

json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw nij::ConfigError(path, "cannot open file");
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw nij::ConfigError(path, e.what());
  }
}

void apply_overrides(nij::ScenarioConfig& c, const Globals& g) {
  if (g.seed) c.sampling.seed = *g.seed;
  if (g.trials) c.sampling.trials = *g.trials;
  if (g.window) c.sampling.window = *g.window;
  if (g.tol) c.sampling.abs_tol = c.sampling.rel_tol = *g.tol;
}

std::string describe_results(const nij::RunReport& r) {
  std::ostringstream s;
  s << "scenario " << (r.config.name.empty() ? "(unnamed)" : r.config.name) << "\n";
  for (const auto& c : r.results) {
    s << "  " << nij::to_string(c.kind) << ": " << c.symbol;
    if (c.detail.contains("worst_residual")) s << "  worst residual " << c.detail["worst_residual"].get<double>();
    if (c.detail.contains("torsion")) {
      const json& t = c.detail["torsion"];
      s << "  torsion " << t["verdict"].get<std::string>() << " (" << t["trials"].get<int>() << " pairs, worst "
        << t["worst_residual"].get<double>() << ")";
    }
    s << "\n";
  }
  for (const auto& n : r.notes) s << "  note: " << n << "\n";
  for (const auto& f : r.expectation_failures()) s << "  MISMATCH " << f << "\n";
  return s.str();
}

int run_check(const std::string& file, const Globals& g) {
  nij::ScenarioConfig c = nij::parse_scenario(read_json(file));
  apply_overrides(c, g);
  const nij::RunReport r = nij::run_scenario(c);
  emit(g, describe_results(r), r.to_json());
  const auto failures = r.expectation_failures();
  for (const auto& f : failures) std::cerr << "mismatch: " << f << "\n";
  return failures.empty() ? kOk : kMismatch;
}

nij::VerdictMatrix parse_matrix(const json& j, const std::string& path) {
  nij::VerdictMatrix m;
  if (!j.is_object()) throw nij::ConfigError(path, "expected {row: {column: symbol}}");
  for (const auto& [row, cols] : j.items()) {
    if (!cols.is_object()) throw nij::ConfigError(path + "." + row, "expected {column: symbol}");
    for (const auto& [col, sym] : cols.items()) {
      if (!sym.is_string()) throw nij::ConfigError(path + "." + row + "." + col, "expected a symbol string");
      m[{row, col}] = sym.get<std::string>();
    }
  }
  return m;
}

int run_table(const std::string& suite_file, const Globals& g) {
  std::vector<nij::ScenarioConfig> suite;
  std::map<int, nij::VerdictMatrix> expected;
  if (suite_file.empty()) {
    suite = nij::builtin_suite(g.seed.value_or(1), g.trials.value_or(100), g.tol);
    if (g.window)
      for (auto& c : suite) c.sampling.window = *g.window;
    expected = {{1, nij::expected_table(1)}, {2, nij::expected_table(2)}};
  } else {
    const json j = read_json(suite_file);
    if (!j.is_object() || !j.contains("scenarios") || !j["scenarios"].is_array())
      throw nij::ConfigError("scenarios", "suite file needs a 'scenarios' array");
    for (std::size_t i = 0; i < j["scenarios"].size(); ++i) {
      try {
        suite.push_back(nij::parse_scenario(j["scenarios"][i]));
      } catch (const nij::ConfigError& e) {
        throw nij::ConfigError("scenarios[" + std::to_string(i) + "]." + e.field(), e.what());
      }
      apply_overrides(suite.back(), g);
    }
    if (j.contains("expected")) {
      for (const auto& [t, m] : j["expected"].items()) {
        int table = 0;
        try {
          table = std::stoi(t);
        } catch (const std::exception&) {
          throw nij::ConfigError("expected." + t, "table key must be 1 or 2");
        }
        expected[table] = parse_matrix(m, "expected." + t);
      }
    } else {
      expected = {{1, nij::expected_table(1)}, {2, nij::expected_table(2)}};
    }
  }
  const nij::TableOutput out = nij::emit_table(suite, expected);
  emit(g, out.text, out.report);
  for (const auto& m : out.mismatches) std::cerr << "mismatch: " << m << "\n";
  return out.exit_code;
}

int run_counterexample(const std::string& which, int n, std::vector<int> alpha, std::vector<int> y,
                       std::optional<int> point, const Globals& g) {
  if (alpha.empty()) {
    for (int x = 0; x < n; ++x) alpha.push_back((x + 1) % n);
  }
  if (y.empty()) {
    for (int x = 0; x < static_cast<int>(alpha.size()); ++x) y.push_back(x);
  }
  nij::TolerancePolicy tol;
  if (g.tol) tol.abs_tol = tol.rel_tol = *g.tol;
  std::shared_ptr<const nij::CrossedAlgebra> ctx;
  try {
    ctx = nij::CrossedAlgebra::create({nij::DynSystem(static_cast<int>(alpha.size()), alpha, y), 3}, tol);
  } catch (const nij::InputError& e) {
    throw nij::ConfigError("--alpha/--y", e.what());
  }
  json report{{"schema_version", nij::kReportSchemaVersion}, {"constructor", which}};
  std::ostringstream text;
  if (which == "rank-one") {
    int yy = -1;
    if (point) {
      yy = *point;
    } else {
      for (int x : ctx->system().y_set())
        if (!ctx->system().is_fixed(x)) {
          yy = x;
          break;
        }
      if (yy < 0) throw nij::ConfigError("--point", "every point of Y is fixed");
    }
    nij::RankOneCounterexample c = [&] {
      try {
        return nij::counterexample_rank_one_crossed(ctx, yy);
      } catch (const nij::InputError& e) {
        throw nij::ConfigError("--point", e.what());
      }
    }();
    const double residual = ctx->ideal_residual(nij::torsion(c.op, c.v, c.w));
    report["v"] = ctx->describe(c.v);
    report["w"] = ctx->describe(c.w);
    report["operator"] = c.op.describe();
    report["quotient_residual"] = residual;
    report["expected_residual"] = c.expected_residual;
    text << "rank-one counterexample at y = " << yy << "\n  N = " << c.op.describe() << "\n  v = "
         << ctx->describe(c.v) << "\n  w = " << ctx->describe(c.w) << "\n  torsion quotient residual = " << residual
         << " (expected " << c.expected_residual << ")\n";
  } else {
    try {
      nij::AdUCounterexample c = nij::counterexample_ad_u_crossed(ctx);
      const nij::OperatorSpec op = nij::OperatorSpec::adjoint(ctx->u_power(1));
      const nij::Element t = nij::torsion(op, c.v, c.w);
      const auto& terms = t.as<nij::CrossedData>().terms;
      auto it = terms.find(2);
      const nij::Scalar coeff = it == terms.end() ? nij::Scalar{} : it->second[static_cast<std::size_t>(c.y)];
      report["v"] = ctx->describe(c.v);
      report["w"] = ctx->describe(c.w);
      report["y"] = c.y;
      report["u2_coefficient"] = {std::real(-coeff), std::imag(-coeff)};
      report["expected_coefficient"] = {c.expected_coefficient.real(), c.expected_coefficient.imag()};
      report["quotient_residual"] = ctx->ideal_residual(t);
      text << "ad_u counterexample at y = " << c.y << "\n  v = " << ctx->describe(c.v)
           << "\n  w = " << ctx->describe(c.w) << "\n  u^2 coefficient of [[u,v],[u,w]] at y = "
           << nij::format_scalar(-coeff) << " (expected " << nij::format_scalar(c.expected_coefficient) << ")\n"
           << "  torsion quotient residual = " << ctx->ideal_residual(t) << "\n";
    } catch (const nij::InapplicableError& e) {
      std::cerr << "note: " << e.what() << "; falling back to random sampling\n";
      const nij::OperatorSpec op = nij::OperatorSpec::adjoint(ctx->u_power(1));
      const nij::TorsionVerdict v =
          nij::nijenhuis_verdict(*ctx, op, nij::Strategy::Random, g.seed.value_or(1), g.trials.value_or(100),
                                 g.window.value_or(0));
      report["inapplicable"] = e.what();
      report["fallback"] = nij::describe_verdict(v);
      text << e.what() << "\n  random sampling verdict: "
           << nij::to_string(v.verdict) << " over " << v.trials << " pairs (worst residual " << v.worst_residual
           << ")\n";
    }
  }
  emit(g, text.str(), report);
  return kOk;
}

int run_index(const std::vector<std::string>& tokens, const Globals& g) {
  std::map<int, nij::Scalar> coeffs;
  for (const auto& tok : tokens) {
    std::vector<std::string> parts;
    std::stringstream ss(tok);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() < 2 || parts.size() > 3) throw nij::ConfigError(tok, "expected deg:re[:im]");
    try {
      std::size_t used = 0;
      const int deg = std::stoi(parts[0], &used);
      if (used != parts[0].size()) throw std::invalid_argument("degree");
      const double re = std::stod(parts[1]);
      const double im = parts.size() == 3 ? std::stod(parts[2]) : 0.0;
      coeffs[deg] += nij::Scalar(re, im);
    } catch (const std::exception&) {
      throw nij::ConfigError(tok, "expected deg:re[:im]");
    }
  }
  const nij::TrigPoly phi = nij::TrigPoly::from_coeffs(coeffs);
  const double abs_tol = g.tol.value_or(1e-9);
  int w = 0;
  try {
    w = nij::winding(phi, abs_tol);
  } catch (const nij::NotInvertibleError& e) {
    throw nij::ConfigError("symbol", e.what());
  }
  json report{{"schema_version", nij::kReportSchemaVersion}, {"winding", w}, {"fredholm_index", -w}};
  std::ostringstream text;
  text << "winding " << w << "\nfredholm index " << -w << "\n";
  emit(g, text.str(), report);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nijenhuis torsion workbench on desk-scale C*-algebra models"};
  app.require_subcommand(1);
  Globals g;
  std::uint64_t seed = 0;
  int trials = 0, window = 0;
  double tol = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Sampling seed");
  auto* trials_opt = app.add_option("--trials", trials, "Random trials per check")->check(CLI::PositiveNumber);
  auto* window_opt = app.add_option("--window", window, "Power or degree window (0 = model default)")
                         ->check(CLI::NonNegativeNumber);
  auto* tol_opt = app.add_option("--tol", tol, "Absolute and relative tolerance")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--out", g.out, "Write the report to FILE");

  std::string scenario_file;
  auto* check = app.add_subcommand("check", "Run one scenario file");
  check->add_option("file", scenario_file, "Scenario JSON")->required();
  check->fallthrough();

  std::string suite_file;
  auto* table = app.add_subcommand("table", "Reproduce the verdict tables");
  table->add_option("--suite", suite_file, "Suite JSON (default: built-in)");
  table->fallthrough();

  std::string which;
  int n = 5;
  std::vector<int> alpha, y;
  int point = 0;
  auto* ce = app.add_subcommand("counterexample", "Print an explicit torsion witness in a crossed product");
  ce->add_option("which", which, "rank-one or ad-u")->required()->check(CLI::IsMember({"rank-one", "ad-u"}));
  ce->add_option("--n", n, "Cycle length when --alpha is omitted")->check(CLI::PositiveNumber);
  ce->add_option("--alpha", alpha, "Permutation as 0-based images")->delimiter(',');
  ce->add_option("--y", y, "Invariant subset (default: all of X)")->delimiter(',');
  auto* point_opt = ce->add_option("--point", point, "Point of Y for the rank-one witness");
  ce->fallthrough();

  std::vector<std::string> tokens;
  auto* index = app.add_subcommand("index", "Winding number and Fredholm index of a trigonometric symbol");
  index->add_option("coeffs", tokens, "Coefficients as deg:re[:im]")->required();
  index->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, std::cout, std::cerr);
    return code == 0 ? kOk : kConfigError;
  }
  if (*seed_opt) g.seed = seed;
  if (*trials_opt) g.trials = trials;
  if (*window_opt) g.window = window;
  if (*tol_opt) g.tol = tol;

  try {
    if (*check) return run_check(scenario_file, g);
    if (*table) return run_table(suite_file, g);
    if (*ce)
      return run_counterexample(which, n, alpha, y, *point_opt ? std::optional<int>(point) : std::nullopt, g);
    if (*index) return run_index(tokens, g);
  } catch (const nij::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfigError;
  } catch (const nij::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kOk;
}
