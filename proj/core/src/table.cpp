#include "nij/table.hpp"

#include <future>
#include <numbers>
#include <sstream>

namespace nij {

using nlohmann::json;

const std::vector<std::string>& table_rows() {
  static const std::vector<std::string> rows{"bounded", "continuous", "toeplitz", "crossed_fixed",
                                             "crossed_nonfixed"};
  return rows;
}

const std::vector<std::string>& table_columns() {
  static const std::vector<std::string> cols{"rank_one", "lr_mult", "adjoint"};
  return cols;
}

std::string row_label(const std::string& row) {
  static const std::map<std::string, std::string> labels{{"bounded", "bounded"},
                                                         {"continuous", "continuous"},
                                                         {"toeplitz", "Toeplitz"},
                                                         {"crossed_fixed", "crossed (fixed)"},
                                                         {"crossed_nonfixed", "crossed (non-fixed)"}};
  auto it = labels.find(row);
  return it == labels.end() ? row : it->second;
}

std::string column_label(const std::string& column) {
  static const std::map<std::string, std::string> labels{
      {"rank_one", "Rank one"}, {"lr_mult", "LR mult."}, {"adjoint", "adjoint"}};
  auto it = labels.find(column);
  return it == labels.end() ? column : it->second;
}

namespace {

struct Model {
  std::string row;
  json algebra;
};

const std::vector<Model>& models() {
  static const std::vector<Model> m{
      {"bounded", {{"kind", "matrix"}, {"block", {4, 4}}}},
      {"continuous", {{"kind", "finfun"}, {"n", 6}, {"y", {0, 1, 2}}}},
      {"toeplitz", {{"kind", "toeplitz"}, {"degree_cap", 4}, {"correction_dim", 4}}},
      // Y = {0, 1} is pointwise fixed; the 3-cycle on {2, 3, 4} lies in the ideal.
      {"crossed_fixed", {{"kind", "crossed"}, {"n", 5}, {"alpha", {0, 1, 3, 4, 2}}, {"y", {0, 1}}, {"window", 3}}},
      // 5-cycle on Y = {0..4} plus a fixed point outside Y.
      {"crossed_nonfixed",
       {{"kind", "crossed"}, {"n", 6}, {"alpha", {1, 2, 3, 4, 0, 5}}, {"y", {0, 1, 2, 3, 4}}, {"window", 3}}},
  };
  return m;
}

json circle_thirds() {
  const double t = 2.0 * std::numbers::pi / 3.0;
  return {{"kind", "circle_measure"}, {"angles", {0.0, t, 2.0 * t}}, {"weights", {1.0 / 3, 1.0 / 3, 1.0 / 3}}};
}

json rank_one_functional(const std::string& row) {
  if (row == "bounded") return {{"kind", "codiag_trace"}};
  if (row == "continuous") return {{"kind", "uniform_on_y"}};
  if (row == "toeplitz") return circle_thirds();
  return {{"kind", "evaluation"}, {"point", 0}};
}

const json kI = {{"scalar", {0.0, 1.0}}};

json adjoint_d(const std::string& row) {
  if (row == "toeplitz") return {{"shift", 1}};
  if (row.rfind("crossed", 0) == 0) return "u";
  return {{"random", 14}};
}

// A self-adjoint unitary on X; i*s squares to -1.
json sign_function(int n) {
  json v = json::array();
  for (int x = 0; x < n; ++x) v.push_back(x % 2 == 0 ? 1.0 : -1.0);
  return {{"values", v}};
}

ScenarioConfig make(const std::string& name, const Model& m, int table, const std::string& column, json op,
                    bool open, std::uint64_t seed, int trials, std::optional<double> tol) {
  json j{{"name", name},
         {"algebra", m.algebra},
         {"operator", std::move(op)},
         {"sampling", {{"seed", seed}, {"trials", trials}}},
         {"open", open},
         {"cell", {{"table", table}, {"row", m.row}, {"column", column}}}};
  j["checks"] = table == 1 ? json{"admissible", "nijenhuis"} : json{"admissible", "almost_complex"};
  if (tol) {
    j["sampling"]["abs_tol"] = *tol;
    j["sampling"]["rel_tol"] = *tol;
  }
  return parse_scenario(j);
}

std::vector<std::string> split_cell(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == '/') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

json matrix_json(const VerdictMatrix& m) {
  json j = json::object();
  for (const auto& [key, sym] : m) j[key.first][key.second] = sym;
  return j;
}

// The detail block that explains a scenario's table symbol.
json witness_of(const RunReport& r) {
  const bool t2 = r.config.cell && r.config.cell->table == 2;
  const CheckResult* c = r.find(t2 ? CheckKind::AlmostComplex : CheckKind::Nijenhuis);
  return c ? c->detail : json::object();
}

}  // namespace

std::vector<ScenarioConfig> builtin_suite(std::uint64_t seed, int trials, std::optional<double> tol) {
  std::vector<ScenarioConfig> suite;
  for (const Model& m : models()) {
    const std::string& r = m.row;
    const bool bounded = r == "bounded";
    // Table 1: existence of Nijenhuis operators.
    const json l = rank_one_functional(r);
    if (bounded) {
      // Generic rank one: the Calkin argument needs infinite dimensions.
      suite.push_back(make("t1/bounded/rank_one/generic", m, 1, "rank_one",
                           {{"kind", "rank_one"}, {"functional", l}, {"target", "unit"}}, true, seed, trials, tol));
      suite.push_back(make("t1/bounded/rank_one/codiag", m, 1, "rank_one",
                           {{"kind", "rank_one"}, {"functional", l}, {"target", "projection"}}, false, seed, trials,
                           tol));
      suite.push_back(make("t1/bounded/lr_mult/two_sided", m, 1, "lr_mult",
                           {{"kind", "two_sided"}, {"a", {{"random", 11}}}, {"b", {{"random", 12}}}}, true, seed,
                           trials, tol));
      suite.push_back(make("t1/bounded/lr_mult/left", m, 1, "lr_mult",
                           {{"kind", "left_mult"}, {"b", {{"random", 13}}}}, false, seed, trials, tol));
    } else {
      suite.push_back(make("t1/" + r + "/rank_one", m, 1, "rank_one",
                           {{"kind", "rank_one"}, {"functional", l}, {"target", "unit"}}, false, seed, trials, tol));
      json lr = r == "toeplitz" ? json{{"kind", "two_sided"}, {"a", {{"random", 21}}}, {"b", {{"random", 22}}}}
                : r.rfind("crossed", 0) == 0 ? json{{"kind", "left_mult"}, {"b", "u"}}
                                             : json{{"kind", "left_mult"}, {"b", {{"random", 13}}}};
      suite.push_back(make("t1/" + r + "/lr_mult", m, 1, "lr_mult", lr, false, seed, trials, tol));
    }
    suite.push_back(make("t1/" + r + "/adjoint", m, 1, "adjoint", {{"kind", "adjoint"}, {"d", adjoint_d(r)}},
                         bounded, seed, trials, tol));

    // Table 2: almost complex structures.
    suite.push_back(make("t2/" + r + "/rank_one", m, 2, "rank_one",
                         {{"kind", "rank_one"}, {"functional", l}, {"target", kI}}, false, seed, trials, tol));
    json j;
    if (bounded)
      j = "complex_structure";
    else if (r.rfind("crossed", 0) == 0)
      j = {{"product", {kI, sign_function(m.algebra["n"].get<int>())}}};
    else
      j = kI;
    suite.push_back(make("t2/" + r + "/lr_mult", m, 2, "lr_mult", {{"kind", "left_mult"}, {"b", j}}, false, seed,
                         trials, tol));
    suite.push_back(make("t2/" + r + "/adjoint", m, 2, "adjoint", {{"kind", "adjoint"}, {"d", adjoint_d(r)}},
                         r == "crossed_nonfixed", seed, trials, tol));
  }
  return suite;
}

VerdictMatrix expected_table(int table) {
  VerdictMatrix m;
  auto row = [&](const std::string& r, std::string a, std::string b, std::string c) {
    m[{r, "rank_one"}] = std::move(a);
    m[{r, "lr_mult"}] = std::move(b);
    m[{r, "adjoint"}] = std::move(c);
  };
  if (table == 1) {
    row("bounded", "open/+", "open/+", "open");
    row("continuous", "+", "+", "0");
    row("toeplitz", "+", "+", "0");
    row("crossed_fixed", "+", "+", "0");
    row("crossed_nonfixed", "-", "+", "-");
  } else if (table == 2) {
    for (const auto& r : table_rows()) row(r, "-", "+", r == "crossed_nonfixed" ? "open" : "-");
  }
  return m;
}

bool cell_matches(const std::string& expected, const std::string& computed) {
  const auto e = split_cell(expected);
  const auto c = split_cell(computed);
  if (e.size() != c.size()) return expected == "open";
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] != "open" && c[i] != "open" && e[i] != c[i]) return false;
  return true;
}

TableOutput emit_table(const std::vector<ScenarioConfig>& suite, const std::map<int, VerdictMatrix>& expected,
                       bool parallel) {
  std::vector<RunReport> reports;
  reports.reserve(suite.size());
  if (parallel) {
    std::vector<std::future<RunReport>> futures;
    for (const auto& s : suite) futures.push_back(std::async(std::launch::async, [&s] { return run_scenario(s); }));
    for (auto& f : futures) reports.push_back(f.get());
  } else {
    for (const auto& s : suite) reports.push_back(run_scenario(s));
  }

  TableOutput out;
  std::map<std::tuple<int, std::string, std::string>, std::vector<std::size_t>> cell_sources;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const RunReport& r = reports[i];
    if (const CheckResult* a = r.find(CheckKind::Admissible); a && a->symbol == "-")
      out.mismatches.push_back(r.config.name + ": operator failed the admissibility check " +
                               a->detail.dump());
    for (const auto& f : r.expectation_failures()) out.mismatches.push_back(r.config.name + ": " + f);
    if (!r.config.cell) continue;
    const TableCell& c = *r.config.cell;
    std::string& cell = out.computed[c.table][{c.row, c.column}];
    cell += (cell.empty() ? "" : "/") + r.table_symbol();
    cell_sources[{c.table, c.row, c.column}].push_back(i);
  }

  std::ostringstream text;
  json matrices = json::object();
  for (const auto& [table, exp] : expected) {
    const VerdictMatrix& got = out.computed[table];
    text << "Table " << table << (table == 1 ? ": existence of Nijenhuis operators" : ": almost complex structures")
         << "  (computed | expected)\n";
    text << pad("", 22);
    for (const auto& col : table_columns()) text << pad(column_label(col), 18);
    text << "\n";
    for (const auto& row : table_rows()) {
      text << pad(row_label(row), 22);
      for (const auto& col : table_columns()) {
        auto g = got.find({row, col});
        auto e = exp.find({row, col});
        const std::string gs = g == got.end() ? "missing" : g->second;
        const std::string es = e == exp.end() ? "" : e->second;
        const bool ok = e == exp.end() || (g != got.end() && cell_matches(es, gs));
        text << pad(gs + " | " + es + (ok ? "" : " !"), 18);
        if (!ok) {
          std::string msg = "table " + std::to_string(table) + " " + row_label(row) + " / " + column_label(col) +
                            ": expected '" + es + "', computed '" + gs + "'";
          for (std::size_t i : cell_sources[{table, row, col}])
            msg += "\n  " + reports[i].config.name + " [" + reports[i].table_symbol() +
                   "] witness: " + witness_of(reports[i]).dump();
          out.mismatches.push_back(msg);
        }
      }
      text << "\n";
    }
    text << "\n";
    matrices["table" + std::to_string(table)] = {{"computed", matrix_json(got)}, {"expected", matrix_json(exp)}};
  }
  if (out.mismatches.empty()) {
    text << "all non-open cells match\n";
  } else {
    text << out.mismatches.size() << " mismatch(es):\n";
    for (const auto& m : out.mismatches) text << "- " << m << "\n";
  }
  out.exit_code = out.mismatches.empty() ? 0 : 1;
  out.text = text.str();

  json echo = json::array();
  json results = json::array();
  for (const auto& r : reports) {
    echo.push_back(to_json(r.config));
    json rj = r.to_json(false);
    rj.erase("config_echo");
    rj["name"] = r.config.name;
    rj["table_symbol"] = r.table_symbol();
    results.push_back(rj);
  }
  out.report = {{"schema_version", kReportSchemaVersion},
                {"config_echo", echo},
                {"results", results},
                {"verdict_matrix", matrices},
                {"mismatches", out.mismatches},
                {"exit_code", out.exit_code}};
  return out;
}

}  // namespace nij
