#include "nij/scenario.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "nij/crossed.hpp"
#include "nij/finfun_matrix.hpp"
#include "nij/toeplitz.hpp"

namespace nij {

using nlohmann::json;

namespace {

// ------------------------------------------------------------ json helpers

const json& member(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(path.empty() ? key : path + "." + key, "missing required field");
  return *it;
}

std::string join(const std::string& path, const char* key) { return path.empty() ? key : path + "." + key; }
std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<int>();
}

double as_double(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

Scalar as_scalar(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(path, "expected a complex scalar [re, im] or a number");
}

std::vector<int> as_int_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], index(path, i)));
  return out;
}

std::vector<Scalar> as_scalar_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of scalars");
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_scalar(j[i], index(path, i)));
  return out;
}

Eigen::MatrixXcd as_matrix(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::MatrixXcd m(rows, rows);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const auto row = as_scalar_list(j[r], index(path, r));
    if (static_cast<Eigen::Index>(row.size()) != rows) throw ConfigError(index(path, r), "matrix must be square");
    for (std::size_t c = 0; c < row.size(); ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c];
  }
  return m;
}

ModelKind parse_kind(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  const auto s = j.get<std::string>();
  if (s == "finfun") return ModelKind::FinFun;
  if (s == "matrix") return ModelKind::Matrix;
  if (s == "toeplitz") return ModelKind::Toeplitz;
  if (s == "crossed") return ModelKind::Crossed;
  throw ConfigError(path, "unknown algebra kind '" + s + "'");
}

CheckKind parse_check(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  const auto s = j.get<std::string>();
  if (s == "admissible") return CheckKind::Admissible;
  if (s == "nijenhuis") return CheckKind::Nijenhuis;
  if (s == "almost_complex") return CheckKind::AlmostComplex;
  throw ConfigError(path, "unknown check '" + s + "'");
}

template <class F>
auto rethrow_as_config(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(path, e.what());
  } catch (const json::exception& e) {
    throw ConfigError(path, e.what());
  }
}

// ------------------------------------------------------------ parsing

AlgebraConfig parse_algebra(const json& j, const std::string& path) {
  AlgebraConfig a;
  a.kind = parse_kind(member(j, "kind", path), join(path, "kind"));
  switch (a.kind) {
    case ModelKind::FinFun:
      a.n = as_int(member(j, "n", path), join(path, "n"));
      a.y = as_int_list(member(j, "y", path), join(path, "y"));
      break;
    case ModelKind::Matrix:
      if (j.contains("block")) {
        const auto b = as_int_list(j["block"], join(path, "block"));
        if (b.size() != 2) throw ConfigError(join(path, "block"), "expected [dim_plus, dim_minus]");
        a.block = std::pair{b[0], b[1]};
        a.n = b[0] + b[1];
        if (j.contains("n") && as_int(j["n"], join(path, "n")) != a.n)
          throw ConfigError(join(path, "n"), "n differs from the block dimensions");
      } else {
        a.n = as_int(member(j, "n", path), join(path, "n"));
      }
      break;
    case ModelKind::Toeplitz:
      if (j.contains("degree_cap")) a.degree_cap = as_int(j["degree_cap"], join(path, "degree_cap"));
      if (j.contains("correction_dim")) a.correction_dim = as_int(j["correction_dim"], join(path, "correction_dim"));
      break;
    case ModelKind::Crossed:
      a.n = as_int(member(j, "n", path), join(path, "n"));
      a.alpha = as_int_list(member(j, "alpha", path), join(path, "alpha"));
      if (j.contains("y")) {
        a.y = as_int_list(j["y"], join(path, "y"));
      } else {
        for (int x = 0; x < a.n; ++x) a.y.push_back(x);
      }
      if (j.contains("window")) a.window = as_int(j["window"], join(path, "window"));
      break;
  }
  return a;
}

json algebra_json(const AlgebraConfig& a) {
  json j;
  j["kind"] = std::string(to_string(a.kind));
  switch (a.kind) {
    case ModelKind::FinFun:
      j["n"] = a.n;
      j["y"] = a.y;
      break;
    case ModelKind::Matrix:
      j["n"] = a.n;
      if (a.block) j["block"] = {a.block->first, a.block->second};
      break;
    case ModelKind::Toeplitz:
      j["degree_cap"] = a.degree_cap;
      j["correction_dim"] = a.correction_dim;
      break;
    case ModelKind::Crossed:
      j["n"] = a.n;
      j["alpha"] = a.alpha;
      j["y"] = a.y;
      j["window"] = a.window;
      break;
  }
  return j;
}

SamplingConfig parse_sampling(const json& j, const std::string& path) {
  SamplingConfig s;
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() || (!j["seed"].is_number_unsigned() && j["seed"].get<std::int64_t>() < 0))
      throw ConfigError(join(path, "seed"), "expected a non-negative integer");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("trials")) {
    s.trials = as_int(j["trials"], join(path, "trials"));
    if (s.trials < 1) throw ConfigError(join(path, "trials"), "must be >= 1");
  }
  if (j.contains("window")) {
    s.window = as_int(j["window"], join(path, "window"));
    if (s.window < 0) throw ConfigError(join(path, "window"), "must be >= 0");
  }
  if (j.contains("strategy")) {
    if (!j["strategy"].is_string()) throw ConfigError(join(path, "strategy"), "expected a string");
    s.strategy = j["strategy"].get<std::string>();
    if (s.strategy != "generator_pairs" && s.strategy != "random" && s.strategy != "both" &&
        s.strategy != "constructor")
      throw ConfigError(join(path, "strategy"), "unknown strategy '" + s.strategy + "'");
  }
  if (j.contains("abs_tol")) s.abs_tol = as_double(j["abs_tol"], join(path, "abs_tol"));
  if (j.contains("rel_tol")) s.rel_tol = as_double(j["rel_tol"], join(path, "rel_tol"));
  return s;
}

json sampling_json(const SamplingConfig& s) {
  json j;
  j["seed"] = s.seed;
  j["trials"] = s.trials;
  j["window"] = s.window;
  j["strategy"] = s.strategy;
  if (s.abs_tol) j["abs_tol"] = *s.abs_tol;
  if (s.rel_tol) j["rel_tol"] = *s.rel_tol;
  return j;
}


}  // namespace

std::string_view to_string(CheckKind k) {
  switch (k) {
    case CheckKind::Admissible: return "admissible";
    case CheckKind::Nijenhuis: return "nijenhuis";
    case CheckKind::AlmostComplex: return "almost_complex";
  }
  return "unknown";
}

ScenarioConfig parse_scenario(const json& j) {
  if (!j.is_object()) throw ConfigError("scenario", "expected an object");
  ScenarioConfig c;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ConfigError("name", "expected a string");
    c.name = j["name"].get<std::string>();
  }
  c.algebra = parse_algebra(member(j, "algebra", ""), "algebra");
  c.op = member(j, "operator", "");
  if (!c.op.is_object()) throw ConfigError("operator", "expected an object");
  const json& checks = member(j, "checks", "");
  if (!checks.is_array() || checks.empty()) throw ConfigError("checks", "expected a nonempty array");
  for (std::size_t i = 0; i < checks.size(); ++i) c.checks.push_back(parse_check(checks[i], index("checks", i)));
  if (j.contains("sampling")) c.sampling = parse_sampling(j["sampling"], "sampling");
  if (j.contains("open")) {
    if (!j["open"].is_boolean()) throw ConfigError("open", "expected a boolean");
    c.open = j["open"].get<bool>();
  }
  if (j.contains("cell")) {
    const json& cell = j["cell"];
    TableCell t;
    t.table = as_int(member(cell, "table", "cell"), "cell.table");
    if (t.table != 1 && t.table != 2) throw ConfigError("cell.table", "must be 1 or 2");
    if (!member(cell, "row", "cell").is_string()) throw ConfigError("cell.row", "expected a string");
    if (!member(cell, "column", "cell").is_string()) throw ConfigError("cell.column", "expected a string");
    t.row = cell["row"].get<std::string>();
    t.column = cell["column"].get<std::string>();
    c.cell = t;
  }
  if (j.contains("expect")) {
    const json& e = j["expect"];
    if (!e.is_object()) throw ConfigError("expect", "expected an object");
    for (const auto& [k, v] : e.items()) {
      if (!v.is_string()) throw ConfigError("expect." + k, "expected a symbol string");
      parse_check(json(k), "expect." + k);
      c.expect[k] = v.get<std::string>();
    }
  }
  // Resolve references now so configuration errors surface before running.
  const AlgebraPtr ctx = build_algebra(c.algebra, c.sampling);
  build_operator(*ctx, c.op, "operator");
  return c;
}

json to_json(const ScenarioConfig& c) {
  json j;
  j["name"] = c.name;
  j["algebra"] = algebra_json(c.algebra);
  j["operator"] = c.op;
  json checks = json::array();
  for (CheckKind k : c.checks) checks.push_back(std::string(to_string(k)));
  j["checks"] = checks;
  j["sampling"] = sampling_json(c.sampling);
  j["open"] = c.open;
  if (c.cell) j["cell"] = {{"table", c.cell->table}, {"row", c.cell->row}, {"column", c.cell->column}};
  if (!c.expect.empty()) j["expect"] = c.expect;
  return j;
}

AlgebraPtr build_algebra(const AlgebraConfig& a, const SamplingConfig& s) {
  TolerancePolicy tol;
  if (s.abs_tol) tol.abs_tol = *s.abs_tol;
  if (s.rel_tol) tol.rel_tol = *s.rel_tol;
  return rethrow_as_config("algebra", [&]() -> AlgebraPtr {
    switch (a.kind) {
      case ModelKind::FinFun: return FinFunAlgebra::create({a.n, a.y, true}, tol);
      case ModelKind::Matrix: {
        MatrixAlgebra::Params p{a.n, std::nullopt};
        if (a.block) p.block = BlockProjection{a.block->first, a.block->second};
        return MatrixAlgebra::create(p, tol);
      }
      case ModelKind::Toeplitz: return ToeplitzAlgebra::create({a.degree_cap, a.correction_dim}, tol);
      case ModelKind::Crossed:
        return CrossedAlgebra::create({DynSystem(a.n, a.alpha, a.y), a.window}, tol);
    }
    throw ConfigError("algebra.kind", "unsupported");
  });
}

Element build_element(const Algebra& ctx, const json& j, const std::string& path) {
  return rethrow_as_config(path, [&]() -> Element {
    const auto* fin = dynamic_cast<const FinFunAlgebra*>(&ctx);
    const auto* mat = dynamic_cast<const MatrixAlgebra*>(&ctx);
    const auto* toe = dynamic_cast<const ToeplitzAlgebra*>(&ctx);
    const auto* cro = dynamic_cast<const CrossedAlgebra*>(&ctx);

    auto block = [&]() {
      if (!mat || !mat->block()) throw ConfigError(path, "needs a matrix algebra with a block decomposition");
      return *mat->block();
    };

    if (j.is_string()) {
      const auto s = j.get<std::string>();
      if (s == "unit") return ctx.unit();
      if (s == "zero") return ctx.zero();
      if (s == "u" && cro) return cro->u_power(1);
      if (s == "projection") return mat->matrix(block().matrix());
      if (s == "partial_isometry") return mat->matrix(make_partial_isometry(block()));
      if (s == "complex_structure") return mat->matrix(partial_isometry_complex_structure(block()));
      throw ConfigError(path, "unknown element name '" + s + "' for this algebra");
    }
    if (!j.is_object()) throw ConfigError(path, "expected an element name or object");

    std::optional<Element> e;
    if (j.contains("scalar")) {
      e = ctx.scale(as_scalar(j["scalar"], join(path, "scalar")), ctx.unit());
    } else if (j.contains("random")) {
      if (!j["random"].is_number_integer() || j["random"].get<std::int64_t>() < 0)
        throw ConfigError(join(path, "random"), "expected a non-negative seed");
      Rng rng(j["random"].get<std::uint64_t>());
      e = ctx.random_element(rng, 0);
    } else if (j.contains("sum") || j.contains("product")) {
      const bool is_sum = j.contains("sum");
      const json& parts = is_sum ? j["sum"] : j["product"];
      const std::string p = join(path, is_sum ? "sum" : "product");
      if (!parts.is_array() || parts.empty()) throw ConfigError(p, "expected a nonempty array");
      e = build_element(ctx, parts[0], index(p, 0));
      for (std::size_t i = 1; i < parts.size(); ++i) {
        const Element x = build_element(ctx, parts[i], index(p, i));
        e = is_sum ? ctx.add(*e, x) : ctx.mul(*e, x);
      }
    } else if (fin && j.contains("values")) {
      e = fin->function(as_scalar_list(j["values"], join(path, "values")));
    } else if (fin && j.contains("delta")) {
      e = fin->delta(as_int(j["delta"], join(path, "delta")));
    } else if (mat && j.contains("matrix")) {
      e = mat->matrix(as_matrix(j["matrix"], join(path, "matrix")));
    } else if (mat && j.contains("elementary")) {
      const auto ij = as_int_list(j["elementary"], join(path, "elementary"));
      if (ij.size() != 2) throw ConfigError(join(path, "elementary"), "expected [i, j]");
      e = mat->elementary(ij[0], ij[1]);
    } else if (toe && (j.contains("symbol") || j.contains("correction") || j.contains("shift"))) {
      if (j.contains("shift")) {
        e = toe->shift_power(as_int(j["shift"], join(path, "shift")));
      } else {
        std::map<int, Scalar> coeffs;
        if (j.contains("symbol")) {
          const json& s = j["symbol"];
          const std::string p = join(path, "symbol");
          if (!s.is_array()) throw ConfigError(p, "expected an array of [degree, coefficient]");
          for (std::size_t i = 0; i < s.size(); ++i) {
            if (!s[i].is_array() || s[i].size() != 2) throw ConfigError(index(p, i), "expected [degree, coefficient]");
            coeffs[as_int(s[i][0], index(p, i))] += as_scalar(s[i][1], index(p, i));
          }
        }
        Eigen::MatrixXcd corr;
        if (j.contains("correction")) corr = as_matrix(j["correction"], join(path, "correction"));
        e = toe->element(TrigPoly::from_coeffs(coeffs), std::move(corr));
      }
    } else if (cro && j.contains("terms")) {
      const json& t = j["terms"];
      const std::string p = join(path, "terms");
      if (!t.is_array()) throw ConfigError(p, "expected an array of {power, values}");
      e = ctx.zero();
      for (std::size_t i = 0; i < t.size(); ++i) {
        const std::string q = index(p, i);
        e = ctx.add(*e, cro->term(as_scalar_list(member(t[i], "values", q), join(q, "values")),
                                  as_int(member(t[i], "power", q), join(q, "power"))));
      }
    } else if (cro && j.contains("values")) {
      e = cro->function(as_scalar_list(j["values"], join(path, "values")));
    } else if (cro && j.contains("delta")) {
      const int power = j.contains("power") ? as_int(j["power"], join(path, "power")) : 0;
      e = cro->monomial(as_int(j["delta"], join(path, "delta")), power);
    } else if (cro && j.contains("u_power")) {
      e = cro->u_power(as_int(j["u_power"], join(path, "u_power")));
    } else {
      throw ConfigError(path, "unrecognised element for a " + std::string(to_string(ctx.kind())) + " algebra");
    }
    if (j.contains("coeff")) e = ctx.scale(as_scalar(j["coeff"], join(path, "coeff")), *e);
    return *e;
  });
}

FunctionalSpec build_functional(const Algebra& ctx, const json& j, const std::string& path) {
  const std::string kind_path = join(path, "kind");
  const json& kind = member(j, "kind", path);
  if (!kind.is_string()) throw ConfigError(kind_path, "expected a string");
  const auto k = kind.get<std::string>();
  FunctionalSpec out = rethrow_as_config(path, [&]() -> FunctionalSpec {
    if (k == "evaluation") return point_evaluation(as_int(member(j, "point", path), join(path, "point")));
    if (k == "uniform_on_y") {
      if (const auto* f = dynamic_cast<const FinFunAlgebra*>(&ctx)) return uniform_measure(f->y_set());
      if (const auto* c = dynamic_cast<const CrossedAlgebra*>(&ctx)) return uniform_measure(c->system().y_set());
      throw ConfigError(kind_path, "uniform_on_y needs a finfun or crossed algebra");
    }
    if (k == "point_measures") {
      PointMeasures m;
      const json& fams = member(j, "families", path);
      const std::string p = join(path, "families");
      if (!fams.is_array()) throw ConfigError(p, "expected an array");
      for (std::size_t i = 0; i < fams.size(); ++i) {
        const std::string q = index(p, i);
        const int power = as_int(member(fams[i], "power", q), join(q, "power"));
        const json& ws = member(fams[i], "weights", q);
        if (!ws.is_array()) throw ConfigError(join(q, "weights"), "expected an array of [point, weight]");
        for (std::size_t r = 0; r < ws.size(); ++r) {
          const std::string wp = index(join(q, "weights"), r);
          if (!ws[r].is_array() || ws[r].size() != 2) throw ConfigError(wp, "expected [point, weight]");
          m.families[power].emplace_back(as_int(ws[r][0], wp), as_scalar(ws[r][1], wp));
        }
      }
      return m;
    }
    if (k == "circle_measure") {
      CircleMeasure m;
      const json& angles = member(j, "angles", path);
      if (!angles.is_array()) throw ConfigError(join(path, "angles"), "expected an array");
      for (std::size_t i = 0; i < angles.size(); ++i) m.angles.push_back(as_double(angles[i], index(join(path, "angles"), i)));
      m.weights = as_scalar_list(member(j, "weights", path), join(path, "weights"));
      return m;
    }
    if (k == "uniform_circle") {
      const int points = as_int(member(j, "points", path), join(path, "points"));
      if (points < 1) throw ConfigError(join(path, "points"), "must be >= 1");
      CircleMeasure m;
      for (int i = 0; i < points; ++i) {
        m.angles.push_back(2.0 * std::numbers::pi * i / points);
        m.weights.emplace_back(1.0 / points);
      }
      return m;
    }
    if (k == "codiag_trace") {
      const auto* mat = dynamic_cast<const MatrixAlgebra*>(&ctx);
      if (!mat || !mat->block()) throw ConfigError(kind_path, "codiag_trace needs a matrix algebra with a block");
      return CoDiagTrace{*mat->block()};
    }
    throw ConfigError(kind_path, "unknown functional kind '" + k + "'");
  });
  rethrow_as_config(path, [&] {
    validate_functional(ctx, out);
    return 0;
  });
  return out;
}

OperatorSpec build_operator(const Algebra& ctx, const json& j, const std::string& path) {
  const json& kind = member(j, "kind", path);
  if (!kind.is_string()) throw ConfigError(join(path, "kind"), "expected a string");
  const auto k = kind.get<std::string>();
  auto elem = [&](const char* key) { return build_element(ctx, member(j, key, path), join(path, key)); };
  if (k == "rank_one") {
    FunctionalSpec l = build_functional(ctx, member(j, "functional", path), join(path, "functional"));
    Element target = j.contains("target") ? elem("target") : ctx.unit();
    return rethrow_as_config(path, [&] { return OperatorSpec::rank_one(std::move(l), std::move(target)); });
  }
  if (k == "left_mult") return OperatorSpec::left_mult(elem("b"));
  if (k == "right_mult") return OperatorSpec::right_mult(elem("b"));
  if (k == "two_sided") return OperatorSpec::two_sided(elem("a"), elem("b"));
  if (k == "adjoint") return OperatorSpec::adjoint(elem("d"));
  if (k == "combination") {
    const json& terms = member(j, "terms", path);
    const std::string p = join(path, "terms");
    if (!terms.is_array() || terms.empty()) throw ConfigError(p, "expected a nonempty array");
    std::optional<OperatorSpec> out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const std::string q = index(p, i);
      const Scalar c = terms[i].contains("coeff") ? as_scalar(terms[i]["coeff"], join(q, "coeff")) : Scalar(1.0);
      OperatorSpec t = build_operator(ctx, member(terms[i], "operator", q), join(q, "operator"));
      out = out ? out->plus(c, t) : t.scaled(c);
    }
    return *out;
  }
  throw ConfigError(join(path, "kind"), "unknown operator kind '" + k + "'");
}

// ------------------------------------------------------------ reporting

json describe_check(const CheckReport& r) {
  json j;
  j["passed"] = r.passed;
  j["trials"] = r.trials;
  j["worst_residual"] = r.worst_residual;
  j["worst_relative"] = r.worst_relative;
  if (r.witness) {
    json w;
    for (const auto& [name, e] : r.witness->inputs) w["inputs"][name] = e.context().describe(e);
    w["residual"] = r.witness->residual;
    w["scale"] = r.witness->scale;
    j["witness"] = w;
  }
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json describe_verdict(const TorsionVerdict& v) {
  json j;
  j["verdict"] = std::string(to_string(v.verdict));
  j["strategy"] = std::string(to_string(v.strategy));
  j["trials"] = v.trials;
  j["worst_residual"] = v.worst_residual;
  j["worst_relative"] = v.worst_relative;
  if (v.witness) {
    j["witness"] = {{"v", v.witness->v.context().describe(v.witness->v)},
                    {"w", v.witness->w.context().describe(v.witness->w)},
                    {"residual", v.witness->residual},
                    {"threshold", v.witness->threshold}};
  }
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

namespace {

// Evaluates the constructor witness against the scenario operator; falls
// back to random search when the constructor does not apply or its pair
// does not fail.
TorsionVerdict constructor_verdict(const Algebra& ctx, const OperatorSpec& op, const SamplingConfig& s,
                                   std::vector<std::string>& notes) {
  try {
    const auto* cro = dynamic_cast<const CrossedAlgebra*>(&ctx);
    if (!cro || op.terms().size() != 1) throw InapplicableError("constructor inapplicable: needs a single-class crossed operator");
    const auto self = std::static_pointer_cast<const CrossedAlgebra>(cro->shared_from_this());
    std::optional<std::pair<Element, Element>> pair;
    const OperatorTerm& term = op.terms().front().second;
    if (std::holds_alternative<RankOne>(term)) {
      for (int y : cro->system().y_set())
        if (!cro->system().is_fixed(y)) {
          auto c = counterexample_rank_one_crossed(self, y);
          pair.emplace(c.v, c.w);
          break;
        }
      if (!pair) throw InapplicableError("constructor inapplicable: every point of Y is fixed");
    } else if (std::holds_alternative<Adjoint>(term)) {
      auto c = counterexample_ad_u_crossed(self);
      pair.emplace(c.v, c.w);
    } else {
      throw InapplicableError("constructor inapplicable: no constructor for this operator class");
    }
    const double residual = ctx.ideal_residual(torsion(op, pair->first, pair->second));
    const double n1 = 1.0 + op.norm_estimate();
    const double scale = ctx.norm_surrogate(pair->first) * ctx.norm_surrogate(pair->second) * n1 * n1;
    if (!ctx.within_tolerance(residual, scale)) {
      TorsionVerdict v;
      v.verdict = Verdict::Counterexample;
      v.strategy = Strategy::GeneratorPairs;
      v.trials = 1;
      v.worst_residual = residual;
      v.worst_relative = residual / (1.0 + scale);
      v.witness = TorsionWitness{pair->first, pair->second, residual,
                                 ctx.tol().abs_tol + ctx.tol().rel_tol * scale};
      v.note = "constructor witness";
      return v;
    }
    notes.push_back("constructor witness did not fail; fell back to random search");
  } catch (const InapplicableError& e) {
    notes.push_back(std::string(e.what()) + "; fell back to random search");
  }
  TorsionVerdict v = nijenhuis_verdict(ctx, op, Strategy::Random, s.seed, s.trials, s.window);
  v.note = "random fallback";
  return v;
}

TorsionVerdict run_verdict(const Algebra& ctx, const OperatorSpec& op, const SamplingConfig& s,
                           std::vector<std::string>& notes) {
  if (s.strategy == "constructor") return constructor_verdict(ctx, op, s, notes);
  Strategy st = Strategy::Both;
  if (s.strategy == "generator_pairs") st = Strategy::GeneratorPairs;
  if (s.strategy == "random") st = Strategy::Random;
  return nijenhuis_verdict(ctx, op, st, s.seed, s.trials, s.window);
}

}  // namespace

const CheckResult* RunReport::find(CheckKind k) const {
  for (const auto& r : results)
    if (r.kind == k) return &r;
  return nullptr;
}

std::string RunReport::table_symbol() const {
  if (config.open) return "open";
  const CheckKind k = config.cell && config.cell->table == 2 ? CheckKind::AlmostComplex : CheckKind::Nijenhuis;
  const CheckResult* r = find(k);
  return r ? r->symbol : "open";
}

std::vector<std::string> RunReport::expectation_failures() const {
  std::vector<std::string> out;
  for (const auto& [check, symbol] : config.expect) {
    const CheckResult* found = nullptr;
    for (const auto& r : results)
      if (to_string(r.kind) == check) found = &r;
    if (!found)
      out.push_back(check + ": expected '" + symbol + "' but the check did not run");
    else if (found->symbol != symbol)
      out.push_back(check + ": expected '" + symbol + "', got '" + found->symbol + "'");
  }
  return out;
}

json RunReport::to_json(bool with_timing) const {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["config_echo"] = nij::to_json(config);
  json results_json = json::array();
  for (const auto& r : results) {
    json rj = r.detail;
    rj["check"] = std::string(to_string(r.kind));
    rj["symbol"] = r.symbol;
    results_json.push_back(rj);
  }
  j["results"] = results_json;
  j["notes"] = notes;
  if (with_timing) j["seconds"] = seconds;
  return j;
}

RunReport run_scenario(const ScenarioConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.config = config;
  const AlgebraPtr ctx = build_algebra(config.algebra, config.sampling);
  const OperatorSpec op = build_operator(*ctx, config.op, "operator");
  const SamplingConfig& s = config.sampling;

  std::optional<TorsionVerdict> verdict;
  auto get_verdict = [&]() -> const TorsionVerdict& {
    if (!verdict) verdict = run_verdict(*ctx, op, s, report.notes);
    return *verdict;
  };
  auto symbol = [&](std::string sym) { return config.open ? std::string("open") : sym; };

  for (CheckKind k : config.checks) {
    CheckResult r{k, "", json::object()};
    switch (k) {
      case CheckKind::Admissible: {
        const CheckReport rep = check_admissible(*ctx, op, s.seed, s.trials, s.window);
        r.detail = describe_check(rep);
        r.symbol = symbol(rep.passed ? "+" : "-");
        break;
      }
      case CheckKind::Nijenhuis: {
        const CheckReport zero = check_quotient_zero(*ctx, op, s.seed, s.trials, s.window);
        const TorsionVerdict& v = get_verdict();
        r.detail["quotient_zero"] = zero.passed;
        r.detail["quotient_zero_check"] = describe_check(zero);
        r.detail["torsion"] = describe_verdict(v);
        r.symbol = symbol(zero.passed ? "0" : (v.holds() ? "+" : "-"));
        break;
      }
      case CheckKind::AlmostComplex: {
        const CheckReport ac = check_almost_complex(*ctx, op, s.seed, s.trials, s.window);
        const TorsionVerdict& v = get_verdict();
        r.detail["almost_complex"] = describe_check(ac);
        r.detail["integrable"] = v.holds();
        r.detail["torsion"] = describe_verdict(v);
        r.symbol = symbol(ac.passed && v.holds() ? "+" : "-");
        break;
      }
    }
    report.results.push_back(std::move(r));
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace nij
