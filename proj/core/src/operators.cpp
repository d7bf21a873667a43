#include "nij/operators.hpp"

#include <cmath>
#include <sstream>

#include "nij/crossed.hpp"
#include "nij/toeplitz.hpp"

namespace nij {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const Element& anchor(const OperatorTerm& t) {
  return std::visit(overloaded{[](const RankOne& r) -> const Element& { return r.target; },
                               [](const LeftMult& m) -> const Element& { return m.b; },
                               [](const RightMult& m) -> const Element& { return m.b; },
                               [](const TwoSided& m) -> const Element& { return m.a; },
                               [](const Adjoint& m) -> const Element& { return m.d; }},
                    t);
}

void require_same(const Element& a, const Element& b) {
  if (&a.context() != &b.context()) throw StructuralError("operator parameters belong to different contexts");
}

Element apply_term(const OperatorTerm& t, const Element& a) {
  return std::visit(overloaded{[&](const RankOne& r) { return evaluate(r.functional, a) * r.target; },
                               [&](const LeftMult& m) { return m.b * a; },
                               [&](const RightMult& m) { return a * m.b; },
                               [&](const TwoSided& m) { return m.a * a * m.b; },
                               [&](const Adjoint& m) { return commutator(m.d, a); }},
                    t);
}

// Records one trial into the report.
void record(CheckReport& rep, const Algebra& ctx, double residual, double scale,
            std::vector<std::pair<std::string, Element>> inputs) {
  ++rep.trials;
  rep.worst_residual = std::max(rep.worst_residual, residual);
  rep.worst_relative = std::max(rep.worst_relative, residual / (1.0 + scale));
  if (!ctx.within_tolerance(residual, scale)) {
    if (rep.passed) rep.witness = Witness{std::move(inputs), residual, scale};
    rep.passed = false;
  }
}

void require_context(const Algebra& ctx, const OperatorSpec& op) {
  if (&op.context() != &ctx) throw StructuralError("operator belongs to a different algebra context");
}

// Substream salts so the different sample families do not share draws.
constexpr std::uint64_t kIdealSalt = 0x1d5a1ULL;
constexpr std::uint64_t kGroupSalt = 0x62f0caULL;
constexpr std::uint64_t kPlainSalt = 0x5a3f1eULL;

}  // namespace

Scalar evaluate(const FunctionalSpec& l, const Element& a) {
  return std::visit(
      overloaded{
          [&](const PointMeasures& m) -> Scalar {
            Scalar s{};
            if (const auto* f = std::get_if<FinFunData>(&a.payload())) {
              if (auto it = m.families.find(0); it != m.families.end())
                for (const auto& [x, w] : it->second) s += w * f->values.at(static_cast<std::size_t>(x));
              return s;
            }
            const auto& c = a.as<CrossedData>();
            for (const auto& [k, weights] : m.families) {
              auto it = c.terms.find(k);
              if (it == c.terms.end()) continue;
              for (const auto& [x, w] : weights) s += w * it->second.at(static_cast<std::size_t>(x));
            }
            return s;
          },
          [&](const CircleMeasure& m) -> Scalar {
            const auto& t = a.as<ToeplitzData>();
            Scalar s{};
            for (std::size_t i = 0; i < m.angles.size(); ++i) s += m.weights[i] * t.symbol.at_angle(m.angles[i]);
            return s;
          },
          [&](const CoDiagTrace& m) -> Scalar { return codiag_functional(m.projection, a.as<MatrixData>().entries); }},
      l);
}

double functional_mass(const FunctionalSpec& l) {
  return std::visit(overloaded{[](const PointMeasures& m) {
                                 double s = 0.0;
                                 for (const auto& [k, ws] : m.families)
                                   for (const auto& [x, w] : ws) s += std::abs(w);
                                 return s;
                               },
                               [](const CircleMeasure& m) {
                                 double s = 0.0;
                                 for (const auto& w : m.weights) s += std::abs(w);
                                 return s;
                               },
                               [](const CoDiagTrace&) { return 1.0; }},
                    l);
}

void validate_functional(const Algebra& ctx, const FunctionalSpec& l) {
  std::visit(
      overloaded{
          [&](const PointMeasures& m) {
            if (const auto* f = dynamic_cast<const FinFunAlgebra*>(&ctx)) {
              for (const auto& [k, ws] : m.families) {
                if (k != 0 && !ws.empty()) throw InputError("functional: C(X) measures live on power 0 only");
                for (const auto& [x, w] : ws)
                  if (x < 0 || x >= f->size() || !f->in_y(x)) throw InputError("functional: support must lie in Y");
              }
            } else if (const auto* c = dynamic_cast<const CrossedAlgebra*>(&ctx)) {
              for (const auto& [k, ws] : m.families)
                for (const auto& [x, w] : ws)
                  if (x < 0 || x >= c->system().size() || !c->system().in_y(x))
                    throw InputError("functional: support must lie in Y");
            } else {
              throw StructuralError("functional: point measures need a finfun or crossed context");
            }
          },
          [&](const CircleMeasure& m) {
            if (ctx.kind() != ModelKind::Toeplitz) throw StructuralError("functional: circle measure needs a toeplitz context");
            if (m.angles.size() != m.weights.size()) throw InputError("functional: angle and weight counts differ");
          },
          [&](const CoDiagTrace& m) {
            const auto* mat = dynamic_cast<const MatrixAlgebra*>(&ctx);
            if (!mat) throw StructuralError("functional: co-diagonal trace needs a matrix context");
            if (m.projection.size() != mat->size()) throw InputError("functional: projection size differs from n");
            if (m.projection.dim_plus < 1 || m.projection.dim_minus < 1)
              throw InputError("functional: projection must be non-trivial");
          }},
      l);
  if (std::abs(evaluate(l, ctx.unit()) - 1.0) > 1e-12) throw InputError("functional: l(1) must equal 1");
}

PointMeasures point_evaluation(int point) {
  PointMeasures m;
  m.families[0] = {{point, 1.0}};
  return m;
}

PointMeasures uniform_measure(const std::vector<int>& points) {
  PointMeasures m;
  auto& ws = m.families[0];
  for (int p : points) ws.emplace_back(p, 1.0 / static_cast<double>(points.size()));
  return m;
}

std::string_view class_name(const OperatorTerm& t) {
  return std::visit(overloaded{[](const RankOne&) { return "rank_one"; }, [](const LeftMult&) { return "left_mult"; },
                               [](const RightMult&) { return "right_mult"; },
                               [](const TwoSided&) { return "two_sided"; }, [](const Adjoint&) { return "adjoint"; }},
                    t);
}

OperatorSpec::OperatorSpec(OperatorTerm term) : context_(anchor(term).context_ptr()) {
  if (const auto* t = std::get_if<TwoSided>(&term)) require_same(t->a, t->b);
  terms_.emplace_back(1.0, std::move(term));
}

OperatorSpec OperatorSpec::rank_one(FunctionalSpec l, Element target) {
  validate_functional(target.context(), l);
  return OperatorSpec(RankOne{std::move(l), std::move(target)});
}

OperatorSpec OperatorSpec::left_mult(Element b) { return OperatorSpec(LeftMult{std::move(b)}); }
OperatorSpec OperatorSpec::right_mult(Element b) { return OperatorSpec(RightMult{std::move(b)}); }
OperatorSpec OperatorSpec::two_sided(Element a, Element b) { return OperatorSpec(TwoSided{std::move(a), std::move(b)}); }
OperatorSpec OperatorSpec::adjoint(Element d) { return OperatorSpec(Adjoint{std::move(d)}); }

OperatorSpec OperatorSpec::plus(Scalar lambda, const OperatorSpec& other) const {
  if (other.context_ != context_) throw StructuralError("operator combination across contexts");
  if (!is_finite(lambda)) throw InputError("non-finite scalar");
  OperatorSpec out = *this;
  for (const auto& [c, t] : other.terms_) out.terms_.emplace_back(lambda * c, t);
  return out;
}

OperatorSpec OperatorSpec::scaled(Scalar lambda) const {
  if (!is_finite(lambda)) throw InputError("non-finite scalar");
  OperatorSpec out = *this;
  for (auto& term : out.terms_) term.first *= lambda;
  return out;
}

double OperatorSpec::norm_estimate() const {
  double s = 0.0;
  for (const auto& [c, t] : terms_) {
    const double e = std::visit(
        overloaded{[](const RankOne& r) { return functional_mass(r.functional) * norm_surrogate(r.target); },
                   [](const LeftMult& m) { return norm_surrogate(m.b); },
                   [](const RightMult& m) { return norm_surrogate(m.b); },
                   [](const TwoSided& m) { return norm_surrogate(m.a) * norm_surrogate(m.b); },
                   [](const Adjoint& m) { return 2.0 * norm_surrogate(m.d); }},
        t);
    s += std::abs(c) * e;
  }
  return s;
}

std::string OperatorSpec::describe() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& [c, t] = terms_[i];
    os << (i ? " + " : "") << "(" << format_scalar(c) << ")*" << class_name(t);
  }
  return os.str();
}

Element apply(const OperatorSpec& op, const Element& a) {
  const Algebra& ctx = op.context();
  if (&a.context() != &ctx) throw StructuralError("operator applied to an element of a different context");
  Element out = ctx.zero();
  for (const auto& [c, t] : op.terms()) {
    Element v = apply_term(t, a);
    out = ctx.add(out, c == Scalar(1.0) ? v : ctx.scale(c, v));
  }
  return out;
}

CheckReport check_admissible(const Algebra& ctx, const OperatorSpec& op, std::uint64_t seed, int trials, int window) {
  require_context(ctx, op);
  if (trials < 1) throw InputError("check_admissible: trials must be >= 1");
  CheckReport rep;
  const double n_est = op.norm_estimate();

  // N k in k
  for (const Element& k : ctx.ideal_generators(window))
    record(rep, ctx, ctx.ideal_residual(apply(op, k)), n_est * ctx.norm_surrogate(k), {{"k", k}});
  for (int i = 0; i < trials; ++i) {
    Rng rng = Rng::substream(seed ^ kIdealSalt, static_cast<std::uint64_t>(i));
    const Element k = ctx.random_ideal_element(rng, window);
    record(rep, ctx, ctx.ideal_residual(apply(op, k)), n_est * ctx.norm_surrogate(k), {{"k", k}});
  }

  // Ad_g N - N Ad_g into k
  const Element one = ctx.unit();
  for (int i = 0; i < trials; ++i) {
    Rng rng = Rng::substream(seed ^ kGroupSalt, static_cast<std::uint64_t>(i));
    Element k = ctx.random_ideal_element(rng, window);
    const double nk = ctx.norm_surrogate(k);
    const double target = ctx.tol().neumann_norm_cap * (0.05 + 0.95 * rng.uniform());
    if (nk > 0.0) k = ctx.scale(target / nk, k);
    const Element a = ctx.random_element(rng, window);
    const Element g = ctx.add(one, k);
    try {
      const Element g_inv = ctx.neumann_inverse(g, k);
      const Element lhs = ctx.ad_conjugate(g, g_inv, apply(op, a));
      const Element rhs = apply(op, ctx.ad_conjugate(g, g_inv, a));
      const double scale = n_est * ctx.norm_surrogate(a) * ctx.norm_surrogate(g) * ctx.norm_surrogate(g_inv);
      record(rep, ctx, ctx.ideal_residual(ctx.sub(lhs, rhs)), scale, {{"g", g}, {"a", a}});
    } catch (const NotInvertibleError& e) {
      ++rep.trials;
      rep.passed = false;
      if (rep.note.empty()) rep.note = std::string("inversion failed: ") + e.what();
    }
  }
  return rep;
}

CheckReport check_almost_complex(const Algebra& ctx, const OperatorSpec& op, std::uint64_t seed, int trials,
                                 int window) {
  require_context(ctx, op);
  if (trials < 1) throw InputError("check_almost_complex: trials must be >= 1");
  CheckReport rep;
  const double n_est = op.norm_estimate();
  auto trial = [&](const Element& a) {
    const Element e = ctx.add(apply(op, apply(op, a)), a);
    record(rep, ctx, ctx.ideal_residual(e), (1.0 + n_est) * (1.0 + n_est) * ctx.norm_surrogate(a), {{"a", a}});
  };
  for (const Element& a : ctx.generators(window)) trial(a);
  for (int i = 0; i < trials; ++i) {
    Rng rng = Rng::substream(seed ^ kPlainSalt, static_cast<std::uint64_t>(i));
    trial(ctx.random_element(rng, window));
  }
  return rep;
}

CheckReport check_quotient_zero(const Algebra& ctx, const OperatorSpec& op, std::uint64_t seed, int trials,
                                int window) {
  require_context(ctx, op);
  if (trials < 1) throw InputError("check_quotient_zero: trials must be >= 1");
  CheckReport rep;
  const double n_est = op.norm_estimate();
  auto trial = [&](const Element& a) {
    record(rep, ctx, ctx.ideal_residual(apply(op, a)), n_est * ctx.norm_surrogate(a), {{"a", a}});
  };
  for (const Element& a : ctx.generators(window)) trial(a);
  for (int i = 0; i < trials; ++i) {
    Rng rng = Rng::substream(seed ^ kPlainSalt, static_cast<std::uint64_t>(i));
    trial(ctx.random_element(rng, window));
  }
  return rep;
}

}  // namespace nij
