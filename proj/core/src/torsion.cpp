#include "nij/torsion.hpp"

namespace nij {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::HoldsOnSamples: return "holds_on_samples";
    case Verdict::HoldsExhaustive: return "holds_exhaustive";
    case Verdict::Counterexample: return "counterexample";
  }
  return "unknown";
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::GeneratorPairs: return "generator_pairs";
    case Strategy::Random: return "random";
    case Strategy::Both: return "both";
  }
  return "unknown";
}

Element torsion(const OperatorSpec& op, const Element& v, const Element& w) {
  const Algebra& ctx = op.context();
  const Element nv = apply(op, v);
  const Element nw = apply(op, w);
  Element out = apply(op, ctx.commutator(v, nw));
  out = ctx.add(out, apply(op, ctx.commutator(nv, w)));
  out = ctx.sub(out, ctx.commutator(nv, nw));
  return ctx.sub(out, apply(op, apply(op, ctx.commutator(v, w))));
}

namespace {

constexpr std::uint64_t kPairSalt = 0x7023a9ULL;

struct Scan {
  const Algebra& ctx;
  const OperatorSpec& op;
  double n_factor;
  TorsionVerdict& out;
  bool failed = false;

  void check(const Element& v, const Element& w) {
    const double residual = ctx.ideal_residual(torsion(op, v, w));
    const double scale = ctx.norm_surrogate(v) * ctx.norm_surrogate(w) * n_factor;
    ++out.trials;
    out.worst_residual = std::max(out.worst_residual, residual);
    out.worst_relative = std::max(out.worst_relative, residual / (1.0 + scale));
    if (ctx.within_tolerance(residual, scale)) return;
    failed = true;
    if (!out.witness || residual > out.witness->residual)
      out.witness = TorsionWitness{v, w, residual, ctx.tol().abs_tol + ctx.tol().rel_tol * scale};
  }
};

}  // namespace

TorsionVerdict nijenhuis_verdict(const Algebra& ctx, const OperatorSpec& op, Strategy strategy, std::uint64_t seed,
                                 int trials, int window) {
  if (&op.context() != &ctx) throw StructuralError("operator belongs to a different algebra context");
  TorsionVerdict out;
  out.strategy = strategy;
  const double n1 = 1.0 + op.norm_estimate();
  Scan scan{ctx, op, n1 * n1, out};

  bool exhaustive = false;
  if (strategy != Strategy::Random) {
    // torsion(v, v) = 0 and torsion is antisymmetric: pairs i < j suffice.
    const auto gens = ctx.generators(window);
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i + 1; j < gens.size(); ++j) scan.check(gens[i], gens[j]);
    exhaustive = !scan.failed;
  }
  if (strategy != Strategy::GeneratorPairs) {
    for (int i = 0; i < trials; ++i) {
      Rng rng = Rng::substream(seed ^ kPairSalt, static_cast<std::uint64_t>(i));
      const Element v = ctx.random_element(rng, window);
      const Element w = ctx.random_element(rng, window);
      scan.check(v, w);
    }
  }
  if (scan.failed)
    out.verdict = Verdict::Counterexample;
  else
    out.verdict = exhaustive ? Verdict::HoldsExhaustive : Verdict::HoldsOnSamples;
  return out;
}

RankOneCounterexample counterexample_rank_one_crossed(const std::shared_ptr<const CrossedAlgebra>& ctx, int y) {
  const DynSystem& sys = ctx->system();
  if (y < 0 || y >= sys.size() || !sys.in_y(y)) throw InputError("counterexample: point must lie in Y");
  if (sys.is_fixed(y)) throw InputError("no counterexample at fixed points");
  OperatorSpec op = OperatorSpec::rank_one(point_evaluation(y), ctx->unit());
  return {ctx->monomial(y, 1), ctx->u_power(-1), std::move(op), 1.0};
}

AdUCounterexample counterexample_ad_u_crossed(const std::shared_ptr<const CrossedAlgebra>& ctx) {
  const DynSystem& sys = ctx->system();
  for (int y : sys.y_set()) {
    if (sys.orbit_length(y) < 3) continue;
    return {ctx->monomial(sys.apply(y, 1), 0), ctx->monomial(sys.apply(y, 2), 0), y, 1.0};
  }
  throw InapplicableError("constructor inapplicable: Y has no orbit of length >= 3");
}

}  // namespace nij
