#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "nij/crossed.hpp"
#include "nij/operators.hpp"

namespace nij {

enum class Verdict { HoldsOnSamples, HoldsExhaustive, Counterexample };
enum class Strategy { GeneratorPairs, Random, Both };

std::string_view to_string(Verdict v);
std::string_view to_string(Strategy s);

struct TorsionWitness {
  Element v;
  Element w;
  double residual = 0.0;
  // abs_tol + rel_tol * ||v|| ||w|| (1 + ||N||_est)^2
  double threshold = 0.0;
};

struct TorsionVerdict {
  Verdict verdict = Verdict::HoldsOnSamples;
  // Largest-residual failing pair when verdict == Counterexample.
  std::optional<TorsionWitness> witness;
  int trials = 0;
  Strategy strategy = Strategy::Both;
  double worst_residual = 0.0;
  double worst_relative = 0.0;
  std::string note;

  bool holds() const { return verdict != Verdict::Counterexample; }
};

// N[v, Nw] + N[Nv, w] - [Nv, Nw] - N^2 [v, w]
Element torsion(const OperatorSpec& op, const Element& v, const Element& w);

// Decides whether torsion(N, v, w) lies in the ideal. GeneratorPairs walks
// every pair of the model's spanning set inside the window; since torsion
// is bilinear and the ideal is a subspace, passing all pairs proves the
// statement on the windowed subspace (HoldsExhaustive).
TorsionVerdict nijenhuis_verdict(const Algebra& ctx, const OperatorSpec& op, Strategy strategy, std::uint64_t seed,
                                 int trials, int window = 0);

struct RankOneCounterexample {
  Element v;
  Element w;
  OperatorSpec op;
  double expected_residual;
};

// v = delta_y u, w = u^{-1}, N = rank one with mu_0 = delta_y and n = 1.
// The torsion is -l([v, w]) 1 with quotient residual 1. Requires y in Y and
// alpha(y) != y.
RankOneCounterexample counterexample_rank_one_crossed(const std::shared_ptr<const CrossedAlgebra>& ctx, int y);

struct AdUCounterexample {
  Element v;
  Element w;
  int y;
  // u^2 coefficient of [[u, v], [u, w]] at y.
  Scalar expected_coefficient;
};

// v = delta_{alpha(y)}, w = delta_{alpha^2(y)} for some y in Y on an orbit of
// length >= 3. Throws InapplicableError when Y has no such orbit.
AdUCounterexample counterexample_ad_u_crossed(const std::shared_ptr<const CrossedAlgebra>& ctx);

}  // namespace nij
