#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nij/algebra.hpp"
#include "nij/finfun_matrix.hpp"

namespace nij {

// l(sum_k f_k u^k) = sum_k sum_(x, w) w * f_k(x). FinFun uses power 0 only.
// Annihilates the ideal when every point lies in Y.
struct PointMeasures {
  std::map<int, std::vector<std::pair<int, Scalar>>> families;
};

// l(T_phi + F) = sum_i w_i phi(exp(i theta_i)); blind to the correction.
struct CircleMeasure {
  std::vector<double> angles;
  std::vector<Scalar> weights;
};

// trace((1-P) a) / trace(1-P) in the matrix model.
struct CoDiagTrace {
  BlockProjection projection;
};

using FunctionalSpec = std::variant<PointMeasures, CircleMeasure, CoDiagTrace>;

Scalar evaluate(const FunctionalSpec& l, const Element& a);
// Total variation of the weights (1 for CoDiagTrace).
double functional_mass(const FunctionalSpec& l);
// Throws InputError unless l vanishes on the ideal of ctx by construction.
void validate_functional(const Algebra& ctx, const FunctionalSpec& l);

PointMeasures point_evaluation(int point);
PointMeasures uniform_measure(const std::vector<int>& points);

struct RankOne {
  FunctionalSpec functional;
  Element target;
};
struct LeftMult {
  Element b;
};
struct RightMult {
  Element b;
};
struct TwoSided {
  Element a;
  Element b;
};
struct Adjoint {
  Element d;
};

using OperatorTerm = std::variant<RankOne, LeftMult, RightMult, TwoSided, Adjoint>;

std::string_view class_name(const OperatorTerm& t);

// Linear combination sum_i c_i N_i of the elementary operator classes:
//   RankOne    a -> l(a) n
//   LeftMult   a -> B a
//   RightMult  a -> a B
//   TwoSided   a -> A a B
//   Adjoint    a -> [d, a]
class OperatorSpec {
 public:
  // Unchecked; the named constructors below validate their inputs.
  explicit OperatorSpec(OperatorTerm term);

  static OperatorSpec rank_one(FunctionalSpec l, Element target);
  static OperatorSpec left_mult(Element b);
  static OperatorSpec right_mult(Element b);
  static OperatorSpec two_sided(Element a, Element b);
  static OperatorSpec adjoint(Element d);

  // this + lambda * other
  OperatorSpec plus(Scalar lambda, const OperatorSpec& other) const;
  OperatorSpec scaled(Scalar lambda) const;

  const std::vector<std::pair<Scalar, OperatorTerm>>& terms() const { return terms_; }
  const Algebra& context() const { return *context_; }

  // Per-class bound: |l|-mass * ||n||, ||A|| ||B||, 2 ||d||.
  double norm_estimate() const;
  std::string describe() const;

 private:
  AlgebraPtr context_;
  std::vector<std::pair<Scalar, OperatorTerm>> terms_;
};

Element apply(const OperatorSpec& op, const Element& a);

struct Witness {
  std::vector<std::pair<std::string, Element>> inputs;
  double residual = 0.0;
  double scale = 0.0;
};

struct CheckReport {
  bool passed = true;
  int trials = 0;
  // Largest raw ideal residual over all trials.
  double worst_residual = 0.0;
  // Largest residual / (1 + expression scale).
  double worst_relative = 0.0;
  // First failing trial.
  std::optional<Witness> witness;
  std::string note;
};

// Nk in k on the ideal generators plus random ideal elements, and
// Ad_g N - N Ad_g into k for g = 1 + k with ||k|| <= neumann_norm_cap.
CheckReport check_admissible(const Algebra& ctx, const OperatorSpec& op, std::uint64_t seed, int trials,
                             int window = 0);

// N(N(a)) + a in k on the generators plus random elements.
CheckReport check_almost_complex(const Algebra& ctx, const OperatorSpec& op, std::uint64_t seed, int trials,
                                 int window = 0);

// N(a) in k on the generators plus random elements: the induced map on the
// quotient is zero.
CheckReport check_quotient_zero(const Algebra& ctx, const OperatorSpec& op, std::uint64_t seed, int trials,
                                int window = 0);

}  // namespace nij
