#include <gtest/gtest.h>

#include <numbers>

#include "models.hpp"
#include "nij/operators.hpp"

using namespace nij;

namespace {

FunctionalSpec natural_functional(const Algebra& A) {
  switch (A.kind()) {
    case ModelKind::FinFun: return uniform_measure(dynamic_cast<const FinFunAlgebra&>(A).y_set());
    case ModelKind::Matrix: return CoDiagTrace{*dynamic_cast<const MatrixAlgebra&>(A).block()};
    case ModelKind::Toeplitz: {
      const double t = 2.0 * std::numbers::pi / 3.0;
      return CircleMeasure{{0.0, t, 2.0 * t}, {1.0 / 3, 1.0 / 3, 1.0 / 3}};
    }
    case ModelKind::Crossed: {
      PointMeasures m;
      m.families[0] = {{0, 0.75}, {1, 0.25}};
      m.families[1] = {{2, {0.0, 0.5}}};
      m.families[-2] = {{3, -0.5}};
      return m;
    }
  }
  return PointMeasures{};
}

std::vector<std::pair<std::string, OperatorSpec>> five_classes(const AlgebraPtr& A, std::uint64_t seed) {
  Rng r(seed);
  const Element b = A->random_element(r, 0), c = A->random_element(r, 0), d = A->random_element(r, 0);
  return {{"rank_one", OperatorSpec::rank_one(natural_functional(*A), A->random_element(r, 0))},
          {"left", OperatorSpec::left_mult(b)},
          {"right", OperatorSpec::right_mult(c)},
          {"two_sided", OperatorSpec::two_sided(b, c)},
          {"adjoint", OperatorSpec::adjoint(d)}};
}

}  // namespace

TEST(Functionals, EvaluateAndMass) {
  const auto F = nijtest::finfun6();
  const Element f = F->function({1.0, 2.0, 3.0, 4.0, 5.0, 6.0});
  EXPECT_NEAR(std::abs(evaluate(uniform_measure({0, 1, 2}), f) - 2.0), 0.0, 1e-15);
  EXPECT_EQ(evaluate(point_evaluation(1), f), Scalar(2.0));
  PointMeasures m;
  m.families[0] = {{0, 0.5}, {1, {0.0, 0.5}}};
  EXPECT_DOUBLE_EQ(functional_mass(m), 1.0);

  const auto T = nijtest::toeplitz3();
  const CircleMeasure at_one{{0.0}, {1.0}};
  EXPECT_EQ(evaluate(at_one, T->element(TrigPoly::from_coeffs({{1, 2.0}, {-1, 3.0}}), Eigen::MatrixXcd::Ones(2, 2))),
            Scalar(5.0));

  const auto X = nijtest::crossed_cycle5();
  PointMeasures pm;
  pm.families[0] = {{0, 1.0}};
  pm.families[2] = {{4, 2.0}};
  EXPECT_EQ(evaluate(pm, X->unit() + 3.0 * X->monomial(4, 2)), Scalar(7.0));
}

TEST(Functionals, ValidationRejectsNonAnnihilating) {
  const auto F = nijtest::finfun6();
  EXPECT_THROW(validate_functional(*F, point_evaluation(4)), InputError);
  EXPECT_THROW(validate_functional(*F, uniform_measure({0, 1, 5})), InputError);
  PointMeasures half;
  half.families[0] = {{0, 0.5}};
  EXPECT_THROW(validate_functional(*F, half), InputError);
  PointMeasures shifted;
  shifted.families[0] = {{0, 1.0}};
  shifted.families[1] = {{1, 1.0}};
  EXPECT_THROW(validate_functional(*F, shifted), InputError);
  EXPECT_THROW(validate_functional(*F, CircleMeasure{{0.0}, {1.0}}), StructuralError);
  EXPECT_NO_THROW(validate_functional(*F, point_evaluation(2)));

  const auto T = nijtest::toeplitz3();
  EXPECT_THROW(validate_functional(*T, CircleMeasure{{0.0, 1.0}, {1.0}}), InputError);
  EXPECT_THROW(validate_functional(*T, point_evaluation(0)), StructuralError);

  const auto X = nijtest::crossed_cycle5();
  EXPECT_THROW(validate_functional(*X, point_evaluation(5)), InputError);
  EXPECT_THROW(OperatorSpec::rank_one(point_evaluation(5), X->unit()), InputError);
}

TEST(Operators, ApplyMatchesDefinitions) {
  const auto M = nijtest::matrix4();
  Rng r(2);
  const Element a = M->random_element(r, 0), b = M->random_element(r, 0), x = M->random_element(r, 0);
  EXPECT_LE(norm_surrogate(apply(OperatorSpec::left_mult(b), x) - b * x), 0.0);
  EXPECT_LE(norm_surrogate(apply(OperatorSpec::right_mult(b), x) - x * b), 0.0);
  EXPECT_LE(norm_surrogate(apply(OperatorSpec::two_sided(a, b), x) - a * x * b), 1e-14);
  EXPECT_LE(norm_surrogate(apply(OperatorSpec::adjoint(a), x) - commutator(a, x)), 0.0);
  const OperatorSpec combo = OperatorSpec::left_mult(a).plus({0.0, 2.0}, OperatorSpec::adjoint(b));
  EXPECT_LE(norm_surrogate(apply(combo, x) - (a * x + Scalar(0.0, 2.0) * commutator(b, x))), 1e-14);
  EXPECT_EQ(combo.terms().size(), 2u);
  EXPECT_LE(norm_surrogate(apply(combo.scaled(-1.0), x) + apply(combo, x)), 1e-14);
  EXPECT_NEAR(OperatorSpec::adjoint(a).norm_estimate(), 2.0 * norm_surrogate(a), 1e-12);
}

TEST(Operators, ContextMismatch) {
  const auto M = nijtest::matrix4(), N = nijtest::matrix4();
  EXPECT_THROW(OperatorSpec::two_sided(M->unit(), N->unit()), StructuralError);
  EXPECT_THROW(OperatorSpec::left_mult(M->unit()).plus(1.0, OperatorSpec::left_mult(N->unit())), StructuralError);
  EXPECT_THROW(apply(OperatorSpec::left_mult(M->unit()), N->unit()), StructuralError);
  EXPECT_THROW(check_admissible(*N, OperatorSpec::left_mult(M->unit()), 1, 10), StructuralError);
}

class Admissibility : public ::testing::TestWithParam<nijtest::NamedModel> {};

TEST_P(Admissibility, AllFiveClassesAdmissible) {
  const AlgebraPtr A = GetParam().ctx;
  for (const auto& [name, op] : five_classes(A, 17)) {
    const CheckReport rep = check_admissible(*A, op, 3, 100);
    EXPECT_TRUE(rep.passed) << name << " worst " << rep.worst_relative << " " << rep.note;
    EXPECT_LE(rep.worst_relative, 1e-9) << name;
    EXPECT_GE(rep.trials, 200);
  }
}

TEST_P(Admissibility, ChecksAreDeterministic) {
  const AlgebraPtr A = GetParam().ctx;
  const auto ops = five_classes(A, 5);
  const CheckReport r1 = check_almost_complex(*A, ops[1].second, 9, 30);
  const CheckReport r2 = check_almost_complex(*A, ops[1].second, 9, 30);
  EXPECT_EQ(r1.worst_residual, r2.worst_residual);
  EXPECT_EQ(r1.trials, r2.trials);
}

INSTANTIATE_TEST_SUITE_P(Models, Admissibility, ::testing::ValuesIn(nijtest::all_models()),
                         [](const auto& info) { return info.param.name; });

TEST(Admissibility, CorruptedRankOneRejectedWithWitness) {
  const auto F = nijtest::finfun6();
  // delta_4 does not vanish on k_Y; the unchecked constructor lets it through.
  const OperatorSpec bad(RankOne{point_evaluation(4), F->unit()});
  const CheckReport rep = check_admissible(*F, bad, 1, 50);
  EXPECT_FALSE(rep.passed);
  ASSERT_TRUE(rep.witness.has_value());
  EXPECT_GE(rep.witness->residual, 0.5);
  EXPECT_EQ(rep.witness->inputs.front().first, "k");

  const auto X = nijtest::crossed_cycle5();
  const OperatorSpec bad2(RankOne{point_evaluation(5), X->unit()});
  EXPECT_FALSE(check_admissible(*X, bad2, 1, 50).passed);
}

TEST(AlmostComplex, LeftMultByIAndCodiagStructure) {
  for (const auto& m : nijtest::all_models()) {
    const OperatorSpec j = OperatorSpec::left_mult(Scalar(0.0, 1.0) * m.ctx->unit());
    const CheckReport rep = check_almost_complex(*m.ctx, j, 1, 50);
    EXPECT_TRUE(rep.passed) << m.name;
    EXPECT_LE(rep.worst_residual, 1e-15);
  }
  const auto M = MatrixAlgebra::create({8, BlockProjection{4, 4}});
  const OperatorSpec j = OperatorSpec::left_mult(M->matrix(partial_isometry_complex_structure(*M->block())));
  const CheckReport rep = check_almost_complex(*M, j, 1, 50);
  EXPECT_TRUE(rep.passed);
  EXPECT_LE(rep.worst_residual, 1e-12);
}

TEST(AlmostComplex, RankOneAndAdjointFail) {
  for (const auto& m : nijtest::all_models()) {
    const OperatorSpec r1 = OperatorSpec::rank_one(natural_functional(*m.ctx), Scalar(0.0, 1.0) * m.ctx->unit());
    const CheckReport a = check_almost_complex(*m.ctx, r1, 1, 20);
    EXPECT_FALSE(a.passed) << m.name;
    EXPECT_GE(a.worst_residual, 0.5) << m.name;
    Rng r(3);
    const CheckReport b = check_almost_complex(*m.ctx, OperatorSpec::adjoint(m.ctx->random_element(r, 0)), 1, 20);
    EXPECT_FALSE(b.passed) << m.name;
  }
}

TEST(QuotientZero, AdjointOnCommutativeQuotients) {
  const auto F = nijtest::finfun6();
  Rng r(1);
  EXPECT_TRUE(check_quotient_zero(*F, OperatorSpec::adjoint(F->random_element(r, 0)), 1, 50).passed);
  const auto T = nijtest::toeplitz3();
  EXPECT_TRUE(check_quotient_zero(*T, OperatorSpec::adjoint(T->random_element(r, 0)), 1, 50).passed);
  const auto X = nijtest::crossed_fixed();
  EXPECT_TRUE(check_quotient_zero(*X, OperatorSpec::adjoint(X->random_element(r, 0)), 1, 50).passed);
  const auto Y = nijtest::crossed_cycle5();
  EXPECT_FALSE(check_quotient_zero(*Y, OperatorSpec::adjoint(Y->u_power(1)), 1, 50).passed);
  EXPECT_FALSE(check_quotient_zero(*F, OperatorSpec::left_mult(F->unit()), 1, 50).passed);
}
