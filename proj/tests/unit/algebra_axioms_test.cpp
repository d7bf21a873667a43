#include <gtest/gtest.h>

#include "models.hpp"

using namespace nij;
using nijtest::NamedModel;

namespace {

class Axioms : public ::testing::TestWithParam<NamedModel> {
 protected:
  const Algebra& A() const { return *GetParam().ctx; }

  template <class F>
  void for_triples(int count, F&& f) const {
    for (int i = 0; i < count; ++i) {
      Rng r = Rng::substream(2024, static_cast<std::uint64_t>(i));
      const Element a = A().random_element(r, 0);
      const Element b = A().random_element(r, 0);
      const Element c = A().random_element(r, 0);
      f(a, b, c, r);
    }
  }

  void expect_small(const Element& diff, double scale) const {
    EXPECT_LE(A().norm_surrogate(diff), 1e-9 * (1.0 + scale)) << A().describe(diff);
  }
};

TEST_P(Axioms, Associativity) {
  for_triples(200, [&](const Element& a, const Element& b, const Element& c, Rng&) {
    expect_small((a * b) * c - a * (b * c), norm_surrogate(a) * norm_surrogate(b) * norm_surrogate(c));
  });
}

TEST_P(Axioms, Distributivity) {
  for_triples(100, [&](const Element& a, const Element& b, const Element& c, Rng& r) {
    const Scalar s = r.complex_square();
    expect_small(a * (b + s * c) - (a * b + s * (a * c)),
                 norm_surrogate(a) * (norm_surrogate(b) + norm_surrogate(c)));
  });
}

TEST_P(Axioms, StarIsAntiMultiplicativeInvolution) {
  for_triples(200, [&](const Element& a, const Element& b, const Element&, Rng& r) {
    expect_small(star(a * b) - star(b) * star(a), norm_surrogate(a) * norm_surrogate(b));
    expect_small(star(star(a)) - a, norm_surrogate(a));
    const Scalar s = r.complex_square();
    expect_small(star(s * a) - std::conj(s) * star(a), norm_surrogate(a));
  });
}

TEST_P(Axioms, Jacobi) {
  for_triples(200, [&](const Element& a, const Element& b, const Element& c, Rng&) {
    const Element j = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
                      commutator(c, commutator(a, b));
    expect_small(j, 4.0 * norm_surrogate(a) * norm_surrogate(b) * norm_surrogate(c));
  });
}

TEST_P(Axioms, NormIsSubmultiplicativeAndStarInvariant) {
  for_triples(200, [&](const Element& a, const Element& b, const Element&, Rng&) {
    const double na = norm_surrogate(a), nb = norm_surrogate(b);
    EXPECT_LE(norm_surrogate(a * b), na * nb * (1 + 1e-9) + 1e-12);
    EXPECT_LE(norm_surrogate(a + b), (na + nb) * (1 + 1e-12) + 1e-12);
    EXPECT_NEAR(norm_surrogate(star(a)), na, 1e-9 * (1 + na));
  });
  EXPECT_NEAR(A().norm_surrogate(A().unit()), A().kind() == ModelKind::Matrix ? 2.0 : A().kind() == ModelKind::Toeplitz ? 2.0 : 1.0,
              1e-12);
}

TEST_P(Axioms, IdealAbsorbsAndIsStarClosed) {
  for (int i = 0; i < 200; ++i) {
    Rng r = Rng::substream(99, static_cast<std::uint64_t>(i));
    const Element a = A().random_element(r, 0);
    const Element k = A().random_ideal_element(r, 0);
    const double scale = norm_surrogate(a) * norm_surrogate(k);
    EXPECT_LE(ideal_residual(k), 1e-12);
    EXPECT_LE(ideal_residual(a * k), 1e-9 * (1 + scale));
    EXPECT_LE(ideal_residual(k * a), 1e-9 * (1 + scale));
    EXPECT_LE(ideal_residual(star(k)), 1e-12);
  }
  for (const Element& g : A().ideal_generators(0)) EXPECT_TRUE(in_ideal(g));
}

TEST_P(Axioms, ResidualIsQuotientSeminorm) {
  for_triples(100, [&](const Element& a, const Element& b, const Element&, Rng&) {
    EXPECT_LE(ideal_residual(a + b), ideal_residual(a) + ideal_residual(b) + 1e-12);
    EXPECT_LE(ideal_residual(a), norm_surrogate(a) + 1e-12);
  });
  EXPECT_GT(ideal_residual(A().unit()), 0.5);
}

TEST_P(Axioms, ForeignElementsRejected) {
  const auto other = nijtest::all_models();
  for (const auto& m : other) {
    if (m.ctx.get() == GetParam().ctx.get()) continue;
    EXPECT_THROW(A().add(A().unit(), m.ctx->unit()), StructuralError);
  }
  // Same kind, different context.
  const AlgebraPtr twin = [&]() -> AlgebraPtr {
    for (const auto& m : nijtest::all_models())
      if (m.name == GetParam().name) return m.ctx;
    return nullptr;
  }();
  EXPECT_THROW(A().mul(A().unit(), twin->unit()), StructuralError);
}

TEST_P(Axioms, NonFiniteScalarsRejected) {
  EXPECT_THROW(A().scale(Scalar(std::nan(""), 0.0), A().unit()), InputError);
  EXPECT_THROW(A().scale(Scalar(0.0, INFINITY), A().unit()), InputError);
}

TEST_P(Axioms, NeumannInverseOfSmallPerturbation) {
  for (int i = 0; i < 20; ++i) {
    Rng r = Rng::substream(5, static_cast<std::uint64_t>(i));
    Element k = A().random_ideal_element(r, 0);
    const double nk = norm_surrogate(k);
    if (nk == 0.0) continue;
    k = (0.4 / nk) * k;
    const Element g = A().unit() + k;
    const Element inv = A().neumann_inverse(g, k);
    EXPECT_LE(norm_surrogate(g * inv - A().unit()), 1e-10);
    EXPECT_LE(norm_surrogate(inv * g - A().unit()), 1e-10);
    EXPECT_LE(ideal_residual(inv - A().unit()), 1e-12);
  }
}

TEST_P(Axioms, GeneratorsAreDistinctAndNonzero) {
  const auto gens = A().generators(0);
  EXPECT_FALSE(gens.empty());
  for (const auto& g : gens) EXPECT_GT(norm_surrogate(g), 0.0);
}

INSTANTIATE_TEST_SUITE_P(Models, Axioms, ::testing::ValuesIn(nijtest::all_models()),
                         [](const auto& info) { return info.param.name; });

}  // namespace
