#include <gtest/gtest.h>

#include "models.hpp"
#include "oracles.hpp"

using namespace nij;

namespace {

int max_power(const CrossedData& d) {
  int m = 0;
  for (const auto& [k, f] : d.terms) m = std::max(m, std::abs(k));
  return m;
}

}  // namespace

TEST(DynSystem, Validation) {
  EXPECT_THROW(DynSystem(3, {0, 0, 1}, {0}), InputError);
  EXPECT_THROW(DynSystem(3, {1, 2}, {0}), InputError);
  EXPECT_THROW(DynSystem(3, {1, 2, 0}, {}), InputError);
  EXPECT_THROW(DynSystem(3, {1, 0, 2}, {0}), InputError);  // alpha(0) = 1 not in Y
  EXPECT_THROW(DynSystem(3, {1, 0, 2}, {3}), InputError);
  EXPECT_NO_THROW(DynSystem(3, {1, 0, 2}, {0, 1}));
  EXPECT_NO_THROW(DynSystem(3, {1, 0, 2}, {2}));
}

TEST(DynSystem, OrbitsAndPowers) {
  const DynSystem s(6, {1, 2, 3, 4, 0, 5}, {0, 1, 2, 3, 4});
  EXPECT_EQ(s.orbits().size(), 2u);
  EXPECT_EQ(s.orbit_length(3), 5);
  EXPECT_EQ(s.orbit_length(5), 1);
  EXPECT_TRUE(s.is_fixed(5));
  EXPECT_FALSE(s.y_pointwise_fixed());
  EXPECT_EQ(s.max_orbit_length(), 5);
  EXPECT_EQ(s.apply(0, 7), 2);
  EXPECT_EQ(s.apply(0, -1), 4);
  EXPECT_EQ(s.apply(5, -13), 5);
  for (int x = 0; x < 6; ++x)
    for (int k = -7; k <= 7; ++k) EXPECT_EQ(s.apply(s.apply(x, k), -k), x);

  const DynSystem f(5, {0, 1, 3, 4, 2}, {0, 1});
  EXPECT_TRUE(f.y_pointwise_fixed());
  const DynSystem r = f.restricted_to_y();
  EXPECT_EQ(r.size(), 2);
  EXPECT_EQ(r.y_set().size(), 2u);
}

TEST(Crossed, ProductAndStarMatchRepresentation) {
  for (const auto& A : {nijtest::crossed_cycle5(), nijtest::crossed_fixed(), nijtest::crossed_cycle(3)}) {
    const DynSystem& sys = A->system();
    for (int i = 0; i < 40; ++i) {
      Rng r = Rng::substream(123, static_cast<std::uint64_t>(i));
      const Element a = A->random_element(r, 0);
      const Element b = A->random_element(r, 0);
      const auto& ad = a.as<CrossedData>();
      const auto& bd = b.as<CrossedData>();
      const int M = nijtest::crossed_rep_size(sys, max_power(ad) + max_power(bd));
      const Eigen::MatrixXcd pa = nijtest::crossed_rep(sys, ad, M), pb = nijtest::crossed_rep(sys, bd, M);
      EXPECT_LE((nijtest::crossed_rep(sys, (a * b).as<CrossedData>(), M) - pa * pb).cwiseAbs().maxCoeff(), 1e-13);
      EXPECT_LE((nijtest::crossed_rep(sys, star(a).as<CrossedData>(), M) - pa.adjoint()).cwiseAbs().maxCoeff(),
                1e-15);
      // Operator norm is bounded by the surrogate.
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(pa);
      EXPECT_LE(svd.singularValues()(0), A->norm_surrogate(a) * (1 + 1e-12));
    }
  }
}

TEST(Crossed, CovarianceRelation) {
  const auto A = nijtest::crossed_cycle5();
  const Element f = A->function({1.0, 2.0, 3.0, 4.0, 5.0, 6.0});
  const Element u = A->u_power(1);
  const Element lhs = u * f * A->u_power(-1);
  const auto& d = lhs.as<CrossedData>();
  ASSERT_EQ(d.terms.size(), 1u);
  const auto& g = d.terms.at(0);
  for (int x = 0; x < 6; ++x) EXPECT_EQ(g[static_cast<std::size_t>(x)], Scalar(1.0 + A->system().apply(x, 1)));
  EXPECT_LE(A->norm_surrogate(u * A->u_power(-1) - A->unit()), 0.0);
  EXPECT_LE(A->norm_surrogate(star(u) - A->u_power(-1)), 0.0);
}

TEST(Crossed, ResidualsAndQuotient) {
  const auto A = nijtest::crossed_cycle5();
  const Element a = A->term({0.0, 0.0, 0.5, 0.0, 0.0, 7.0}, 1) + A->term({0.0, -2.0, 0.0, 0.0, 0.0, 0.0}, -2);
  EXPECT_DOUBLE_EQ(A->ideal_residual(a), 2.5);
  EXPECT_DOUBLE_EQ(A->sup_ideal_residual(a), 2.0);
  EXPECT_DOUBLE_EQ(A->norm_surrogate(a), 9.0);
  EXPECT_TRUE(A->in_ideal(A->monomial(5, 3)));
  EXPECT_FALSE(A->in_ideal(A->monomial(4, 3)));

  const auto Q = A->quotient_algebra();
  EXPECT_EQ(Q->system().size(), 5);
  EXPECT_EQ(Q, A->quotient_algebra());
  for (int i = 0; i < 30; ++i) {
    Rng r = Rng::substream(55, static_cast<std::uint64_t>(i));
    const Element x = A->random_element(r, 0), y = A->random_element(r, 0);
    const Element lhs = A->quotient_restrict(x * y);
    const Element rhs = A->quotient_restrict(x) * A->quotient_restrict(y);
    EXPECT_LE(Q->norm_surrogate(lhs - rhs), 1e-12);
    EXPECT_NEAR(Q->norm_surrogate(A->quotient_restrict(x)), A->ideal_residual(x), 1e-12);
    EXPECT_LE(Q->norm_surrogate(A->quotient_restrict(A->random_ideal_element(r, 0))), 0.0);
  }
}

TEST(Crossed, GeneratorsSpanWindow) {
  const auto A = nijtest::crossed_cycle5();
  EXPECT_EQ(A->generators(0).size(), 6u * 7u);
  EXPECT_EQ(A->generators(1).size(), 6u * 3u);
  EXPECT_EQ(A->ideal_generators(0).size(), 7u);
  EXPECT_THROW(A->term({1.0}, 0), InputError);
  EXPECT_THROW(A->monomial(6, 0), InputError);
}
