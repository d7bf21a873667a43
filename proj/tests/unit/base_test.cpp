#include <gtest/gtest.h>

#include <set>

#include "nij/base.hpp"
#include "nij/trig_poly.hpp"

using namespace nij;

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.uniform(), b.uniform());
}

TEST(Rng, SubstreamsDifferAndRepeat) {
  Rng a = Rng::substream(7, 0), b = Rng::substream(7, 1), c = Rng::substream(7, 0);
  const double x = a.uniform();
  EXPECT_NE(x, b.uniform());
  EXPECT_EQ(x, c.uniform());
}

TEST(Rng, Ranges) {
  Rng r(3);
  std::set<int> seen;
  for (int i = 0; i < 2000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const int k = r.uniform_int(-2, 2);
    ASSERT_GE(k, -2);
    ASSERT_LE(k, 2);
    seen.insert(k);
    const Scalar z = r.complex_square();
    ASSERT_LE(std::abs(z.real()), 1.0);
    ASSERT_LE(std::abs(z.imag()), 1.0);
  }
  EXPECT_EQ(seen.size(), 5u);
}

TEST(Tolerance, Validate) {
  TolerancePolicy t;
  EXPECT_NO_THROW(t.validate());
  t.abs_tol = -1;
  EXPECT_THROW(t.validate(), InputError);
  t = {};
  t.neumann_norm_cap = 1.5;
  EXPECT_THROW(t.validate(), InputError);
}

TEST(TrigPoly, TrimsAndCompares) {
  const TrigPoly p = TrigPoly::from_coeffs({{-2, 0.0}, {0, 1.0}, {3, 0.0}});
  EXPECT_EQ(p, TrigPoly::constant(1.0));
  EXPECT_TRUE(TrigPoly::from_coeffs({{1, 0.0}}).is_zero());
  EXPECT_EQ(TrigPoly{}.degree_bound(), 0);
}

TEST(TrigPoly, ProductIsConvolution) {
  Rng r(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::map<int, Scalar> a, b;
    for (int j = -3; j <= 2; ++j) a[j] = r.complex_square();
    for (int j = -1; j <= 4; ++j) b[j] = r.complex_square();
    const TrigPoly p = TrigPoly::from_coeffs(a) * TrigPoly::from_coeffs(b);
    for (int k = -4; k <= 6; ++k) {
      Scalar expect{};
      for (const auto& [i, c] : a)
        if (b.count(k - i)) expect += c * b[k - i];
      EXPECT_LT(std::abs(p.coeff(k) - expect), 1e-14);
    }
    const double theta = r.uniform() * 6.0;
    EXPECT_LT(std::abs(p.at_angle(theta) - TrigPoly::from_coeffs(a).at_angle(theta) *
                                               TrigPoly::from_coeffs(b).at_angle(theta)),
              1e-12);
  }
}

TEST(TrigPoly, AdjointIsConjugateOnCircle) {
  const TrigPoly p = TrigPoly::from_coeffs({{-1, {0.5, 2.0}}, {2, {1.0, -1.0}}});
  const TrigPoly q = p.adjoint();
  EXPECT_EQ(q.coeff(1), std::conj(p.coeff(-1)));
  for (double t : {0.1, 1.3, 2.9})
    EXPECT_LT(std::abs(q.at_angle(t) - std::conj(p.at_angle(t))), 1e-14);
}

TEST(TrigPoly, Extents) {
  const TrigPoly p = TrigPoly::from_coeffs({{-3, 1.0}, {2, 1.0}});
  EXPECT_EQ(p.positive_extent(), 2);
  EXPECT_EQ(p.negative_extent(), 3);
  EXPECT_EQ(p.degree_bound(), 3);
  EXPECT_DOUBLE_EQ(p.l1_norm(), 2.0);
  EXPECT_EQ(TrigPoly::monomial(2).negative_extent(), 0);
}
