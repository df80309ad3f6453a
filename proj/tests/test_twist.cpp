#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ddclab/constructions.hpp"
#include "ddclab/twist.hpp"
#include "ddclab/verify.hpp"

using namespace ddc;

namespace {

SpacePtr<Rational> curve_space() { return share(make_space<Rational>(1, {1, 2, 1})); }

GradedMap<Rational> scalar_model(const SpacePtr<Rational>& s, long a) {
  std::vector<QMatrix> b;
  for (std::size_t k = 0; k <= s->top(); ++k) b.push_back(QMatrix::scalar(s->dim(k), pow_rational(Rational(a), k) ));
  return GradedMap<Rational>(s, b);
}

}  // namespace

TEST(Twist, GrOperator) {
  auto s = curve_space();
  auto g = gr_operator(s, Rational(3));
  EXPECT_EQ(g.block(0), QMatrix::scalar(1, 1));
  EXPECT_EQ(g.block(1), QMatrix::scalar(2, 3));
  EXPECT_EQ(g.block(2), QMatrix::scalar(1, 9));
  EXPECT_EQ(gr_operator(s, Rational(1)), GradedMap<Rational>::identity(s));
  try {
    gr_operator(s, Rational(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveR);
  }
}

TEST(Twist, TwistCompose) {
  auto s = curve_space();
  std::vector<QMatrix> fb{QMatrix{{Rational(3)}}, QMatrix{{Rational(1), Rational(2)}, {Rational(0), Rational(4)}},
                          QMatrix{{Rational(8)}}};
  GradedMap<Rational> f(s, fb);
  // Blocks 1, 2, 4: base 2 scalar model with a = 4.
  std::vector<QMatrix> frob{QMatrix::scalar(1, 1), QMatrix::scalar(2, 2), QMatrix::scalar(1, 4)};
  GradedMap<Rational> F(s, frob);
  EXPECT_EQ(twist_compose(f, F, 0), f);
  auto inv = twist_compose(f, F, -1);
  EXPECT_EQ(inv.block(0), f.block(0));
  EXPECT_EQ(inv.block(1), Rational(1, 2) * f.block(1));
  EXPECT_EQ(inv.block(2), Rational(1, 4) * f.block(2));

  GradedMap<Rational> singular(s, {QMatrix::scalar(1, 1), QMatrix(2, 2), QMatrix::scalar(1, 1)});
  try {
    twist_compose(f, singular, -1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularBlock);
  }
}

TEST(Twist, PolarizedModelChecks) {
  auto s = curve_space();
  auto model = make_frobenius(4, scalar_model(s, 2), true);
  EXPECT_TRUE(model.frobenius);
  EXPECT_TRUE(model.adapted_basis.has_value());
  try {
    make_polarized(4, scalar_model(s, 3), true, false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotWeil);
  }
  EXPECT_THROW(make_frobenius(6, scalar_model(s, 2), false), Error);
  EXPECT_TRUE(is_prime_power(9));
  EXPECT_FALSE(is_prime_power(12));
}

TEST(Twist, WeilAndSemisimpleChecks) {
  QMatrix c{{Rational(0), Rational(-3)}, {Rational(1), Rational(1)}};
  EXPECT_TRUE(block_is_weil(c, 3, 1));
  EXPECT_FALSE(block_is_weil(c, 3, 2));
  EXPECT_TRUE(is_semisimple(c));
  EXPECT_FALSE(is_semisimple(QMatrix{{Rational(2), Rational(1)}, {Rational(0), Rational(2)}}));
  EXPECT_TRUE(block_is_weil(to_complex(c), 3, 1));
}

TEST(Eq1Scan, EllipticTimesTwo) {
  auto b = elliptic_times2_model();
  auto d = endo_degrees(b.endos.at("endo"), b.numerical);
  std::vector<double> grid{0.5, 1.0, 2.0};
  auto rep = eq1_scan(d.lambda, d.chi, grid);
  EXPECT_TRUE(rep.ok());
  for (const auto& e : rep.entries) {
    if (e.r == 1.0 && e.k == 1) {
      EXPECT_DOUBLE_EQ(e.lhs, 2.0);
      EXPECT_DOUBLE_EQ(e.rhs, 4.0);
    }
    if (e.r == 0.5 && e.k == 1) EXPECT_NEAR(e.margin, 0.0, 1e-12);
    if (e.r == 2.0 && e.k == 1) {
      EXPECT_DOUBLE_EQ(e.lhs, 4.0);
      EXPECT_DOUBLE_EQ(e.rhs, 16.0);
    }
  }
}

TEST(Eq1Scan, GrTwistedIdentityIsTight) {
  auto s = curve_space();
  auto g = gr_operator(s, Rational(2));
  auto d = endo_degrees(g, NumericalStructure<Rational>::identity(s));
  auto rep = eq1_scan(d.lambda, d.chi, dyadic_grid(-3, 3), 1e-9, 4.0);
  EXPECT_TRUE(rep.ok());
  EXPECT_FALSE(rep.schedule.empty());
}

TEST(Eq1Scan, CounterModelHasWitness) {
  auto b = conjecture_d_counter_model();
  auto d = endo_degrees(b.endos.at("f"), b.numerical);
  auto rep = eq1_scan(d.lambda, d.chi, dyadic_grid(-10, 10));
  ASSERT_FALSE(rep.ok());
  EXPECT_EQ(rep.violations[0].k, 2u);
  EXPECT_GT(rep.violations[0].lhs, rep.violations[0].rhs);
}

TEST(Twist, Schedule) {
  EXPECT_EQ(twist_schedule(1, 4.0, 2.0), 4);
  EXPECT_EQ(twist_schedule(3, 1.0, 5.0), 0);
}

TEST(Claim1, ScalarModelGivesConstantNearOne) {
  auto s = curve_space();
  auto f = scalar_model(s, 2);
  auto F = make_polarized(4, scalar_model(s, 2), true, true);
  auto sys = IterateSystem<Rational>::power(f, NumericalStructure<Rational>::identity(s));
  for (std::size_t k = 0; k <= 2; ++k) {
    auto line = claim1_check(sys, F, k, -1, 3);
    EXPECT_GT(line.implied_c, 0.0);
    EXPECT_LE(line.implied_c, std::sqrt(2.0) + 1e-12);
  }
}

TEST(Claim1, IdentityMapConstantIndependentOfS) {
  auto b = elliptic_times2_model();
  auto sys = IterateSystem<Rational>::power(GradedMap<Rational>::identity(b.space), b.numerical);
  double worst = 0.0;
  for (long s = -6; s <= 6; ++s)
    for (std::size_t k = 0; k <= 2; ++k) worst = std::max(worst, claim1_check(sys, *b.frobenius, k, s, 1).implied_c);
  EXPECT_LT(worst, 2.0);
}

TEST(Claim1, BatchOfCorrespondencesHasBoundedConstant) {
  std::mt19937_64 rng(9);
  auto b = random_abelian_endo_model(rng, 2, 5);
  std::uniform_int_distribution<int> d(0, 3);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    std::vector<QMatrix> c;
    for (std::size_t k = 0; k <= b.space->top(); ++k) {
      QMatrix m(b.space->dim(b.space->top() - k), b.space->dim(k));
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t col = 0; col < m.cols(); ++col) m(r, col) = d(rng);
      c.push_back(m);
    }
    CorrespondenceClass<Rational> u(b.space, c, true);
    auto sys = IterateSystem<Rational>::power(correspondence_action(u), b.numerical);
    for (long s = -1; s <= 1; ++s)
      for (std::size_t k = 0; k <= b.space->top(); ++k)
        worst = std::max(worst, claim1_check(sys, *b.frobenius, k, s, 2).implied_c);
  }
  EXPECT_TRUE(std::isfinite(worst));
  EXPECT_LT(worst, 1e3);
}

TEST(Kronecker, GoldenRatio) {
  const double phi = std::numbers::phi;
  auto a = kronecker_approx(phi, 0.1);
  EXPECT_EQ(a.s, -5);
  EXPECT_EQ(a.t, 8);
  EXPECT_NEAR(a.residual, 0.0902, 1e-4);
  auto b = kronecker_approx(phi, 0.05);
  EXPECT_EQ(b.s, -13);
  EXPECT_EQ(b.t, 21);
  EXPECT_NEAR(b.residual, 0.0344, 1e-4);
}

TEST(Kronecker, RationalTheta) {
  auto r = kronecker_approx(1.5, 1e-9);
  EXPECT_EQ(r.s, -2);
  EXPECT_EQ(r.t, 3);
  EXPECT_EQ(r.residual, 0.0);
  EXPECT_TRUE(r.rational);
}

TEST(Kronecker, Errors) {
  EXPECT_THROW(kronecker_approx(-1.0, 0.1), Error);
  EXPECT_THROW(kronecker_approx(1.0, 0.0), Error);
}

TEST(JordanCompare, SemisimplePairIsEqual) {
  auto b = elliptic_times2_model();
  auto rep = jordan_compare(*b.frobenius, *b.frobenius, 1);
  EXPECT_TRUE(rep.equal);
  EXPECT_EQ(rep.b1, 1u);
  EXPECT_TRUE(rep.certificate.empty());
}

TEST(JordanCompare, PlantedPairCertificateGrows) {
  auto [f1, f2] = jordan_pair_model();
  auto rep = jordan_compare(f1, f2, 2, 40);
  EXPECT_EQ(rep.b1, 2u);
  EXPECT_EQ(rep.b2, 1u);
  EXPECT_FALSE(rep.equal);
  ASSERT_FALSE(rep.certificate.empty());
  EXPECT_GT(*std::max_element(rep.certificate.begin(), rep.certificate.end()), 1e3);
}
