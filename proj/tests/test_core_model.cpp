#include <gtest/gtest.h>

#include <random>

#include "ddclab/core_model.hpp"

using namespace ddc;

namespace {

SpacePtr<Rational> curve_space() { return share(make_space<Rational>(1, {1, 2, 1})); }
SpacePtr<Rational> plane_space() { return share(make_space<Rational>(2, {1, 0, 1, 0, 1})); }

QMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> d(lo, hi);
  QMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

// Symmetric-compatible pairings: P_{2n-k} = P_k^t, invertible.
SpacePtr<Rational> twisted_curve_space() {
  QMatrix p1{{Rational(0), Rational(1)}, {Rational(1), Rational(3)}};
  return share(make_space<Rational>(1, {1, 2, 1},
                                    std::vector<QMatrix>{QMatrix{{Rational(2)}}, p1, QMatrix{{Rational(2)}}}));
}

CorrespondenceClass<Rational> random_class(std::mt19937_64& rng, const SpacePtr<Rational>& s) {
  std::vector<QMatrix> c;
  for (std::size_t k = 0; k <= s->top(); ++k) c.push_back(random_matrix(rng, s->dim(s->top() - k), s->dim(k)));
  return CorrespondenceClass<Rational>(s, c);
}

}  // namespace

TEST(GradedSpace, DefaultConstructions) {
  auto e = curve_space();
  EXPECT_EQ(e->n(), 1u);
  EXPECT_EQ(e->total_dim(), 4u);
  EXPECT_EQ(e->pairing(1), QMatrix::identity(2));
  auto p = plane_space();
  EXPECT_EQ(p->dims(), (std::vector<std::size_t>{1, 0, 1, 0, 1}));
  EXPECT_TRUE(p->has_ample());
}

TEST(GradedSpace, RejectsAsymmetricDims) {
  try {
    make_space<Rational>(1, {1, 2, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionAsymmetry);
  }
}

TEST(GradedSpace, RejectsSingularPairing) {
  std::vector<QMatrix> p{QMatrix{{Rational(1)}}, QMatrix(2, 2), QMatrix{{Rational(1)}}};
  try {
    make_space<Rational>(1, {1, 2, 1}, p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularPairing);
  }
}

TEST(GradedSpace, DegreeOutOfRange) {
  auto e = curve_space();
  try {
    e->dim(3);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::DegreeOutOfRange);
  }
}

TEST(Correspondence, DiagonalActsAsIdentity) {
  auto s = curve_space();
  EXPECT_EQ(correspondence_action(diagonal_class(s)), GradedMap<Rational>::identity(s));
  auto t = twisted_curve_space();
  EXPECT_EQ(correspondence_action(diagonal_class(t)), GradedMap<Rational>::identity(t));
}

TEST(Correspondence, SupportRestriction) {
  auto s = curve_space();
  std::vector<QMatrix> c{QMatrix(1, 1), QMatrix(2, 2), QMatrix{{Rational(5)}}};
  auto m = correspondence_action(CorrespondenceClass<Rational>(s, c));
  EXPECT_TRUE(m.block(0).is_zero());
  EXPECT_TRUE(m.block(1).is_zero());
  EXPECT_EQ(m.block(2)(0, 0), 5);
}

TEST(Correspondence, GraphClassRoundTrip) {
  std::mt19937_64 rng(3);
  auto s = twisted_curve_space();
  GradedMap<Rational> f(s, {random_matrix(rng, 1, 1), random_matrix(rng, 2, 2), random_matrix(rng, 1, 1)});
  EXPECT_EQ(correspondence_action(graph_class(f)), f);
}

TEST(Correspondence, TransposeIsInvolutionAndAdjoint) {
  std::mt19937_64 rng(5);
  auto s = twisted_curve_space();
  EXPECT_EQ(transpose(diagonal_class(s)), diagonal_class(s));
  for (int trial = 0; trial < 20; ++trial) {
    auto u = random_class(rng, s);
    EXPECT_EQ(transpose(transpose(u)), u);
    auto a = correspondence_action(u);
    auto at = correspondence_action(transpose(u));
    for (std::size_t k = 0; k <= s->top(); ++k) {
      QMatrix x = random_matrix(rng, s->dim(k), 1);
      QMatrix y = random_matrix(rng, s->dim(s->top() - k), 1);
      EXPECT_EQ(s->pair(k, QMatrix(a.block(k) * x), y), s->pair(k, x, QMatrix(at.block(s->top() - k) * y)));
    }
  }
}

TEST(Correspondence, ComposeIdentityAssociativityFunctoriality) {
  std::mt19937_64 rng(7);
  auto s = twisted_curve_space();
  auto d = diagonal_class(s);
  for (int trial = 0; trial < 20; ++trial) {
    auto u = random_class(rng, s), v = random_class(rng, s), w = random_class(rng, s);
    EXPECT_EQ(compose(d, u), u);
    EXPECT_EQ(compose(u, d), u);
    EXPECT_EQ(compose(compose(u, v), w), compose(u, compose(v, w)));
    EXPECT_EQ(correspondence_action(compose(u, v)), correspondence_action(v) * correspondence_action(u));
  }
}

TEST(Correspondence, TraceOfDiagonalIsDimension) {
  auto d = diagonal_class(curve_space());
  EXPECT_EQ(trace_component(d, 1), 2);
  EXPECT_EQ(trace_component(d, 0), 1);
}

TEST(Correspondence, TraceMatchesPairingWithDiagonal) {
  std::mt19937_64 rng(11);
  auto s = twisted_curve_space();
  auto d = diagonal_class(s);
  for (int trial = 0; trial < 20; ++trial) {
    auto u = random_class(rng, s);
    auto a = correspondence_action(u);
    for (std::size_t k = 0; k <= s->top(); ++k) {
      Rational tr = 0;
      for (std::size_t i = 0; i < a.block(k).rows(); ++i) tr += a.block(k)(i, i);
      EXPECT_EQ(trace_component(u, k), tr);
      EXPECT_EQ(class_pairing(*s, k, u.component(k), d.component(s->top() - k)), tr);
    }
  }
}

TEST(Correspondence, ProductPushforwardWithDiagonals) {
  std::mt19937_64 rng(13);
  auto s = curve_space();
  auto d = diagonal_class(s);
  auto f = random_class(rng, s);
  EXPECT_EQ(product_pushforward(d, d, f), f);
  EXPECT_EQ(product_pullback(d, d, f), f);
}

TEST(Correspondence, PushforwardIdentity) {
  std::mt19937_64 rng(17);
  auto s = twisted_curve_space();
  for (int trial = 0; trial < 20; ++trial) {
    auto phi = random_class(rng, s), psi = random_class(rng, s), f = random_class(rng, s);
    auto lhs = correspondence_action(product_pushforward(phi, psi, f));
    auto rhs = pushforward_action(phi) * correspondence_action(f) * correspondence_action(psi);
    EXPECT_EQ(lhs, rhs);
    EXPECT_EQ(correspondence_action(transpose(phi)), pushforward_action(phi));
  }
}

TEST(Correspondence, DegreeProfile) {
  auto p = plane_space();
  auto d = diagonal_class(p);
  EXPECT_EQ(degree_profile(d), (std::vector<Rational>{1, 1, 1}));
  EXPECT_EQ(degree_profile(Rational(3) * d), (std::vector<Rational>{3, 3, 3}));
  EXPECT_EQ(total_degree(d), 3);

  auto e = curve_space();
  GradedMap<Rational> times2(e, {QMatrix{{Rational(1)}}, QMatrix::scalar(2, 2), QMatrix{{Rational(4)}}});
  EXPECT_EQ(degree_profile(graph_class(times2)), (std::vector<Rational>{1, 4}));
}

TEST(Correspondence, MissingAmple) {
  auto s = share(make_space<Rational>(1, {1, 2, 1}, std::nullopt, std::vector<QMatrix>{}));
  try {
    degree_profile(diagonal_class(s));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingAmple);
  }
}

TEST(Correspondence, EffectiveFlagRejectsNegativeDegree) {
  auto s = plane_space();
  std::vector<QMatrix> c{QMatrix{{Rational(1)}}, QMatrix(0, 0), QMatrix{{Rational(-1)}}, QMatrix(0, 0),
                         QMatrix{{Rational(1)}}};
  EXPECT_THROW(CorrespondenceClass<Rational>(s, c, true), Error);
  EXPECT_NO_THROW(CorrespondenceClass<Rational>(s, c, false));
}

TEST(Correspondence, SpaceMismatch) {
  auto a = curve_space();
  auto b = plane_space();
  try {
    compose(diagonal_class(a), diagonal_class(b));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SpaceMismatch);
  }
}

TEST(Numerical, IdentityQuotientReturnsEvenBlocks) {
  auto s = curve_space();
  GradedMap<Rational> f(s, {QMatrix{{Rational(1)}}, QMatrix{{Rational(1), Rational(2)}, {Rational(3), Rational(4)}},
                            QMatrix{{Rational(7)}}});
  auto ns = NumericalStructure<Rational>::identity(s);
  auto pushed = numerical_pushdown(ns, f);
  ASSERT_EQ(pushed.size(), 2u);
  EXPECT_EQ(pushed[0], f.block(0));
  EXPECT_EQ(pushed[1], f.block(2));
}

TEST(Numerical, RankOneQuotientKeepsDiagonalEntry) {
  auto t = share(make_space<Rational>(2, {1, 0, 2, 0, 1}));
  QMatrix q1{{Rational(1), Rational(0)}};
  NumericalStructure<Rational> ns(t, {QMatrix::identity(1), q1, QMatrix::identity(1)});
  GradedMap<Rational> f(t, {QMatrix::identity(1), QMatrix(0, 0), QMatrix{{Rational(5), Rational(0)}, {Rational(0), Rational(9)}},
                            QMatrix(0, 0), QMatrix::identity(1)});
  EXPECT_EQ(numerical_pushdown(ns, f)[1], QMatrix{{Rational(5)}});
}

TEST(Numerical, NonInvariantKernel) {
  auto t = share(make_space<Rational>(2, {1, 0, 2, 0, 1}));
  NumericalStructure<Rational> ns(t, {QMatrix::identity(1), QMatrix{{Rational(1), Rational(0)}}, QMatrix::identity(1)});
  GradedMap<Rational> f(t, {QMatrix::identity(1), QMatrix(0, 0), QMatrix{{Rational(1), Rational(1)}, {Rational(0), Rational(1)}},
                            QMatrix(0, 0), QMatrix::identity(1)});
  try {
    numerical_pushdown(ns, f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoFactorization);
  }
}

TEST(Numerical, RejectsNonSurjectiveQuotient) {
  auto t = share(make_space<Rational>(2, {1, 0, 2, 0, 1}));
  EXPECT_THROW(NumericalStructure<Rational>(t, {QMatrix::identity(1), QMatrix(1, 2), QMatrix::identity(1)}), Error);
}

TEST(ComplexField, DiagonalAndComposition) {
  auto s = share(make_space<Complex>(1, {1, 2, 1}));
  auto d = diagonal_class(s);
  EXPECT_TRUE(approx_equal(correspondence_action(d), GradedMap<Complex>::identity(s)));
  EXPECT_TRUE(approx_equal(correspondence_action(compose(d, d)), GradedMap<Complex>::identity(s)));
}
