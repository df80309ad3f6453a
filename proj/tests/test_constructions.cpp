#include <gtest/gtest.h>

#include <random>

#include "ddclab/constructions.hpp"

using namespace ddc;

namespace {

using Dims = std::vector<std::size_t>;

QPoly poly(std::initializer_list<long> low_first) {
  std::vector<Rational> c;
  for (long v : low_first) c.emplace_back(v);
  return QPoly(c);
}

}  // namespace

TEST(Abelian, EllipticFromWeilPolynomial) {
  auto b = abelian_model(1, 3, poly({3, -1, 1}));
  EXPECT_EQ(b.space->dims(), (Dims{1, 2, 1}));
  ASSERT_TRUE(b.frobenius);
  QMatrix expected{{Rational(0), Rational(-3)}, {Rational(1), Rational(1)}};
  EXPECT_EQ(b.frobenius->map.block(1), expected);
  for (std::size_t k = 0; k <= 2; ++k)
    EXPECT_NEAR(spectral_radius(b.frobenius->map.block(k)).value, std::pow(3.0, k / 2.0), 1e-12);
}

TEST(Abelian, MultiplicationByTwo) {
  auto b = abelian_model(1, 3, poly({3, -1, 1}), QMatrix::scalar(2, 2));
  const auto& e = b.endos.at("endo");
  auto pushed = numerical_pushdown(b.numerical, e);
  EXPECT_EQ(pushed[0], QMatrix::scalar(1, 1));
  EXPECT_EQ(pushed[1], QMatrix::scalar(1, 4));
  EXPECT_TRUE(b.frobenius->semisimple);
  EXPECT_TRUE(noncommuting_endos(b).empty());
}

TEST(Abelian, SurfaceDimsAndModuli) {
  QMatrix c1{{Rational(0), Rational(-5)}, {Rational(1), Rational(2)}};
  QMatrix c2{{Rational(0), Rational(-5)}, {Rational(1), Rational(-3)}};
  auto b = abelian_model(2, 5, block_diag(std::vector<QMatrix>{c1, c2}));
  EXPECT_EQ(b.space->dims(), (Dims{1, 4, 6, 4, 1}));
  for (std::size_t k = 0; k <= 4; ++k) EXPECT_TRUE(block_is_weil(b.frobenius->map.block(k), 5, k));
}

TEST(Abelian, Errors) {
  try {
    abelian_model(1, 3, poly({2, -3, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotWeil);
  }
  QMatrix nc{{Rational(1), Rational(1)}, {Rational(0), Rational(1)}};
  try {
    abelian_model(1, 3, poly({3, -1, 1}), nc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonCommuting);
  }
}

TEST(Product, ProjectiveLines) {
  auto p = product_model(projective_model(1, 2), projective_model(1, 2));
  EXPECT_EQ(p.space->dims(), (Dims{1, 0, 2, 0, 1}));
  ASSERT_TRUE(p.frobenius);
  EXPECT_EQ(p.frobenius->map.block(2), QMatrix::scalar(2, 2));
}

TEST(Product, CurveTimesCurve) {
  auto e = abelian_model(1, 3, poly({3, -1, 1}), QMatrix::scalar(2, 2));
  auto p = product_model(e, e);
  EXPECT_EQ(p.space->dims(), (Dims{1, 4, 6, 4, 1}));
  EXPECT_TRUE(noncommuting_endos(p).empty());
  for (std::size_t k = 0; k <= 4; ++k) EXPECT_TRUE(block_is_weil(p.frobenius->map.block(k), 3, k));
}

TEST(Blowup, PlaneAtPoint) {
  auto z = blowup_model(projective_model(2, 2), projective_model(0, 2), 2);
  EXPECT_EQ(z.space->dims(), (Dims{1, 0, 2, 0, 1}));
  EXPECT_TRUE(z.frobenius->semisimple);
  for (std::size_t k = 0; k <= 4; ++k) EXPECT_TRUE(block_is_weil(z.frobenius->map.block(k), 2, k));
}

TEST(Blowup, DivisorCaseIsUnchanged) {
  auto x = projective_model(2, 2);
  auto z = blowup_model(x, projective_model(1, 2), 1);
  EXPECT_EQ(z.space->dims(), x.space->dims());
}

TEST(Blowup, BadCodimension) {
  try {
    blowup_model(projective_model(2, 2), projective_model(1, 2), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadCodimension);
  }
}

TEST(Hilb2, ProjectiveLine) {
  auto h = hilb2_model(projective_model(1, 3));
  EXPECT_EQ(h.space->dims(), (Dims{1, 0, 1, 0, 1}));
  EXPECT_TRUE(h.frobenius->semisimple);
}

TEST(Hilb2, ProjectivePlaneAgainstInvolutionTrace) {
  auto x = projective_model(2, 2);
  auto h = hilb2_model(x);
  auto sigma = hilb2_swap(x);
  std::vector<std::size_t> expected;
  for (const auto& s : sigma) {
    Rational tr = 0;
    for (std::size_t i = 0; i < s.rows(); ++i) tr += s(i, i);
    const Rational count = (Rational(static_cast<long>(s.rows())) + tr) / 2;
    expected.push_back(count.get_num().get_ui());
  }
  EXPECT_EQ(h.space->dims(), expected);
  EXPECT_EQ(h.space->dims(), (Dims{1, 0, 2, 0, 3, 0, 2, 0, 1}));
}

TEST(Random, ModuliAndDeterminism) {
  auto a = random_semisimple_model(1, {1, 2, 1}, 4, 7);
  auto b = random_semisimple_model(1, {1, 2, 1}, 4, 7);
  EXPECT_EQ(a.frobenius->map, b.frobenius->map);
  for (std::size_t k = 0; k <= 2; ++k)
    EXPECT_NEAR(spectral_radius(a.frobenius->map.block(k)).value, std::pow(2.0, static_cast<double>(k)), 1e-12);
  EXPECT_TRUE(a.frobenius->semisimple);
}

TEST(Random, ComplexVariant) {
  auto c = random_semisimple_model_complex(1, {1, 3, 1}, 5, 11);
  for (std::size_t k = 0; k <= 2; ++k)
    EXPECT_TRUE(block_is_weil(c.frobenius->map.block(k), 5, k));
}

TEST(Random, AbelianEndoModels) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 10; ++i) {
    auto b = random_abelian_endo_model(rng);
    EXPECT_TRUE(noncommuting_endos(b).empty());
    EXPECT_TRUE(b.frobenius->weilRH);
  }
}
