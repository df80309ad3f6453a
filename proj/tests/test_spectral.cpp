#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ddclab/linalg.hpp"
#include "ddclab/polynomial.hpp"
#include "ddclab/roots.hpp"
#include "ddclab/spectral.hpp"

using namespace ddc;

namespace {

QMatrix jordan_block(std::size_t size, const Rational& lambda) {
  QMatrix m = QMatrix::scalar(size, lambda);
  for (std::size_t i = 0; i + 1 < size; ++i) m(i, i + 1) = 1;
  return m;
}

}  // namespace

TEST(Scalar, RationalParseAndFormat) {
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(format_rational(Rational(3, 2)), "3/2");
  EXPECT_EQ(format_rational(Rational(5)), "5");
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
  EXPECT_EQ(pow_rational_signed(Rational(2, 3), -2), Rational(9, 4));
}

TEST(Polynomial, CharpolyAndSquarefree) {
  QMatrix m = jordan_block(2, 3);
  QPoly p = charpoly(m);
  EXPECT_EQ(p, QPoly({Rational(9), Rational(-6), Rational(1)}));
  EXPECT_EQ(squarefree_part(p), QPoly({Rational(-3), Rational(1)}));
  EXPECT_FALSE(is_squarefree(p));
  EXPECT_EQ(minimal_polynomial(QMatrix::identity(3)), QPoly({Rational(-1), Rational(1)}));
  EXPECT_TRUE(evaluate_at(p, m).is_zero());
}

TEST(Polynomial, RootsOnCircle) {
  EXPECT_TRUE(all_roots_on_circle(QPoly({Rational(3), Rational(-1), Rational(1)}), Rational(3)));
  EXPECT_FALSE(all_roots_on_circle(QPoly({Rational(2), Rational(-3), Rational(1)}), Rational(2)));
}

TEST(Roots, IsolatesRealAndComplexRoots) {
  auto r = isolate_roots(QPoly({Rational(3), Rational(-1), Rational(1)}));
  ASSERT_EQ(r.size(), 2u);
  for (const auto& e : r) EXPECT_NEAR(e.modulus, std::sqrt(3.0), 1e-12);
  auto ev = exact_eigenvalues(jordan_block(3, 2));
  ASSERT_EQ(ev.size(), 1u);
  EXPECT_EQ(ev[0].multiplicity, 3u);
}

TEST(Linalg, RankInverseDeterminant) {
  QMatrix m{{Rational(1), Rational(2)}, {Rational(3), Rational(4)}};
  EXPECT_EQ(determinant(m), -2);
  EXPECT_EQ(m * inverse(m), QMatrix::identity(2));
  EXPECT_EQ(rank(QMatrix{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}}), 1u);
  EXPECT_EQ(inverse(QMatrix(0, 0)).rows(), 0u);
  EXPECT_EQ(exterior_power(QMatrix::scalar(4, 2), 2), QMatrix::scalar(6, 4));
}

TEST(Spectral, FrobeniusNorm) {
  QMatrix m{{Rational(1), Rational(2)}, {Rational(3), Rational(4)}};
  EXPECT_DOUBLE_EQ(frobenius_norm(m), std::sqrt(30.0));
  EXPECT_EQ(frobenius_norm_sq_exact(m), 30);
  EXPECT_DOUBLE_EQ(frobenius_norm(QMatrix::identity(5)), std::sqrt(5.0));
}

TEST(Spectral, SpectralRadius) {
  EXPECT_NEAR(spectral_radius(jordan_block(2, 2)).value, 2.0, 1e-12);
  EXPECT_NEAR(spectral_radius(companion_matrix(QPoly({Rational(3), Rational(-1), Rational(1)}))).value, std::sqrt(3.0),
              1e-12);
  CMatrix c = to_complex(jordan_block(3, Rational(5, 2)));
  EXPECT_NEAR(spectral_radius(c).value, 2.5, 1e-8);
  EXPECT_NEAR(gelfand_radius(c).value, 2.5, 1e-3);
}

TEST(Spectral, SpectralRadiusOfLargeExteriorPower) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> d(-3, 3);
  QMatrix m(6, 6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) m(i, j) = d(rng);
  const QMatrix e = exterior_power(m, 3);
  const double exact = spectral_radius(e).value;
  const double floating = spectral_radius(to_complex(e)).value;
  EXPECT_NEAR(exact, floating, 1e-6 * exact);
}

TEST(Spectral, SingularExtremes) {
  QMatrix d{{Rational(3), Rational(0)}, {Rational(0), Rational(1, 2)}};
  auto s = singular_extremes(d);
  EXPECT_NEAR(s.min, 0.5, 1e-12);
  EXPECT_NEAR(s.max, 3.0, 1e-12);
  const double c = std::cos(0.7), sn = std::sin(0.7);
  CMatrix rot{{Complex(c), Complex(-sn)}, {Complex(sn), Complex(c)}};
  auto r = singular_extremes(rot);
  EXPECT_NEAR(r.min, 1.0, 1e-12);
  EXPECT_NEAR(r.max, 1.0, 1e-12);
  EXPECT_EQ(singular_extremes(QMatrix(2, 2)).min, 0.0);
}

TEST(Spectral, YamamotoDiagonalAndJordan) {
  std::vector<unsigned long> ms{1, 2, 8, 32};
  auto d = yamamoto_sequence(QMatrix{{Rational(3), Rational(0)}, {Rational(0), Rational(-2)}}, ms);
  for (const auto& e : d.estimates) EXPECT_NEAR(e.estimate, 3.0, 1e-12);

  std::vector<unsigned long> ten{10};
  auto j = yamamoto_sequence(jordan_block(2, 1), ten);
  const double expected = std::pow(std::sqrt((102.0 + std::sqrt(10400.0)) / 2.0), 0.1);
  EXPECT_NEAR(j.estimates[0].estimate, expected, 1e-12);
  EXPECT_NEAR(j.estimates[0].estimate, 1.260, 1e-3);
}

TEST(Spectral, YamamotoLargePowersStayFinite) {
  std::vector<unsigned long> ms{4096};
  auto r = yamamoto_sequence(QMatrix{{Rational(50), Rational(1)}, {Rational(0), Rational(3)}}, ms);
  EXPECT_NEAR(r.estimates[0].estimate, 50.0, 1e-2);
}

TEST(Spectral, JordanProfile) {
  QMatrix m = block_diag(std::vector<QMatrix>{jordan_block(2, 2), jordan_block(1, 2)});
  auto p = jordan_profile(m, Rational(2));
  EXPECT_EQ(p.block_sizes, (std::vector<std::size_t>{2, 1}));
  EXPECT_EQ(p.largest, 2u);
  EXPECT_EQ(jordan_profile(QMatrix::identity(3), Rational(1)).block_sizes, (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_THROW(jordan_profile(QMatrix::identity(3), Rational(2)), Error);
}

TEST(Spectral, JordanProfileUnderSimilarity) {
  QMatrix j = block_diag(std::vector<QMatrix>{jordan_block(3, 2), jordan_block(1, 2), jordan_block(2, 5)});
  QMatrix s{{Rational(1), Rational(2), Rational(0), Rational(1), Rational(0), Rational(0)},
            {Rational(0), Rational(1), Rational(3), Rational(0), Rational(0), Rational(1)},
            {Rational(1), Rational(0), Rational(1), Rational(0), Rational(2), Rational(0)},
            {Rational(0), Rational(0), Rational(0), Rational(1), Rational(0), Rational(1)},
            {Rational(2), Rational(0), Rational(0), Rational(0), Rational(1), Rational(0)},
            {Rational(0), Rational(1), Rational(0), Rational(0), Rational(0), Rational(1)}};
  ASSERT_NE(determinant(s), 0);
  QMatrix m = s * j * inverse(s);
  EXPECT_EQ(jordan_profile(m, Rational(2)).block_sizes, (std::vector<std::size_t>{3, 1}));
  EXPECT_EQ(jordan_profile(m, Rational(5)).block_sizes, (std::vector<std::size_t>{2}));
  EXPECT_EQ(jordan_profile(to_complex(m), Complex(2.0), 1e-8).block_sizes, (std::vector<std::size_t>{3, 1}));
  EXPECT_EQ(dominant_jordan_size(m), 2u);
}

TEST(Spectral, PartitionFromRanks) {
  std::vector<std::size_t> ranks{6, 3, 1, 0};
  EXPECT_EQ(partition_from_ranks(ranks), (std::vector<std::size_t>{3, 2, 1}));
}

TEST(Spectral, GrowthFit) {
  auto schedule = default_growth_schedule(200);
  struct Case {
    QMatrix m;
    double rho;
    int b;
  };
  std::vector<Case> cases{{jordan_block(3, 2), 2.0, 3},
                          {QMatrix::scalar(2, 2), 2.0, 1},
                          {jordan_block(2, 3), 3.0, 2}};
  for (const auto& c : cases) {
    auto fit = growth_fit(growth_samples(to_complex(c.m), schedule));
    EXPECT_EQ(fit.b, c.b);
    EXPECT_NEAR(fit.rho, c.rho, 1e-6);
  }
}

TEST(Spectral, GrowthFitRejectsBadSamples) {
  std::vector<GrowthSample> two{{8, 1.0}, {9, 2.0}};
  EXPECT_THROW(growth_fit(two), Error);
  std::vector<GrowthSample> noisy;
  for (long s = 8; s <= 200; s += 4) noisy.push_back({s, (s % 8 == 0 ? 5.0 : -5.0) + 0.1 * static_cast<double>(s)});
  try {
    growth_fit(noisy);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IllConditionedFit);
  }
}
