#include <gtest/gtest.h>

#include <random>

#include "ddclab/envelope.hpp"

using namespace ddc;

namespace {

std::vector<Rational> ints(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

std::vector<EnvPoint> pts(std::initializer_list<std::pair<long, long>> v) {
  std::vector<EnvPoint> out;
  for (auto [x, y] : v) out.push_back({Rational(x), Rational(y)});
  return out;
}

}  // namespace

TEST(Envelope, AlreadyLogConcave) {
  auto p = pts({{0, 1}, {2, 4}, {4, 2}});
  auto e = upper_log_envelope(p);
  ASSERT_EQ(e.breakpoints().size(), 3u);
  EXPECT_EQ(e.eval(Rational(1)).exact(), Rational(2));
  EXPECT_EQ(e.eval(Rational(2)).exact(), Rational(4));
  auto at3 = e.eval(Rational(3));
  EXPECT_FALSE(at3.exact());
  EXPECT_GT(at3.compare(Rational(282, 100)), 0);
  EXPECT_LT(at3.compare(Rational(283, 100)), 0);
  EXPECT_NEAR(at3.to_double(), std::sqrt(8.0), 1e-12);
}

TEST(Envelope, DropsPointsBelowChord) {
  auto p = pts({{0, 1}, {2, 1}, {4, 4}});
  auto e = upper_log_envelope(p);
  ASSERT_EQ(e.breakpoints().size(), 2u);
  EXPECT_EQ(e.breakpoints()[1].x, 4);
  EXPECT_EQ(e.eval(Rational(2)).exact(), Rational(2));
}

TEST(Envelope, SinglePointAndZero) {
  auto one = pts({{0, 5}});
  auto e = upper_log_envelope(one);
  EXPECT_EQ(e.eval(Rational(0)).exact(), Rational(5));
  auto zero = pts({{0, 0}, {1, 0}});
  EXPECT_TRUE(upper_log_envelope(zero).is_zero());
}

TEST(Envelope, ZeroValuesAreAbsentPoints) {
  auto p = pts({{0, 1}, {1, 0}, {2, 9}});
  auto e = upper_log_envelope(p);
  EXPECT_EQ(e.eval(Rational(1)).exact(), Rational(3));
}

TEST(Envelope, Errors) {
  auto dup = pts({{0, 1}, {0, 2}});
  try {
    upper_log_envelope(dup);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateAbscissa);
  }
  auto neg = pts({{0, 1}, {1, -2}});
  try {
    upper_log_envelope(neg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeValue);
  }
  auto ok = pts({{0, 1}, {2, 4}});
  try {
    upper_log_envelope(ok).eval(Rational(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfDomain);
  }
}

TEST(Envelope, PowerProductComparison) {
  auto a = PowerProduct::geometric(Rational(4), Rational(2), Rational(1, 2));  // sqrt(8)
  auto b = PowerProduct::from_factors({{Rational(2), Rational(3, 2)}});
  EXPECT_EQ(compare(a, b), 0);
  EXPECT_LT(compare(PowerProduct::zero(), a), 0);
  EXPECT_EQ(PowerProduct::rational(Rational(7, 3)).exact(), Rational(7, 3));
}

TEST(Conditions, Examples) {
  auto r = check_conditions(ints({1, 4, 2}), ints({1, 2, 4, 2, 2}));
  EXPECT_TRUE(r.cond1);
  EXPECT_TRUE(r.cond2);

  auto bad = check_conditions(ints({1, 4, 2}), ints({1, 3, 4, 2, 2}));
  EXPECT_TRUE(bad.cond1);
  EXPECT_FALSE(bad.cond2);
  ASSERT_FALSE(bad.cond2_witnesses.empty());
  EXPECT_EQ(bad.cond2_witnesses[0].k, 1u);
  ASSERT_TRUE(bad.cond2_witnesses[0].r);
  auto a = ints({1, 4, 2}), b = ints({1, 3, 4, 2, 2});
  EXPECT_TRUE(condition2_violated_at(a, b, 1, *bad.cond2_witnesses[0].r));

  auto flat = check_conditions(ints({1, 1}), ints({1, 1, 1}));
  EXPECT_TRUE(flat.cond1 && flat.cond2);

  auto c1 = check_conditions(ints({1, 4, 2}), ints({1, 2, 3, 2, 2}));
  EXPECT_FALSE(c1.cond1);
  EXPECT_EQ(c1.cond1_failures, (std::vector<std::size_t>{1}));
}

TEST(Conditions, LengthMismatch) {
  auto a = ints({1, 4, 2}), b = ints({1, 2, 4});
  try {
    check_conditions(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
  }
}

TEST(EnvelopeVerdict, Examples) {
  auto r = prop1_verdict(ints({1, 4, 2}), ints({1, 2, 4, 2, 2}));
  EXPECT_EQ(r.verdict, Prop1Verdict::Equal);
  ASSERT_EQ(r.a_env.breakpoints().size(), 3u);
  ASSERT_EQ(r.b_env.breakpoints().size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(r.a_env.breakpoints()[i].x, r.b_env.breakpoints()[i].x);
    EXPECT_EQ(r.a_env.breakpoints()[i].v, r.b_env.breakpoints()[i].v);
  }
  EXPECT_EQ(r.a_env.hi(), 4);

  auto zeros = prop1_verdict(ints({1, 3, 5}), ints({1, 0, 3, 0, 5}));
  EXPECT_EQ(zeros.verdict, Prop1Verdict::Equal);

  auto gate = prop1_verdict(ints({1, 4, 2}), ints({1, 3, 4, 2, 2}));
  EXPECT_EQ(gate.verdict, Prop1Verdict::HypothesesFail);
  EXPECT_FALSE(gate.counterexample);
}

TEST(EnvelopeVerdict, RandomInstancesAreEqual) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 200; ++i) {
    auto inst = random_prop1_instance(rng);
    EXPECT_EQ(prop1_verdict(inst.a, inst.b).verdict, Prop1Verdict::Equal);
  }
}

TEST(EnvelopeVerdict, PlantedViolationIsCaught) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 200; ++i) {
    auto inst = random_prop1_instance(rng);
    const std::size_t k = plant_condition2_violation(inst, rng);
    auto r = check_conditions(inst.a, inst.b);
    EXPECT_FALSE(r.cond2);
    bool found = false;
    for (const auto& w : r.cond2_witnesses) found = found || w.k == k;
    EXPECT_TRUE(found);
    EXPECT_NE(prop1_verdict(inst.a, inst.b).verdict, Prop1Verdict::Equal);
  }
}

TEST(EnvelopeVerdict, LiteralPlacement) {
  auto pts_a = a_points(ints({1, 4, 2}), Placement::Literal);
  EXPECT_EQ(pts_a[1].x, 1);
  auto r = prop1_verdict(ints({1, 4, 2}), ints({1, 2, 4, 2, 2}), Placement::Literal);
  EXPECT_EQ(r.verdict, Prop1Verdict::NotEqual);
}

TEST(Envelope, DifferenceDetection) {
  auto p = pts({{0, 1}, {2, 4}, {4, 2}});
  auto q = pts({{0, 1}, {2, 5}, {4, 2}});
  auto d = envelope_difference(upper_log_envelope(p), upper_log_envelope(q));
  ASSERT_TRUE(d);
  EXPECT_FALSE(envelope_difference(upper_log_envelope(p), upper_log_envelope(p)));
}
