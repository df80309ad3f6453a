#include <gtest/gtest.h>

#include <cmath>

#include "ddclab/degrees.hpp"
#include "ddclab/verify.hpp"

using namespace ddc;

namespace {

SpacePtr<Rational> curve_space() { return share(make_space<Rational>(1, {1, 2, 1})); }

GradedMap<Rational> diag_map(const SpacePtr<Rational>& s, std::vector<Rational> per_degree) {
  std::vector<QMatrix> b;
  for (std::size_t k = 0; k <= s->top(); ++k) b.push_back(QMatrix::scalar(s->dim(k), per_degree[k]));
  return GradedMap<Rational>(s, b);
}

}  // namespace

TEST(IterateSystem, PowerListGenerator) {
  auto s = curve_space();
  auto f = diag_map(s, {1, 2, 3});
  auto p = IterateSystem<Rational>::power(f);
  EXPECT_EQ(p.iterate(3), diag_map(s, {1, 8, 27}));

  auto m1 = diag_map(s, {1, 1, 1}), m2 = diag_map(s, {5, 6, 7});
  auto l = IterateSystem<Rational>::list({m1, m2});
  EXPECT_EQ(l.iterate(2), m2);
  try {
    l.iterate(3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfRange);
  }

  auto g = IterateSystem<Rational>::generator(s, [s](unsigned long t) {
    return diag_map(s, {Rational(static_cast<long>(t)), Rational(static_cast<long>(t)), Rational(static_cast<long>(t))});
  });
  EXPECT_EQ(g.iterate(5), diag_map(s, {5, 5, 5}));
  EXPECT_THROW(p.iterate(0), Error);
}

TEST(Degrees, EndoDegreesOfIdentity) {
  auto s = curve_space();
  auto d = endo_degrees(GradedMap<Rational>::identity(s), NumericalStructure<Rational>::identity(s));
  for (double v : d.lambda) EXPECT_DOUBLE_EQ(v, 1.0);
  for (double v : d.chi) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(Degrees, NumericalDegreesPowerAndList) {
  auto s = curve_space();
  auto ns = NumericalStructure<Rational>::identity(s);
  auto e = numerical_degrees(IterateSystem<Rational>::power(diag_map(s, {1, 1, 4}), ns), 1);
  EXPECT_DOUBLE_EQ(e.value, 4.0);
  EXPECT_EQ(e.mode, EstimateMode::Exact);

  std::vector<GradedMap<Rational>> list;
  for (long t = 1; t <= 40; ++t) list.push_back(GradedMap<Rational>::identity(s));
  auto c = numerical_degrees(IterateSystem<Rational>::list(list, ns), 1, 40);
  EXPECT_DOUBLE_EQ(c.value, 1.0);
}

TEST(Degrees, LastRootOfPlantedSequence) {
  // ||M_t|| = 9^t t
  std::vector<double> logs;
  for (int t = 1; t <= 400; ++t) logs.push_back(t * std::log(9.0) + std::log(static_cast<double>(t)));
  auto e = last_root_estimate(logs);
  EXPECT_NEAR(e.value, 9.0, 0.15);
  EXPECT_LT(e.drift, 1e-4);
  std::vector<double> more(logs.begin(), logs.begin() + 100);
  EXPECT_GT(std::fabs(last_root_estimate(more).value - 9.0), std::fabs(e.value - 9.0));
}

TEST(Degrees, WindowedMaxOfAlternatingSequence) {
  std::vector<double> logs;
  for (int t = 1; t <= 64; ++t) logs.push_back(t * std::log(t % 2 ? 2.0 : 3.0));
  EXPECT_NEAR(windowed_max_estimate(logs).value, 3.0, 1e-12);
  std::vector<double> zeros(16, -INFINITY);
  EXPECT_EQ(windowed_max_estimate(zeros).value, 0.0);
}

TEST(Degrees, CohomologicalPowerModeAndZeroBlock) {
  auto s = curve_space();
  auto sys = IterateSystem<Rational>::power(diag_map(s, {0, 2, 4}));
  EXPECT_DOUBLE_EQ(cohomological_degrees(sys, 1).value, 2.0);
  EXPECT_DOUBLE_EQ(cohomological_degrees(sys, 0).value, 0.0);
}

TEST(Degrees, DivergenceSuspected) {
  std::vector<double> logs;
  for (int t = 1; t <= 64; ++t) logs.push_back(static_cast<double>(t) * std::log(static_cast<double>(t)));
  try {
    windowed_max_estimate(logs);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivergenceSuspected);
  }
}

TEST(DdcVerdict, EllipticTimesTwoPasses) {
  auto b = elliptic_times2_model();
  auto sys = IterateSystem<Rational>::power(b.endos.at("endo"), b.numerical);
  auto rep = ddc_verdict(sys);
  EXPECT_TRUE(rep.all_pass());
  ASSERT_EQ(rep.chi.size(), 3u);
  EXPECT_NEAR(rep.chi[1].value, 2.0, 1e-12);
  EXPECT_NEAR(rep.lambda[1].value, 4.0, 1e-12);
  EXPECT_NEAR(rep.odd[0].rhs, 2.0, 1e-12);
}

TEST(DdcVerdict, CounterModelFailsEquality) {
  auto b = conjecture_d_counter_model();
  auto sys = IterateSystem<Rational>::power(b.endos.at("f"), b.numerical);
  auto rep = ddc_verdict(sys);
  EXPECT_FALSE(rep.all_pass());
  EXPECT_TRUE(rep.conjectureD_false_model);
  bool failed = false;
  for (const auto& c : rep.equality) failed = failed || c.verdict == Verdict::Fail;
  EXPECT_TRUE(failed);
}

TEST(DdcVerdict, ListModeMatchesPowerMode) {
  auto b = elliptic_times2_model();
  const auto& f = b.endos.at("endo");
  std::vector<GradedMap<Rational>> list;
  for (unsigned long t = 1; t <= 48; ++t) list.push_back(f.power(t));
  // Finite-t roots carry a C^(1/t) bias of about 1% at t = 48.
  auto rep = ddc_verdict(IterateSystem<Rational>::list(list, b.numerical), 48, 0.05);
  EXPECT_TRUE(rep.all_pass());
  EXPECT_NEAR(rep.chi[1].value, 2.0, 0.05);
}

TEST(DdcVerdict, FromEstimatesFlagsOddViolation) {
  auto make = [](double v) {
    DegreeEstimate e;
    e.value = v;
    return e;
  };
  auto rep = ddc_from_estimates({make(1), make(4)}, {make(1), make(3), make(4)}, true, 1e-6);
  ASSERT_EQ(rep.odd.size(), 1u);
  EXPECT_EQ(rep.odd[0].verdict, Verdict::Fail);
}
