#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ddclab/error.hpp"
#include "ddclab/scalar.hpp"

namespace ddc {

/// A positive real written as prod base_i^exp_i with rational bases and
/// exponents, or zero. Comparisons are exact big-integer power tests.
class PowerProduct {
 public:
  struct Factor {
    Rational base;
    Rational exponent;
  };

  static PowerProduct zero() { return PowerProduct(); }
  static PowerProduct rational(const Rational& v);
  /// p^alpha q^(1 - alpha), alpha in [0, 1].
  static PowerProduct geometric(const Rational& p, const Rational& q, const Rational& alpha);
  /// Product of positive bases raised to rational exponents.
  static PowerProduct from_factors(std::vector<Factor> factors);

  bool is_zero() const noexcept { return zero_; }
  const std::vector<Factor>& factors() const noexcept { return factors_; }
  /// Exact value when the product is rational.
  std::optional<Rational> exact() const;
  double log_value() const;  // -inf for zero
  double to_double() const;

  friend int compare(const PowerProduct& a, const PowerProduct& b);
  /// Sign of value - c.
  int compare(const Rational& c) const;

 private:
  PowerProduct() = default;
  bool zero_ = true;
  std::vector<Factor> factors_;
};

int compare(const PowerProduct& a, const PowerProduct& b);

struct EnvPoint {
  Rational x;
  Rational v;
};

/// Smallest log-concave majorant of a finite point set, stored by its
/// breakpoints. Zero outside the support of the nonzero points.
class LogConcaveEnvelope {
 public:
  const std::vector<EnvPoint>& breakpoints() const noexcept { return breakpoints_; }
  const Rational& lo() const noexcept { return lo_; }
  const Rational& hi() const noexcept { return hi_; }
  bool is_zero() const noexcept { return breakpoints_.empty(); }

  /// Geometric interpolation between neighbouring breakpoints. Throws OutOfDomain.
  PowerProduct eval(const Rational& x) const;
  double eval_double(const Rational& x) const { return eval(x).to_double(); }

  friend LogConcaveEnvelope upper_log_envelope(std::span<const EnvPoint>,
                                               std::optional<std::pair<Rational, Rational>>);

 private:
  std::vector<EnvPoint> breakpoints_;
  Rational lo_;
  Rational hi_;
};

/// Upper hull of (x, log v) by monotone chain. Domain defaults to
/// [min x, max x]. Throws DuplicateAbscissa, NegativeValue.
LogConcaveEnvelope upper_log_envelope(std::span<const EnvPoint> points,
                                      std::optional<std::pair<Rational, Rational>> domain = std::nullopt);

/// Sign of v_j^(xk-xi) - v_i^(xk-xj) v_k^(xj-xi) for positive values, i.e.
/// whether the middle point lies above the chord in log coordinates.
int chord_side(const EnvPoint& left, const EnvPoint& mid, const EnvPoint& right);

/// Placement of a_j on the x axis when building A_c.
enum class Placement { Doubled, Literal };

/// Points (2j, a_j), or (j, a_j) under the literal reading.
std::vector<EnvPoint> a_points(std::span<const Rational> a, Placement placement = Placement::Doubled);
/// Points (k, b_k).
std::vector<EnvPoint> b_points(std::span<const Rational> b);

/// True when r^k b_k > max_j r^(2j) a_j, decided exactly. r = 0 uses 0^0 = 1.
bool condition2_violated_at(std::span<const Rational> a, std::span<const Rational> b, std::size_t k,
                            const Rational& r);

struct Condition2Witness {
  std::size_t k = 0;
  std::optional<Rational> r;  // a value with r^k b_k > max_j r^(2j) a_j, when one was found
};

struct ConditionReport {
  bool cond1 = true;
  bool cond2 = true;
  std::vector<std::size_t> cond1_failures;  // j with b_{2j} < a_j
  std::vector<Condition2Witness> cond2_witnesses;
};

/// Condition 1: b_{2j} >= a_j. Condition 2: r^k b_k <= max_j r^(2j) a_j for
/// all r >= 0, checked as b_k <= A_c(k). Throws LengthMismatch, NegativeValue.
ConditionReport check_conditions(std::span<const Rational> a, std::span<const Rational> b);

enum class Prop1Verdict { Equal, NotEqual, HypothesesFail };
std::string to_string(Prop1Verdict v);

struct Prop1Report {
  Prop1Verdict verdict = Prop1Verdict::HypothesesFail;
  ConditionReport conditions;
  LogConcaveEnvelope a_env;
  LogConcaveEnvelope b_env;
  std::optional<Rational> counterexample;  // abscissa where the envelopes differ
  std::vector<Rational> compared_at;       // union of breakpoint abscissas
};

/// Builds A_c and B_c on [0, 2n] and compares them at the union of their
/// breakpoints and the domain ends.
Prop1Report prop1_verdict(std::span<const Rational> a, std::span<const Rational> b,
                          Placement placement = Placement::Doubled);

/// Abscissa of the first disagreement between two envelopes on a shared
/// domain, or nullopt when they agree. A positive tol compares in floating
/// point with that relative tolerance instead of exactly.
std::optional<Rational> envelope_difference(const LogConcaveEnvelope& a, const LogConcaveEnvelope& b,
                                            double tol = 0.0);

struct SequencePair {
  std::vector<Rational> a;  // a_0..a_n
  std::vector<Rational> b;  // b_0..b_{2n}
};

/// Random pair satisfying Conditions 1 and 2, verified exactly.
SequencePair random_prop1_instance(std::mt19937_64& rng, std::size_t max_n = 6, long max_int = 1000);
/// Raises one b_k strictly above A_c(k); returns the planted k.
std::size_t plant_condition2_violation(SequencePair& pair, std::mt19937_64& rng);

/// Random positive rational with numerator and denominator in [1, max_int].
Rational random_rational(std::mt19937_64& rng, long max_int = 1000);

}  // namespace ddc
