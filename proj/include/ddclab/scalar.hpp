#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

namespace ddc {

using Rational = mpq_class;
using Integer = mpz_class;
using Complex = std::complex<double>;

enum class FieldTag { ExactRational, ComplexFloat };

/// Scalar field descriptor carried by models. Exact mode never rounds; the
/// tolerance only applies to complex-float comparisons.
struct ScalarField {
  FieldTag tag = FieldTag::ExactRational;
  double tolerance = 1e-9;
};

Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& value);

/// Natural log of a positive rational, safe for values beyond double range.
double log_rational(const Rational& value);

/// Exact rational value of a finite double.
Rational rational_from_double(double value);

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr FieldTag tag = FieldTag::ExactRational;
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_int(long v) { return Rational(v); }
  static Rational conj(const Rational& x) { return x; }
  static bool is_zero(const Rational& x, double /*tol*/ = 0.0) { return sgn(x) == 0; }
  static bool equal(const Rational& a, const Rational& b, double /*tol*/ = 0.0) { return a == b; }
  static Complex to_complex(const Rational& x) { return {x.get_d(), 0.0}; }
  static double abs(const Rational& x) { return std::fabs(x.get_d()); }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static constexpr FieldTag tag = FieldTag::ComplexFloat;
  static Complex zero() { return {0.0, 0.0}; }
  static Complex one() { return {1.0, 0.0}; }
  static Complex from_int(long v) { return {static_cast<double>(v), 0.0}; }
  static Complex conj(const Complex& x) { return std::conj(x); }
  static bool is_zero(const Complex& x, double tol = 1e-9) { return std::abs(x) <= tol; }
  static bool equal(const Complex& a, const Complex& b, double tol = 1e-9) {
    double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= tol * scale;
  }
  static Complex to_complex(const Complex& x) { return x; }
  static double abs(const Complex& x) { return std::abs(x); }
};

template <class T>
concept Scalar = requires { ScalarTraits<T>::exact; };

/// Exact power of a rational with a non-negative integer exponent.
Rational pow_rational(const Rational& base, unsigned long exponent);

/// Exact integer power r^e for signed e (r must be nonzero when e < 0).
Rational pow_rational_signed(const Rational& base, long exponent);

}  // namespace ddc
