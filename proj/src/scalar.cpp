#include "ddclab/scalar.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "ddclab/error.hpp"
#include "ddclab/linalg.hpp"

namespace ddc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionAsymmetry: return "DimensionAsymmetry";
    case ErrorCode::SingularPairing: return "SingularPairing";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::MissingAmple: return "MissingAmple";
    case ErrorCode::NoFactorization: return "NoFactorization";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::NotAnEigenvalue: return "NotAnEigenvalue";
    case ErrorCode::IllConditionedFit: return "IllConditionedFit";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DivergenceSuspected: return "DivergenceSuspected";
    case ErrorCode::DuplicateAbscissa: return "DuplicateAbscissa";
    case ErrorCode::NegativeValue: return "NegativeValue";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonPositiveR: return "NonPositiveR";
    case ErrorCode::SingularBlock: return "SingularBlock";
    case ErrorCode::NotWeil: return "NotWeil";
    case ErrorCode::NonCommuting: return "NonCommuting";
    case ErrorCode::BadCodimension: return "BadCodimension";
    case ErrorCode::NotRepresentable: return "NotRepresentable";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty rational");
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto valid_int = [](const std::string& t, bool allow_sign) {
    if (t.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  if (!valid_int(num, true) || !valid_int(den, false))
    throw Error(ErrorCode::ParseError, "malformed rational '" + s + "'");
  if (num[0] == '+') num.erase(num.begin());
  Integer n(num, 10), d(den, 10);
  if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& value) { return value.get_str(10); }

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw Error(ErrorCode::InvalidArgument, "non-finite double");
  return Rational(value);
}

Rational pow_rational(const Rational& base, unsigned long exponent) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  out.canonicalize();
  return out;
}

Rational pow_rational_signed(const Rational& base, long exponent) {
  if (exponent >= 0) return pow_rational(base, static_cast<unsigned long>(exponent));
  if (sgn(base) == 0) throw Error(ErrorCode::InvalidArgument, "zero to a negative power");
  Rational inv = 1 / base;
  return pow_rational(inv, static_cast<unsigned long>(-exponent));
}

CMatrix to_complex(const QMatrix& m) {
  CMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Complex(m(i, j).get_d(), 0.0);
  return out;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    if (k == 0) break;
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

double frobenius_norm_sq(const CMatrix& m) {
  double s = 0.0;
  for (const auto& v : m.data()) s += std::norm(v);
  return s;
}

}  // namespace ddc

namespace ddc {

double log_rational(const Rational& value) {
  if (sgn(value) <= 0) throw Error(ErrorCode::InvalidArgument, "log of a non-positive rational");
  long ne = 0, de = 0;
  double nm = mpz_get_d_2exp(&ne, value.get_num_mpz_t());
  double dm = mpz_get_d_2exp(&de, value.get_den_mpz_t());
  return std::log(nm / dm) + static_cast<double>(ne - de) * std::log(2.0);
}

}  // namespace ddc
