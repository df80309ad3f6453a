#pragma once

#include <complex>
#include <string>
#include <vector>

#include "ddclab/matrix.hpp"

namespace ddc {

/// Dense univariate polynomial over Q, coefficients stored low degree first.
/// The zero polynomial has no coefficients and degree -1.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rational> coeffs);
  static QPoly constant(const Rational& c);
  static QPoly monomial(const Rational& c, std::size_t degree);
  /// x - root
  static QPoly linear(const Rational& root);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  Rational coeff(std::size_t i) const;
  const Rational& leading() const;

  QPoly monic() const;
  QPoly derivative() const;
  Rational eval(const Rational& x) const;
  std::complex<double> eval(std::complex<double> x) const;

  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(QPoly a, const Rational& s);
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

struct QPolyDivision {
  QPoly quotient;
  QPoly remainder;
};

QPolyDivision divmod(const QPoly& a, const QPoly& b);
/// Monic gcd; gcd(0, 0) = 0.
QPoly gcd(QPoly a, QPoly b);
QPoly lcm(const QPoly& a, const QPoly& b);
/// p / gcd(p, p'), monic.
QPoly squarefree_part(const QPoly& p);
bool is_squarefree(const QPoly& p);

/// Yun decomposition: p = lc * prod_i factors[i]^(i+1), factors pairwise coprime and squarefree.
std::vector<QPoly> squarefree_decomposition(const QPoly& p);

/// Characteristic polynomial det(xI - M) via exact Hessenberg reduction.
QPoly charpoly(const QMatrix& m);
/// Minimal polynomial via Krylov sequences of the standard basis.
QPoly minimal_polynomial(const QMatrix& m);
/// Companion matrix of a monic polynomial: ones below the diagonal, last
/// column -c_0..-c_{d-1}.
QMatrix companion_matrix(const QPoly& p);
/// p(M) by Horner's scheme.
QMatrix evaluate_at(const QPoly& p, const QMatrix& m);

/// Number of distinct real roots in the open interval (lo, hi) via Sturm's theorem.
/// Endpoints are given as signed square roots: lo = -sqrt(radicand), hi = +sqrt(radicand).
int count_real_roots_symmetric(const QPoly& p, const Rational& radicand);

/// True when every complex root of p has modulus sqrt(radius_sq), decided exactly.
bool all_roots_on_circle(const QPoly& p, const Rational& radius_sq);

}  // namespace ddc
