#include "ddclab/polynomial.hpp"

#include <sstream>

#include "ddclab/linalg.hpp"

namespace ddc {

QPoly::QPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

QPoly QPoly::constant(const Rational& c) { return QPoly(std::vector<Rational>{c}); }

QPoly QPoly::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1, Rational(0));
  v[degree] = c;
  return QPoly(std::move(v));
}

QPoly QPoly::linear(const Rational& root) { return QPoly(std::vector<Rational>{-root, Rational(1)}); }

void QPoly::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Rational QPoly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

const Rational& QPoly::leading() const {
  if (coeffs_.empty()) throw Error(ErrorCode::InvalidArgument, "leading coefficient of zero polynomial");
  return coeffs_.back();
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  Rational inv = 1 / leading();
  QPoly out = *this;
  for (auto& c : out.coeffs_) c *= inv;
  return out;
}

QPoly QPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return QPoly(std::move(d));
}

Rational QPoly::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<double> QPoly::eval(std::complex<double> x) const {
  std::complex<double> acc(0.0, 0.0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

QPoly& QPoly::operator+=(const QPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return QPoly(std::move(c));
}

QPoly operator*(QPoly a, const Rational& s) {
  for (auto& c : a.coeffs_) c *= s;
  a.trim();
  return a;
}

std::string QPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[static_cast<std::size_t>(i)];
    if (sgn(c) == 0) continue;
    Rational mag = abs(c);
    os << (sgn(c) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    if (mag != 1 || i == 0) os << mag.get_str();
    if (i >= 1) os << var;
    if (i >= 2) os << '^' << i;
    first = false;
  }
  return os.str();
}

QPolyDivision divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {QPoly(), a};
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  Rational inv_lead = 1 / b.leading();
  for (int i = a.degree(); i >= db; --i) {
    Rational factor = rem[static_cast<std::size_t>(i)] * inv_lead;
    if (sgn(factor) == 0) continue;
    quo[static_cast<std::size_t>(i - db)] = factor;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= factor * b.coeffs()[static_cast<std::size_t>(j)];
  }
  return {QPoly(std::move(quo)), QPoly(std::move(rem))};
}

QPoly gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = divmod(a, b).remainder;
    a = std::move(b);
    // Keeping remainders monic bounds coefficient growth a little.
    b = r.monic();
  }
  return a.monic();
}

QPoly lcm(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  QPoly g = gcd(a, b);
  return (divmod(a, g).quotient * b).monic();
}

QPoly squarefree_part(const QPoly& p) {
  if (p.degree() <= 0) return p.monic();
  QPoly g = gcd(p, p.derivative());
  return divmod(p, g).quotient.monic();
}

bool is_squarefree(const QPoly& p) {
  if (p.degree() <= 1) return true;
  return gcd(p, p.derivative()).degree() == 0;
}

std::vector<QPoly> squarefree_decomposition(const QPoly& p) {
  std::vector<QPoly> factors;
  if (p.degree() <= 0) return factors;
  QPoly f = p.monic();
  QPoly a = gcd(f, f.derivative());
  QPoly b = divmod(f, a).quotient;
  QPoly c = divmod(f.derivative(), a).quotient;
  QPoly d = c - b.derivative();
  while (b.degree() > 0) {
    QPoly g = gcd(b, d);
    factors.push_back(g);
    b = divmod(b, g).quotient;
    c = divmod(d, g).quotient;
    d = c - b.derivative();
  }
  // Trailing unit factors contribute nothing; drop them so the last factor is nontrivial.
  while (!factors.empty() && factors.back().degree() == 0) factors.pop_back();
  return factors;
}

QPoly charpoly(const QMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::InvalidArgument, "charpoly of non-square matrix");
  const std::size_t n = m.rows();
  QMatrix h = m;
  // Reduce to upper Hessenberg form by exact similarity transforms.
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = j + 1;
    while (piv < n && sgn(h(piv, j)) == 0) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(h(piv, c), h(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(h(r, piv), h(r, j + 1));
    }
    for (std::size_t i = j + 2; i < n; ++i) {
      if (sgn(h(i, j)) == 0) continue;
      Rational f = h(i, j) / h(j + 1, j);
      for (std::size_t c = 0; c < n; ++c) h(i, c) -= f * h(j + 1, c);
      for (std::size_t r = 0; r < n; ++r) h(r, j + 1) += f * h(r, i);
    }
  }
  std::vector<QPoly> p(n + 1);
  p[0] = QPoly::constant(1);
  for (std::size_t k = 1; k <= n; ++k) {
    p[k] = QPoly::linear(h(k - 1, k - 1)) * p[k - 1];
    Rational prod(1);
    for (std::size_t i = k - 1; i-- > 0;) {
      prod *= h(i + 1, i);
      if (sgn(prod) == 0) break;
      Rational coef = h(i, k - 1) * prod;
      if (sgn(coef) != 0) p[k] -= p[i] * coef;
    }
  }
  return p[n];
}

namespace {

// Minimal polynomial of v under m: incremental elimination over the Krylov sequence.
QPoly vector_minpoly(const QMatrix& m, const QMatrix& v) {
  const std::size_t n = m.rows();
  std::vector<std::vector<Rational>> basis;   // reduced vectors
  std::vector<std::size_t> pivot_of;          // pivot column per basis vector
  std::vector<std::vector<Rational>> combos;  // polynomial coefficients producing basis[i]
  QMatrix cur = v;
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<Rational> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = cur(i, 0);
    std::vector<Rational> combo(k + 1, Rational(0));
    combo[k] = 1;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Rational& f = w[pivot_of[b]];
      if (sgn(f) == 0) continue;
      Rational fc = f;
      for (std::size_t i = 0; i < n; ++i) w[i] -= fc * basis[b][i];
      for (std::size_t i = 0; i < combos[b].size(); ++i) combo[i] -= fc * combos[b][i];
    }
    std::size_t piv = n;
    for (std::size_t i = 0; i < n; ++i)
      if (sgn(w[i]) != 0) {
        piv = i;
        break;
      }
    if (piv == n) return QPoly(std::move(combo)).monic();
    Rational inv = 1 / w[piv];
    for (auto& x : w) x *= inv;
    for (auto& x : combo) x *= inv;
    basis.push_back(std::move(w));
    pivot_of.push_back(piv);
    combos.push_back(std::move(combo));
    cur = m * cur;
  }
  throw Error(ErrorCode::NonConvergence, "Krylov sequence did not terminate");
}

}  // namespace

QPoly minimal_polynomial(const QMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::InvalidArgument, "minimal polynomial of non-square matrix");
  const std::size_t n = m.rows();
  QPoly result = QPoly::constant(1);
  for (std::size_t j = 0; j < n; ++j) {
    // Skip vectors already annihilated by the running lcm.
    QMatrix e(n, 1);
    e(j, 0) = 1;
    if (result.degree() > 0 && evaluate_at(result, m) * e == QMatrix(n, 1)) continue;
    result = lcm(result, vector_minpoly(m, e));
  }
  return result;
}

QMatrix evaluate_at(const QPoly& p, const QMatrix& m) {
  const std::size_t n = m.rows();
  QMatrix acc(n, n);
  for (int i = p.degree(); i >= 0; --i) {
    acc = acc * m;
    const Rational& c = p.coeffs()[static_cast<std::size_t>(i)];
    for (std::size_t d = 0; d < n; ++d) acc(d, d) += c;
  }
  return acc;
}

namespace {

// Sign of p(s * sqrt(radicand)) for s = +-1, computed exactly.
int sign_at_root(const QPoly& p, const Rational& radicand, int s) {
  Rational even(0), odd(0), pw(1);
  const auto& c = p.coeffs();
  for (std::size_t i = 0; i < c.size(); i += 2) {
    even += c[i] * pw;
    if (i + 1 < c.size()) odd += c[i + 1] * pw;
    pw *= radicand;
  }
  if (s < 0) odd = -odd;
  // value = even + odd * sqrt(radicand)
  int se = sgn(even), so = sgn(odd);
  if (so == 0 || sgn(radicand) == 0) return se;
  if (se == 0) return so;
  if (se == so) return se;
  Rational lhs = even * even, rhs = odd * odd * radicand;
  int cmpv = cmp(lhs, rhs);
  if (cmpv == 0) return 0;
  return cmpv > 0 ? se : so;
}

int sign_changes(const std::vector<QPoly>& seq, const Rational& radicand, int s) {
  int changes = 0, last = 0;
  for (const auto& q : seq) {
    int v = sign_at_root(q, radicand, s);
    if (v == 0) continue;
    if (last != 0 && v != last) ++changes;
    last = v;
  }
  return changes;
}

}  // namespace

int count_real_roots_symmetric(const QPoly& p, const Rational& radicand) {
  if (p.degree() <= 0) return 0;
  std::vector<QPoly> seq{p, p.derivative()};
  while (seq.back().degree() > 0) {
    QPoly r = divmod(seq[seq.size() - 2], seq.back()).remainder;
    if (r.is_zero()) break;
    seq.push_back(r * Rational(-1));
  }
  return sign_changes(seq, radicand, -1) - sign_changes(seq, radicand, +1);
}

bool all_roots_on_circle(const QPoly& p_in, const Rational& radius_sq) {
  if (p_in.is_zero()) throw Error(ErrorCode::InvalidArgument, "zero polynomial has no root set");
  if (sgn(radius_sq) <= 0) throw Error(ErrorCode::InvalidArgument, "circle radius must be positive");
  QPoly p = p_in.monic();
  if (p.degree() == 0) return true;
  // Strip real roots +-R, which lie on the circle.
  const QPoly real_pair(std::vector<Rational>{-radius_sq, Rational(0), Rational(1)});
  while (p.degree() > 0) {
    QPoly g = gcd(p, real_pair);
    if (g.degree() <= 0) break;
    p = divmod(p, g).quotient.monic();
  }
  if (p.degree() == 0) return true;
  if (p.degree() % 2 != 0) return false;
  const std::size_t d = static_cast<std::size_t>(p.degree());
  const std::size_t half = d / 2;
  // Self-reciprocity with respect to x -> R^2 / x.
  for (std::size_t i = 1; i <= half; ++i)
    if (p.coeff(half - i) != p.coeff(half + i) * pow_rational(radius_sq, i)) return false;
  // p(x) = x^half * g(x + R^2/x); expand x^i + R^{2i} x^{-i} as T_i(y).
  std::vector<QPoly> t{QPoly::constant(2), QPoly::monomial(1, 1)};
  for (std::size_t i = 2; i <= half; ++i)
    t.push_back(QPoly::monomial(1, 1) * t[i - 1] - t[i - 2] * radius_sq);
  QPoly g = QPoly::constant(p.coeff(half));
  for (std::size_t i = 1; i <= half; ++i) g += t[i] * p.coeff(half + i);
  // Roots on the circle (away from +-R) <=> roots of g real and inside (-2R, 2R).
  QPoly gs = squarefree_part(g);
  return count_real_roots_symmetric(gs, radius_sq * 4) == gs.degree();
}

}  // namespace ddc

namespace ddc {

QMatrix companion_matrix(const QPoly& p) {
  if (p.degree() < 1) throw Error(ErrorCode::InvalidArgument, "companion of a constant polynomial");
  QPoly m = p.monic();
  const auto d = static_cast<std::size_t>(m.degree());
  QMatrix c(d, d);
  for (std::size_t i = 1; i < d; ++i) c(i, i - 1) = 1;
  for (std::size_t i = 0; i < d; ++i) c(i, d - 1) = -m.coeff(i);
  return c;
}

}  // namespace ddc
