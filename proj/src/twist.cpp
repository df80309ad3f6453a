#include "ddclab/twist.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>

#include "ddclab/polynomial.hpp"
#include "eigen_bridge.hpp"

namespace ddc {

bool is_prime_power(long q) {
  if (q < 2) return false;
  long p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) return true;  // q itself is prime
  while (q % p == 0) q /= p;
  return q == 1;
}

bool block_is_weil(const QMatrix& m, long base, std::size_t k) {
  if (m.rows() == 0) return true;
  return all_roots_on_circle(charpoly(m), pow_rational(Rational(base), k));
}

bool block_is_weil(const CMatrix& m, long base, std::size_t k, double tol) {
  if (m.rows() == 0) return true;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(detail::to_eigen(m), false);
  const double target = std::pow(static_cast<double>(base), static_cast<double>(k) / 2.0);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::fabs(std::abs(es.eigenvalues()(i)) - target) > tol * target) return false;
  return true;
}

bool is_semisimple(const QMatrix& m) {
  if (m.rows() == 0) return true;
  return evaluate_at(squarefree_part(charpoly(m)), m).is_zero();
}

bool is_semisimple(const CMatrix& m, double tol) {
  if (m.rows() == 0) return true;
  CMatrix v = eigenbasis(m);
  auto ext = singular_extremes(v);
  return ext.max > 0.0 && ext.min / ext.max > tol;
}

CMatrix eigenbasis(const CMatrix& m) {
  if (m.rows() == 0) return m;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(detail::to_eigen(m), true);
  Eigen::MatrixXcd v = es.eigenvectors();
  for (Eigen::Index j = 0; j < v.cols(); ++j) v.col(j).normalize();
  return detail::from_eigen(v);
}

long twist_schedule(unsigned long t, double r, double base) {
  return static_cast<long>(std::floor(2.0 * static_cast<double>(t) * std::log(r) / std::log(base)));
}

std::vector<double> dyadic_grid(int lo, int hi) {
  std::vector<double> g;
  for (int i = lo; i <= hi; ++i) g.push_back(std::ldexp(1.0, i));
  return g;
}

Eq1Report eq1_scan(const std::vector<double>& lambda, const std::vector<double>& chi, const std::vector<double>& r_grid,
                   double tol, std::optional<double> base) {
  if (lambda.empty() || chi.size() != 2 * lambda.size() - 1)
    throw Error(ErrorCode::LengthMismatch, "need lambda_0..lambda_n and chi_0..chi_{2n}");
  Eq1Report rep;
  for (double r : r_grid) {
    if (!(r >= 0.0)) throw Error(ErrorCode::NonPositiveR, "r must be non-negative");
    double rhs = 0.0;
    for (std::size_t j = 0; j < lambda.size(); ++j)
      rhs = std::max(rhs, std::pow(r, static_cast<double>(2 * j)) * lambda[j]);
    for (std::size_t k = 0; k < chi.size(); ++k) {
      double lhs = std::pow(r, static_cast<double>(k)) * chi[k];
      double scale = std::max({lhs, rhs, std::numeric_limits<double>::min()});
      Eq1Entry e{r, k, lhs, rhs, (rhs - lhs) / scale};
      rep.entries.push_back(e);
      if (lhs > rhs * (1.0 + tol)) rep.violations.push_back(e);
    }
    if (base && r > 0.0)
      for (unsigned long t = 1; t <= 4; ++t) rep.schedule.emplace_back(r, t, twist_schedule(t, r, *base));
  }
  return rep;
}

std::vector<KroneckerResult> kronecker_sequence(double theta, std::size_t max_steps) {
  if (!(theta > 0.0) || !std::isfinite(theta)) throw Error(ErrorCode::InvalidArgument, "theta must be positive");
  const Rational exact = rational_from_double(theta);
  const double eps = std::numeric_limits<double>::epsilon();
  Integer num = exact.get_num(), den = exact.get_den();
  Integer p_prev(1), p_prev2(0), q_prev(0), q_prev2(1);
  std::vector<KroneckerResult> out;
  for (std::size_t step = 0; step < 4 * max_steps + 8 && out.size() < max_steps && den != 0; ++step) {
    Integer a = num / den;
    Integer rem = num - a * den;
    Integer p = a * p_prev + p_prev2;
    Integer q = a * q_prev + q_prev2;
    p_prev2 = p_prev;
    p_prev = p;
    q_prev2 = q_prev;
    q_prev = q;
    num = den;
    den = rem;
    if (sgn(p) <= 0) continue;
    if (!p.fits_slong_p() || !q.fits_slong_p()) break;
    Rational gap = Rational(p) - Rational(q) * exact;
    double residual = std::fabs(gap.get_d());
    KroneckerResult r{-q.get_si(), p.get_si(), residual, false, out.size()};
    if (q <= 1000000 && residual <= 64.0 * eps * q.get_d() * std::max(1.0, theta)) {
      r.residual = 0.0;
      r.rational = true;
      out.push_back(r);
      break;
    }
    out.push_back(r);
  }
  return out;
}

KroneckerResult kronecker_approx(double theta, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  for (const auto& r : kronecker_sequence(theta, 256))
    if (r.residual < eps) return r;
  throw Error(ErrorCode::NonConvergence, "no convergent reaches the requested accuracy in double precision");
}

std::size_t dominant_jordan_size(const CMatrix& m, double rel_tol) {
  if (m.rows() == 0) return 0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(detail::to_eigen(m), false);
  double max_mod = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) max_mod = std::max(max_mod, std::abs(es.eigenvalues()(i)));
  const double cluster = std::max(rel_tol, 1e-6);
  std::size_t b = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    Complex lambda = es.eigenvalues()(i);
    if (std::abs(lambda) < max_mod * (1.0 - cluster)) continue;
    b = std::max(b, jordan_profile(m, lambda, 1e-6).largest);
  }
  return b;
}

JordanCompareReport jordan_certificate(std::size_t b1, long a1, std::size_t b2, long a2, std::size_t steps) {
  JordanCompareReport rep;
  rep.b1 = b1;
  rep.b2 = b2;
  rep.equal = b1 == b2;
  if (rep.equal) return rep;
  const bool first_big = b1 > b2;
  const std::size_t b_big = first_big ? b1 : b2;
  const std::size_t b_small = first_big ? b2 : b1;
  const long a_big = first_big ? a1 : a2;
  const long a_small = first_big ? a2 : a1;
  rep.theta = std::log(static_cast<double>(a_small)) / std::log(static_cast<double>(a_big));
  rep.steps = kronecker_sequence(rep.theta, steps);
  for (const auto& s : rep.steps)
    rep.certificate.push_back(std::pow(static_cast<double>(s.t), static_cast<double>(b_big - 1)) /
                              std::pow(std::fabs(static_cast<double>(s.s)), static_cast<double>(b_small - 1)));
  return rep;
}

}  // namespace ddc
