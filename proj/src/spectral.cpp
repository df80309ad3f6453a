#include "ddclab/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "ddclab/linalg.hpp"
#include "ddclab/roots.hpp"
#include "eigen_bridge.hpp"

namespace ddc {

std::string_view to_string(SpectralMethod m) {
  switch (m) {
    case SpectralMethod::ExactCharpoly: return "exact-charpoly";
    case SpectralMethod::Gelfand: return "gelfand";
    case SpectralMethod::Eigensolver: return "eigensolver";
  }
  return "unknown";
}

double frobenius_norm(const QMatrix& m) { return std::sqrt(frobenius_norm_sq_exact(m).get_d()); }

double frobenius_norm(const CMatrix& m) {
  // Scaled accumulation keeps huge or tiny entries from overflowing.
  double scale = 0.0;
  for (const auto& v : m.data()) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (const auto& v : m.data()) s += std::norm(v / scale);
  return scale * std::sqrt(s);
}

Rational frobenius_norm_sq_exact(const QMatrix& m) {
  Rational s(0);
  for (const auto& v : m.data()) s += v * v;
  return s;
}

SpectralReport spectral_radius(const QMatrix& m, const SpectralOptions& opts) {
  if (!m.square()) throw Error(ErrorCode::InvalidArgument, "spectral radius of non-square matrix");
  SpectralReport rep;
  if (m.rows() == 0) return rep;
  if (m.rows() > opts.exact_dim_limit) return gelfand_radius(to_complex(m), opts);
  QPoly sf = squarefree_part(charpoly(m));
  rep.method = SpectralMethod::ExactCharpoly;
  for (const auto& r : isolate_roots(sf)) {
    if (r.modulus > rep.value) {
      rep.value = r.modulus;
      rep.residual = r.radius / r.modulus;
    }
  }
  return rep;
}

SpectralReport spectral_radius(const CMatrix& m, const SpectralOptions& opts) {
  if (!m.square()) throw Error(ErrorCode::InvalidArgument, "spectral radius of non-square matrix");
  SpectralReport rep;
  if (m.rows() == 0) return rep;
  if (m.rows() > opts.exact_dim_limit) return gelfand_radius(m, opts);
  Eigen::MatrixXcd em = detail::to_eigen(m);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(em, true);
  rep.method = SpectralMethod::Eigensolver;
  Eigen::Index best = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double a = std::abs(es.eigenvalues()(i));
    if (a > rep.value) {
      rep.value = a;
      best = i;
    }
  }
  double norm = em.norm();
  if (norm > 0.0) {
    Eigen::VectorXcd v = es.eigenvectors().col(best);
    rep.residual = (em * v - es.eigenvalues()(best) * v).norm() / (norm * std::max(v.norm(), 1e-300));
  }
  return rep;
}

namespace {

double normalize(CMatrix& m) {
  double n = frobenius_norm(m);
  if (n > 0.0) m *= Complex(1.0 / n, 0.0);
  return n;
}

}  // namespace

SpectralReport gelfand_radius(const CMatrix& m, const SpectralOptions& opts) {
  SpectralReport rep;
  rep.method = SpectralMethod::Gelfand;
  CMatrix p = m;
  double n0 = normalize(p);
  if (n0 == 0.0) return rep;
  double log_scale = std::log(n0);
  double prev = n0;
  double power = 1.0;
  for (int i = 1; i <= opts.gelfand_max_iterations; ++i) {
    p = p * p;
    double s = normalize(p);
    power *= 2.0;
    if (s == 0.0) {
      rep.value = 0.0;
      rep.iterations = i;
      rep.residual = 0.0;
      return rep;
    }
    log_scale = 2.0 * log_scale + std::log(s);
    double est = std::exp(log_scale / power);
    rep.iterations = i;
    rep.value = est;
    rep.residual = std::fabs(est - prev) / est;
    if (rep.residual < opts.gelfand_tolerance) return rep;
    prev = est;
  }
  throw Error(ErrorCode::NonConvergence,
              "Gelfand iteration did not stabilize (residual " + std::to_string(rep.residual) + ")");
}

SingularExtremes singular_extremes(const CMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::InvalidArgument, "singular_extremes needs a square matrix");
  SingularExtremes out;
  if (m.rows() == 0) return out;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(detail::to_eigen(m));
  const auto& sv = svd.singularValues();
  out.max = sv(0);
  out.min = sv(sv.size() - 1);
  if (out.min <= 1e-14 * out.max) out.min = 0.0;
  return out;
}

SingularExtremes singular_extremes(const QMatrix& m) {
  SingularExtremes out = singular_extremes(to_complex(m));
  if (m.rows() > 0 && sgn(determinant(m)) == 0) out.min = 0.0;
  return out;
}

ScaledPower scaled_power(const CMatrix& m, unsigned long e) {
  if (!m.square()) throw Error(ErrorCode::InvalidArgument, "power of non-square matrix");
  ScaledPower result{CMatrix::identity(m.rows()), 0.0};
  CMatrix base = m;
  double base_log = std::log(normalize(base));
  if (m.rows() == 0) return result;
  if (!std::isfinite(base_log)) {
    if (e == 0) return result;
    return {CMatrix(m.rows(), m.cols()), -std::numeric_limits<double>::infinity()};
  }
  while (e > 0) {
    if (e & 1UL) {
      result.normalized = result.normalized * base;
      double s = normalize(result.normalized);
      if (s == 0.0) return {CMatrix(m.rows(), m.cols()), -std::numeric_limits<double>::infinity()};
      result.log_scale += base_log + std::log(s);
    }
    e >>= 1;
    if (e > 0) {
      base = base * base;
      double s = normalize(base);
      if (s == 0.0) return {CMatrix(m.rows(), m.cols()), -std::numeric_limits<double>::infinity()};
      base_log = 2.0 * base_log + std::log(s);
    }
  }
  return result;
}

namespace {

YamamotoReport yamamoto_impl(const CMatrix& m, std::span<const unsigned long> m_values, double radius) {
  YamamotoReport rep;
  rep.spectral_radius = radius;
  unsigned long last = 0;
  for (unsigned long mv : m_values) {
    if (mv == 0 || mv <= last) throw Error(ErrorCode::InvalidArgument, "m values must be positive and increasing");
    last = mv;
    ScaledPower p = scaled_power(m, mv);
    YamamotoEstimate est;
    est.m = mv;
    est.log_scale = p.log_scale;
    if (!std::isfinite(p.log_scale)) {
      est.estimate = 0.0;
    } else {
      double smax = singular_extremes(p.normalized).max;
      est.estimate = std::exp((std::log(smax) + p.log_scale) / static_cast<double>(mv));
    }
    rep.estimates.push_back(est);
  }
  if (!rep.estimates.empty()) {
    double e = rep.estimates.back().estimate;
    rep.final_gap = radius > 0.0 ? std::fabs(e - radius) / radius : e;
  }
  return rep;
}

}  // namespace

YamamotoReport yamamoto_sequence(const CMatrix& m, std::span<const unsigned long> m_values) {
  return yamamoto_impl(m, m_values, spectral_radius(m).value);
}

YamamotoReport yamamoto_sequence(const QMatrix& m, std::span<const unsigned long> m_values) {
  return yamamoto_impl(to_complex(m), m_values, spectral_radius(m).value);
}

std::vector<std::size_t> partition_from_ranks(std::span<const std::size_t> ranks) {
  // ranks[p] = rank(N^p); blocks of size >= p number ranks[p-1] - ranks[p].
  std::vector<std::size_t> at_least;
  for (std::size_t p = 1; p < ranks.size(); ++p) at_least.push_back(ranks[p - 1] - ranks[p]);
  std::vector<std::size_t> sizes;
  for (std::size_t p = 0; p < at_least.size(); ++p) {
    std::size_t next = p + 1 < at_least.size() ? at_least[p + 1] : 0;
    for (std::size_t c = next; c < at_least[p]; ++c) sizes.push_back(p + 1);
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

JordanReport jordan_profile(const QMatrix& m, const Rational& lambda) {
  if (!m.square()) throw Error(ErrorCode::InvalidArgument, "jordan_profile needs a square matrix");
  const std::size_t n = m.rows();
  QMatrix nmat = m - QMatrix::scalar(n, lambda);
  std::vector<std::size_t> ranks{n};
  QMatrix power = QMatrix::identity(n);
  while (true) {
    power = power * nmat;
    std::size_t r = rank(power);
    if (r == ranks.back()) break;
    ranks.push_back(r);
  }
  if (ranks.size() == 1) throw Error(ErrorCode::NotAnEigenvalue, format_rational(lambda) + " is not an eigenvalue");
  JordanReport rep;
  rep.eigenvalue = Complex(lambda.get_d(), 0.0);
  rep.block_sizes = partition_from_ranks(ranks);
  rep.largest = rep.block_sizes.empty() ? 0 : rep.block_sizes.front();
  return rep;
}

namespace {

std::size_t numeric_rank(const CMatrix& m, double threshold) {
  if (m.rows() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(detail::to_eigen(m));
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > threshold) ++r;
  return r;
}

}  // namespace

JordanReport jordan_profile(const CMatrix& m, Complex lambda, double tol) {
  if (!m.square()) throw Error(ErrorCode::InvalidArgument, "jordan_profile needs a square matrix");
  const std::size_t n = m.rows();
  CMatrix nmat = m - CMatrix::scalar(n, lambda);
  double scale = std::max(1.0, frobenius_norm(m));
  std::vector<std::size_t> ranks{n};
  CMatrix power = CMatrix::identity(n);
  for (std::size_t p = 1; p <= n; ++p) {
    power = power * nmat;
    double pscale = std::pow(scale, static_cast<double>(p));
    std::size_t r = numeric_rank(power, tol * pscale);
    if (r == ranks.back()) break;
    ranks.push_back(r);
  }
  if (ranks.size() == 1) throw Error(ErrorCode::NotAnEigenvalue, "value is not an eigenvalue within tolerance");
  JordanReport rep;
  rep.eigenvalue = lambda;
  rep.block_sizes = partition_from_ranks(ranks);
  rep.largest = rep.block_sizes.empty() ? 0 : rep.block_sizes.front();
  return rep;
}

std::size_t dominant_jordan_size(const QMatrix& m, double rel_tol) {
  if (m.rows() == 0) return 0;
  auto factors = squarefree_decomposition(minimal_polynomial(m));
  double max_mod = 0.0;
  std::vector<std::vector<RootEnclosure>> roots(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    roots[i] = isolate_roots(factors[i]);
    for (const auto& r : roots[i]) max_mod = std::max(max_mod, r.modulus);
  }
  std::size_t b = 0;
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (const auto& r : roots[i])
      if (r.modulus >= max_mod * (1.0 - rel_tol)) b = std::max(b, i + 1);
  return b;
}

std::vector<GrowthSample> growth_samples(const CMatrix& m, std::span<const long> s_values) {
  std::vector<GrowthSample> out;
  for (long s : s_values) {
    if (s < 0) throw Error(ErrorCode::InvalidArgument, "growth samples need s >= 0");
    ScaledPower p = scaled_power(m, static_cast<unsigned long>(s));
    out.push_back({s, std::log(frobenius_norm(p.normalized)) + p.log_scale});
  }
  return out;
}

std::vector<long> default_growth_schedule(long s_max) {
  std::set<long> s;
  const long lo = 8;
  const int geometric_points = 40;
  for (int i = 0; i < geometric_points; ++i) {
    double t = static_cast<double>(i) / (geometric_points - 1);
    s.insert(std::lround(lo * std::pow(static_cast<double>(s_max) / lo, t)));
  }
  for (long v = s_max / 2; v <= s_max; v += 2) s.insert(v);
  return {s.begin(), s.end()};
}

namespace {

// Least squares with column equilibration; returns coefficients and rms residual.
Eigen::VectorXd scaled_lstsq(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double& rms) {
  Eigen::VectorXd scale = x.cwiseAbs().colwise().maxCoeff().transpose();
  for (Eigen::Index j = 0; j < scale.size(); ++j)
    if (scale(j) == 0.0) scale(j) = 1.0;
  Eigen::MatrixXd xs = x * scale.cwiseInverse().asDiagonal();
  Eigen::VectorXd c = xs.colPivHouseholderQr().solve(y);
  rms = std::sqrt((xs * c - y).squaredNorm() / static_cast<double>(y.size()));
  return c.cwiseQuotient(scale);
}

}  // namespace

GrowthFit growth_fit(std::span<const GrowthSample> samples, double max_residual) {
  // Low powers of large Jordan blocks are far from the asymptotic regime.
  long s_max = 0;
  for (const auto& s : samples) s_max = std::max(s_max, s.s);
  const long s_min = std::max(8L, s_max / 8);
  std::vector<GrowthSample> use;
  for (const auto& s : samples)
    if (s.s >= s_min && std::isfinite(s.log_norm)) use.push_back(s);
  if (use.size() < 8)
    throw Error(ErrorCode::InvalidArgument, "growth_fit needs at least 8 samples with s >= " + std::to_string(s_min));
  std::sort(use.begin(), use.end(), [](const auto& a, const auto& b) { return a.s < b.s; });

  // Stage 1: free log-s coefficient with 1/s^i corrections, then round b.
  const int k1 = std::min<int>(6, static_cast<int>(use.size()) - 4);
  Eigen::MatrixXd x(static_cast<Eigen::Index>(use.size()), 3 + std::max(k1, 0));
  Eigen::VectorXd y(static_cast<Eigen::Index>(use.size()));
  for (std::size_t i = 0; i < use.size(); ++i) {
    double s = static_cast<double>(use[i].s);
    auto r = static_cast<Eigen::Index>(i);
    x(r, 0) = s;
    x(r, 1) = std::log(s);
    x(r, 2) = 1.0;
    for (int k = 1; k <= k1; ++k) x(r, 2 + k) = std::pow(s, -k);
    y(r) = use[i].log_norm;
  }
  GrowthFit fit;
  Eigen::VectorXd c1 = scaled_lstsq(x, y, fit.residual);
  fit.b_raw = c1(1) + 1.0;
  fit.b = std::max(1, static_cast<int>(std::lround(fit.b_raw)));
  fit.rho = std::exp(c1(0));
  if (fit.residual > max_residual)
    throw Error(ErrorCode::IllConditionedFit, "growth fit residual " + std::to_string(fit.residual));

  // Stage 2: b fixed, refit rho on the upper half of the range.
  const long s_top = use.back().s;
  std::vector<GrowthSample> tail;
  for (const auto& s : use)
    if (2 * s.s >= s_top) tail.push_back(s);
  if (tail.size() < 12) tail = use;
  const int k2 = std::min<int>(8, static_cast<int>(tail.size()) - 4);
  Eigen::MatrixXd x2(static_cast<Eigen::Index>(tail.size()), 2 + std::max(k2, 0));
  Eigen::VectorXd y2(static_cast<Eigen::Index>(tail.size()));
  for (std::size_t i = 0; i < tail.size(); ++i) {
    double s = static_cast<double>(tail[i].s);
    auto r = static_cast<Eigen::Index>(i);
    x2(r, 0) = s;
    x2(r, 1) = 1.0;
    for (int k = 1; k <= k2; ++k) x2(r, 1 + k) = std::pow(s, -k);
    y2(r) = tail[i].log_norm - (fit.b - 1) * std::log(s);
  }
  double rms2 = 0.0;
  Eigen::VectorXd c2 = scaled_lstsq(x2, y2, rms2);
  fit.rho = std::exp(c2(0));
  return fit;
}

}  // namespace ddc
