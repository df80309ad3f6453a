#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "ddclab/matrix.hpp"
#include "ddclab/polynomial.hpp"

namespace ddc {

enum class SpectralMethod { ExactCharpoly, Gelfand, Eigensolver };
std::string_view to_string(SpectralMethod m);

struct SpectralReport {
  double value = 0.0;
  SpectralMethod method = SpectralMethod::ExactCharpoly;
  int iterations = 0;
  /// Charpoly route: inclusion radius of the dominant root relative to its
  /// modulus. Gelfand route: relative change over the last squaring.
  double residual = 0.0;
};

struct SpectralOptions {
  /// Rational matrices up to this dimension use the exact characteristic polynomial.
  std::size_t exact_dim_limit = 48;
  int gelfand_max_iterations = 64;
  double gelfand_tolerance = 1e-13;
};

double frobenius_norm(const QMatrix& m);
double frobenius_norm(const CMatrix& m);
/// ||M||_F^2 computed exactly; equals Tr(M M^t).
Rational frobenius_norm_sq_exact(const QMatrix& m);

SpectralReport spectral_radius(const QMatrix& m, const SpectralOptions& opts = {});
SpectralReport spectral_radius(const CMatrix& m, const SpectralOptions& opts = {});
/// sp(M) via ||M^(2^i)||_F^(1/2^i), normalized after every squaring.
SpectralReport gelfand_radius(const CMatrix& m, const SpectralOptions& opts = {});

struct SingularExtremes {
  double min = 0.0;
  double max = 0.0;
};
/// sigma_max = sp(M M*)^(1/2), sigma_min = sp((M M*)^-1)^(-1/2), or 0 when singular.
SingularExtremes singular_extremes(const CMatrix& m);
SingularExtremes singular_extremes(const QMatrix& m);

/// A power M^m held as a normalized matrix times exp(log_scale).
struct ScaledPower {
  CMatrix normalized;
  double log_scale = 0.0;
};
ScaledPower scaled_power(const CMatrix& m, unsigned long e);

struct YamamotoEstimate {
  unsigned long m = 0;
  double estimate = 0.0;   // sp(M^m (M^m)*)^(1/(2m))
  double log_scale = 0.0;  // accumulated normalization, for diagnostics
};
struct YamamotoReport {
  std::vector<YamamotoEstimate> estimates;
  double spectral_radius = 0.0;
  double final_gap = 0.0;  // |last estimate - sp(M)| / sp(M)
};
YamamotoReport yamamoto_sequence(const CMatrix& m, std::span<const unsigned long> m_values);
YamamotoReport yamamoto_sequence(const QMatrix& m, std::span<const unsigned long> m_values);

struct JordanReport {
  Complex eigenvalue;
  std::vector<std::size_t> block_sizes;  // descending
  std::size_t largest = 0;
};
/// Block sizes from the exact rank sequence of (M - lambda I)^p.
JordanReport jordan_profile(const QMatrix& m, const Rational& lambda);
/// Floating variant; ranks decided by singular-value gaps at tolerance tol.
JordanReport jordan_profile(const CMatrix& m, Complex lambda, double tol = 1e-8);

/// Conjugate partition recovery: counts[p] = rank(N^p) for p = 0.. until stable.
std::vector<std::size_t> partition_from_ranks(std::span<const std::size_t> ranks);

/// Largest Jordan block over the eigenvalues of maximal modulus, read off the
/// multiplicities of the minimal polynomial's squarefree decomposition.
std::size_t dominant_jordan_size(const QMatrix& m, double rel_tol = 1e-9);

struct GrowthSample {
  long s = 0;
  double log_norm = 0.0;  // log ||M^s||_F
};
struct GrowthFit {
  double rho = 0.0;
  int b = 0;
  double b_raw = 0.0;     // unrounded coefficient of log s, plus one
  double residual = 0.0;  // rms residual of the first-stage fit
};
/// Samples log||M^s||_F; norms are kept in log form so large s cannot overflow.
std::vector<GrowthSample> growth_samples(const CMatrix& m, std::span<const long> s_values);
/// Geometric spread from 8 to s_max plus a dense tail on [s_max/2, s_max].
std::vector<long> default_growth_schedule(long s_max = 200);
/// Fits log||M^s|| = s log rho + (b - 1) log s + c on s >= max(8, s_max / 8).
/// Throws IllConditionedFit.
GrowthFit growth_fit(std::span<const GrowthSample> samples, double max_residual = 1e-3);

}  // namespace ddc
