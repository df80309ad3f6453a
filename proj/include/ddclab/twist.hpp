#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "ddclab/core_model.hpp"
#include "ddclab/degrees.hpp"
#include "ddclab/spectral.hpp"

namespace ddc {

bool is_prime_power(long q);

/// Every eigenvalue of m has modulus base^(k/2): exact for rationals, to a
/// relative tolerance for complex blocks.
bool block_is_weil(const QMatrix& m, long base, std::size_t k);
bool block_is_weil(const CMatrix& m, long base, std::size_t k, double tol = 1e-7);
/// Diagonalizable: squarefree part of the characteristic polynomial kills m.
bool is_semisimple(const QMatrix& m);
/// Floating check through the conditioning of the eigenvector matrix.
bool is_semisimple(const CMatrix& m, double tol = 1e-8);
/// Columns are eigenvectors of m (unit length).
CMatrix eigenbasis(const CMatrix& m);

/// Endomorphism model F with F^*L ~ aL. Frobenius models use base q.
template <Scalar T>
struct PolarizedModel {
  long a = 2;
  GradedMap<T> map;
  bool weilRH = false;
  bool semisimple = false;
  bool frobenius = false;
  /// Eigenbasis per degree, declared orthonormal for adapted norms.
  std::optional<std::vector<CMatrix>> adapted_basis;
};

template <Scalar T>
using FrobeniusModel = PolarizedModel<T>;

template <Scalar T>
PolarizedModel<T> make_polarized(long a, GradedMap<T> map, bool weilRH, bool semisimple) {
  if (a <= 1) throw Error(ErrorCode::InvalidArgument, "polarization factor must exceed 1");
  const auto& blocks = map.blocks();
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (weilRH && !block_is_weil(blocks[k], a, k))
      throw Error(ErrorCode::NotWeil, "block " + std::to_string(k) + " has an eigenvalue off |z| = " +
                                          std::to_string(a) + "^(" + std::to_string(k) + "/2)");
    if (semisimple && !is_semisimple(blocks[k]))
      throw Error(ErrorCode::InvalidArgument, "block " + std::to_string(k) + " is not semisimple");
  }
  PolarizedModel<T> m{a, std::move(map), weilRH, semisimple, false, std::nullopt};
  if (semisimple) {
    std::vector<CMatrix> basis;
    for (const auto& b : m.map.blocks()) {
      if constexpr (ScalarTraits<T>::exact)
        basis.push_back(eigenbasis(to_complex(b)));
      else
        basis.push_back(eigenbasis(b));
    }
    m.adapted_basis = std::move(basis);
  }
  return m;
}

template <Scalar T>
FrobeniusModel<T> make_frobenius(long q, GradedMap<T> map, bool semisimple) {
  if (!is_prime_power(q)) throw Error(ErrorCode::InvalidArgument, std::to_string(q) + " is not a prime power");
  auto m = make_polarized(q, std::move(map), true, semisimple);
  m.frobenius = true;
  return m;
}

/// Block k is r^k times the identity.
template <Scalar T>
GradedMap<T> gr_operator(const SpacePtr<T>& space, const Rational& r) {
  if (sgn(r) <= 0) throw Error(ErrorCode::NonPositiveR, "r must be positive, got " + format_rational(r));
  std::vector<Matrix<T>> blocks;
  for (std::size_t k = 0; k <= space->top(); ++k) {
    Rational rk = pow_rational(r, k);
    if constexpr (ScalarTraits<T>::exact)
      blocks.push_back(Matrix<T>::scalar(space->dim(k), rk));
    else
      blocks.push_back(Matrix<T>::scalar(space->dim(k), Complex(rk.get_d(), 0.0)));
  }
  return GradedMap<T>(space, std::move(blocks));
}

/// Per-degree (F_k)^s f_k; s may be negative. Throws SingularBlock.
template <Scalar T>
GradedMap<T> twist_compose(const GradedMap<T>& f, const GradedMap<T>& frob, long s) {
  require_same_space(f.space(), frob.space());
  std::vector<Matrix<T>> blocks;
  for (std::size_t k = 0; k < f.blocks().size(); ++k) {
    Matrix<T> base = frob.block(k);
    if (s < 0) {
      try {
        base = inverse(base);
      } catch (const Error&) {
        throw Error(ErrorCode::SingularBlock, "block " + std::to_string(k) + " is singular and s < 0");
      }
    }
    blocks.push_back(matrix_power(base, static_cast<unsigned long>(s < 0 ? -s : s)) * f.block(k));
  }
  return GradedMap<T>(f.space(), std::move(blocks));
}

template <Scalar T>
GradedMap<T> twist_compose(const GradedMap<T>& f, const PolarizedModel<T>& model, long s) {
  return twist_compose(f, model.map, s);
}

/// s = floor(2 t log_base r), the twist exponent paired with r.
long twist_schedule(unsigned long t, double r, double base);

struct Eq1Entry {
  double r = 0.0;
  std::size_t k = 0;
  double lhs = 0.0;     // r^k chi_k
  double rhs = 0.0;     // max_j r^(2j) lambda_j
  double margin = 0.0;  // (rhs - lhs) / max(rhs, lhs)
};

struct Eq1Report {
  std::vector<Eq1Entry> entries;
  std::vector<Eq1Entry> violations;
  /// (r, t, s) triples of the twist schedule for the supplied base.
  std::vector<std::tuple<double, unsigned long, long>> schedule;
  bool ok() const { return violations.empty(); }
};

/// r^k chi_k <= max_j r^(2j) lambda_j for every r in the grid, with relative slack tol.
Eq1Report eq1_scan(const std::vector<double>& lambda, const std::vector<double>& chi,
                   const std::vector<double>& r_grid, double tol = 1e-9, std::optional<double> base = std::nullopt);

/// The grid {2^i : lo <= i <= hi}.
std::vector<double> dyadic_grid(int lo, int hi);

template <Scalar T>
Eq1Report eq1_scan(const GradedMap<T>& f, const NumericalStructure<T>& ns, const std::vector<double>& r_grid,
                   double tol = 1e-9) {
  auto d = endo_degrees(f, ns);
  return eq1_scan(d.lambda, d.chi, r_grid, tol);
}

struct Claim1Line {
  std::size_t k = 0;
  long s = 0;
  unsigned long t = 0;
  double lhs = 0.0;  // sigma_min((F^s)_k) ||(f^t)_k||_F
  double rhs = 0.0;  // max_j a^(sj) ||(f^t) on N^j||_F
  double implied_c = 0.0;
};

namespace detail {

inline double adapted_norm(const CMatrix& x, const std::optional<CMatrix>& basis) {
  if (!basis) return frobenius_norm(x);
  return frobenius_norm(CMatrix(inverse(*basis) * x * *basis));
}

template <Scalar T>
CMatrix as_complex(const Matrix<T>& m) {
  if constexpr (ScalarTraits<T>::exact)
    return to_complex(m);
  else
    return m;
}

}  // namespace detail

/// Bound sigma_min((F^s)_k) ||(f^t)^*|H^k|| <= C max_j a^(sj) ||(f^t)^*|N^j||,
/// reported with the implied C. Adapted norms are used when F carries an eigenbasis.
template <Scalar T>
Claim1Line claim1_check(const IterateSystem<T>& sys, const PolarizedModel<T>& frob, std::size_t k, long s,
                        unsigned long t) {
  require_same_space(sys.space(), frob.map.space());
  if (!sys.numerical()) throw Error(ErrorCode::InvalidArgument, "claim1 needs a numerical structure");
  GradedMap<T> ft = sys.iterate(t);
  std::optional<CMatrix> basis;
  if (frob.adapted_basis) basis = (*frob.adapted_basis)[k];
  GradedMap<T> fs = twist_compose(GradedMap<T>::identity(frob.map.space()), frob.map, s);
  CMatrix fsk = detail::as_complex(fs.block(k));
  if (basis) fsk = inverse(*basis) * fsk * *basis;
  Claim1Line line{k, s, t, 0.0, 0.0, 0.0};
  if (fsk.rows() == 0) return line;
  double smin = singular_extremes(fsk).min;
  line.lhs = smin * detail::adapted_norm(detail::as_complex(ft.block(k)), basis);
  auto pushed = numerical_pushdown(*sys.numerical(), ft);
  for (std::size_t j = 0; j < pushed.size(); ++j) {
    double v = std::pow(static_cast<double>(frob.a), static_cast<double>(s) * static_cast<double>(j)) *
               frobenius_norm(detail::as_complex(pushed[j]));
    line.rhs = std::max(line.rhs, v);
  }
  line.implied_c = line.rhs > 0.0 ? line.lhs / line.rhs : (line.lhs > 0.0 ? INFINITY : 0.0);
  return line;
}

struct KroneckerResult {
  long long s = 0;
  long long t = 0;
  double residual = 0.0;  // |theta s + t|
  bool rational = false;
  std::size_t step = 0;  // index of the convergent used
};

/// Successive convergents p/q of theta as (s, t) = (-q, p), p > 0. Stops early
/// when theta is recognized as rational.
std::vector<KroneckerResult> kronecker_sequence(double theta, std::size_t max_steps = 64);
/// First convergent with |theta s + t| < eps. Throws NonConvergence if none
/// is found within the representable range.
KroneckerResult kronecker_approx(double theta, double eps);

struct JordanCompareReport {
  std::size_t b1 = 0;
  std::size_t b2 = 0;
  bool equal = true;
  double theta = 0.0;  // log a_small / log a_big, when unequal
  std::vector<double> certificate;  // t_m^(b_big - 1) / |s_m|^(b_small - 1)
  std::vector<KroneckerResult> steps;
};

std::size_t dominant_jordan_size(const CMatrix& m, double rel_tol = 1e-9);

/// Certificate along the Kronecker sequence for a pair with unequal block sizes.
JordanCompareReport jordan_certificate(std::size_t b1, long a1, std::size_t b2, long a2, std::size_t steps = 40);

template <Scalar T>
JordanCompareReport jordan_compare(const PolarizedModel<T>& f1, const PolarizedModel<T>& f2, std::size_t k,
                                   std::size_t steps = 40) {
  require_same_space(f1.map.space(), f2.map.space());
  return jordan_certificate(dominant_jordan_size(f1.map.block(k)), f1.a, dominant_jordan_size(f2.map.block(k)), f2.a,
                            steps);
}

}  // namespace ddc
