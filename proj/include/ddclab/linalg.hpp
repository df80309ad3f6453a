#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

#include "ddclab/matrix.hpp"

namespace ddc {

namespace detail {

// Pivot choice: any nonzero entry for exact scalars, the largest modulus for floats.
template <Scalar T>
std::ptrdiff_t choose_pivot(const Matrix<T>& m, std::size_t col, std::size_t from, double threshold) {
  std::ptrdiff_t best = -1;
  if constexpr (ScalarTraits<T>::exact) {
    for (std::size_t i = from; i < m.rows(); ++i)
      if (sgn(m(i, col)) != 0) return static_cast<std::ptrdiff_t>(i);
  } else {
    double best_abs = threshold;
    for (std::size_t i = from; i < m.rows(); ++i) {
      double a = std::abs(m(i, col));
      if (a > best_abs) {
        best_abs = a;
        best = static_cast<std::ptrdiff_t>(i);
      }
    }
  }
  return best;
}

template <Scalar T>
double zero_threshold(const Matrix<T>& m, double tol) {
  if constexpr (ScalarTraits<T>::exact) {
    return 0.0;
  } else {
    double scale = 0.0;
    for (const auto& v : m.data()) scale = std::max(scale, std::abs(v));
    return tol * std::max(scale, 1.0) * static_cast<double>(std::max(m.rows(), m.cols()));
  }
}

}  // namespace detail

/// Reduced row echelon form in place; returns pivot columns.
template <Scalar T>
std::vector<std::size_t> rref(Matrix<T>& m, double tol = 1e-10) {
  const double threshold = detail::zero_threshold(m, tol);
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    auto p = detail::choose_pivot(m, col, row, threshold);
    if (p < 0) continue;
    if (static_cast<std::size_t>(p) != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(static_cast<std::size_t>(p), j));
    T inv = ScalarTraits<T>::one() / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || ScalarTraits<T>::is_zero(m(i, col), 0.0)) continue;
      T factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= factor * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <Scalar T>
std::size_t rank(Matrix<T> m, double tol = 1e-10) {
  return rref(m, tol).size();
}

/// Basis of the right kernel, one column per basis vector.
template <Scalar T>
Matrix<T> nullspace(Matrix<T> m, double tol = 1e-10) {
  auto pivots = rref(m, tol);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix<T> basis(m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    basis(free_cols[k], k) = ScalarTraits<T>::one();
    for (std::size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], k) = -m(r, free_cols[k]);
  }
  return basis;
}

template <Scalar T>
T determinant(Matrix<T> m, double tol = 1e-12) {
  if (!m.square()) throw Error(ErrorCode::InvalidArgument, "determinant of non-square matrix");
  const double threshold = detail::zero_threshold(m, tol);
  T det = ScalarTraits<T>::one();
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    auto p = detail::choose_pivot(m, col, col, threshold);
    if (p < 0) return ScalarTraits<T>::zero();
    if (static_cast<std::size_t>(p) != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(col, j), m(static_cast<std::size_t>(p), j));
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (ScalarTraits<T>::is_zero(m(i, col), 0.0)) continue;
      T factor = m(i, col) / m(col, col);
      for (std::size_t j = col; j < n; ++j) m(i, j) -= factor * m(col, j);
    }
  }
  return det;
}

/// Inverse of a square matrix; throws SingularMatrix.
template <Scalar T>
Matrix<T> inverse(const Matrix<T>& m, double tol = 1e-12) {
  if (!m.square()) throw Error(ErrorCode::InvalidArgument, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return m;
  Matrix<T> aug(n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, Matrix<T>::identity(n));
  auto pivots = rref(aug, tol);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw Error(ErrorCode::SingularMatrix, "matrix is not invertible");
  return aug.block(0, n, n, n);
}

/// Right inverse R of a full-row-rank matrix Q (Q R = I), R = Q* (Q Q*)^{-1}.
template <Scalar T>
Matrix<T> right_inverse(const Matrix<T>& q, double tol = 1e-12) {
  Matrix<T> qa = q.adjoint();
  return qa * inverse(Matrix<T>(q * qa), tol);
}

template <Scalar T>
Matrix<T> matrix_power(const Matrix<T>& m, unsigned long e) {
  if (!m.square()) throw Error(ErrorCode::InvalidArgument, "power of non-square matrix");
  Matrix<T> result = Matrix<T>::identity(m.rows());
  Matrix<T> base = m;
  while (e > 0) {
    if (e & 1UL) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

template <Scalar T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (ScalarTraits<T>::is_zero(a(i, j), 0.0)) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q) k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
    }
  return k;
}

template <Scalar T>
Matrix<T> block_diag(const std::vector<Matrix<T>>& blocks) {
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  Matrix<T> out(r, c);
  r = c = 0;
  for (const auto& b : blocks) {
    out.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return out;
}

/// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k);

/// k-th exterior power in the lexicographic basis e_I, entries are k x k minors.
template <Scalar T>
Matrix<T> exterior_power(const Matrix<T>& m, std::size_t k) {
  if (!m.square()) throw Error(ErrorCode::InvalidArgument, "exterior power of non-square matrix");
  auto idx = subsets(m.rows(), k);
  Matrix<T> out(idx.size(), idx.size());
  if (k == 0) {
    out(0, 0) = ScalarTraits<T>::one();
    return out;
  }
  Matrix<T> minor(k, k);
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) {
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) minor(i, j) = m(idx[a][i], idx[b][j]);
      out(a, b) = determinant(minor);
    }
  return out;
}

template <Scalar T>
bool commutes(const Matrix<T>& a, const Matrix<T>& b, double tol = 1e-9) {
  return approx_equal(Matrix<T>(a * b), Matrix<T>(b * a), tol);
}

double frobenius_norm_sq(const CMatrix& m);

}  // namespace ddc
