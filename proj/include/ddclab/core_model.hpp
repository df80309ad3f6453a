#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ddclab/linalg.hpp"
#include "ddclab/matrix.hpp"

namespace ddc {

template <Scalar T>
class GradedSpace;

/// Validated space. Pairings default to identities; ample powers default to
/// the first basis vector of each H^{2j}. Pass an empty ample vector list to
/// build a space without an ample class.
template <Scalar T>
GradedSpace<T> make_space(std::size_t n, std::vector<std::size_t> dims,
                          std::optional<std::vector<Matrix<T>>> pairings = std::nullopt,
                          std::optional<std::vector<Matrix<T>>> ample_powers = std::nullopt);

/// Finite model of a graded cohomology H^0..H^{2n} with Poincare pairings.
/// P_k is d_k x d_{2n-k}; <x, y> = x^t P_k y for x in H^k, y in H^{2n-k}.
template <Scalar T>
class GradedSpace {
 public:
  using Mat = Matrix<T>;

  std::size_t n() const noexcept { return n_; }
  std::size_t top() const noexcept { return 2 * n_; }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t dim(std::size_t k) const {
    check_degree(k);
    return dims_[k];
  }
  std::size_t total_dim() const {
    std::size_t s = 0;
    for (auto d : dims_) s += d;
    return s;
  }
  const Mat& pairing(std::size_t k) const {
    check_degree(k);
    return pairings_[k];
  }
  const Mat& pairing_inverse(std::size_t k) const {
    check_degree(k);
    return pairing_inverses_[k];
  }
  bool has_ample() const noexcept { return !ample_powers_.empty(); }
  /// h^j as a d_{2j} x 1 column, j = 0..n.
  const Mat& ample_power(std::size_t j) const {
    if (!has_ample()) throw Error(ErrorCode::MissingAmple, "space has no ample class");
    if (j > n_) throw Error(ErrorCode::DegreeOutOfRange, "ample power beyond n");
    return ample_powers_[j];
  }
  const std::vector<Mat>& ample_powers() const noexcept { return ample_powers_; }

  T pair(std::size_t k, const Mat& x, const Mat& y) const {
    Mat v = x.transpose() * pairing(k) * y;
    return v(0, 0);
  }

  void check_degree(std::size_t k) const {
    if (k > 2 * n_) throw Error(ErrorCode::DegreeOutOfRange, "degree " + std::to_string(k) + " outside [0, 2n]");
  }

  friend bool operator==(const GradedSpace& a, const GradedSpace& b) {
    return a.n_ == b.n_ && a.dims_ == b.dims_ && a.pairings_ == b.pairings_ && a.ample_powers_ == b.ample_powers_;
  }

  template <Scalar U>
  friend GradedSpace<U> make_space(std::size_t, std::vector<std::size_t>, std::optional<std::vector<Matrix<U>>>,
                                   std::optional<std::vector<Matrix<U>>>);

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<Mat> pairings_;
  std::vector<Mat> pairing_inverses_;
  std::vector<Mat> ample_powers_;
};

template <Scalar T>
GradedSpace<T> make_space(std::size_t n, std::vector<std::size_t> dims,
                          std::optional<std::vector<Matrix<T>>> pairings,
                          std::optional<std::vector<Matrix<T>>> ample_powers) {
  using Mat = Matrix<T>;
  if (dims.size() != 2 * n + 1)
    throw Error(ErrorCode::DimensionAsymmetry, "expected 2n+1 = " + std::to_string(2 * n + 1) + " dimensions");
  for (std::size_t k = 0; k <= 2 * n; ++k)
    if (dims[k] != dims[2 * n - k])
      throw Error(ErrorCode::DimensionAsymmetry,
                  "d_" + std::to_string(k) + " != d_" + std::to_string(2 * n - k));
  if (dims[0] == 0) throw Error(ErrorCode::InvalidArgument, "d_0 must be at least 1");

  GradedSpace<T> s;
  s.n_ = n;
  s.dims_ = std::move(dims);
  const std::size_t top = 2 * n;
  if (pairings) {
    if (pairings->size() != top + 1) throw Error(ErrorCode::InvalidArgument, "need one pairing per degree");
    s.pairings_ = std::move(*pairings);
    for (std::size_t k = 0; k <= top; ++k) {
      const Mat& p = s.pairings_[k];
      if (p.rows() != s.dims_[k] || p.cols() != s.dims_[top - k])
        throw Error(ErrorCode::InvalidArgument, "pairing " + std::to_string(k) + " has the wrong shape");
      if (!approx_equal(p, Mat(s.pairings_[top - k].transpose())))
        throw Error(ErrorCode::InvalidArgument, "P_" + std::to_string(top - k) + " is not the transpose of P_" +
                                                    std::to_string(k));
    }
  } else {
    for (std::size_t k = 0; k <= top; ++k) s.pairings_.push_back(Mat::identity(s.dims_[k]));
  }
  for (std::size_t k = 0; k <= top; ++k) {
    try {
      s.pairing_inverses_.push_back(inverse(s.pairings_[k]));
    } catch (const Error&) {
      throw Error(ErrorCode::SingularPairing, "pairing in degree " + std::to_string(k) + " is degenerate");
    }
  }

  if (ample_powers) {
    if (!ample_powers->empty()) {
      if (ample_powers->size() != n + 1) throw Error(ErrorCode::InvalidArgument, "need ample powers h^0..h^n");
      for (std::size_t j = 0; j <= n; ++j) {
        const Mat& h = (*ample_powers)[j];
        if (h.rows() != s.dims_[2 * j] || h.cols() != 1)
          throw Error(ErrorCode::InvalidArgument, "ample power " + std::to_string(j) + " has the wrong shape");
      }
      if (n >= 1 && s.dims_[2] > 0 && (*ample_powers)[1].is_zero())
        throw Error(ErrorCode::MissingAmple, "ample class is zero");
      s.ample_powers_ = std::move(*ample_powers);
    }
  } else {
    for (std::size_t j = 0; j <= n; ++j) {
      Mat h(s.dims_[2 * j], 1);
      if (h.rows() > 0) h(0, 0) = ScalarTraits<T>::one();
      s.ample_powers_.push_back(h);
    }
  }
  return s;
}

template <Scalar T>
using SpacePtr = std::shared_ptr<const GradedSpace<T>>;

template <Scalar T>
SpacePtr<T> share(GradedSpace<T> s) {
  return std::make_shared<const GradedSpace<T>>(std::move(s));
}

template <Scalar T>
void require_same_space(const SpacePtr<T>& a, const SpacePtr<T>& b) {
  if (a != b && !(*a == *b)) throw Error(ErrorCode::SpaceMismatch, "operands live on different spaces");
}

/// Per-degree linear action M_k on H^k.
template <Scalar T>
class GradedMap {
 public:
  using Mat = Matrix<T>;

  GradedMap(SpacePtr<T> space, std::vector<Mat> blocks) : space_(std::move(space)), blocks_(std::move(blocks)) {
    if (blocks_.size() != space_->top() + 1) throw Error(ErrorCode::InvalidArgument, "need one block per degree");
    for (std::size_t k = 0; k < blocks_.size(); ++k)
      if (blocks_[k].rows() != space_->dim(k) || blocks_[k].cols() != space_->dim(k))
        throw Error(ErrorCode::InvalidArgument, "block " + std::to_string(k) + " does not match d_k");
  }

  static GradedMap identity(SpacePtr<T> space) {
    std::vector<Mat> b;
    for (auto d : space->dims()) b.push_back(Mat::identity(d));
    return GradedMap(std::move(space), std::move(b));
  }

  const SpacePtr<T>& space() const noexcept { return space_; }
  const std::vector<Mat>& blocks() const noexcept { return blocks_; }
  const Mat& block(std::size_t k) const {
    space_->check_degree(k);
    return blocks_[k];
  }

  /// Degreewise product: (a * b)_k = a_k b_k.
  friend GradedMap operator*(const GradedMap& a, const GradedMap& b) {
    require_same_space(a.space_, b.space_);
    std::vector<Mat> out;
    for (std::size_t k = 0; k < a.blocks_.size(); ++k) out.push_back(a.blocks_[k] * b.blocks_[k]);
    return GradedMap(a.space_, std::move(out));
  }
  friend GradedMap operator*(const T& s, GradedMap a) {
    for (auto& b : a.blocks_) b *= s;
    return a;
  }
  friend bool operator==(const GradedMap& a, const GradedMap& b) {
    return a.blocks_ == b.blocks_ && *a.space_ == *b.space_;
  }

  GradedMap power(unsigned long e) const {
    std::vector<Mat> out;
    for (const auto& b : blocks_) out.push_back(matrix_power(b, e));
    return GradedMap(space_, std::move(out));
  }

 private:
  SpacePtr<T> space_;
  std::vector<Mat> blocks_;
};

template <Scalar T>
bool approx_equal(const GradedMap<T>& a, const GradedMap<T>& b, double tol = 1e-9) {
  if (a.blocks().size() != b.blocks().size()) return false;
  for (std::size_t k = 0; k < a.blocks().size(); ++k)
    if (!approx_equal(a.blocks()[k], b.blocks()[k], tol)) return false;
  return true;
}

template <Scalar T>
class CorrespondenceClass;
template <Scalar T>
std::vector<T> degree_profile(const CorrespondenceClass<T>& u);

/// Element of sum_k H^{2n-k} (x) H^k; component k is a d_{2n-k} x d_k matrix.
template <Scalar T>
class CorrespondenceClass {
 public:
  using Mat = Matrix<T>;

  CorrespondenceClass(SpacePtr<T> space, std::vector<Mat> components, bool effective = false)
      : space_(std::move(space)), components_(std::move(components)), effective_(effective) {
    const std::size_t top = space_->top();
    if (components_.size() != top + 1) throw Error(ErrorCode::InvalidArgument, "need one component per degree");
    for (std::size_t k = 0; k <= top; ++k)
      if (components_[k].rows() != space_->dim(top - k) || components_[k].cols() != space_->dim(k))
        throw Error(ErrorCode::InvalidArgument, "component " + std::to_string(k) + " has the wrong shape");
    if (effective_ && space_->has_ample()) {
      for (const auto& d : degree_profile(*this)) {
        bool negative;
        if constexpr (ScalarTraits<T>::exact)
          negative = sgn(d) < 0;
        else
          negative = d.real() < -1e-9;
        if (negative) throw Error(ErrorCode::InvalidArgument, "effective class has a negative degree");
      }
    }
  }

  const SpacePtr<T>& space() const noexcept { return space_; }
  const std::vector<Mat>& components() const noexcept { return components_; }
  const Mat& component(std::size_t k) const {
    space_->check_degree(k);
    return components_[k];
  }
  bool effective() const noexcept { return effective_; }

  friend CorrespondenceClass operator*(const T& s, const CorrespondenceClass& u) {
    std::vector<Mat> c = u.components_;
    for (auto& m : c) m *= s;
    return CorrespondenceClass(u.space_, std::move(c));
  }
  friend bool operator==(const CorrespondenceClass& a, const CorrespondenceClass& b) {
    return a.components_ == b.components_ && *a.space_ == *b.space_;
  }

 private:
  SpacePtr<T> space_;
  std::vector<Mat> components_;
  bool effective_ = false;
};

/// The diagonal: component k is P_k^{-1}.
template <Scalar T>
CorrespondenceClass<T> diagonal_class(const SpacePtr<T>& space) {
  std::vector<Matrix<T>> c;
  for (std::size_t k = 0; k <= space->top(); ++k) c.push_back(space->pairing_inverse(k));
  return CorrespondenceClass<T>(space, std::move(c), true);
}

/// Pullback action: M_k = u_k^t P_{2n-k}.
template <Scalar T>
GradedMap<T> correspondence_action(const CorrespondenceClass<T>& u) {
  const auto& s = u.space();
  std::vector<Matrix<T>> blocks;
  for (std::size_t k = 0; k <= s->top(); ++k)
    blocks.push_back(u.component(k).transpose() * s->pairing(s->top() - k));
  return GradedMap<T>(s, std::move(blocks));
}

/// The class whose action is f: u_k = (F_k P_{2n-k}^{-1})^t.
template <Scalar T>
CorrespondenceClass<T> graph_class(const GradedMap<T>& f, bool effective = false) {
  const auto& s = f.space();
  std::vector<Matrix<T>> c;
  for (std::size_t k = 0; k <= s->top(); ++k)
    c.push_back(Matrix<T>(f.block(k) * s->pairing_inverse(s->top() - k)).transpose());
  return CorrespondenceClass<T>(s, std::move(c), effective);
}

/// Swap of the two factors: (u^t)_{2n-k} = u_k^t.
template <Scalar T>
CorrespondenceClass<T> transpose(const CorrespondenceClass<T>& u) {
  const auto& s = u.space();
  std::vector<Matrix<T>> c;
  for (std::size_t k = 0; k <= s->top(); ++k) c.push_back(u.component(s->top() - k).transpose());
  return CorrespondenceClass<T>(s, std::move(c), u.effective());
}

/// u o v, contracting v's output leg with u's input leg:
/// w_k = u_k P_k v_k, so action(compose(u, v)) = action(v) action(u).
template <Scalar T>
CorrespondenceClass<T> compose(const CorrespondenceClass<T>& u, const CorrespondenceClass<T>& v) {
  require_same_space(u.space(), v.space());
  const auto& s = u.space();
  std::vector<Matrix<T>> c;
  for (std::size_t k = 0; k <= s->top(); ++k) c.push_back(u.component(k) * s->pairing(k) * v.component(k));
  return CorrespondenceClass<T>(s, std::move(c), u.effective() && v.effective());
}

/// Pairing of a in H^{2n-k} (x) H^k with w in H^k (x) H^{2n-k}, written as the
/// explicit quadruple sum sum a[i,j] w[p,l] P_{2n-k}[i,p] P_k[j,l].
template <Scalar T>
T class_pairing(const GradedSpace<T>& s, std::size_t k, const Matrix<T>& a, const Matrix<T>& w) {
  const auto& pk = s.pairing(k);
  const auto& pd = s.pairing(s.top() - k);
  T total = ScalarTraits<T>::zero();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (ScalarTraits<T>::is_zero(a(i, j), 0.0)) continue;
      for (std::size_t p = 0; p < w.rows(); ++p)
        for (std::size_t l = 0; l < w.cols(); ++l) total += a(i, j) * w(p, l) * pd(i, p) * pk(j, l);
    }
  return total;
}

/// Tr(action of u on H^k), computed from the component directly (sign-free).
template <Scalar T>
T trace_component(const CorrespondenceClass<T>& u, std::size_t k) {
  const auto& s = u.space();
  s->check_degree(k);
  const auto& uk = u.component(k);
  const auto& p = s->pairing(s->top() - k);
  T t = ScalarTraits<T>::zero();
  for (std::size_t i = 0; i < uk.rows(); ++i)
    for (std::size_t j = 0; j < uk.cols(); ++j) t += uk(i, j) * p(i, j);
  return t;
}

/// Pushforward u_* on H^k as the pairing adjoint of u^* on H^{2n-k}:
/// P_{2n-k}^{-1} M_{2n-k}^t P_{2n-k}.
template <Scalar T>
GradedMap<T> pushforward_action(const CorrespondenceClass<T>& u) {
  const auto& s = u.space();
  GradedMap<T> pull = correspondence_action(u);
  std::vector<Matrix<T>> blocks;
  for (std::size_t k = 0; k <= s->top(); ++k) {
    std::size_t d = s->top() - k;
    blocks.push_back(s->pairing_inverse(d) * pull.block(d).transpose() * s->pairing(d));
  }
  return GradedMap<T>(s, std::move(blocks));
}

/// (phi x psi)_*(f) = psi o f o phi^t.
template <Scalar T>
CorrespondenceClass<T> product_pushforward(const CorrespondenceClass<T>& phi, const CorrespondenceClass<T>& psi,
                                           const CorrespondenceClass<T>& f) {
  require_same_space(phi.space(), psi.space());
  return compose(psi, compose(f, transpose(phi)));
}

/// (phi x psi)^*(g) = psi^t o g o phi.
template <Scalar T>
CorrespondenceClass<T> product_pullback(const CorrespondenceClass<T>& phi, const CorrespondenceClass<T>& psi,
                                        const CorrespondenceClass<T>& g) {
  require_same_space(phi.space(), psi.space());
  return compose(transpose(psi), compose(g, phi));
}

/// deg_j(u) = <action(u) h^j, h^{n-j}>, j = 0..n.
template <Scalar T>
std::vector<T> degree_profile(const CorrespondenceClass<T>& u) {
  const auto& s = u.space();
  if (!s->has_ample()) throw Error(ErrorCode::MissingAmple, "degree_profile needs an ample class");
  std::vector<T> out;
  for (std::size_t j = 0; j <= s->n(); ++j) {
    std::size_t k = 2 * j;
    Matrix<T> mk = u.component(k).transpose() * s->pairing(s->top() - k);
    if (mk.rows() == 0) {
      out.push_back(ScalarTraits<T>::zero());
      continue;
    }
    out.push_back(s->pair(k, Matrix<T>(mk * s->ample_power(j)), s->ample_power(s->n() - j)));
  }
  return out;
}

template <Scalar T>
T total_degree(const CorrespondenceClass<T>& u) {
  T s = ScalarTraits<T>::zero();
  for (const auto& d : degree_profile(u)) s += d;
  return s;
}

/// Quotients q_j : H^{2j} -> N^j.
template <Scalar T>
class NumericalStructure {
 public:
  using Mat = Matrix<T>;

  NumericalStructure(SpacePtr<T> space, std::vector<Mat> quotients, bool conjectureD = true)
      : space_(std::move(space)), quotients_(std::move(quotients)), conjectureD_(conjectureD) {
    if (quotients_.size() != space_->n() + 1) throw Error(ErrorCode::InvalidArgument, "need quotients q_0..q_n");
    for (std::size_t j = 0; j < quotients_.size(); ++j) {
      const Mat& q = quotients_[j];
      if (q.cols() != space_->dim(2 * j))
        throw Error(ErrorCode::InvalidArgument, "q_" + std::to_string(j) + " must have d_{2j} columns");
      if (rank(q) != q.rows())
        throw Error(ErrorCode::InvalidArgument, "q_" + std::to_string(j) + " is not surjective");
      right_inverses_.push_back(q.rows() == 0 ? Mat(q.cols(), 0) : right_inverse(q));
    }
  }

  /// Identity quotients on every even degree.
  static NumericalStructure identity(SpacePtr<T> space) {
    std::vector<Mat> q;
    for (std::size_t j = 0; j <= space->n(); ++j) q.push_back(Mat::identity(space->dim(2 * j)));
    return NumericalStructure(std::move(space), std::move(q), true);
  }

  const SpacePtr<T>& space() const noexcept { return space_; }
  const std::vector<Mat>& quotients() const noexcept { return quotients_; }
  const Mat& quotient(std::size_t j) const { return quotients_.at(j); }
  const Mat& right_inverse_of(std::size_t j) const { return right_inverses_.at(j); }
  bool conjectureD() const noexcept { return conjectureD_; }
  std::vector<std::size_t> ndims() const {
    std::vector<std::size_t> e;
    for (const auto& q : quotients_) e.push_back(q.rows());
    return e;
  }

 private:
  SpacePtr<T> space_;
  std::vector<Mat> quotients_;
  std::vector<Mat> right_inverses_;
  bool conjectureD_ = true;
};

/// Induced maps on N^0..N^n. Throws NoFactorization when some q_j f does not
/// factor through q_j.
template <Scalar T>
std::vector<Matrix<T>> numerical_pushdown(const NumericalStructure<T>& ns, const GradedMap<T>& f,
                                          double tol = 1e-9) {
  require_same_space(ns.space(), f.space());
  std::vector<Matrix<T>> out;
  for (std::size_t j = 0; j <= ns.space()->n(); ++j) {
    const auto& q = ns.quotient(j);
    Matrix<T> qm = q * f.block(2 * j);
    Matrix<T> fn = qm * ns.right_inverse_of(j);
    if (!approx_equal(Matrix<T>(fn * q), qm, tol))
      throw Error(ErrorCode::NoFactorization, "map does not descend to N^" + std::to_string(j));
    out.push_back(std::move(fn));
  }
  return out;
}

}  // namespace ddc
