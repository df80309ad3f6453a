#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ddclab/core_model.hpp"
#include "ddclab/polynomial.hpp"
#include "ddclab/twist.hpp"

namespace ddc {

/// A model space with its numerical quotients, an optional Frobenius, and
/// named endomorphisms. Names in over_fq are defined over the base field and
/// must commute with the Frobenius.
template <Scalar T>
struct ModelBundle {
  SpacePtr<T> space;
  NumericalStructure<T> numerical;
  std::optional<FrobeniusModel<T>> frobenius;
  std::map<std::string, GradedMap<T>> endos;
  std::set<std::string> over_fq;
  std::string provenance;
};

using QBundle = ModelBundle<Rational>;
using CBundle = ModelBundle<Complex>;

/// Names of over-F_q endos that fail to commute with the Frobenius.
template <Scalar T>
std::vector<std::string> noncommuting_endos(const ModelBundle<T>& b) {
  std::vector<std::string> bad;
  if (!b.frobenius) return bad;
  for (const auto& name : b.over_fq) {
    const auto& f = b.endos.at(name);
    for (std::size_t k = 0; k < f.blocks().size(); ++k)
      if (!commutes(f.block(k), b.frobenius->map.block(k))) {
        bad.push_back(name);
        break;
      }
  }
  return bad;
}

/// Abelian-variety-like model: H^k = exterior power of H^1 with Frobenius m1.
/// Throws NotWeil, NonCommuting.
QBundle abelian_model(std::size_t g, long q, const QMatrix& m1, const std::optional<QMatrix>& endo = std::nullopt);
QBundle abelian_model(std::size_t g, long q, const QPoly& weil_poly, const std::optional<QMatrix>& endo = std::nullopt);

/// Projective-space-like model: one class in each even degree, Frobenius q^j.
QBundle projective_model(std::size_t n, long q);

/// Kunneth product; pieces H^i(X) (x) H^j(Y) ordered by i.
QBundle product_model(const QBundle& x, const QBundle& y);

/// Blowup of X along A of codimension r: H^k(X) plus H^{k-2j}(A), j = 1..r-1.
/// Throws BadCodimension.
QBundle blowup_model(const QBundle& x, const QBundle& a, std::size_t r);

/// Swap-invariant part of the blowup of X x X along its diagonal.
QBundle hilb2_model(const QBundle& x);

/// Swap involution on blowup(product(X, X), X, n), per degree.
std::vector<QMatrix> hilb2_swap(const QBundle& x);

/// Semisimple model with eigenvalue moduli base^(k/2), conjugated by a random
/// rational orthogonal matrix. Throws NotRepresentable when an odd-dimensional
/// block needs an irrational real eigenvalue.
QBundle random_semisimple_model(std::size_t n, const std::vector<std::size_t>& dims, long base, std::uint64_t seed);
/// Complex-float variant; always representable.
CBundle random_semisimple_model_complex(std::size_t n, const std::vector<std::size_t>& dims, long base,
                                        std::uint64_t seed);

/// Random abelian model with g <= max_g, a Weil Frobenius I (x) B for a
/// companion B of x^2 - c x + q, and a commuting integer endo with entries
/// bounded by max_entry.
QBundle random_abelian_endo_model(std::mt19937_64& rng, std::size_t max_g = 3, long max_entry = 5);

/// Cayley transform (I - S)(I + S)^{-1} of a skew-symmetric S: rational and orthogonal.
QMatrix cayley_orthogonal(const QMatrix& skew);

}  // namespace ddc
