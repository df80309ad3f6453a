#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ddclab/constructions.hpp"

namespace ddc {

/// Outcome of a seeded property suite. Failure lines carry the instance index
/// and the offending values; only the first few are kept.
struct SuiteResult {
  std::string name;
  std::uint64_t seed = 0;
  std::size_t count = 0;
  std::size_t failures = 0;
  double seconds = 0.0;
  std::vector<std::string> notes;
  bool passed() const { return failures == 0; }
};

/// Random instances satisfying both conditions; every verdict must be "equal" with no
/// breakpoint disagreement.
SuiteResult prop1_suite(std::uint64_t seed, std::size_t count = 1000);
/// Planted condition 2 violations against an r-grid oracle of powers of two
/// and random rationals.
SuiteResult condition2_suite(std::uint64_t seed, std::size_t count = 1000);
/// Abelian models with commuting integer endos: chi_{2k} = lambda_k and the
/// odd-degree bound.
SuiteResult ddc_suite(std::uint64_t seed, std::size_t count = 100);
/// sigma_min(A) ||B|| <= ||AB|| <= sigma_max(A) ||B||, plus the equality case
/// for scaled unitaries (every hundredth pair, at least one).
SuiteResult norms_suite(std::uint64_t seed, std::size_t count = 10000);
/// Singular-value roots of powers against the exact spectral radius.
SuiteResult yamamoto_suite(std::uint64_t seed, std::size_t count = 100);
/// Growth fits and rank profiles of every Jordan matrix with rho in {2, 3} and
/// size up to max_size.
SuiteResult jordan_suite(std::uint64_t seed, std::size_t max_size = 8);
/// Pushforward and trace identities for random exact correspondences.
SuiteResult lieberman_suite(std::uint64_t seed, std::size_t count = 1000);
/// Dimension formulas, Frobenius semisimplicity and endo commutation for
/// blowup and hilb2 models.
SuiteResult constructions_suite(std::uint64_t seed, std::size_t count = 100);
/// Convergent reproduction, accuracy on random theta and rational recognition.
SuiteResult kronecker_suite(std::uint64_t seed, std::size_t count = 100);
/// No inequality violation on Weil models; a violation on the counter-model.
SuiteResult eq1_suite(std::uint64_t seed, std::size_t ddc_count = 100, std::size_t construction_count = 100);
/// Certificate growth for the planted pair of block sizes (2, 1).
SuiteResult jordan_certificate_suite(std::size_t steps = 40, double threshold = 1e3);

/// Models used by the suites; identical for identical seeds.
std::vector<QBundle> ddc_corpus(std::uint64_t seed, std::size_t count);
std::vector<QBundle> construction_corpus(std::uint64_t seed, std::size_t count);

/// Elliptic-curve-like model over q = 5 with the endo "endo" = multiplication
/// by 2: lambda = (1, 4), chi = (1, 2, 4).
QBundle elliptic_times2_model();
/// Model with a quotient that hides the dominant eigenvector of f on H^2, so
/// lambda_1 < chi_2 and the numerical structure is not injective.
QBundle conjecture_d_counter_model();
/// Pair of polarized maps with dominant Jordan sizes 2 and 1 on H^2, a = 3 and 2.
std::pair<PolarizedModel<Rational>, PolarizedModel<Rational>> jordan_pair_model();

}  // namespace ddc
