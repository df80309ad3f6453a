#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ddclab/core_model.hpp"
#include "ddclab/envelope.hpp"
#include "ddclab/spectral.hpp"

namespace ddc {

enum class IterateMode { Power, List, Generator };

/// Source of the iterate actions (f^t)^* for t = 1, 2, ...
template <Scalar T>
class IterateSystem {
 public:
  using Map = GradedMap<T>;
  using Generator = std::function<Map(unsigned long)>;

  static IterateSystem power(Map f, std::optional<NumericalStructure<T>> ns = std::nullopt) {
    IterateSystem s(IterateMode::Power, f.space(), std::move(ns));
    s.maps_.push_back(std::move(f));
    return s;
  }
  static IterateSystem list(std::vector<Map> maps, std::optional<NumericalStructure<T>> ns = std::nullopt) {
    if (maps.empty()) throw Error(ErrorCode::InvalidArgument, "list mode needs at least one map");
    IterateSystem s(IterateMode::List, maps.front().space(), std::move(ns));
    for (const auto& m : maps) require_same_space(s.space_, m.space());
    s.maps_ = std::move(maps);
    return s;
  }
  static IterateSystem generator(SpacePtr<T> space, Generator g,
                                 std::optional<NumericalStructure<T>> ns = std::nullopt) {
    IterateSystem s(IterateMode::Generator, std::move(space), std::move(ns));
    s.generator_ = std::move(g);
    return s;
  }

  IterateMode mode() const noexcept { return mode_; }
  const SpacePtr<T>& space() const noexcept { return space_; }
  const std::optional<NumericalStructure<T>>& numerical() const noexcept { return ns_; }
  /// Largest t available in list mode; 0 otherwise.
  std::size_t list_size() const noexcept { return mode_ == IterateMode::List ? maps_.size() : 0; }
  const Map& base() const { return maps_.front(); }

  Map iterate(unsigned long t) const {
    if (t == 0) throw Error(ErrorCode::OutOfRange, "iterates start at t = 1");
    switch (mode_) {
      case IterateMode::Power:
        return maps_.front().power(t);
      case IterateMode::List:
        if (t > maps_.size())
          throw Error(ErrorCode::OutOfRange, "t = " + std::to_string(t) + " beyond the " +
                                                 std::to_string(maps_.size()) + " listed iterates");
        return maps_[t - 1];
      case IterateMode::Generator: {
        Map m = generator_(t);
        require_same_space(space_, m.space());
        return m;
      }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown iterate mode");
  }

 private:
  IterateSystem(IterateMode mode, SpacePtr<T> space, std::optional<NumericalStructure<T>> ns)
      : mode_(mode), space_(std::move(space)), ns_(std::move(ns)) {}

  IterateMode mode_;
  SpacePtr<T> space_;
  std::optional<NumericalStructure<T>> ns_;
  std::vector<Map> maps_;
  Generator generator_;
};

enum class EstimateMode { Exact, LimitEstimate };
std::string to_string(EstimateMode m);

struct DegreeEstimate {
  double value = 0.0;
  EstimateMode mode = EstimateMode::Exact;
  unsigned long t_min = 0;
  unsigned long t_max = 0;
  std::vector<double> roots;  // ||M_t||^(1/t), t = t_min..t_max
  double drift = 0.0;
};

double log_frobenius_norm(const QMatrix& m);
double log_frobenius_norm(const CMatrix& m);

/// Numerical degree from t-th roots: value is the last root, drift the
/// relative change between the last two.
DegreeEstimate last_root_estimate(const std::vector<double>& log_norms);
/// limsup surrogate: maximum over the last ceil(t_max / 4) roots. Throws
/// DivergenceSuspected when the roots are still rising without slowing down.
DegreeEstimate windowed_max_estimate(const std::vector<double>& log_norms);

template <Scalar T>
double spectral_radius_of(const Matrix<T>& m) {
  if (m.rows() == 0) return 0.0;
  return spectral_radius(m).value;
}

struct EndoDegrees {
  std::vector<double> lambda;  // lambda_0..lambda_n
  std::vector<double> chi;     // chi_0..chi_{2n}
};

/// Spectral radii of f on each H^k and of its pushdown on each N^j.
template <Scalar T>
EndoDegrees endo_degrees(const GradedMap<T>& f, const NumericalStructure<T>& ns) {
  EndoDegrees d;
  for (const auto& b : f.blocks()) d.chi.push_back(spectral_radius_of(b));
  for (const auto& b : numerical_pushdown(ns, f)) d.lambda.push_back(spectral_radius_of(b));
  return d;
}

template <Scalar T>
DegreeEstimate numerical_degrees(const IterateSystem<T>& sys, std::size_t j, unsigned long t_max = 64) {
  if (!sys.numerical()) throw Error(ErrorCode::InvalidArgument, "iterate system has no numerical structure");
  const auto& ns = *sys.numerical();
  if (j > sys.space()->n()) throw Error(ErrorCode::DegreeOutOfRange, "numerical degree index beyond n");
  if (sys.mode() == IterateMode::Power) {
    DegreeEstimate e;
    e.value = spectral_radius_of(numerical_pushdown(ns, sys.base())[j]);
    e.t_min = e.t_max = 1;
    return e;
  }
  if (t_max == 0) throw Error(ErrorCode::InvalidArgument, "t_max must be positive");
  std::vector<double> logs;
  for (unsigned long t = 1; t <= t_max; ++t) logs.push_back(log_frobenius_norm(numerical_pushdown(ns, sys.iterate(t))[j]));
  return last_root_estimate(logs);
}

template <Scalar T>
DegreeEstimate cohomological_degrees(const IterateSystem<T>& sys, std::size_t k, unsigned long t_max = 64) {
  sys.space()->check_degree(k);
  if (sys.mode() == IterateMode::Power) {
    DegreeEstimate e;
    e.value = spectral_radius_of(sys.base().block(k));
    e.t_min = e.t_max = 1;
    return e;
  }
  if (t_max == 0) throw Error(ErrorCode::InvalidArgument, "t_max must be positive");
  std::vector<double> logs;
  for (unsigned long t = 1; t <= t_max; ++t) logs.push_back(log_frobenius_norm(sys.iterate(t).block(k)));
  return windowed_max_estimate(logs);
}

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict v);

struct ComparisonLine {
  std::size_t k = 0;
  double lhs = 0.0;  // chi_{2k} or chi_{2k+1}
  double rhs = 0.0;  // lambda_k or sqrt(lambda_k lambda_{k+1})
  Verdict verdict = Verdict::Pass;
};

struct DdcReport {
  std::vector<DegreeEstimate> lambda;
  std::vector<DegreeEstimate> chi;
  std::vector<ComparisonLine> equality;  // chi_{2k} = lambda_k
  std::vector<ComparisonLine> odd;       // chi_{2k+1} <= sqrt(lambda_k lambda_{k+1})
  Verdict weaker = Verdict::Pass;        // envelopes of lambda (at 2j) and chi agree
  std::optional<double> weaker_counterexample;
  bool conjectureD_false_model = false;
  std::vector<std::string> notes;

  bool all_pass() const;
};

/// Comparison verdicts from degree estimates; never throws on a failed comparison.
DdcReport ddc_from_estimates(std::vector<DegreeEstimate> lambda, std::vector<DegreeEstimate> chi, bool conjectureD,
                             double tol);

template <Scalar T>
DdcReport ddc_verdict(const IterateSystem<T>& sys, unsigned long t_max = 64, double tol = 1e-6) {
  if (!sys.numerical()) throw Error(ErrorCode::InvalidArgument, "iterate system has no numerical structure");
  std::vector<DegreeEstimate> lambda, chi;
  std::vector<std::string> notes;
  for (std::size_t j = 0; j <= sys.space()->n(); ++j) lambda.push_back(numerical_degrees(sys, j, t_max));
  for (std::size_t k = 0; k <= sys.space()->top(); ++k) {
    try {
      chi.push_back(cohomological_degrees(sys, k, t_max));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DivergenceSuspected) throw;
      DegreeEstimate d;
      d.value = std::numeric_limits<double>::infinity();
      d.mode = EstimateMode::LimitEstimate;
      chi.push_back(d);
      notes.push_back("chi_" + std::to_string(k) + ": divergence suspected");
    }
  }
  DdcReport rep = ddc_from_estimates(std::move(lambda), std::move(chi), sys.numerical()->conjectureD(), tol);
  rep.notes.insert(rep.notes.begin(), notes.begin(), notes.end());
  return rep;
}

}  // namespace ddc
