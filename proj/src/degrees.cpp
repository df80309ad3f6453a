#include "ddclab/degrees.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ddc {

std::string to_string(EstimateMode m) { return m == EstimateMode::Exact ? "exact" : "limit-estimate"; }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

double log_frobenius_norm(const QMatrix& m) {
  Rational s = frobenius_norm_sq_exact(m);
  if (sgn(s) == 0) return -std::numeric_limits<double>::infinity();
  return 0.5 * log_rational(s);
}

double log_frobenius_norm(const CMatrix& m) {
  double n = frobenius_norm(m);
  return n == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(n);
}

namespace {

std::vector<double> roots_of(const std::vector<double>& log_norms) {
  std::vector<double> r;
  for (std::size_t i = 0; i < log_norms.size(); ++i) {
    double l = log_norms[i];
    r.push_back(std::isinf(l) && l < 0 ? 0.0 : std::exp(l / static_cast<double>(i + 1)));
  }
  return r;
}

}  // namespace

DegreeEstimate last_root_estimate(const std::vector<double>& log_norms) {
  if (log_norms.empty()) throw Error(ErrorCode::InvalidArgument, "no norms to estimate from");
  DegreeEstimate e;
  e.mode = EstimateMode::LimitEstimate;
  e.t_min = 1;
  e.t_max = log_norms.size();
  e.roots = roots_of(log_norms);
  e.value = e.roots.back();
  if (e.roots.size() >= 2 && e.value > 0.0) e.drift = std::fabs(e.value - e.roots[e.roots.size() - 2]) / e.value;
  return e;
}

DegreeEstimate windowed_max_estimate(const std::vector<double>& log_norms) {
  if (log_norms.empty()) throw Error(ErrorCode::InvalidArgument, "no norms to estimate from");
  DegreeEstimate e;
  e.mode = EstimateMode::LimitEstimate;
  e.t_max = log_norms.size();
  const std::size_t window = (log_norms.size() + 3) / 4;
  e.t_min = e.t_max - window + 1;
  std::vector<double> all = roots_of(log_norms);
  e.roots.assign(all.end() - static_cast<std::ptrdiff_t>(window), all.end());
  e.value = *std::max_element(e.roots.begin(), e.roots.end());
  if (e.value > 0.0) e.drift = std::fabs(e.roots.back() - e.roots.front()) / e.value;

  // Still rising with increments shrinking no faster than 1/t: likely unbounded.
  if (window >= 3) {
    bool rising = true;
    for (std::size_t i = 1; i < window; ++i)
      if (!(e.roots[i] > e.roots[i - 1]) || e.roots[i - 1] <= 0.0) rising = false;
    if (rising) {
      double t_first = static_cast<double>(e.t_min + 1);
      double t_last = static_cast<double>(e.t_max);
      double first = (e.roots[1] - e.roots[0]) * t_first;
      double last = (e.roots[window - 1] - e.roots[window - 2]) * t_last;
      if (last >= 0.9 * first)
        throw Error(ErrorCode::DivergenceSuspected,
                    "t-th roots still growing at t = " + std::to_string(e.t_max) + " (" +
                        std::to_string(e.roots.back()) + ")");
    }
  }
  return e;
}

bool DdcReport::all_pass() const {
  auto ok = [](const ComparisonLine& c) { return c.verdict == Verdict::Pass; };
  return std::all_of(equality.begin(), equality.end(), ok) && std::all_of(odd.begin(), odd.end(), ok) &&
         weaker == Verdict::Pass;
}

namespace {

double band_of(const DegreeEstimate& a, const DegreeEstimate& b, double tol) {
  double band = tol;
  if (a.mode == EstimateMode::LimitEstimate) band += a.drift;
  if (b.mode == EstimateMode::LimitEstimate) band += b.drift;
  return band;
}

bool exact_pair(const DegreeEstimate& a, const DegreeEstimate& b) {
  return a.mode == EstimateMode::Exact && b.mode == EstimateMode::Exact;
}

}  // namespace

DdcReport ddc_from_estimates(std::vector<DegreeEstimate> lambda, std::vector<DegreeEstimate> chi, bool conjectureD,
                             double tol) {
  if (lambda.empty() || chi.size() != 2 * lambda.size() - 1)
    throw Error(ErrorCode::LengthMismatch, "need lambda_0..lambda_n and chi_0..chi_{2n}");
  DdcReport rep;
  rep.lambda = std::move(lambda);
  rep.chi = std::move(chi);
  const std::size_t n = rep.lambda.size() - 1;
  bool all_exact = true;
  for (const auto* seq : {&rep.lambda, &rep.chi})
    for (const auto& e : *seq) all_exact = all_exact && e.mode == EstimateMode::Exact;

  for (std::size_t k = 0; k <= n; ++k) {
    const auto& c = rep.chi[2 * k];
    const auto& l = rep.lambda[k];
    ComparisonLine line{k, c.value, l.value, Verdict::Pass};
    double scale = std::max(c.value, l.value);
    double rel = scale > 0.0 ? std::fabs(c.value - l.value) / scale : 0.0;
    if (!std::isfinite(c.value))
      line.verdict = Verdict::Inconclusive;
    else if (rel <= tol)
      line.verdict = Verdict::Pass;
    else if (exact_pair(c, l) || rel > band_of(c, l, tol))
      line.verdict = Verdict::Fail;
    else
      line.verdict = Verdict::Inconclusive;
    rep.equality.push_back(line);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const auto& c = rep.chi[2 * k + 1];
    double rhs = std::sqrt(rep.lambda[k].value * rep.lambda[k + 1].value);
    ComparisonLine line{k, c.value, rhs, Verdict::Pass};
    double band = band_of(c, rep.lambda[k], tol) + (rep.lambda[k + 1].mode == EstimateMode::LimitEstimate
                                                         ? rep.lambda[k + 1].drift
                                                         : 0.0);
    if (!std::isfinite(c.value))
      line.verdict = Verdict::Inconclusive;
    else if (c.value <= rhs * (1.0 + tol))
      line.verdict = Verdict::Pass;
    else if ((exact_pair(c, rep.lambda[k]) && rep.lambda[k + 1].mode == EstimateMode::Exact) ||
             c.value > rhs * (1.0 + band))
      line.verdict = Verdict::Fail;
    else
      line.verdict = Verdict::Inconclusive;
    rep.odd.push_back(line);
  }

  bool finite = true;
  std::vector<EnvPoint> np, cp;
  for (std::size_t j = 0; j <= n; ++j) {
    finite = finite && std::isfinite(rep.lambda[j].value);
    if (finite) np.push_back({Rational(static_cast<long>(2 * j)), rational_from_double(rep.lambda[j].value)});
  }
  for (std::size_t k = 0; k <= 2 * n; ++k) {
    finite = finite && std::isfinite(rep.chi[k].value);
    if (finite) cp.push_back({Rational(static_cast<long>(k)), rational_from_double(rep.chi[k].value)});
  }
  if (!finite) {
    rep.weaker = Verdict::Inconclusive;
  } else {
    auto domain = std::make_pair(Rational(0), Rational(static_cast<long>(2 * n)));
    auto ne = upper_log_envelope(np, domain);
    auto ce = upper_log_envelope(cp, domain);
    auto diff = envelope_difference(ne, ce, tol);
    if (!diff) {
      rep.weaker = Verdict::Pass;
    } else {
      rep.weaker_counterexample = diff->get_d();
      rep.weaker = all_exact ? Verdict::Fail : Verdict::Inconclusive;
    }
  }

  bool equality_failed = std::any_of(rep.equality.begin(), rep.equality.end(),
                                     [](const ComparisonLine& c) { return c.verdict == Verdict::Fail; });
  if (equality_failed && !conjectureD) {
    rep.conjectureD_false_model = true;
    rep.notes.push_back("conjecture-D-false model: quotients are not injective on the algebraic part");
  }
  return rep;
}

}  // namespace ddc
