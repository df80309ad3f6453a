#include "ddclab/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ddclab/error.hpp"

namespace ddc {

namespace {

unsigned long to_exponent(const Integer& e) {
  if (!e.fits_ulong_p()) throw Error(ErrorCode::InvalidArgument, "power comparison exponent too large");
  return e.get_ui();
}

}  // namespace

PowerProduct PowerProduct::rational(const Rational& v) {
  if (sgn(v) < 0) throw Error(ErrorCode::NegativeValue, "negative value " + format_rational(v));
  PowerProduct p;
  if (sgn(v) == 0) return p;
  p.zero_ = false;
  p.factors_.push_back({v, Rational(1)});
  return p;
}

PowerProduct PowerProduct::geometric(const Rational& p, const Rational& q, const Rational& alpha) {
  if (alpha == 1 || p == q) return rational(p);
  if (sgn(alpha) == 0) return rational(q);
  return from_factors({{p, alpha}, {q, Rational(1) - alpha}});
}

PowerProduct PowerProduct::from_factors(std::vector<Factor> factors) {
  PowerProduct p;
  p.zero_ = false;
  for (auto& f : factors) {
    if (sgn(f.base) <= 0) throw Error(ErrorCode::NegativeValue, "power product bases must be positive");
    if (sgn(f.exponent) != 0 && f.base != 1) p.factors_.push_back(std::move(f));
  }
  return p;
}

std::optional<Rational> PowerProduct::exact() const {
  if (zero_) return Rational(0);
  // value^den is rational; the value is rational iff that is a perfect den-th power.
  Integer den(1);
  for (const auto& f : factors_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), f.exponent.get_den_mpz_t());
  if (!den.fits_ulong_p() || den > 64) return std::nullopt;
  Rational v(1);
  for (const auto& f : factors_) {
    Integer e = f.exponent.get_num() * (den / f.exponent.get_den());
    if (!e.fits_slong_p()) return std::nullopt;
    v *= pow_rational_signed(f.base, e.get_si());
  }
  const unsigned long d = den.get_ui();
  if (d == 1) return v;
  Integer num, dnm;
  if (mpz_root(num.get_mpz_t(), v.get_num_mpz_t(), d) == 0) return std::nullopt;
  if (mpz_root(dnm.get_mpz_t(), v.get_den_mpz_t(), d) == 0) return std::nullopt;
  return Rational(num, dnm);
}

double PowerProduct::log_value() const {
  if (zero_) return -std::numeric_limits<double>::infinity();
  double s = 0.0;
  for (const auto& f : factors_) s += f.exponent.get_d() * log_rational(f.base);
  return s;
}

double PowerProduct::to_double() const { return zero_ ? 0.0 : std::exp(log_value()); }

int compare(const PowerProduct& a, const PowerProduct& b) {
  if (a.is_zero() || b.is_zero()) return (a.is_zero() ? 0 : 1) - (b.is_zero() ? 0 : 1);
  double la = a.log_value();
  double lb = b.log_value();
  double margin = 1e-6 * std::max({1.0, std::fabs(la), std::fabs(lb)});
  if (la - lb > margin) return 1;
  if (lb - la > margin) return -1;

  // Raise both sides to the common denominator of all exponents, then
  // compare integer-power products.
  Integer den(1);
  for (const auto* side : {&a, &b})
    for (const auto& f : side->factors()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), f.exponent.get_den_mpz_t());
  Rational lhs(1), rhs(1);
  auto accumulate = [&](const PowerProduct& p, bool left) {
    for (const auto& f : p.factors()) {
      Integer e = f.exponent.get_num() * (den / f.exponent.get_den());
      bool to_left = (sgn(e) > 0) == left;
      Integer ae = abs(e);
      Rational pw = pow_rational(f.base, to_exponent(ae));
      (to_left ? lhs : rhs) *= pw;
    }
  };
  accumulate(a, true);
  accumulate(b, false);
  return cmp(lhs, rhs) > 0 ? 1 : (cmp(lhs, rhs) < 0 ? -1 : 0);
}

int PowerProduct::compare(const Rational& c) const {
  if (sgn(c) < 0) return 1;
  return ddc::compare(*this, rational(c));
}

PowerProduct LogConcaveEnvelope::eval(const Rational& x) const {
  if (x < lo_ || x > hi_)
    throw Error(ErrorCode::OutOfDomain, format_rational(x) + " outside [" + format_rational(lo_) + ", " +
                                            format_rational(hi_) + "]");
  if (breakpoints_.empty() || x < breakpoints_.front().x || x > breakpoints_.back().x) return PowerProduct::zero();
  auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x,
                             [](const EnvPoint& p, const Rational& v) { return p.x < v; });
  if (it->x == x) return PowerProduct::rational(it->v);
  const EnvPoint& q = *it;
  const EnvPoint& p = *(it - 1);
  return PowerProduct::geometric(p.v, q.v, Rational((q.x - x) / (q.x - p.x)));
}

int chord_side(const EnvPoint& left, const EnvPoint& mid, const EnvPoint& right) {
  auto lhs = PowerProduct::from_factors({{mid.v, Rational(right.x - left.x)}});
  auto rhs = PowerProduct::from_factors({{left.v, Rational(right.x - mid.x)}, {right.v, Rational(mid.x - left.x)}});
  return compare(lhs, rhs);
}

LogConcaveEnvelope upper_log_envelope(std::span<const EnvPoint> points,
                                      std::optional<std::pair<Rational, Rational>> domain) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "envelope of an empty point set");
  std::vector<EnvPoint> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const EnvPoint& a, const EnvPoint& b) { return a.x < b.x; });
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (sgn(pts[i].v) < 0) throw Error(ErrorCode::NegativeValue, "negative value at x = " + format_rational(pts[i].x));
    if (i > 0 && pts[i].x == pts[i - 1].x)
      throw Error(ErrorCode::DuplicateAbscissa, "repeated abscissa " + format_rational(pts[i].x));
  }
  LogConcaveEnvelope env;
  env.lo_ = domain ? domain->first : pts.front().x;
  env.hi_ = domain ? domain->second : pts.back().x;
  if (pts.front().x < env.lo_ || pts.back().x > env.hi_)
    throw Error(ErrorCode::OutOfDomain, "points outside the envelope domain");

  auto& hull = env.breakpoints_;
  for (const auto& p : pts) {
    if (sgn(p.v) == 0) continue;
    while (hull.size() >= 2 && chord_side(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
    hull.push_back(p);
  }
  return env;
}

std::vector<EnvPoint> a_points(std::span<const Rational> a, Placement placement) {
  std::vector<EnvPoint> out;
  for (std::size_t j = 0; j < a.size(); ++j)
    out.push_back({Rational(static_cast<long>(placement == Placement::Doubled ? 2 * j : j)), a[j]});
  return out;
}

std::vector<EnvPoint> b_points(std::span<const Rational> b) {
  std::vector<EnvPoint> out;
  for (std::size_t k = 0; k < b.size(); ++k) out.push_back({Rational(static_cast<long>(k)), b[k]});
  return out;
}

bool condition2_violated_at(std::span<const Rational> a, std::span<const Rational> b, std::size_t k,
                            const Rational& r) {
  if (sgn(r) < 0) throw Error(ErrorCode::InvalidArgument, "r must be non-negative");
  Rational best(0);
  for (std::size_t j = 0; j < a.size(); ++j) {
    Rational v = pow_rational(r, 2 * j) * a[j];
    if (v > best) best = v;
  }
  return pow_rational(r, k) * b[k] > best;
}

namespace {

void validate_sequences(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.empty() || b.size() != 2 * a.size() - 1)
    throw Error(ErrorCode::LengthMismatch, "expected a_0..a_n and b_0..b_{2n}, got " + std::to_string(a.size()) +
                                               " and " + std::to_string(b.size()) + " entries");
  for (const auto* seq : {&a, &b})
    for (const auto& v : *seq)
      if (sgn(v) < 0) throw Error(ErrorCode::NegativeValue, "negative sequence entry " + format_rational(v));
}

std::optional<Rational> find_r_witness(std::span<const Rational> a, std::span<const Rational> b, std::size_t k,
                                       const LogConcaveEnvelope& env) {
  std::vector<Rational> candidates;
  const auto& bp = env.breakpoints();
  const Rational x(static_cast<long>(k));
  auto log_slope = [](const EnvPoint& p, const EnvPoint& q) {
    return (std::log(q.v.get_d()) - std::log(p.v.get_d())) / Rational(q.x - p.x).get_d();
  };
  std::optional<double> sigma;
  if (bp.empty()) {
    candidates.push_back(Rational(1));
  } else if (x < bp.front().x) {
    sigma = std::nullopt;
  } else if (x > bp.back().x) {
    sigma = std::nullopt;
  } else if (bp.size() == 1) {
    sigma = 0.0;
  } else {
    auto it = std::lower_bound(bp.begin(), bp.end(), x, [](const EnvPoint& p, const Rational& v) { return p.x < v; });
    if (it->x != x) {
      sigma = log_slope(*(it - 1), *it);
    } else if (it == bp.begin()) {
      sigma = log_slope(bp[0], bp[1]) + 1.0;
    } else if (it + 1 == bp.end()) {
      sigma = log_slope(*(it - 1), *it) - 1.0;
    } else {
      sigma = 0.5 * (log_slope(*(it - 1), *it) + log_slope(*it, *(it + 1)));
    }
  }
  if (sigma) {
    double r = std::exp(-*sigma);
    if (std::isfinite(r) && r > 0.0) candidates.push_back(rational_from_double(r));
  }
  for (int i = 0; i <= 64; ++i) {
    Rational p2 = pow_rational(Rational(2), static_cast<unsigned long>(i));
    candidates.push_back(p2);
    if (i > 0) candidates.push_back(Rational(1) / p2);
  }
  for (const auto& r : candidates)
    if (condition2_violated_at(a, b, k, r)) return r;
  return std::nullopt;
}

}  // namespace

ConditionReport check_conditions(std::span<const Rational> a, std::span<const Rational> b) {
  validate_sequences(a, b);
  ConditionReport rep;
  for (std::size_t j = 0; j < a.size(); ++j)
    if (b[2 * j] < a[j]) {
      rep.cond1 = false;
      rep.cond1_failures.push_back(j);
    }
  const long top = static_cast<long>(b.size()) - 1;
  auto pts = a_points(a);
  LogConcaveEnvelope env = upper_log_envelope(pts, std::make_pair(Rational(0), Rational(top)));
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (env.eval(Rational(static_cast<long>(k))).compare(b[k]) < 0) {
      rep.cond2 = false;
      rep.cond2_witnesses.push_back({k, find_r_witness(a, b, k, env)});
    }
  }
  return rep;
}

std::string to_string(Prop1Verdict v) {
  switch (v) {
    case Prop1Verdict::Equal: return "equal";
    case Prop1Verdict::NotEqual: return "not equal";
    case Prop1Verdict::HypothesesFail: return "hypotheses fail";
  }
  return "unknown";
}

namespace {

std::vector<Rational> comparison_abscissas(const LogConcaveEnvelope& a, const LogConcaveEnvelope& b) {
  std::vector<Rational> xs{a.lo(), a.hi(), b.lo(), b.hi()};
  for (const auto* e : {&a, &b})
    for (const auto& p : e->breakpoints()) xs.push_back(p.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

}  // namespace

std::optional<Rational> envelope_difference(const LogConcaveEnvelope& a, const LogConcaveEnvelope& b, double tol) {
  if (a.lo() != b.lo() || a.hi() != b.hi()) throw Error(ErrorCode::OutOfDomain, "envelopes on different domains");
  for (const auto& x : comparison_abscissas(a, b)) {
    PowerProduct va = a.eval(x);
    PowerProduct vb = b.eval(x);
    if (tol > 0.0) {
      double da = va.to_double(), db = vb.to_double();
      if (std::fabs(da - db) > tol * std::max(std::fabs(da), std::fabs(db))) return x;
    } else if (compare(va, vb) != 0) {
      return x;
    }
  }
  return std::nullopt;
}

Prop1Report prop1_verdict(std::span<const Rational> a, std::span<const Rational> b, Placement placement) {
  Prop1Report rep;
  rep.conditions = check_conditions(a, b);
  auto domain = std::make_pair(Rational(0), Rational(static_cast<long>(b.size()) - 1));
  auto ap = a_points(a, placement);
  auto bpts = b_points(b);
  rep.a_env = upper_log_envelope(ap, domain);
  rep.b_env = upper_log_envelope(bpts, domain);
  rep.compared_at = comparison_abscissas(rep.a_env, rep.b_env);
  if (!rep.conditions.cond1 || !rep.conditions.cond2) {
    rep.verdict = Prop1Verdict::HypothesesFail;
    return rep;
  }
  rep.counterexample = envelope_difference(rep.a_env, rep.b_env);
  rep.verdict = rep.counterexample ? Prop1Verdict::NotEqual : Prop1Verdict::Equal;
  return rep;
}

Rational random_rational(std::mt19937_64& rng, long max_int) {
  std::uniform_int_distribution<long> d(1, max_int);
  Rational r(d(rng), d(rng));
  r.canonicalize();
  return r;
}

namespace {

// Rational in [lo, hi] near lo + t (hi - lo), where hi is only known as a power product.
Rational sample_below(std::mt19937_64& rng, const Rational& lo, const PowerProduct& hi, long max_int) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<long> den_dist(1, max_int);
  double hi_d = hi.to_double();
  for (int attempt = 0; attempt < 8; ++attempt) {
    double target = lo.get_d() + unit(rng) * (hi_d - lo.get_d());
    long den = den_dist(rng);
    Rational cand(static_cast<long>(std::floor(target * static_cast<double>(den))), den);
    cand.canonicalize();
    if (cand >= lo && hi.compare(cand) >= 0) return cand;
  }
  return lo;
}

}  // namespace

SequencePair random_prop1_instance(std::mt19937_64& rng, std::size_t max_n, long max_int) {
  std::uniform_int_distribution<std::size_t> n_dist(1, max_n);
  std::uniform_int_distribution<int> coin(0, 9);
  const std::size_t n = n_dist(rng);
  SequencePair pair;
  for (std::size_t j = 0; j <= n; ++j) pair.a.push_back(coin(rng) == 0 ? Rational(0) : random_rational(rng, max_int));
  auto pts = a_points(pair.a);
  LogConcaveEnvelope env =
      upper_log_envelope(pts, std::make_pair(Rational(0), Rational(static_cast<long>(2 * n))));
  for (std::size_t k = 0; k <= 2 * n; ++k) {
    Rational lo = k % 2 == 0 ? pair.a[k / 2] : Rational(0);
    PowerProduct hi = env.eval(Rational(static_cast<long>(k)));
    auto hi_exact = hi.exact();
    int mode = coin(rng);
    if (mode < 2)
      pair.b.push_back(lo);
    else if (mode < 5 && hi_exact)
      pair.b.push_back(*hi_exact);
    else
      pair.b.push_back(sample_below(rng, lo, hi, max_int));
  }
  return pair;
}

std::size_t plant_condition2_violation(SequencePair& pair, std::mt19937_64& rng) {
  const std::size_t top = pair.b.size() - 1;
  std::uniform_int_distribution<std::size_t> k_dist(0, top);
  std::uniform_int_distribution<int> exp_dist(0, 6);
  std::uniform_int_distribution<long> den_dist(1, 1000);
  auto pts = a_points(pair.a);
  LogConcaveEnvelope env = upper_log_envelope(pts, std::make_pair(Rational(0), Rational(static_cast<long>(top))));
  const std::size_t k = k_dist(rng);
  PowerProduct hi = env.eval(Rational(static_cast<long>(k)));
  double target = hi.to_double() * (1.0 + std::pow(10.0, -exp_dist(rng)));
  long den = den_dist(rng);
  Rational cand(static_cast<long>(std::ceil(target * static_cast<double>(den))) + 1, den);
  cand.canonicalize();
  while (hi.compare(cand) >= 0) cand *= 2;
  pair.b[k] = cand;
  return k;
}

}  // namespace ddc
