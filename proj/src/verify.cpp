#include "ddclab/verify.hpp"

#include <Eigen/QR>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "ddclab/degrees.hpp"
#include "ddclab/envelope.hpp"
#include "ddclab/spectral.hpp"
#include "ddclab/twist.hpp"
#include "eigen_bridge.hpp"

namespace ddc {

namespace {

constexpr std::size_t kMaxNotes = 8;

class SuiteTimer {
 public:
  explicit SuiteTimer(SuiteResult& r) : r_(r), start_(std::chrono::steady_clock::now()) {}
  SuiteResult done() {
    r_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return r_;
  }

 private:
  SuiteResult& r_;
  std::chrono::steady_clock::time_point start_;
};

SuiteResult result_for(std::string name, std::uint64_t seed, std::size_t count) {
  SuiteResult r;
  r.name = std::move(name);
  r.seed = seed;
  r.count = count;
  return r;
}

void fail(SuiteResult& r, const std::string& msg) {
  ++r.failures;
  if (r.notes.size() < kMaxNotes) r.notes.push_back(msg);
}

std::string join(const std::vector<Rational>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_rational(v[i]);
  return "(" + s + ")";
}

long uniform(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

// r^k b_k > max_j r^(2j) a_j, evaluated directly.
bool grid_violation(const std::vector<Rational>& a, const std::vector<Rational>& b, std::size_t k, const Rational& r) {
  Rational rhs(0);
  for (std::size_t j = 0; j < a.size(); ++j) rhs = std::max(rhs, Rational(pow_rational(r, 2 * j) * a[j]));
  return pow_rational(r, k) * b[k] > rhs;
}

QMatrix random_integer_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long bound) {
  QMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Rational(uniform(rng, -bound, bound));
  return m;
}

QMatrix random_invertible(std::mt19937_64& rng, std::size_t n, long bound) {
  for (;;) {
    QMatrix m = random_integer_matrix(rng, n, n, bound);
    if (sgn(determinant(m)) != 0) return m;
  }
}

QMatrix random_symmetric_invertible(std::mt19937_64& rng, std::size_t n, long bound) {
  for (;;) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = Rational(uniform(rng, -bound, bound));
    if (sgn(determinant(m)) != 0) return m;
  }
}

QMatrix jordan_block(std::size_t size, const Rational& lambda) {
  QMatrix j = QMatrix::scalar(size, lambda);
  for (std::size_t i = 0; i + 1 < size; ++i) j(i, i + 1) = Rational(1);
  return j;
}

void partitions(std::size_t n, std::size_t max_part, std::vector<std::size_t>& cur,
                std::vector<std::vector<std::size_t>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (std::size_t p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(n - p, p, cur, out);
    cur.pop_back();
  }
}

QBundle elliptic(long q, long c, std::optional<std::pair<long, long>> endo) {
  QMatrix b(2, 2);
  b(0, 1) = Rational(-q);
  b(1, 0) = Rational(1);
  b(1, 1) = Rational(c);
  std::optional<QMatrix> e;
  if (endo) e = QMatrix(QMatrix::scalar(2, Rational(endo->first)) + QMatrix(Rational(endo->second) * b));
  return abelian_model(1, q, b, e);
}

long weil_trace(std::mt19937_64& rng, long q) {
  long cmax = 0;
  while ((cmax + 1) * (cmax + 1) < 4 * q) ++cmax;
  return uniform(rng, -cmax, cmax);
}

bool squarefree_minpoly(const GradedMap<Rational>& f) {
  for (const auto& b : f.blocks())
    if (b.rows() > 0 && !is_squarefree(minimal_polynomial(b))) return false;
  return true;
}

}  // namespace

QBundle elliptic_times2_model() {
  QMatrix b(2, 2);
  b(0, 1) = Rational(-5);
  b(1, 0) = Rational(1);
  b(1, 1) = Rational(2);
  auto m = abelian_model(1, 5, b, QMatrix::scalar(2, Rational(2)));
  m.provenance = "elliptic(q=5, trace=2) with multiplication by 2";
  return m;
}

QBundle conjecture_d_counter_model() {
  auto space = share(make_space<Rational>(2, {1, 0, 2, 0, 1}));
  QMatrix mid(2, 2);
  mid(0, 0) = Rational(4);
  mid(1, 1) = Rational(1);
  GradedMap<Rational> f(space, {QMatrix::identity(1), QMatrix(0, 0), mid, QMatrix(0, 0), QMatrix::identity(1)});
  QMatrix q1(1, 2);
  q1(0, 1) = Rational(1);
  NumericalStructure<Rational> ns(space, {QMatrix::identity(1), q1, QMatrix::identity(1)}, false);
  QBundle b{space, ns, std::nullopt, {}, {}, "conjecture-D counter-model: N^1 drops the eigenvalue 4"};
  b.endos.emplace("f", f);
  return b;
}

std::pair<PolarizedModel<Rational>, PolarizedModel<Rational>> jordan_pair_model() {
  auto space = share(make_space<Rational>(2, {1, 0, 2, 0, 1}));
  auto map = [&](long a, const QMatrix& mid) {
    return GradedMap<Rational>(space, {QMatrix::identity(1), QMatrix(0, 0), mid, QMatrix(0, 0),
                                       QMatrix::scalar(1, Rational(a * a))});
  };
  auto f1 = make_polarized(3, map(3, jordan_block(2, Rational(3))), false, false);
  auto f2 = make_polarized(2, map(2, QMatrix::scalar(2, Rational(2))), false, true);
  return {f1, f2};
}

std::vector<QBundle> ddc_corpus(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<QBundle> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_abelian_endo_model(rng, 3, 5));
  return out;
}

std::vector<QBundle> construction_corpus(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  static const long qs[] = {2, 3, 4, 5, 7, 9};
  std::vector<QBundle> out;
  auto random_endo = [&]() -> std::optional<std::pair<long, long>> {
    return std::make_pair(uniform(rng, -2, 2), uniform(rng, -1, 1));
  };
  while (out.size() < count) {
    const long q = qs[uniform(rng, 0, 5)];
    const int kind = static_cast<int>(uniform(rng, 0, 5));
    switch (kind) {
      case 0: {  // P^n blown up along P^m
        const std::size_t n = static_cast<std::size_t>(uniform(rng, 2, 4));
        const std::size_t r = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(n)));
        out.push_back(blowup_model(projective_model(n, q), projective_model(n - r, q), r));
        break;
      }
      case 1: {  // E x E blown up at a point
        const auto e = elliptic(q, weil_trace(rng, q), random_endo());
        out.push_back(blowup_model(product_model(e, e), projective_model(0, q), 2));
        break;
      }
      case 2: {  // P^1 x E x P^1-style threefold blown up along an elliptic curve
        const auto e = elliptic(q, weil_trace(rng, q), std::nullopt);
        out.push_back(blowup_model(product_model(projective_model(2, q), e), e, 2));
        break;
      }
      case 3: {
        out.push_back(hilb2_model(projective_model(static_cast<std::size_t>(uniform(rng, 1, 2)), q)));
        break;
      }
      case 4: {
        out.push_back(hilb2_model(elliptic(q, weil_trace(rng, q), random_endo())));
        break;
      }
      default: {  // hilb2 of a blowup surface
        out.push_back(hilb2_model(blowup_model(projective_model(2, q), projective_model(0, q), 2)));
        break;
      }
    }
  }
  return out;
}

SuiteResult prop1_suite(std::uint64_t seed, std::size_t count) {
  SuiteResult r = result_for("prop1-suite", seed, count);
  SuiteTimer timer(r);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    auto pair = random_prop1_instance(rng, 6, 1000);
    auto rep = prop1_verdict(pair.a, pair.b);
    if (rep.verdict != Prop1Verdict::Equal) {
      fail(r, "instance " + std::to_string(i) + ": " + to_string(rep.verdict) + " for a=" + join(pair.a) +
                  " b=" + join(pair.b));
      continue;
    }
    for (const auto& x : rep.compared_at)
      if (compare(rep.a_env.eval(x), rep.b_env.eval(x)) != 0) {
        fail(r, "instance " + std::to_string(i) + ": envelopes differ at x=" + format_rational(x));
        break;
      }
  }
  return timer.done();
}

SuiteResult condition2_suite(std::uint64_t seed, std::size_t count) {
  SuiteResult r = result_for("condition2-soundness", seed, count);
  SuiteTimer timer(r);
  std::mt19937_64 rng(seed);
  std::size_t grid_hits = 0;
  for (std::size_t i = 0; i < count; ++i) {
    auto pair = random_prop1_instance(rng, 6, 1000);
    plant_condition2_violation(pair, rng);
    std::vector<Rational> grid;
    for (int e = -20; e <= 20; ++e) grid.push_back(e >= 0 ? Rational(Integer(1) << e) : Rational(1, Integer(1) << -e));
    for (int t = 0; t < 50; ++t) grid.push_back(random_rational(rng, 1000));
    std::set<std::size_t> grid_ks;
    for (const auto& rv : grid)
      for (std::size_t k = 0; k < pair.b.size(); ++k)
        if (grid_violation(pair.a, pair.b, k, rv)) grid_ks.insert(k);
    if (!grid_ks.empty()) ++grid_hits;

    auto cond = check_conditions(pair.a, pair.b);
    std::set<std::size_t> exact_ks;
    auto a_env = upper_log_envelope(a_points(pair.a),
                                    std::make_pair(Rational(0), Rational(static_cast<long>(pair.b.size() - 1))));
    for (const auto& w : cond.cond2_witnesses) {
      exact_ks.insert(w.k);
      bool valid = w.r ? grid_violation(pair.a, pair.b, w.k, *w.r)
                       : a_env.eval(Rational(static_cast<long>(w.k))).compare(pair.b[w.k]) < 0;
      if (!valid) fail(r, "instance " + std::to_string(i) + ": invalid witness at k=" + std::to_string(w.k));
    }
    for (auto k : grid_ks)
      if (!exact_ks.count(k))
        fail(r, "instance " + std::to_string(i) + ": grid violation at k=" + std::to_string(k) + " missed");
    if (!grid_ks.empty() && cond.cond2) fail(r, "instance " + std::to_string(i) + ": condition 2 reported true");
    if (prop1_verdict(pair.a, pair.b).verdict == Prop1Verdict::Equal)
      fail(r, "instance " + std::to_string(i) + ": false \"equal\" verdict");
  }
  r.notes.insert(r.notes.begin(), "grid oracle detected violations in " + std::to_string(grid_hits) + " of " +
                                      std::to_string(count) + " instances");
  return timer.done();
}

SuiteResult ddc_suite(std::uint64_t seed, std::size_t count) {
  SuiteResult r = result_for("ddc-suite", seed, count);
  SuiteTimer timer(r);
  const auto corpus = ddc_corpus(seed, count);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& b = corpus[i];
    auto sys = IterateSystem<Rational>::power(b.endos.at("endo"), b.numerical);
    auto rep = ddc_verdict(sys);
    const std::size_t n = b.space->n();
    for (std::size_t k = 0; k <= n; ++k) {
      double lam = rep.lambda[k].value, chi = rep.chi[2 * k].value;
      double rel = lam > 0 ? std::fabs(chi - lam) / lam : std::fabs(chi);
      if (rel > 1e-6)
        fail(r, "model " + std::to_string(i) + " (" + b.provenance + "): chi_" + std::to_string(2 * k) + "=" +
                    std::to_string(chi) + " lambda_" + std::to_string(k) + "=" + std::to_string(lam));
    }
    for (std::size_t k = 0; k < n; ++k) {
      double chi = rep.chi[2 * k + 1].value;
      double bound = std::sqrt(rep.lambda[k].value * rep.lambda[k + 1].value);
      if (chi > bound * (1.0 + 1e-9))
        fail(r, "model " + std::to_string(i) + ": chi_" + std::to_string(2 * k + 1) + "=" + std::to_string(chi) +
                    " exceeds " + std::to_string(bound));
    }
  }
  return timer.done();
}

SuiteResult norms_suite(std::uint64_t seed, std::size_t count) {
  SuiteResult r = result_for("norms", seed, count);
  SuiteTimer timer(r);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  auto random_c = [&](std::size_t rows, std::size_t cols, bool complex) {
    CMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = Complex(gauss(rng), complex ? gauss(rng) : 0.0);
    return m;
  };
  const double slack = 1e-9;
  std::size_t equality_cases = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const auto n = static_cast<std::size_t>(uniform(rng, 1, 8));
    const auto m = static_cast<std::size_t>(uniform(rng, 1, 8));
    const bool complex = uniform(rng, 0, 1) == 1;
    CMatrix a = random_c(n, n, complex);
    if (i % 7 == 0 && n > 1)  // rank-deficient A
      for (std::size_t j = 0; j < n; ++j) a(j, n - 1) = a(j, 0) * 2.0;
    CMatrix b = random_c(n, m, complex);
    const double nb = frobenius_norm(b), nab = frobenius_norm(CMatrix(a * b));
    const auto sv = singular_extremes(a);
    if (sv.min * nb > nab * (1 + slack) || nab > sv.max * nb * (1 + slack))
      fail(r, "pair " + std::to_string(i) + ": " + std::to_string(sv.min * nb) + " <= " + std::to_string(nab) +
                  " <= " + std::to_string(sv.max * nb) + " fails");
    if (i % 100 == 0) {
      ++equality_cases;
      Eigen::MatrixXcd g = detail::to_eigen(random_c(n, n, true));
      Eigen::MatrixXcd u = Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ();
      const double c = 0.5 + std::fabs(gauss(rng));
      CMatrix su = detail::from_eigen(Eigen::MatrixXcd(c * u));
      const double lhs = frobenius_norm(CMatrix(su * b));
      const auto s2 = singular_extremes(su);
      if (std::fabs(lhs - c * nb) > slack * c * nb || std::fabs(s2.min - c) > slack * c ||
          std::fabs(s2.max - c) > slack * c)
        fail(r, "pair " + std::to_string(i) + ": scaled unitary equality fails");
    }
  }
  r.notes.push_back(std::to_string(equality_cases) + " scaled-unitary equality cases");
  return timer.done();
}

SuiteResult yamamoto_suite(std::uint64_t seed, std::size_t count) {
  SuiteResult r = result_for("yamamoto", seed, count);
  SuiteTimer timer(r);
  std::mt19937_64 rng(seed);
  std::vector<unsigned long> ms;
  for (unsigned e = 4; e <= 12; ++e) ms.push_back(1ul << e);
  double worst = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    QMatrix a = random_integer_matrix(rng, 6, 6, 5);
    const double rho = spectral_radius(a).value;
    auto rep = yamamoto_sequence(to_complex(a), ms);
    std::vector<double> err;
    for (const auto& e : rep.estimates) err.push_back(rho > 0 ? std::fabs(e.estimate - rho) / rho : e.estimate);
    worst = std::max(worst, err.back());
    if (err.back() > 1e-2)
      fail(r, "matrix " + std::to_string(i) + ": error " + std::to_string(err.back()) + " at m=4096");
    for (std::size_t j = 1; j < err.size(); ++j)
      if (err[j] > err[j - 1] * 1.1 + 1e-12) {
        fail(r, "matrix " + std::to_string(i) + ": error rises from " + std::to_string(err[j - 1]) + " to " +
                    std::to_string(err[j]) + " at m=" + std::to_string(ms[j]));
        break;
      }
  }
  QMatrix j = jordan_block(2, Rational(1));
  const unsigned long ten[] = {10};
  const double planted = yamamoto_sequence(to_complex(j), ten).estimates.front().estimate;
  const double expected = std::pow((10.0 + std::sqrt(104.0)) / 2.0, 0.1);
  if (std::fabs(planted - 1.260) > 1e-3) fail(r, "J=[[1,1],[0,1]] at m=10 gives " + std::to_string(planted));
  std::ostringstream os;
  os << "worst error at m=4096: " << worst << "; J at m=10: " << planted << " (closed form " << expected << ")";
  r.notes.insert(r.notes.begin(), os.str());
  return timer.done();
}

SuiteResult jordan_suite(std::uint64_t seed, std::size_t max_size) {
  SuiteResult r = result_for("jordan", seed, 0);
  SuiteTimer timer(r);
  std::mt19937_64 rng(seed);
  const auto schedule = default_growth_schedule(200);
  double worst_rho = 0.0;
  for (long rho : {2L, 3L}) {
    for (std::size_t size = 1; size <= max_size; ++size) {
      std::vector<std::vector<std::size_t>> parts;
      std::vector<std::size_t> cur;
      partitions(size, size, cur, parts);
      for (const auto& p : parts) {
        ++r.count;
        std::vector<QMatrix> blocks;
        for (auto s : p) blocks.push_back(jordan_block(s, Rational(rho)));
        QMatrix jm = block_diag(blocks);
        std::string label = "rho=" + std::to_string(rho) + " partition (";
        for (std::size_t i = 0; i < p.size(); ++i) label += (i ? "," : "") + std::to_string(p[i]);
        label += ")";

        try {
          auto fit = growth_fit(growth_samples(to_complex(jm), schedule));
          worst_rho = std::max(worst_rho, std::fabs(fit.rho - rho) / rho);
          if (fit.b != static_cast<int>(p.front()) || std::fabs(fit.rho - rho) > 1e-6 * rho)
            fail(r, label + ": fit b=" + std::to_string(fit.b) + " rho=" + std::to_string(fit.rho));
        } catch (const Error& e) {
          fail(r, label + ": " + e.what());
        }

        QMatrix s = random_invertible(rng, size, 3);
        QMatrix conj = QMatrix(s * jm) * inverse(s);
        auto prof = jordan_profile(conj, Rational(rho));
        if (prof.block_sizes != p) fail(r, label + ": rank profile gives a different partition");
      }
    }
  }
  std::ostringstream os;
  os << "worst relative rho error " << worst_rho;
  r.notes.insert(r.notes.begin(), os.str());
  return timer.done();
}

SuiteResult lieberman_suite(std::uint64_t seed, std::size_t count) {
  SuiteResult r = result_for("lieberman", seed, count);
  SuiteTimer timer(r);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const auto n = static_cast<std::size_t>(uniform(rng, 0, 3));
    std::vector<std::size_t> dims(2 * n + 1);
    std::size_t total = 0;
    for (std::size_t k = 0; k <= n; ++k) {
      std::size_t d = k == 0 ? 1 : static_cast<std::size_t>(uniform(rng, 0, 3));
      std::size_t cost = k == n ? d : 2 * d;
      if (total + cost > 12) d = 0, cost = 0;
      dims[k] = dims[2 * n - k] = d;
      total += cost;
    }
    std::vector<QMatrix> pairings(2 * n + 1);
    for (std::size_t k = 0; k < n; ++k) {
      pairings[k] = random_invertible(rng, dims[k], 2);
      pairings[2 * n - k] = pairings[k].transpose();
    }
    pairings[n] = random_symmetric_invertible(rng, dims[n], 2);
    auto space = share(make_space<Rational>(n, dims, pairings, std::vector<QMatrix>{}));
    auto random_class = [&]() {
      std::vector<QMatrix> c;
      for (std::size_t k = 0; k <= 2 * n; ++k) c.push_back(random_integer_matrix(rng, dims[2 * n - k], dims[k], 3));
      return CorrespondenceClass<Rational>(space, std::move(c));
    };
    const auto f = random_class(), phi = random_class(), psi = random_class();
    const auto lhs = correspondence_action(product_pushforward(phi, psi, f));
    const auto rhs = pushforward_action(phi) * correspondence_action(f) * correspondence_action(psi);
    if (!(lhs == rhs)) fail(r, "instance " + std::to_string(i) + ": pushforward identity fails");
    const auto lhs2 = correspondence_action(product_pullback(phi, psi, f));
    const auto rhs2 = correspondence_action(phi) * correspondence_action(f) * pushforward_action(psi);
    if (!(lhs2 == rhs2)) fail(r, "instance " + std::to_string(i) + ": pullback identity fails");
    const auto act = correspondence_action(f);
    const auto delta = diagonal_class(space);
    for (std::size_t k = 0; k <= 2 * n; ++k) {
      if (dims[k] == 0) continue;
      const Rational tr = act.block(k).trace();
      const Rational pairing = class_pairing(*space, k, f.component(k), delta.component(2 * n - k));
      if (tr != pairing || tr != trace_component(f, k))
        fail(r, "instance " + std::to_string(i) + ": trace identity fails in degree " + std::to_string(k));
    }
  }
  return timer.done();
}

SuiteResult constructions_suite(std::uint64_t seed, std::size_t count) {
  SuiteResult r = result_for("constructions", seed, count);
  SuiteTimer timer(r);
  const std::vector<std::size_t> p2_blown{1, 0, 2, 0, 1};
  const auto z = blowup_model(projective_model(2, 4), projective_model(0, 4), 2);
  if (z.space->dims() != p2_blown) fail(r, "blowup of P^2 at a point has the wrong dims");
  const auto h1 = hilb2_model(projective_model(1, 4));
  if (h1.space->dims() != projective_model(2, 4).space->dims()) fail(r, "hilb2 of P^1 has the wrong dims");

  // hilb2 dims against (dim + trace of the swap) / 2 on test inputs
  for (const auto& x : {projective_model(1, 3), projective_model(2, 3), elliptic(5, 2, std::nullopt)}) {
    const auto h = hilb2_model(x);
    const auto swaps = hilb2_swap(x);
    for (std::size_t k = 0; k < swaps.size(); ++k) {
      Rational expected = (Rational(static_cast<long>(swaps[k].rows())) + swaps[k].trace()) / 2;
      if (Rational(static_cast<long>(h.space->dim(k))) != expected)
        fail(r, "hilb2(" + x.provenance + ") dim " + std::to_string(k) + " disagrees with the trace count");
    }
  }

  const auto corpus = construction_corpus(seed, count);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& b = corpus[i];
    const std::string label = "model " + std::to_string(i) + " (" + b.provenance + ")";
    const auto& d = b.space->dims();
    for (std::size_t k = 0; k < d.size(); ++k)
      if (d[k] != d[d.size() - 1 - k]) fail(r, label + ": dims not symmetric");
    if (!b.frobenius) {
      fail(r, label + ": no Frobenius");
      continue;
    }
    if (!squarefree_minpoly(b.frobenius->map)) fail(r, label + ": Frobenius not semisimple");
    for (const auto& name : b.over_fq) {
      const auto& f = b.endos.at(name);
      for (std::size_t k = 0; k < d.size(); ++k) {
        const auto& fr = b.frobenius->map.block(k);
        if (!(QMatrix(f.block(k) * fr) == QMatrix(fr * f.block(k)))) {
          fail(r, label + ": endo " + name + " does not commute with the Frobenius in degree " + std::to_string(k));
          break;
        }
      }
    }
  }
  return timer.done();
}

SuiteResult kronecker_suite(std::uint64_t seed, std::size_t count) {
  SuiteResult r = result_for("kronecker", seed, count);
  SuiteTimer timer(r);
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  auto g1 = kronecker_approx(phi, 0.1), g2 = kronecker_approx(phi, 0.05);
  if (g1.s != -5 || g1.t != 8) fail(r, "golden ratio at 0.1 gives (" + std::to_string(g1.s) + ", " + std::to_string(g1.t) + ")");
  if (g2.s != -13 || g2.t != 21)
    fail(r, "golden ratio at 0.05 gives (" + std::to_string(g2.s) + ", " + std::to_string(g2.t) + ")");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> theta_dist(0.0, 10.0);
  for (std::size_t i = 0; i < count; ++i) {
    double theta = theta_dist(rng);
    while (theta == 0.0) theta = theta_dist(rng);
    auto k = kronecker_approx(theta, 1e-6);
    long double actual = std::fabs(static_cast<long double>(theta) * k.s + k.t);
    if (!(k.t > 0) || actual >= 1e-6L)
      fail(r, "theta " + std::to_string(theta) + ": (" + std::to_string(k.s) + ", " + std::to_string(k.t) + ")");
  }
  for (auto [p, q] : {std::pair{3L, 2L}, {7L, 3L}, {22L, 7L}, {5L, 1L}, {355L, 113L}}) {
    auto seq = kronecker_sequence(static_cast<double>(p) / static_cast<double>(q));
    if (seq.empty() || !seq.back().rational || seq.back().residual != 0.0)
      fail(r, "rational " + std::to_string(p) + "/" + std::to_string(q) + " not recognized");
  }
  return timer.done();
}

SuiteResult eq1_suite(std::uint64_t seed, std::size_t ddc_count, std::size_t construction_count) {
  SuiteResult r = result_for("eq1-scan", seed, ddc_count + construction_count);
  SuiteTimer timer(r);
  const auto grid = dyadic_grid(-10, 10);
  auto scan = [&](const std::vector<QBundle>& corpus, const std::string& tag) {
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const auto& b = corpus[i];
      std::vector<std::pair<std::string, const GradedMap<Rational>*>> maps;
      if (b.frobenius) maps.emplace_back("Frobenius", &b.frobenius->map);
      for (const auto& [name, f] : b.endos) maps.emplace_back(name, &f);
      for (const auto& [name, f] : maps) {
        auto rep = eq1_scan(*f, b.numerical, grid);
        if (!rep.ok()) {
          const auto& v = rep.violations.front();
          fail(r, tag + " model " + std::to_string(i) + " map " + name + ": violation at r=" + std::to_string(v.r) +
                      " k=" + std::to_string(v.k));
        }
      }
    }
  };
  scan(ddc_corpus(seed, ddc_count), "ddc");
  scan(construction_corpus(seed, construction_count), "construction");
  const auto counter = conjecture_d_counter_model();
  auto rep = eq1_scan(counter.endos.at("f"), counter.numerical, grid);
  if (rep.ok())
    fail(r, "counter-model shows no violation");
  else
    r.notes.push_back("counter-model witness: r=" + std::to_string(rep.violations.front().r) +
                      " k=" + std::to_string(rep.violations.front().k));
  return timer.done();
}

SuiteResult jordan_certificate_suite(std::size_t steps, double threshold) {
  SuiteResult r = result_for("jordan-certificate", 0, 1);
  SuiteTimer timer(r);
  auto [f1, f2] = jordan_pair_model();
  auto rep = jordan_compare(f1, f2, 2, steps);
  if (rep.b1 != 2 || rep.b2 != 1) fail(r, "block sizes " + std::to_string(rep.b1) + ", " + std::to_string(rep.b2));
  std::size_t hit = 0;
  while (hit < rep.certificate.size() && rep.certificate[hit] <= threshold) ++hit;
  if (hit == rep.certificate.size())
    fail(r, "certificate stays below the threshold for " + std::to_string(rep.certificate.size()) + " steps");
  else
    r.notes.push_back("certificate " + std::to_string(rep.certificate[hit]) + " at step " + std::to_string(hit));
  return timer.done();
}

}  // namespace ddc
