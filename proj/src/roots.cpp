#include "ddclab/roots.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <cmath>
#include <numbers>

namespace ddc {

namespace {

using HF = boost::multiprecision::cpp_bin_float_50;
using HC = boost::multiprecision::cpp_complex_50;

HF to_hf(const Rational& q) {
  HF num(q.get_num().get_str());
  HF den(q.get_den().get_str());
  return num / den;
}

struct HPoly {
  std::vector<HC> c;  // low degree first
  HC eval(const HC& z) const {
    HC acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
  }
  void eval_with_derivative(const HC& z, HC& p, HC& dp) const {
    p = HC(0);
    dp = HC(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      dp = dp * z + p;
      p = p * z + *it;
    }
  }
};

std::vector<std::complex<double>> companion_seeds(const QPoly& p) {
  const int d = p.degree();
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
  const double lead = p.leading().get_d();
  for (int i = 0; i < d; ++i) {
    if (i + 1 < d) comp(i + 1, i) = 1.0;
    comp(i, d - 1) = -p.coeffs()[static_cast<std::size_t>(i)].get_d() / lead;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::vector<std::complex<double>> seeds;
  for (int i = 0; i < d; ++i) seeds.push_back(es.eigenvalues()(i));
  return seeds;
}

}  // namespace

namespace {

// Aberth-Ehrlich iteration in 50-digit arithmetic; returns the largest
// relative enclosure radius.
HF aberth(const HPoly& hp, std::vector<HC>& z, int max_iter) {
  const int d = static_cast<int>(z.size());
  const HF stop("1e-38");
  for (int iter = 0; iter < max_iter; ++iter) {
    HF max_step(0);
    for (int i = 0; i < d; ++i) {
      auto& zi = z[static_cast<std::size_t>(i)];
      HC p, dp;
      hp.eval_with_derivative(zi, p, dp);
      if (p == HC(0)) continue;
      HC ratio = p / dp;
      HC sum(0);
      for (int j = 0; j < d; ++j)
        if (j != i) sum += HC(1) / (zi - z[static_cast<std::size_t>(j)]);
      HC step = ratio / (HC(1) - ratio * sum);
      zi -= step;
      HF rel = abs(step) / (abs(zi) + HF(1));
      if (rel > max_step) max_step = rel;
    }
    if (max_step < stop) break;
  }
  HF worst(0);
  const HC lead = hp.c.back();
  for (int i = 0; i < d; ++i) {
    const HC& zi = z[static_cast<std::size_t>(i)];
    HC denom = lead;
    for (int j = 0; j < d; ++j)
      if (j != i) denom *= (zi - z[static_cast<std::size_t>(j)]);
    HF rel = HF(d) * abs(hp.eval(zi) / denom) / (abs(zi) + HF("1e-300"));
    if (rel > worst) worst = rel;
  }
  return worst;
}

// Fujiwara bound on the root moduli.
HF root_bound(const HPoly& hp) {
  const int d = static_cast<int>(hp.c.size()) - 1;
  const HF lead = abs(hp.c.back());
  HF bound(0);
  for (int i = 1; i <= d; ++i) {
    HF a = abs(hp.c[static_cast<std::size_t>(d - i)]) / lead;
    if (i == d) a /= 2;
    HF term = 2 * pow(a, HF(1) / i);
    if (term > bound) bound = term;
  }
  return bound > 0 ? bound : HF(1);
}

}  // namespace

std::vector<RootEnclosure> isolate_roots(const QPoly& squarefree) {
  const int d = squarefree.degree();
  std::vector<RootEnclosure> out;
  if (d <= 0) return out;
  HPoly hp;
  for (const auto& q : squarefree.coeffs()) hp.c.emplace_back(to_hf(q));
  const HC lead = hp.c.back();

  std::vector<HC> z;
  bool finite = true;
  for (auto s : companion_seeds(squarefree)) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) finite = false;
    z.emplace_back(HF(s.real()), HF(s.imag()));
  }
  // Real seeds of a real polynomial stay real under the iteration, so every
  // seed is nudged off the axis, with distinct offsets to break ties.
  for (int i = 0; i < d && finite; ++i) {
    auto& zi = z[static_cast<std::size_t>(i)];
    HF scale = abs(zi) + HF(1);
    zi += HC(HF(1e-6) * scale * (i % 3), HF(1e-4) * scale * (i + 1) / d);
  }
  HF worst = finite ? aberth(hp, z, 400) : HF(1);
  if (worst > HF("1e-20")) {
    z.clear();
    const HF radius = root_bound(hp);
    for (int i = 0; i < d; ++i) {
      HF ang = 2 * boost::math::constants::pi<HF>() * (HF(i) + HF("0.25")) / d;
      z.emplace_back(radius * cos(ang), radius * sin(ang));
    }
    worst = aberth(hp, z, 2000);
  }
  if (worst > HF("1e-12")) throw Error(ErrorCode::NonConvergence, "root isolation did not converge");

  for (int i = 0; i < d; ++i) {
    const HC& zi = z[static_cast<std::size_t>(i)];
    HC denom = lead;
    for (int j = 0; j < d; ++j)
      if (j != i) denom *= (zi - z[static_cast<std::size_t>(j)]);
    HF radius = HF(d) * abs(hp.eval(zi) / denom);
    RootEnclosure r;
    r.center = {static_cast<double>(zi.real()), static_cast<double>(zi.imag())};
    r.modulus = static_cast<double>(abs(zi));
    r.radius = static_cast<double>(radius);
    out.push_back(r);
  }
  return out;
}

std::vector<Eigenvalue> exact_eigenvalues(const QMatrix& m) {
  std::vector<Eigenvalue> out;
  if (m.rows() == 0) return out;
  auto factors = squarefree_decomposition(charpoly(m));
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].degree() <= 0) continue;
    for (const auto& r : isolate_roots(factors[i])) out.push_back({r, i + 1});
  }
  return out;
}

}  // namespace ddc
