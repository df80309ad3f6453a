#include "ddclab/constructions.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "eigen_bridge.hpp"

namespace ddc {

namespace {

std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

QBundle finish(SpacePtr<Rational> space, NumericalStructure<Rational> ns, std::optional<GradedMap<Rational>> frob,
               long base, bool semisimple, std::string provenance) {
  QBundle b{space, std::move(ns), std::nullopt, {}, {}, std::move(provenance)};
  if (frob) {
    if (is_prime_power(base))
      b.frobenius = make_frobenius(base, std::move(*frob), semisimple);
    else
      b.frobenius = make_polarized(base, std::move(*frob), true, semisimple);
  }
  return b;
}

// Offsets of Kunneth pieces H^i(X) (x) H^{k-i}(Y) inside H^k(X x Y).
struct KunnethLayout {
  std::size_t nx = 0, ny = 0;
  std::vector<std::size_t> dims;
  std::vector<std::vector<std::size_t>> offset;  // offset[k][i], valid for i in [lo(k), hi(k)]

  std::size_t lo(std::size_t k) const { return k > 2 * ny ? k - 2 * ny : 0; }
  std::size_t hi(std::size_t k) const { return std::min(k, 2 * nx); }
};

KunnethLayout kunneth(const GradedSpace<Rational>& x, const GradedSpace<Rational>& y) {
  KunnethLayout l;
  l.nx = x.n();
  l.ny = y.n();
  const std::size_t top = 2 * (l.nx + l.ny);
  l.dims.assign(top + 1, 0);
  l.offset.assign(top + 1, std::vector<std::size_t>(2 * l.nx + 1, 0));
  for (std::size_t k = 0; k <= top; ++k)
    for (std::size_t i = l.lo(k); i <= l.hi(k); ++i) {
      l.offset[k][i] = l.dims[k];
      l.dims[k] += x.dim(i) * y.dim(k - i);
    }
  return l;
}

std::vector<QMatrix> tensor_blocks(const KunnethLayout& l, const std::vector<QMatrix>& f, const std::vector<QMatrix>& g) {
  std::vector<QMatrix> out;
  for (std::size_t k = 0; k < l.dims.size(); ++k) {
    QMatrix m(l.dims[k], l.dims[k]);
    for (std::size_t i = l.lo(k); i <= l.hi(k); ++i) {
      const std::size_t o = l.offset[k][i];
      m.set_block(o, o, kron(f[i], g[k - i]));
    }
    out.push_back(std::move(m));
  }
  return out;
}

// Degree layout of blowup pieces: H^k(X) first, then H^{k-2j}(A) for j = 1..r-1.
struct BlowupLayout {
  std::size_t r = 0;
  std::vector<std::size_t> dims;
  std::vector<std::vector<std::size_t>> offset;  // offset[k][j], j = 0 is the X part
  std::vector<std::vector<bool>> present;

  std::size_t a_degree(std::size_t k, std::size_t j) const { return k - 2 * j; }
};

BlowupLayout blowup_layout(const GradedSpace<Rational>& x, const GradedSpace<Rational>& a, std::size_t r) {
  BlowupLayout l;
  l.r = r;
  const std::size_t top = 2 * x.n();
  l.dims.assign(top + 1, 0);
  l.offset.assign(top + 1, std::vector<std::size_t>(r, 0));
  l.present.assign(top + 1, std::vector<bool>(r, false));
  for (std::size_t k = 0; k <= top; ++k) {
    l.dims[k] = x.dim(k);
    l.present[k][0] = true;
    for (std::size_t j = 1; j < r; ++j) {
      if (k < 2 * j || k - 2 * j > 2 * a.n()) continue;
      l.present[k][j] = true;
      l.offset[k][j] = l.dims[k];
      l.dims[k] += a.dim(k - 2 * j);
    }
  }
  return l;
}

QMatrix rational_block_companion(const Integer& c, const Integer& norm) {
  QMatrix b(2, 2);
  b(0, 1) = Rational(-norm);
  b(1, 0) = Rational(1);
  b(1, 1) = Rational(c);
  return b;
}

long uniform(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

}  // namespace

QMatrix cayley_orthogonal(const QMatrix& skew) {
  if (!skew.square() || !(skew == QMatrix(-skew.transpose())))
    throw Error(ErrorCode::InvalidArgument, "Cayley transform needs a skew-symmetric matrix");
  const QMatrix id = QMatrix::identity(skew.rows());
  return QMatrix(id - skew) * inverse(QMatrix(id + skew));
}

QBundle abelian_model(std::size_t g, long q, const QMatrix& m1, const std::optional<QMatrix>& endo) {
  if (g == 0) throw Error(ErrorCode::InvalidArgument, "dimension g must be positive");
  if (m1.rows() != 2 * g || !m1.square()) throw Error(ErrorCode::InvalidArgument, "H^1 Frobenius must be 2g x 2g");
  if (!block_is_weil(m1, q, 1)) throw Error(ErrorCode::NotWeil, "H^1 Frobenius has an eigenvalue off |z| = sqrt(q)");
  if (endo) {
    if (endo->rows() != 2 * g || !endo->square()) throw Error(ErrorCode::InvalidArgument, "endo must be 2g x 2g");
    if (!commutes(*endo, m1)) throw Error(ErrorCode::NonCommuting, "endo does not commute with the Frobenius");
  }
  std::vector<std::size_t> dims;
  for (std::size_t k = 0; k <= 2 * g; ++k) dims.push_back(binom(2 * g, k));
  auto space = share(make_space<Rational>(g, dims));
  std::vector<QMatrix> fb, eb;
  for (std::size_t k = 0; k <= 2 * g; ++k) {
    fb.push_back(exterior_power(m1, k));
    if (endo) eb.push_back(exterior_power(*endo, k));
  }
  auto b = finish(space, NumericalStructure<Rational>::identity(space), GradedMap<Rational>(space, std::move(fb)), q,
                  is_semisimple(m1), "abelian(g=" + std::to_string(g) + ", q=" + std::to_string(q) + ")");
  if (endo) {
    b.endos.emplace("endo", GradedMap<Rational>(space, std::move(eb)));
    b.over_fq.insert("endo");
  }
  return b;
}

QBundle abelian_model(std::size_t g, long q, const QPoly& weil_poly, const std::optional<QMatrix>& endo) {
  if (weil_poly.degree() != static_cast<int>(2 * g))
    throw Error(ErrorCode::InvalidArgument, "Weil polynomial must have degree 2g");
  return abelian_model(g, q, companion_matrix(weil_poly), endo);
}

QBundle projective_model(std::size_t n, long q) {
  std::vector<std::size_t> dims;
  std::vector<QMatrix> fb;
  for (std::size_t k = 0; k <= 2 * n; ++k) {
    dims.push_back(k % 2 == 0 ? 1 : 0);
    fb.push_back(k % 2 == 0 ? QMatrix::scalar(1, pow_rational(Rational(q), k / 2)) : QMatrix(0, 0));
  }
  auto space = share(make_space<Rational>(n, dims));
  return finish(space, NumericalStructure<Rational>::identity(space), GradedMap<Rational>(space, std::move(fb)), q,
                true, "projective(n=" + std::to_string(n) + ", q=" + std::to_string(q) + ")");
}

QBundle product_model(const QBundle& x, const QBundle& y) {
  const auto& sx = *x.space;
  const auto& sy = *y.space;
  const KunnethLayout l = kunneth(sx, sy);
  const std::size_t n = l.nx + l.ny, top = 2 * n;

  std::vector<QMatrix> pairings;
  for (std::size_t k = 0; k <= top; ++k) {
    QMatrix p(l.dims[k], l.dims[top - k]);
    for (std::size_t i = l.lo(k); i <= l.hi(k); ++i) {
      const std::size_t ip = 2 * l.nx - i;
      p.set_block(l.offset[k][i], l.offset[top - k][ip], kron(sx.pairing(i), sy.pairing(k - i)));
    }
    pairings.push_back(std::move(p));
  }
  auto space = share(make_space<Rational>(n, l.dims, pairings));

  std::vector<QMatrix> quotients;
  for (std::size_t j = 0; j <= n; ++j) {
    std::vector<QMatrix> rows;
    std::size_t total = 0;
    for (std::size_t a = 0; a <= l.nx; ++a) {
      if (j < a || j - a > l.ny) continue;
      QMatrix qa = kron(x.numerical.quotient(a), y.numerical.quotient(j - a));
      QMatrix r(qa.rows(), l.dims[2 * j]);
      r.set_block(0, l.offset[2 * j][2 * a], qa);
      total += r.rows();
      rows.push_back(std::move(r));
    }
    QMatrix qj(total, l.dims[2 * j]);
    std::size_t at = 0;
    for (const auto& r : rows) {
      qj.set_block(at, 0, r);
      at += r.rows();
    }
    quotients.push_back(std::move(qj));
  }
  NumericalStructure<Rational> ns(space, std::move(quotients),
                                  x.numerical.conjectureD() && y.numerical.conjectureD());

  std::optional<GradedMap<Rational>> frob;
  long base = 0;
  bool semisimple = false;
  if (x.frobenius && y.frobenius && x.frobenius->a == y.frobenius->a) {
    frob = GradedMap<Rational>(space, tensor_blocks(l, x.frobenius->map.blocks(), y.frobenius->map.blocks()));
    base = x.frobenius->a;
    semisimple = x.frobenius->semisimple && y.frobenius->semisimple;
  }
  auto b = finish(space, std::move(ns), std::move(frob), base, semisimple,
                  "product(" + x.provenance + ", " + y.provenance + ")");

  auto ident = [](const QBundle& m) {
    std::vector<QMatrix> id;
    for (std::size_t k = 0; k <= m.space->top(); ++k) id.push_back(QMatrix::identity(m.space->dim(k)));
    return id;
  };
  const auto idx = ident(x), idy = ident(y);
  for (const auto& [nx, fx] : x.endos)
    for (const auto& [ny, fy] : y.endos) {
      std::string name = nx == ny ? nx : nx + "*" + ny;
      b.endos.emplace(name, GradedMap<Rational>(space, tensor_blocks(l, fx.blocks(), fy.blocks())));
      if (x.over_fq.count(nx) && y.over_fq.count(ny)) b.over_fq.insert(name);
    }
  for (const auto& [nx, fx] : x.endos) {
    std::string name = nx + "*id";
    b.endos.emplace(name, GradedMap<Rational>(space, tensor_blocks(l, fx.blocks(), idy)));
    if (x.over_fq.count(nx)) b.over_fq.insert(name);
  }
  for (const auto& [ny, fy] : y.endos) {
    std::string name = "id*" + ny;
    b.endos.emplace(name, GradedMap<Rational>(space, tensor_blocks(l, idx, fy.blocks())));
    if (y.over_fq.count(ny)) b.over_fq.insert(name);
  }
  return b;
}

QBundle blowup_model(const QBundle& x, const QBundle& a, std::size_t r) {
  const auto& sx = *x.space;
  const auto& sa = *a.space;
  if (r < 1 || sx.n() < r || sa.n() != sx.n() - r)
    throw Error(ErrorCode::BadCodimension, "center of dimension " + std::to_string(sa.n()) +
                                               " cannot have codimension " + std::to_string(r) + " in dimension " +
                                               std::to_string(sx.n()));
  const BlowupLayout l = blowup_layout(sx, sa, r);
  const std::size_t n = sx.n(), top = 2 * n;

  std::vector<QMatrix> pairings;
  for (std::size_t k = 0; k <= top; ++k) {
    QMatrix p(l.dims[k], l.dims[top - k]);
    p.set_block(0, 0, sx.pairing(k));
    for (std::size_t j = 1; j < r; ++j) {
      if (!l.present[k][j]) continue;
      p.set_block(l.offset[k][j], l.offset[top - k][r - j], sa.pairing(l.a_degree(k, j)));
    }
    pairings.push_back(std::move(p));
  }
  auto space = share(make_space<Rational>(n, l.dims, pairings));

  auto extend = [&](const std::vector<QMatrix>& fx, const std::vector<QMatrix>& fa, bool twist, long base) {
    std::vector<QMatrix> out;
    for (std::size_t k = 0; k <= top; ++k) {
      QMatrix m(l.dims[k], l.dims[k]);
      m.set_block(0, 0, fx[k]);
      for (std::size_t j = 1; j < r; ++j) {
        if (!l.present[k][j]) continue;
        QMatrix blk = fa[l.a_degree(k, j)];
        if (twist) blk *= pow_rational(Rational(base), j);
        m.set_block(l.offset[k][j], l.offset[k][j], blk);
      }
      out.push_back(std::move(m));
    }
    return out;
  };

  std::vector<QMatrix> quotients;
  for (std::size_t j = 0; j <= n; ++j) {
    std::vector<QMatrix> parts{x.numerical.quotient(j)};
    std::vector<std::size_t> cols{0};
    for (std::size_t i = 1; i < r; ++i) {
      if (!l.present[2 * j][i]) continue;
      parts.push_back(a.numerical.quotient(j - i));
      cols.push_back(l.offset[2 * j][i]);
    }
    std::size_t rows = 0;
    for (const auto& p : parts) rows += p.rows();
    QMatrix qj(rows, l.dims[2 * j]);
    std::size_t at = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      qj.set_block(at, cols[i], parts[i]);
      at += parts[i].rows();
    }
    quotients.push_back(std::move(qj));
  }
  NumericalStructure<Rational> ns(space, std::move(quotients),
                                  x.numerical.conjectureD() && a.numerical.conjectureD());

  std::optional<GradedMap<Rational>> frob;
  long base = 0;
  bool semisimple = false;
  if (x.frobenius && a.frobenius && x.frobenius->a == a.frobenius->a) {
    base = x.frobenius->a;
    frob = GradedMap<Rational>(space, extend(x.frobenius->map.blocks(), a.frobenius->map.blocks(), true, base));
    semisimple = x.frobenius->semisimple && a.frobenius->semisimple;
  }
  auto b = finish(space, std::move(ns), std::move(frob), base, semisimple,
                  "blowup(" + x.provenance + ", " + a.provenance + ", r=" + std::to_string(r) + ")");
  for (const auto& [name, fx] : x.endos) {
    auto it = a.endos.find(name);
    if (it == a.endos.end()) continue;
    b.endos.emplace(name, GradedMap<Rational>(space, extend(fx.blocks(), it->second.blocks(), false, 0)));
    if (x.over_fq.count(name) && a.over_fq.count(name)) b.over_fq.insert(name);
  }
  return b;
}

std::vector<QMatrix> hilb2_swap(const QBundle& x) {
  const auto& sx = *x.space;
  if (sx.n() == 0) throw Error(ErrorCode::BadCodimension, "the diagonal of a point has codimension 0");
  const KunnethLayout kl = kunneth(sx, sx);
  const std::size_t top = 4 * sx.n();
  const auto prod_space = make_space<Rational>(2 * sx.n(), kl.dims);
  const BlowupLayout bl = blowup_layout(prod_space, sx, sx.n());
  std::vector<QMatrix> swaps;
  for (std::size_t k = 0; k <= top; ++k) {
    QMatrix s(bl.dims[k], bl.dims[k]);
    for (std::size_t i = kl.lo(k); i <= kl.hi(k); ++i) {
      const std::size_t j = k - i, di = sx.dim(i), dj = sx.dim(j);
      // e_a (x) e_b in piece (i, j) goes to e_b (x) e_a in piece (j, i); no odd-degree signs.
      for (std::size_t a = 0; a < di; ++a)
        for (std::size_t b = 0; b < dj; ++b)
          s(kl.offset[k][j] + b * di + a, kl.offset[k][i] + a * dj + b) = Rational(1);
    }
    for (std::size_t c = kl.dims[k]; c < bl.dims[k]; ++c) s(c, c) = Rational(1);
    swaps.push_back(std::move(s));
  }
  return swaps;
}

QBundle hilb2_model(const QBundle& x) {
  const auto swaps = hilb2_swap(x);
  const QBundle z = blowup_model(product_model(x, x), x, x.space->n());
  const std::size_t n = z.space->n(), top = 2 * n;

  // Invariant subspace: nullspace of (sigma - I), with a left inverse picking pivot coordinates.
  std::vector<QMatrix> incl, proj;
  std::vector<std::size_t> dims;
  for (std::size_t k = 0; k <= top; ++k) {
    const std::size_t d = z.space->dim(k);
    QMatrix inv = nullspace(QMatrix(swaps[k] - QMatrix::identity(d)));
    QMatrix t = inv.transpose();
    QMatrix basis_rows = t;
    auto pivots = rref(basis_rows);
    QMatrix p(pivots.size(), d);
    for (std::size_t r = 0; r < pivots.size(); ++r) p(r, pivots[r]) = Rational(1);
    // p * inv is invertible; normalize so that p * inv = I.
    QMatrix fix = inverse(QMatrix(p * inv));
    incl.push_back(QMatrix(inv * fix));
    proj.push_back(std::move(p));
    dims.push_back(inv.cols());
  }
  std::vector<QMatrix> pairings;
  for (std::size_t k = 0; k <= top; ++k)
    pairings.push_back(QMatrix(incl[k].transpose() * z.space->pairing(k)) * incl[top - k]);
  auto space = share(make_space<Rational>(n, dims, pairings));

  auto restrict = [&](const GradedMap<Rational>& m) -> std::optional<std::vector<QMatrix>> {
    std::vector<QMatrix> out;
    for (std::size_t k = 0; k <= top; ++k) {
      if (!(QMatrix(swaps[k] * m.block(k)) == QMatrix(m.block(k) * swaps[k]))) return std::nullopt;
      out.push_back(QMatrix(proj[k] * m.block(k)) * incl[k]);
    }
    return out;
  };

  std::vector<QMatrix> quotients;
  for (std::size_t j = 0; j <= n; ++j) {
    QMatrix qj = z.numerical.quotient(j) * incl[2 * j];
    auto pivots = rref(qj);
    quotients.push_back(qj.block(0, 0, pivots.size(), qj.cols()));
  }
  NumericalStructure<Rational> ns(space, std::move(quotients), z.numerical.conjectureD());

  std::optional<GradedMap<Rational>> frob;
  long base = 0;
  bool semisimple = false;
  if (z.frobenius) {
    if (auto blocks = restrict(z.frobenius->map)) {
      frob = GradedMap<Rational>(space, std::move(*blocks));
      base = z.frobenius->a;
      semisimple = z.frobenius->semisimple;
    }
  }
  auto b = finish(space, std::move(ns), std::move(frob), base, semisimple, "hilb2(" + x.provenance + ")");
  for (const auto& [name, f] : z.endos) {
    auto blocks = restrict(f);
    if (!blocks) continue;
    b.endos.emplace(name, GradedMap<Rational>(space, std::move(*blocks)));
    if (z.over_fq.count(name)) b.over_fq.insert(name);
  }
  return b;
}

QBundle random_semisimple_model(std::size_t n, const std::vector<std::size_t>& dims, long base, std::uint64_t seed) {
  if (base < 2) throw Error(ErrorCode::InvalidArgument, "base must be at least 2");
  auto space = share(make_space<Rational>(n, dims));
  std::mt19937_64 rng(seed);
  std::vector<QMatrix> blocks;
  for (std::size_t k = 0; k <= 2 * n; ++k) {
    const std::size_t d = dims[k];
    Integer norm;
    mpz_pow_ui(norm.get_mpz_t(), Integer(base).get_mpz_t(), k);
    Integer root;
    const bool square = mpz_perfect_square_p(norm.get_mpz_t()) != 0;
    if (square) mpz_sqrt(root.get_mpz_t(), norm.get_mpz_t());
    Integer cmax;
    mpz_sqrt(cmax.get_mpz_t(), Integer(4 * norm - 1).get_mpz_t());
    std::vector<QMatrix> parts;
    std::size_t left = d;
    while (left > 0) {
      const bool real = left == 1 || (square && uniform(rng, 0, 2) == 0);
      if (real) {
        if (!square)
          throw Error(ErrorCode::NotRepresentable, "degree " + std::to_string(k) + " needs a real eigenvalue " +
                                                       std::to_string(base) + "^(" + std::to_string(k) + "/2)");
        parts.push_back(QMatrix::scalar(1, Rational(uniform(rng, 0, 1) == 0 ? root : Integer(-root))));
        left -= 1;
      } else {
        const long cm = cmax.fits_slong_p() ? std::min(cmax.get_si(), 1000000L) : 1000000L;
        parts.push_back(rational_block_companion(Integer(uniform(rng, -cm, cm)), norm));
        left -= 2;
      }
    }
    QMatrix diag = block_diag(parts);
    QMatrix skew(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) {
        skew(i, j) = Rational(uniform(rng, -2, 2));
        skew(j, i) = -skew(i, j);
      }
    QMatrix o = cayley_orthogonal(skew);
    blocks.push_back(QMatrix(o * diag) * o.transpose());
  }
  return finish(space, NumericalStructure<Rational>::identity(space), GradedMap<Rational>(space, std::move(blocks)),
                base, true, "random(base=" + std::to_string(base) + ", seed=" + std::to_string(seed) + ")");
}

CBundle random_semisimple_model_complex(std::size_t n, const std::vector<std::size_t>& dims, long base,
                                        std::uint64_t seed) {
  if (base < 2) throw Error(ErrorCode::InvalidArgument, "base must be at least 2");
  auto space = share(make_space<Complex>(n, dims));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<CMatrix> blocks;
  for (std::size_t k = 0; k <= 2 * n; ++k) {
    const auto d = static_cast<Eigen::Index>(dims[k]);
    const double modulus = std::pow(static_cast<double>(base), static_cast<double>(k) / 2.0);
    Eigen::VectorXcd ev(d);
    for (Eigen::Index i = 0; i < d; ++i) ev(i) = std::polar(modulus, angle(rng));
    Eigen::MatrixXcd g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::MatrixXcd u = d == 0 ? g : Eigen::MatrixXcd(Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ());
    blocks.push_back(detail::from_eigen(Eigen::MatrixXcd(u * ev.asDiagonal() * u.adjoint())));
  }
  CBundle b{space, NumericalStructure<Complex>::identity(space), std::nullopt, {}, {},
            "random-complex(base=" + std::to_string(base) + ", seed=" + std::to_string(seed) + ")"};
  GradedMap<Complex> map(space, std::move(blocks));
  if (is_prime_power(base))
    b.frobenius = make_frobenius(base, std::move(map), true);
  else
    b.frobenius = make_polarized(base, std::move(map), true, true);
  return b;
}

QBundle random_abelian_endo_model(std::mt19937_64& rng, std::size_t max_g, long max_entry) {
  static const long primes[] = {2, 3, 5, 7};
  const auto g = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(std::max<std::size_t>(max_g, 1))));
  const long q = primes[uniform(rng, 0, 3)];
  long cmax = 0;
  while ((cmax + 1) * (cmax + 1) < 4 * q) ++cmax;
  const long c = uniform(rng, -cmax, cmax);
  const QMatrix b = rational_block_companion(Integer(c), Integer(q));
  const QMatrix m1 = kron(QMatrix::identity(g), b);
  for (;;) {
    QMatrix x(g, g), y(g, g);
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = 0; j < g; ++j) {
        x(i, j) = Rational(uniform(rng, -2, 2));
        y(i, j) = uniform(rng, 0, 1) == 0 ? Rational(0) : Rational(uniform(rng, -1, 1));
      }
    QMatrix e = kron(x, QMatrix::identity(2)) + kron(y, b);
    bool small = true;
    for (const auto& v : e.data()) small = small && abs(v) <= max_entry;
    if (small) return abelian_model(g, q, m1, e);
  }
}

}  // namespace ddc
