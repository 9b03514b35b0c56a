#include "pingpong/parabolic.hpp"

#include <cmath>
#include <functional>

#include "pingpong/integer_lattice.hpp"
#include "pingpong/signature.hpp"

namespace pingpong {

QMatrix StabilizerBasis::matrix() const {
  const std::size_t rho = v.size();
  QMatrix p(rho, n() + 2);
  for (std::size_t i = 0; i < rho; ++i) {
    p(i, 0) = v[i];
    for (std::size_t k = 0; k < n(); ++k) p(i, k + 1) = w[k][i];
    p(i, n() + 1) = u[i];
  }
  return p;
}

namespace {

Integer round_nearest(const Rational& q) { return floor(q + Rational(1, 2)); }

void axpy(ZVector& x, const Integer& s, const ZVector& y) {  // x -= s y
  for (std::size_t i = 0; i < x.size(); ++i) x[i] -= s * y[i];
}

// Pairwise size reduction of the w's in the definite form; only strict
// improvements, so it terminates.
void reduce_pairwise(const Lattice& lattice, std::vector<ZVector>& w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = 0; j < w.size(); ++j) {
        if (i == j) continue;
        Rational mu(lattice.pair(w[i], w[j]), lattice.pair(w[j], w[j]));
        mu.canonicalize();
        if (abs(mu) * 2 <= 1) continue;
        axpy(w[i], round_nearest(mu), w[j]);
        changed = true;
      }
  }
}

}  // namespace

StabilizerBasis complete_isotropic_basis(const Lattice& lattice, const Cusp& cusp) {
  const std::size_t rho = lattice.rank();
  const ZVector& v = cusp.v;
  const ZVector a = lattice.gram() * v;  // x -> (x, v)

  // v^perp as a saturated sublattice, then a basis of it starting with v.
  auto kernel = integer_kernel(a);
  ZMatrix K = ZMatrix::from_columns(kernel, rho);
  QMatrix Kq = to_rational(K);
  QVector y = solve(Kq.transpose() * Kq, Kq.transpose() * to_rational(v));
  ZMatrix KY = K * unimodular_with_first_column(to_integer(y));
  if (KY.column(0) != v) throw internal_error("basis completion lost the cusp vector");

  StabilizerBasis basis;
  basis.v = v;
  for (std::size_t k = 1; k < KY.cols(); ++k) basis.w.push_back(KY.column(k));
  reduce_pairwise(lattice, basis.w);

  std::size_t pivot = 0;
  while (v[pivot] == 0) ++pivot;
  for (auto& wk : basis.w) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), wk[pivot].get_mpz_t(), v[pivot].get_mpz_t());
    axpy(wk, q, v);
    std::size_t first = 0;
    while (first < wk.size() && wk[first] == 0) ++first;
    if (first < wk.size() && wk[first] < 0)
      for (auto& x : wk) x = -x;
  }

  basis.u.assign(rho, Rational(0));
  std::size_t unit = rho;
  for (std::size_t k = 0; k < rho && unit == rho; ++k)
    if (a[k] == 1 || a[k] == -1) unit = k;
  if (unit < rho) {
    basis.u[unit] = Rational(1) / Rational(a[unit]);
  } else {
    auto red = gcd_reduce(a);
    for (std::size_t k = 0; k < rho; ++k) basis.u[k] = make_rational(red.transform(0, k), red.gcd);
  }

  const std::size_t n = basis.w.size();
  basis.gram_n = ZMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) basis.gram_n(i, j) = lattice.pair(basis.w[i], basis.w[j]);

  if (lattice.pair(to_rational(v), basis.u) != 1) throw internal_error("(v, u) != 1");
  for (const auto& wk : basis.w)
    if (lattice.pair(wk, v) != 0) throw internal_error("w not orthogonal to v");
  return basis;
}

namespace {

BlockForm decompose_matrix(const ZMatrix& g, const StabilizerBasis& basis) {
  if (g * basis.v != basis.v) throw invalid_input("not in stabilizer: g v != v for v = " + to_string(basis.v));
  const std::size_t n = basis.n();
  QMatrix P = basis.matrix();
  QMatrix M = inverse(P) * to_rational(g) * P;

  if (M(0, 0) != 1) throw internal_error("block form: M[0][0] != 1");
  for (std::size_t i = 1; i < n + 2; ++i)
    if (M(i, 0) != 0) throw internal_error("block form: first column not e_0");
  for (std::size_t j = 0; j <= n; ++j)
    if (M(n + 1, j) != 0) throw internal_error("block form: last row not (0, .., 0, d)");

  BlockForm f;
  f.a.resize(n);
  f.b.resize(n);
  QMatrix A(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    f.a[i] = M(0, i + 1);
    f.b[i] = M(i + 1, n + 1);
    for (std::size_t j = 0; j < n; ++j) A(i, j) = M(i + 1, j + 1);
  }
  try {
    f.A = to_integer(A);
  } catch (const std::domain_error&) {
    throw internal_error("block form: A is not integral");
  }
  f.c = M(0, n + 1);
  f.d = M(n + 1, n + 1);
  if (f.d != 1) throw internal_error("block form: d = " + to_string(f.d) + " != 1");
  return f;
}

ZMatrix power(const ZMatrix& m, Integer e) {
  ZMatrix result = ZMatrix::identity(m.rows()), base = m;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = result * base;
    e /= 2;
    if (e > 0) base = base * base;
  }
  return result;
}

unsigned long euler_phi(unsigned long k) {
  unsigned long result = k;
  for (unsigned long p = 2; p * p <= k; ++p) {
    if (k % p) continue;
    while (k % p == 0) k /= p;
    result -= result / p;
  }
  if (k > 1) result -= result / k;
  return result;
}

}  // namespace

QMatrix BlockForm::assemble() const {
  const std::size_t n = A.rows();
  QMatrix M(n + 2, n + 2);
  M(0, 0) = 1;
  for (std::size_t i = 0; i < n; ++i) {
    M(0, i + 1) = a[i];
    M(i + 1, n + 1) = b[i];
    for (std::size_t j = 0; j < n; ++j) M(i + 1, j + 1) = A(i, j);
  }
  M(0, n + 1) = c;
  M(n + 1, n + 1) = d;
  return M;
}

BlockForm block_decompose(const Isometry& g, const StabilizerBasis& basis) {
  return decompose_matrix(g.matrix(), basis);
}

Integer order_bound(std::size_t n) {
  Integer bound = 1;
  const unsigned long kmax = 2 * n * n + 2;
  for (unsigned long k = 1; k <= kmax; ++k)
    if (euler_phi(k) <= n) bound = lcm(bound, Integer(k));
  return bound;
}

unsigned long finite_order(const ZMatrix& A, const ZMatrix& gram_n) {
  const std::size_t n = A.rows();
  if (!A.square() || gram_n.rows() != n || gram_n.cols() != n)
    throw precondition("finite_order: dimension mismatch");
  if (A.transpose() * gram_n * A != gram_n) throw precondition("finite_order: A does not preserve the form");
  if (signature(to_rational(gram_n)).negative != n) throw precondition("finite_order: form is not negative definite");

  const Integer bound = order_bound(n);
  if (!power(A, bound).is_identity()) throw precondition("input violates preconditions: A^B(n) != I");

  Integer m = bound;
  const unsigned long kmax = 2 * n * n + 2;
  for (unsigned long p = 2; p <= kmax; ++p) {
    bool prime = true;
    for (unsigned long q = 2; q * q <= p; ++q)
      if (p % q == 0) { prime = false; break; }
    if (!prime) continue;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p) && power(A, Integer(m / p)).is_identity()) m /= p;
  }
  if (!m.fits_ulong_p()) throw internal_error("matrix order does not fit in an unsigned long");
  return m.get_ui();
}

TranslationPart translation_part(const Lattice& lattice, const Isometry& g, const StabilizerBasis& basis,
                                 ExponentConvention convention) {
  (void)lattice;
  BlockForm f = block_decompose(g, basis);
  TranslationPart part;
  part.order = finite_order(f.A, basis.gram_n);
  part.power = convention == ExponentConvention::m ? part.order : 2 * part.order;
  part.powered = pingpong::power(g.matrix(), part.power);
  BlockForm pf = decompose_matrix(part.powered, basis);
  if (!pf.A.is_identity()) throw internal_error("g^m has non-trivial A block");
  part.t = pf.b;
  // Trivial translation forces the identity.
  if (is_zero(part.t) && !part.powered.is_identity())
    throw internal_error("translation vanishes but g^m is not the identity");
  return part;
}

ShortestVector shortest_sup_norm(const std::vector<ZVector>& basis) {
  const std::size_t r = basis.size();
  if (r == 0) throw precondition("shortest_sup_norm: empty basis");
  const std::size_t n = basis[0].size();

  auto sup = [](const ZVector& z) {
    Integer m = 0;
    for (const auto& x : z) m = std::max<Integer>(m, abs(x));
    return m;
  };

  ShortestVector best;
  for (std::size_t k = 0; k < r; ++k) {
    Integer s = sup(basis[k]);
    if (k == 0 || s < best.norm) {
      best.norm = s;
      best.coefficients.assign(r, Integer(0));
      best.coefficients[k] = 1;
      best.vector = basis[k];
    }
  }
  if (best.norm == 0) throw precondition("shortest_sup_norm: zero basis vector");

  // y^T Q y = sum_j d_j (y_j + sum_{i>j} L_ij y_i)^2 with Q = B^T B.
  QMatrix Q(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) Q(i, j) = dot(basis[i], basis[j]);
  QMatrix L(r, r);
  QVector d(r);
  for (std::size_t j = 0; j < r; ++j) {
    Rational s = Q(j, j);
    for (std::size_t k = 0; k < j; ++k) s -= L(j, k) * L(j, k) * d[k];
    if (s <= 0) throw precondition("shortest_sup_norm: basis is linearly dependent");
    d[j] = s;
    for (std::size_t i = j + 1; i < r; ++i) {
      Rational t = Q(i, j);
      for (std::size_t k = 0; k < j; ++k) t -= L(i, k) * L(j, k) * d[k];
      L(i, j) = t / d[j];
    }
  }

  Rational radius = Rational(n) * Rational((best.norm - 1) * (best.norm - 1));
  ZVector y(r);
  std::function<void(std::size_t, const Rational&)> descend = [&](std::size_t level, const Rational& used) {
    const std::size_t j = level - 1;
    Rational center = 0;
    for (std::size_t i = j + 1; i < r; ++i) center -= L(i, j) * y[i];
    Rational rem = radius - used;
    if (rem < 0) return;
    double approx = std::sqrt(Rational(rem / d[j]).get_d());
    Integer lo = floor(center - Rational(approx)) - 1, hi = ceil(center + Rational(approx)) + 1;
    while (lo <= hi && d[j] * (lo - center) * (lo - center) > rem) ++lo;
    while (hi >= lo && d[j] * (hi - center) * (hi - center) > rem) --hi;
    for (Integer yj = lo; yj <= hi; ++yj) {
      Rational dev = Rational(yj) - center;
      Rational next = used + d[j] * dev * dev;
      if (next > radius) continue;  // radius may have shrunk
      y[j] = yj;
      if (j == 0) {
        bool nonzero = false;
        for (const auto& yi : y) nonzero = nonzero || yi != 0;
        if (!nonzero) continue;
        ZVector z(n);
        for (std::size_t k = 0; k < r; ++k)
          if (y[k] != 0)
            for (std::size_t i = 0; i < n; ++i) z[i] += y[k] * basis[k][i];
        Integer s = sup(z);
        if (s < best.norm) {
          best = {s, y, z};
          radius = Rational(n) * Rational((s - 1) * (s - 1));
        }
      } else {
        descend(j, next);
      }
    }
    y[j] = 0;
  };
  if (best.norm > 1) descend(r, Rational(0));
  return best;
}

TranslationLattice translation_lattice(const std::vector<TranslationGenerator>& parts, bool compute_lambda) {
  if (parts.empty()) throw precondition("translation_lattice: no generators");
  const std::size_t n = parts[0].t.size();
  TranslationLattice tl;
  tl.generators = parts;
  tl.denominator = 1;
  for (const auto& p : parts) {
    if (p.t.size() != n) throw invalid_input("translation vectors of different dimensions");
    for (const auto& x : p.t) tl.denominator = lcm(tl.denominator, x.get_den());
  }
  std::vector<ZVector> scaled;
  for (const auto& p : parts) {
    ZVector z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = Rational(p.t[i] * tl.denominator).get_num();
    scaled.push_back(std::move(z));
  }
  tl.basis = lattice_basis(scaled, n);
  tl.rank = tl.basis.size();
  if (tl.rank == 0) throw invalid_input("translation rank 0");
  if (!compute_lambda) return tl;
  ShortestVector sv = shortest_sup_norm(tl.basis);
  tl.lambda1 = make_rational(sv.norm, tl.denominator);
  tl.shortest_coefficients = sv.coefficients;
  tl.shortest.resize(n);
  for (std::size_t i = 0; i < n; ++i) tl.shortest[i] = make_rational(sv.vector[i], tl.denominator);
  return tl;
}

SupNormLowerBound sup_norm_lower_bound(const std::vector<QVector>& translations) {
  const std::size_t r = translations.size();
  if (r == 0) throw precondition("sup_norm_lower_bound: no translations");
  const std::size_t n = translations[0].size();
  QMatrix T = QMatrix::from_columns(translations, n);
  if (rank(T) < r) throw invalid_input("translation vectors are linearly dependent");

  auto row_norm = [](const QMatrix& L) {
    Rational worst = 0;
    for (std::size_t i = 0; i < L.rows(); ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < L.cols(); ++j) s += abs(L(i, j));
      worst = std::max(worst, s);
    }
    return worst;
  };

  SupNormLowerBound best;
  Rational best_norm = -1;
  auto consider = [&](const QMatrix& L) {
    Rational nm = row_norm(L);
    if (best_norm < 0 || nm < best_norm) {
      best_norm = nm;
      best.left_inverse = L;
    }
  };

  // Left inverses supported on r rows of T, in lexicographic order of row sets.
  constexpr std::size_t kMaxSubsets = 5000;
  std::vector<std::size_t> rows(r);
  for (std::size_t i = 0; i < r; ++i) rows[i] = i;
  for (std::size_t count = 0; count < kMaxSubsets; ++count) {
    QMatrix S(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) S(i, j) = T(rows[i], j);
    if (determinant(S) != 0) {
      QMatrix Si = inverse(S), L(r, n);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) L(i, rows[j]) = Si(i, j);
      consider(L);
    }
    std::size_t k = r;
    while (k > 0 && rows[k - 1] == n - r + k - 1) --k;
    if (k == 0) break;
    ++rows[k - 1];
    for (std::size_t i = k; i < r; ++i) rows[i] = rows[i - 1] + 1;
  }
  QMatrix Tt = T.transpose();
  consider(inverse(Tt * T) * Tt);

  best.bound = 1 / best_norm;
  return best;
}

}  // namespace pingpong
