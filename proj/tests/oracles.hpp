#pragma once

// Test-side reference computations, written without the library's linear
// algebra so that results can be checked against something independent.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "pingpong/matrix.hpp"

namespace oracle {

using pingpong::Integer;
using pingpong::QMatrix;
using pingpong::QVector;
using pingpong::Rational;
using pingpong::ZMatrix;
using pingpong::ZVector;

inline QMatrix to_q(const ZMatrix& m) {
  QMatrix q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = Rational(m(i, j));
  return q;
}

inline QVector to_q(const ZVector& v) {
  QVector q;
  for (const auto& x : v) q.emplace_back(x);
  return q;
}

inline QMatrix mul(const QMatrix& a, const QMatrix& b) {
  QMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

/// Gauss-Jordan on [m | I]; nullopt when singular.
inline std::optional<QMatrix> gauss_inverse(const QMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
    a[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a[p][col] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[col]);
    Rational inv = 1 / a[col][col];
    for (auto& x : a[col]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (std::size_t k = 0; k < 2 * n; ++k) a[r][k] -= f * a[col][k];
    }
  }
  QMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = a[i][n + j];
  return out;
}

inline QVector apply(const QMatrix& m, const QVector& x) {
  QVector y(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k) y[i] += m(i, k) * x[k];
  return y;
}

inline Rational form(const QMatrix& g, const QVector& x, const QVector& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * g(i, j) * y[j];
  return s;
}

inline Rational sup(const QVector& v) {
  Rational m = 0;
  for (const auto& x : v) m = std::max(m, Rational(abs(x)));
  return m;
}

/// Euler phi by trial division.
inline unsigned long phi(unsigned long k) {
  unsigned long r = k, n = k;
  for (unsigned long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      r -= r / p;
    }
  if (n > 1) r -= r / n;
  return r;
}

/// lcm{k : phi(k) <= n}; phi(k) >= sqrt(k / 2), so k <= 2 n^2 + 2 suffices.
inline Integer order_bound(std::size_t n) {
  Integer l = 1;
  for (unsigned long k = 1; k <= 2 * n * n + 2; ++k)
    if (phi(k) <= n) l = lcm(l, Integer(k));
  return l;
}

/// min over non-zero |e_k| <= box of ||sum e_k b_k||_inf.
inline Rational brute_shortest(const std::vector<QVector>& basis, long box) {
  const std::size_t r = basis.size();
  std::vector<long> e(r, -box);
  std::optional<Rational> best;
  for (;;) {
    bool nonzero = false;
    for (long x : e) nonzero |= x != 0;
    if (nonzero) {
      QVector s(basis[0].size());
      for (std::size_t k = 0; k < r; ++k)
        for (std::size_t i = 0; i < s.size(); ++i) s[i] += Rational(e[k]) * basis[k][i];
      Rational n = sup(s);
      if (!best || n < *best) best = n;
    }
    std::size_t k = 0;
    while (k < r && e[k] == box) e[k++] = -box;
    if (k == r) break;
    ++e[k];
  }
  return *best;
}

inline Rational random_rational(std::mt19937_64& rng, long num_range, long den_max) {
  std::uniform_int_distribution<long> num(-num_range, num_range), den(1, den_max);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline Rational uniform_rational(std::mt19937_64& rng, const Rational& lo, const Rational& hi, long steps) {
  std::uniform_int_distribution<long> k(0, steps);
  Rational t(k(rng), steps);
  t.canonicalize();
  return lo + (hi - lo) * t;
}

inline ZMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int moves) {
  ZMatrix m = ZMatrix::identity(n);
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int t = 0; t < moves; ++t) {
    std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    Integer c = coef(rng);
    for (std::size_t k = 0; k < n; ++k) m(i, k) += c * m(j, k);
  }
  return m;
}

}  // namespace oracle
