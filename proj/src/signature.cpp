#include "pingpong/signature.hpp"

#include <stdexcept>

namespace pingpong {

Signature signature(const QMatrix& gram) {
  if (!gram.is_symmetric()) throw std::invalid_argument("signature: matrix is not symmetric");
  QMatrix a = gram;
  std::size_t n = a.rows();
  Signature sig;
  // Active block is indices [k, n). Each step either eliminates one diagonal pivot
  // or, when the diagonal vanishes, adds row/column j to row/column i so that the
  // new diagonal entry 2 a_ij is non-zero.
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = n;
    for (std::size_t i = k; i < n; ++i)
      if (a(i, i) != 0) { p = i; break; }
    if (p == n) {
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (a(i, j) != 0) { pi = i; pj = j; break; }
      if (pi == n) {
        sig.zero += n - k;
        return sig;
      }
      for (std::size_t c = k; c < n; ++c) a(pi, c) += a(pj, c);
      for (std::size_t r = k; r < n; ++r) a(r, pi) += a(r, pj);
      p = pi;
    }
    if (p != k) {
      for (std::size_t c = k; c < n; ++c) std::swap(a(p, c), a(k, c));
      for (std::size_t r = k; r < n; ++r) std::swap(a(r, p), a(r, k));
    }
    const Rational d = a(k, k);
    (d > 0 ? sig.positive : sig.negative) += 1;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rational f = a(i, k) / d;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return sig;
}

std::vector<Rational> characteristic_polynomial(const QMatrix& m) {
  if (!m.square()) throw std::invalid_argument("characteristic polynomial of non-square matrix");
  const std::size_t n = m.rows();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  QMatrix mk(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    QMatrix next = m * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = next;
    QMatrix am = m * mk;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / static_cast<long>(k);
  }
  return c;
}

namespace {

std::size_t sign_changes(const std::vector<Rational>& coeffs) {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& x : coeffs) {
    int s = sgn(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

Signature signature_descartes(const QMatrix& gram) {
  if (!gram.is_symmetric()) throw std::invalid_argument("signature: matrix is not symmetric");
  auto c = characteristic_polynomial(gram);
  Signature sig;
  std::size_t z = 0;
  while (z < c.size() && c[z] == 0) ++z;
  std::vector<Rational> reduced(c.begin() + static_cast<long>(z), c.end());
  sig.zero = z;
  sig.positive = sign_changes(reduced);
  for (std::size_t i = 1; i < reduced.size(); i += 2) reduced[i] = -reduced[i];
  sig.negative = sign_changes(reduced);
  return sig;
}

}  // namespace pingpong
