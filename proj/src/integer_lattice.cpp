#include "pingpong/integer_lattice.hpp"

#include <algorithm>

namespace pingpong {

GcdReduction gcd_reduce(const ZVector& a_in) {
  const std::size_t n = a_in.size();
  ZVector a = a_in;
  ZMatrix w = ZMatrix::identity(n), winv = ZMatrix::identity(n);

  auto row_sub = [&](std::size_t i, std::size_t k, const Integer& q) {  // row_i -= q row_k
    a[i] -= q * a[k];
    for (std::size_t j = 0; j < n; ++j) w(i, j) -= q * w(k, j);
    for (std::size_t j = 0; j < n; ++j) winv(j, k) += q * winv(j, i);
  };
  auto swap_rows = [&](std::size_t i, std::size_t k) {
    std::swap(a[i], a[k]);
    for (std::size_t j = 0; j < n; ++j) std::swap(w(i, j), w(k, j));
    for (std::size_t j = 0; j < n; ++j) std::swap(winv(j, i), winv(j, k));
  };

  for (;;) {
    std::size_t pivot = n;
    for (std::size_t i = 0; i < n; ++i)
      if (a[i] != 0 && (pivot == n || abs(a[i]) < abs(a[pivot]))) pivot = i;
    if (pivot == n) break;
    bool others = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == pivot || a[i] == 0) continue;
      Integer q;
      mpz_tdiv_q(q.get_mpz_t(), a[i].get_mpz_t(), a[pivot].get_mpz_t());
      row_sub(i, pivot, q);
      if (a[i] != 0) others = true;
    }
    if (!others) {
      if (pivot != 0) swap_rows(0, pivot);
      break;
    }
  }
  if (n > 0 && a[0] < 0) {
    a[0] = -a[0];
    for (std::size_t j = 0; j < n; ++j) w(0, j) = -w(0, j);
    for (std::size_t j = 0; j < n; ++j) winv(j, 0) = -winv(j, 0);
  }
  return {std::move(w), std::move(winv), n ? a[0] : Integer(0)};
}

std::vector<ZVector> integer_kernel(const ZVector& a) {
  auto red = gcd_reduce(a);
  std::vector<ZVector> basis;
  const std::size_t first = red.gcd == 0 ? 0 : 1;
  for (std::size_t r = first; r < a.size(); ++r) basis.push_back(red.transform.row(r));
  return basis;
}

ZMatrix unimodular_with_first_column(const ZVector& y) {
  auto red = gcd_reduce(y);
  if (red.gcd != 1) throw std::invalid_argument("vector " + to_string(y) + " is not primitive");
  return red.inverse;
}

std::vector<ZVector> lattice_basis(const std::vector<ZVector>& gens, std::size_t dim) {
  std::vector<ZVector> cols;
  for (const auto& g : gens) {
    if (g.size() != dim) throw std::invalid_argument("lattice_basis: dimension mismatch");
    cols.push_back(g);
  }
  std::vector<ZVector> basis;
  std::size_t c = 0;  // columns [0, c) are finished echelon columns
  for (std::size_t row = 0; row < dim && c < cols.size(); ++row) {
    for (;;) {
      std::size_t pivot = cols.size();
      for (std::size_t j = c; j < cols.size(); ++j)
        if (cols[j][row] != 0 && (pivot == cols.size() || abs(cols[j][row]) < abs(cols[pivot][row]))) pivot = j;
      if (pivot == cols.size()) break;
      bool others = false;
      for (std::size_t j = c; j < cols.size(); ++j) {
        if (j == pivot || cols[j][row] == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), cols[j][row].get_mpz_t(), cols[pivot][row].get_mpz_t());
        for (std::size_t i = 0; i < dim; ++i) cols[j][i] -= q * cols[pivot][i];
        if (cols[j][row] != 0) others = true;
      }
      if (!others) {
        std::swap(cols[c], cols[pivot]);
        if (cols[c][row] < 0)
          for (auto& x : cols[c]) x = -x;
        ++c;
        break;
      }
    }
  }
  for (std::size_t j = 0; j < c; ++j) basis.push_back(cols[j]);
  return basis;
}

ZVector primitive_part(const ZVector& y) {
  Integer g = content(y);
  if (g == 0) throw std::invalid_argument("zero vector has no primitive part");
  ZVector p(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) p[i] = y[i] / g;
  return p;
}

}  // namespace pingpong
