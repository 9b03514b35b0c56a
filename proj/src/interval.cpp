#include "pingpong/interval.hpp"

#include <algorithm>

namespace pingpong {

Rational Interval::mag() const { return std::max(abs(lo_), abs(hi_)); }

Interval operator*(const Interval& a, const Interval& b) {
  Rational p[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw ZeroDivisorInterval();
  return a * Interval(1 / b.hi_, 1 / b.lo_);
}

Interval pow(const Interval& x, unsigned k) {
  if (k == 0) return Interval(1);
  Rational lo = 1, hi = 1;
  for (unsigned i = 0; i < k; ++i) {
    lo *= x.lo();
    hi *= x.hi();
  }
  if (k % 2 == 1) return {lo, hi};
  if (x.contains_zero()) return {0, std::max(lo, hi)};
  return {std::min(lo, hi), std::max(lo, hi)};
}

Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

Box hull(const Box& a, const Box& b) {
  if (a.size() != b.size()) throw std::invalid_argument("box hull: dimension mismatch");
  Box h(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) h[i] = hull(a[i], b[i]);
  return h;
}

bool contains(const Box& outer, const Box& inner) {
  if (outer.size() != inner.size()) return false;
  for (std::size_t i = 0; i < outer.size(); ++i)
    if (!outer[i].contains(inner[i])) return false;
  return true;
}

Rational sup_norm(const Box& b) {
  Rational m = 0;
  for (const auto& x : b) m = std::max(m, x.mag());
  return m;
}

std::string to_string(const Interval& x) { return "[" + to_string(x.lo()) + ", " + to_string(x.hi()) + "]"; }

std::string to_string(const Box& b) {
  std::string out = "(";
  for (std::size_t i = 0; i < b.size(); ++i) out += (i ? ", " : "") + to_string(b[i]);
  return out + ")";
}

}  // namespace pingpong
