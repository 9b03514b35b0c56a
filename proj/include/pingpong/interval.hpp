#pragma once

// Closed rational intervals. Every operation returns an enclosure of the exact
// image of the operand sets; with rational endpoints the enclosures of +, -, *
// and integer powers are in fact exact.

#include <stdexcept>
#include <string>
#include <vector>

#include "pingpong/rational.hpp"

namespace pingpong {

/// Raised by interval division when the divisor contains zero. Callers are
/// expected to subdivide and retry.
class ZeroDivisorInterval : public std::domain_error {
 public:
  ZeroDivisorInterval() : std::domain_error("interval divisor contains 0") {}
};

class Interval {
 public:
  Interval() = default;
  Interval(const Rational& point) : lo_(point), hi_(point) {}  // NOLINT: implicit by intent
  Interval(const Rational& lo, const Rational& hi) : lo_(lo), hi_(hi) {
    if (lo > hi) throw std::invalid_argument("interval with lower > upper");
  }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational mid() const { return (lo_ + hi_) / 2; }
  Rational mag() const;  // max |x|
  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool contains_zero() const { return lo_ <= 0 && 0 <= hi_; }
  bool is_point() const { return lo_ == hi_; }

  friend Interval operator+(const Interval& a, const Interval& b) { return {a.lo_ + b.lo_, a.hi_ + b.hi_}; }
  friend Interval operator-(const Interval& a, const Interval& b) { return {a.lo_ - b.hi_, a.hi_ - b.lo_}; }
  friend Interval operator-(const Interval& a) { return {-a.hi_, -a.lo_}; }
  friend Interval operator*(const Interval& a, const Interval& b);
  /// Throws ZeroDivisorInterval when b contains 0.
  friend Interval operator/(const Interval& a, const Interval& b);
  friend bool operator==(const Interval& a, const Interval& b) { return a.lo_ == b.lo_ && a.hi_ == b.hi_; }

 private:
  Rational lo_ = 0, hi_ = 0;
};

/// Range of x^k over the interval (even powers are non-negative).
Interval pow(const Interval& x, unsigned k);
Interval hull(const Interval& a, const Interval& b);

using Box = std::vector<Interval>;

Box hull(const Box& a, const Box& b);
bool contains(const Box& outer, const Box& inner);
/// max over coordinates of max |x|.
Rational sup_norm(const Box& b);
std::string to_string(const Interval& x);
std::string to_string(const Box& b);

}  // namespace pingpong
