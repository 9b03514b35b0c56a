#pragma once

// Sparse multivariate polynomials with rational coefficients and their interval
// extensions.

#include <map>
#include <vector>

#include "pingpong/interval.hpp"
#include "pingpong/matrix.hpp"

namespace pingpong {

class Polynomial {
 public:
  using Exponents = std::vector<unsigned>;

  explicit Polynomial(std::size_t arity = 0) : arity_(arity) {}
  static Polynomial constant(std::size_t arity, const Rational& c);
  static Polynomial variable(std::size_t arity, std::size_t index);

  std::size_t arity() const { return arity_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  void add_term(const Exponents& e, const Rational& c);
  unsigned degree() const;

  Rational evaluate(const QVector& point) const;
  /// Term-wise interval extension; contains the exact range over the box.
  Interval enclose(const Box& domain) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& c, const Polynomial& p);
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

 private:
  std::size_t arity_;
  std::map<Exponents, Rational> terms_;  // no zero coefficients stored
};

using PolyMap = std::vector<Polynomial>;

/// Box containing the image of every point of the domain under the map.
/// Throws std::invalid_argument on arity mismatch.
Box enclose_poly_map(const PolyMap& map, const Box& domain);
QVector evaluate(const PolyMap& map, const QVector& point);

}  // namespace pingpong
