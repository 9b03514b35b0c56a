#pragma once

// Hyperbolic lattices (integral forms of signature (1, rho-1)), their isometries
// and primitive isotropic classes ("cusps") on the boundary of the positive cone.

#include <string>

#include "pingpong/error.hpp"
#include "pingpong/matrix.hpp"

namespace pingpong {

class Lattice {
 public:
  /// Checks symmetry, non-degeneracy, signature (1, rho-1) and (h, h) > 0.
  /// Errors: "not hyperbolic", "anchor not positive", structural mismatches.
  static Lattice validate(ZMatrix gram, ZVector anchor);

  std::size_t rank() const { return gram_.rows(); }
  const ZMatrix& gram() const { return gram_; }
  const QMatrix& rational_gram() const { return qgram_; }
  const QMatrix& inverse_gram() const { return qgram_inv_; }
  const ZVector& anchor() const { return anchor_; }

  Integer pair(const ZVector& x, const ZVector& y) const { return pairing(gram_, x, y); }
  Rational pair(const QVector& x, const QVector& y) const { return pairing(qgram_, x, y); }

 private:
  Lattice(ZMatrix gram, ZVector anchor);
  ZMatrix gram_;
  QMatrix qgram_;
  QMatrix qgram_inv_;
  ZVector anchor_;
};

/// Integer matrix g acting on column vectors with g^T G g = G and det g = +-1.
class Isometry {
 public:
  static Isometry validate(const Lattice& lattice, ZMatrix m);
  const ZMatrix& matrix() const { return m_; }
  /// G^{-1} g^T G, again integral.
  Isometry inverse(const Lattice& lattice) const;
  ZVector apply(const ZVector& x) const { return m_ * x; }
  QVector apply(const QVector& x) const;

 private:
  explicit Isometry(ZMatrix m) : m_(std::move(m)) {}
  ZMatrix m_;
};

/// Primitive isotropic vector v with (v, anchor) > 0.
struct Cusp {
  ZVector v;
  std::string label;
};

/// Primitive, sign-normalized cusp through v. Errors: "not isotropic",
/// "not on positive-cone boundary", zero vector.
Cusp make_cusp(const Lattice& lattice, const ZVector& v, std::string label = {});

}  // namespace pingpong
