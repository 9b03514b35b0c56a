#pragma once

// Integer Moebius maps on the Riemann sphere with exact Gaussian-rational
// points and generalized circles, and the ping-pong certificate for
// <f1^n, f2^n>, f1 = [[1,0],[1,1]], f2 = [[1,1],[0,1]].

#include <optional>
#include <string>
#include <vector>

#include "pingpong/matrix.hpp"

namespace pingpong {

/// 2x2 integer matrix with det = +-1, acting by z -> (az + b) / (cz + d).
class MoebiusMap {
 public:
  MoebiusMap(long a, long b, long c, long d);
  explicit MoebiusMap(ZMatrix m);

  const ZMatrix& matrix() const { return m_; }
  MoebiusMap inverse() const;
  friend MoebiusMap operator*(const MoebiusMap& x, const MoebiusMap& y) { return MoebiusMap(x.m_ * y.m_); }
  friend bool operator==(const MoebiusMap& x, const MoebiusMap& y) { return x.m_ == y.m_; }

 private:
  ZMatrix m_;
};

MoebiusMap moebius_power(const MoebiusMap& m, long k);

struct GaussianPoint {
  Rational re, im;
  bool infinite = false;

  static GaussianPoint infinity() { return {0, 0, true}; }
  bool operator==(const GaussianPoint&) const = default;
};

GaussianPoint moebius_act(const MoebiusMap& m, const GaussianPoint& z);

/// f(z) = A |z|^2 + 2 Re(conj(B) z) + C with B = b_re + i b_im. The circle is
/// f = 0; the region is the open set f < 0 (negative_side) or f > 0.
struct GeneralizedCircle {
  Rational A, b_re, b_im, C;
  bool negative_side = true;

  Rational evaluate(const GaussianPoint& z) const;  // finite z only
  /// Membership of z in the open region; infinity belongs iff the sign of A
  /// matches the side.
  bool contains(const GaussianPoint& z) const;
  /// Equal up to a positive factor (and side).
  bool same_region(const GeneralizedCircle& other) const;
};

/// Open disc |z - c| < r given r^2.
GeneralizedCircle disc(const Rational& cre, const Rational& cim, const Rational& r2);
/// Open half-plane Re z > x0 (right) or Re z < x0 (!right).
GeneralizedCircle vertical_half_plane(const Rational& x0, bool right);

/// Image of the region under m (boundary circle and side).
GeneralizedCircle image_circle(const MoebiusMap& m, const GeneralizedCircle& c);

/// Open-set inclusion for a disc region `inner` inside a disc, a half-plane or
/// the exterior of a disc. Errors: precondition for other shapes.
bool region_contains(const GeneralizedCircle& outer, const GeneralizedCircle& inner);

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

struct MoebiusPingPong {
  long n;
  bool certified = false;
  std::vector<Check> checks;
  std::string conclusion;
  // n = 1: the relation found instead.
  std::vector<std::pair<std::string, int>> witness;  // letters (name, +-1)
  std::optional<ZMatrix> witness_value;
};

/// n >= 2: verifies j(U2 u {P}) in U1, g2^k(U1 u {P}) in U2 for k != 0,
/// P outside U1 u U2 and j g2 j = g1, with U1 = {|z| < 1},
/// U2 = {|Re z| > 1} u {inf}, P = 2i. n = 1 returns the relation.
/// Errors: precondition for n < 1.
MoebiusPingPong verify_moebius_pingpong(long n);

struct Psl2Witness {
  std::vector<std::pair<std::string, int>> letters;
  std::size_t syllables;
  std::vector<ZMatrix> trace;  // prefix products
  ZMatrix product;
};

/// (f2 f1^-1 f2)^2 = -I.
Psl2Witness psl2_witness();

MoebiusMap f1(long n = 1);
MoebiusMap f2(long n = 1);
MoebiusMap swap_map();  // j = [[0,1],[1,0]]

}  // namespace pingpong
