#include "pingpong/moebius.hpp"

#include "pingpong/error.hpp"

namespace pingpong {

MoebiusMap::MoebiusMap(long a, long b, long c, long d) : MoebiusMap(ZMatrix{{a, b}, {c, d}}) {}

MoebiusMap::MoebiusMap(ZMatrix m) : m_(std::move(m)) {
  if (m_.rows() != 2 || m_.cols() != 2) throw invalid_input("Moebius map must be 2x2");
  Integer det = determinant(m_);
  if (det != 1 && det != -1) throw invalid_input("Moebius map must have det +-1, got " + to_string(det));
}

MoebiusMap MoebiusMap::inverse() const {
  Integer det = determinant(m_);
  ZMatrix inv(2, 2);
  inv(0, 0) = m_(1, 1) * det;
  inv(0, 1) = -m_(0, 1) * det;
  inv(1, 0) = -m_(1, 0) * det;
  inv(1, 1) = m_(0, 0) * det;
  return MoebiusMap(std::move(inv));
}

MoebiusMap moebius_power(const MoebiusMap& m, long k) {
  MoebiusMap base = k < 0 ? m.inverse() : m;
  return MoebiusMap(power(base.matrix(), static_cast<unsigned long>(k < 0 ? -k : k)));
}

MoebiusMap f1(long n) { return MoebiusMap(1, 0, n, 1); }
MoebiusMap f2(long n) { return MoebiusMap(1, n, 0, 1); }
MoebiusMap swap_map() { return MoebiusMap(0, 1, 1, 0); }

GaussianPoint moebius_act(const MoebiusMap& mm, const GaussianPoint& z) {
  const ZMatrix& m = mm.matrix();
  const Rational a(m(0, 0)), b(m(0, 1)), c(m(1, 0)), d(m(1, 1));
  if (z.infinite) {
    if (c == 0) return GaussianPoint::infinity();
    return {a / c, 0};
  }
  Rational nre = a * z.re + b, nim = a * z.im;
  Rational dre = c * z.re + d, dim = c * z.im;
  Rational den = dre * dre + dim * dim;
  if (den == 0) return GaussianPoint::infinity();
  // (nre + i nim) / (dre + i dim)
  return {(nre * dre + nim * dim) / den, (nim * dre - nre * dim) / den};
}

Rational GeneralizedCircle::evaluate(const GaussianPoint& z) const {
  if (z.infinite) throw precondition("evaluate: point at infinity");
  return A * (z.re * z.re + z.im * z.im) + 2 * (b_re * z.re + b_im * z.im) + C;
}

bool GeneralizedCircle::contains(const GaussianPoint& z) const {
  if (z.infinite) return negative_side ? A < 0 : A > 0;
  Rational f = evaluate(z);
  return negative_side ? f < 0 : f > 0;
}

namespace {

// Coefficients of the same region written as {f < 0}.
GeneralizedCircle normalized(const GeneralizedCircle& c) {
  if (c.negative_side) return c;
  return {-c.A, -c.b_re, -c.b_im, -c.C, true};
}

}  // namespace

bool GeneralizedCircle::same_region(const GeneralizedCircle& other) const {
  GeneralizedCircle x = normalized(*this), y = normalized(other);
  const Rational xs[] = {x.A, x.b_re, x.b_im, x.C}, ys[] = {y.A, y.b_re, y.b_im, y.C};
  std::optional<Rational> factor;
  for (int k = 0; k < 4; ++k) {
    if ((xs[k] == 0) != (ys[k] == 0)) return false;
    if (xs[k] == 0) continue;
    Rational f = ys[k] / xs[k];
    if (f <= 0 || (factor && *factor != f)) return false;
    factor = f;
  }
  return factor.has_value();
}

GeneralizedCircle disc(const Rational& cre, const Rational& cim, const Rational& r2) {
  if (r2 <= 0) throw precondition("disc radius must be positive");
  return {1, -cre, -cim, cre * cre + cim * cim - r2, true};
}

GeneralizedCircle vertical_half_plane(const Rational& x0, bool right) {
  // right: -2 Re z + 2 x0 < 0; left: 2 Re z - 2 x0 < 0.
  return right ? GeneralizedCircle{0, -1, 0, 2 * x0, true} : GeneralizedCircle{0, 1, 0, -2 * x0, true};
}

GeneralizedCircle image_circle(const MoebiusMap& mm, const GeneralizedCircle& c) {
  // z = N w with N = adj(m); f(z) |r w + s|^2 = (N^T H N)(w).
  const ZMatrix& m = mm.matrix();
  const Rational p(m(1, 1)), q(-m(0, 1)), r(-m(1, 0)), s(m(0, 0));
  GeneralizedCircle out;
  out.A = p * p * c.A + 2 * p * r * c.b_re + r * r * c.C;
  out.b_re = p * q * c.A + (p * s + r * q) * c.b_re + r * s * c.C;
  out.b_im = (p * s - r * q) * c.b_im;
  out.C = q * q * c.A + 2 * q * s * c.b_re + s * s * c.C;
  out.negative_side = c.negative_side;
  return out;
}

bool region_contains(const GeneralizedCircle& outer_in, const GeneralizedCircle& inner_in) {
  GeneralizedCircle outer = normalized(outer_in), inner = normalized(inner_in);
  if (inner.A <= 0) throw precondition("region_contains: inner region must be a disc");
  // Inner disc: centre c1 = -B/A, radius^2 rho1.
  const Rational c1re = -inner.b_re / inner.A, c1im = -inner.b_im / inner.A;
  const Rational rho1 =
      (inner.b_re * inner.b_re + inner.b_im * inner.b_im - inner.A * inner.C) / (inner.A * inner.A);
  if (rho1 <= 0) return true;  // empty
  if (outer.A == 0) {
    // sup of L over the disc is L(c1) + 2 |B| r1.
    Rational L = 2 * (outer.b_re * c1re + outer.b_im * c1im) + outer.C;
    Rational B2 = outer.b_re * outer.b_re + outer.b_im * outer.b_im;
    if (B2 == 0) return outer.C < 0;
    return L <= 0 && L * L >= 4 * B2 * rho1;
  }
  const Rational c2re = -outer.b_re / outer.A, c2im = -outer.b_im / outer.A;
  const Rational rho2 =
      (outer.b_re * outer.b_re + outer.b_im * outer.b_im - outer.A * outer.C) / (outer.A * outer.A);
  const Rational d2 = (c1re - c2re) * (c1re - c2re) + (c1im - c2im) * (c1im - c2im);
  if (outer.A > 0) {
    if (rho2 <= 0) return false;
    // d + r1 <= r2  <=>  rho2 - rho1 - d^2 >= 2 d r1.
    Rational e = rho2 - rho1 - d2;
    return e >= 0 && e * e >= 4 * d2 * rho1;
  }
  if (rho2 <= 0) return true;  // exterior of an empty disc: whole plane
  // d >= r1 + r2  <=>  d^2 - rho1 - rho2 >= 2 r1 r2.
  Rational e = d2 - rho1 - rho2;
  return e >= 0 && e * e >= 4 * rho1 * rho2;
}

namespace {

std::string point_string(const GaussianPoint& z) {
  if (z.infinite) return "inf";
  return to_string(z.re) + (z.im < 0 ? " - " : " + ") + to_string(abs(z.im)) + "i";
}

std::string circle_string(const GeneralizedCircle& c) {
  return "A=" + to_string(c.A) + " B=" + to_string(c.b_re) + (c.b_im < 0 ? "" : "+") + to_string(c.b_im) +
         "i C=" + to_string(c.C) + (c.negative_side ? " (f<0)" : " (f>0)");
}

}  // namespace

Psl2Witness psl2_witness() {
  Psl2Witness w;
  w.letters = {{"f2", 1}, {"f1", -1}, {"f2", 1}, {"f2", 1}, {"f1", -1}, {"f2", 1}};
  ZMatrix acc = ZMatrix::identity(2);
  for (const auto& [name, e] : w.letters) {
    MoebiusMap g = name == "f1" ? f1() : f2();
    acc = acc * (e > 0 ? g : g.inverse()).matrix();
    w.trace.push_back(acc);
  }
  w.syllables = 0;
  for (std::size_t i = 0; i < w.letters.size(); ++i)
    if (i == 0 || w.letters[i] != w.letters[i - 1]) ++w.syllables;
  w.product = acc;
  return w;
}

MoebiusPingPong verify_moebius_pingpong(long n) {
  if (n < 1) throw precondition("verify_moebius_pingpong: n >= 1 required");
  MoebiusPingPong res;
  res.n = n;
  const std::string N = std::to_string(n);
  if (n == 1) {
    Psl2Witness w = psl2_witness();
    res.witness = w.letters;
    res.witness_value = w.product;
    ZMatrix neg{{-1, 0}, {0, -1}};
    res.checks.push_back({"(f2 f1^-1 f2)^2 = -I", w.product == neg, ""});
    res.conclusion = "<f1, f2> has the relation (f2 f1^-1 f2)^2 = -I and is not <f1> * <f2>";
    return res;
  }

  const MoebiusMap g1 = f1(n), g2 = f2(n), j = swap_map();
  const GeneralizedCircle U1 = disc(0, 0, 1);
  const GeneralizedCircle right = vertical_half_plane(1, true), left = vertical_half_plane(-1, false);
  const GaussianPoint P{0, 2};
  auto in_U2 = [&](const GaussianPoint& z) { return z.infinite || right.contains(z) || left.contains(z); };
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    res.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  add("j g2 j = g1", j * g2 * j == g1);
  for (const auto& [label, half] : {std::pair{"Re z > 1", right}, std::pair{"Re z < -1", left}}) {
    GeneralizedCircle im = image_circle(j, half);
    add(std::string("j({") + label + "}) in U1", region_contains(U1, im), circle_string(im));
  }
  GaussianPoint j_inf = moebius_act(j, GaussianPoint::infinity()), j_P = moebius_act(j, P);
  add("j(inf) in U1", U1.contains(j_inf), point_string(j_inf));
  add("j(P) in U1", U1.contains(j_P), point_string(j_P));

  // Monotonicity: g2^k(U1) is the unit disc about kn, which lies in
  // {|Re z| > 1} iff |k| n >= 2; so k = +-1 covers every k != 0.
  add("|k| n >= 2 for all k != 0", n >= 2, "n = " + N);
  for (long k : {1L, -1L, 2L, -2L, 3L, -3L}) {
    MoebiusMap gk = moebius_power(g2, k);
    GeneralizedCircle im = image_circle(gk, U1);
    const std::string K = std::to_string(k);
    add("g2^" + K + "(U1) is the unit disc about " + std::to_string(k * n),
        im.same_region(disc(Rational(k * n), 0, 1)), circle_string(im));
    add("g2^" + K + "(U1) in U2", region_contains(k > 0 ? right : left, im));
    GaussianPoint gp = moebius_act(gk, P);
    add("g2^" + K + "(P) in U2", in_U2(gp), point_string(gp));
  }
  add("P not in U1", !U1.contains(P));
  add("P not in U2", !in_U2(P));

  res.certified = true;
  for (const auto& c : res.checks) res.certified = res.certified && c.passed;
  res.conclusion = res.certified ? "<f1^" + N + ", f2^" + N + "> = <f1^" + N + "> * <f2^" + N + "> = Z * Z"
                                 : "checks failed for n = " + N;
  return res;
}

}  // namespace pingpong
