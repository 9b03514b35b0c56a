#include "doctest.h"
#include "pingpong/moebius.hpp"

using namespace pingpong;

TEST_CASE("moebius action on points") {
  MoebiusMap j = swap_map();
  GaussianPoint P{0, 2};
  GaussianPoint jp = moebius_act(j, P);
  CHECK(jp == GaussianPoint{0, Rational(-1, 2)});
  CHECK(disc(0, 0, 1).contains(jp));
  CHECK(moebius_act(f2(2), GaussianPoint{0, 0}) == GaussianPoint{2, 0});
  CHECK(moebius_act(j, GaussianPoint::infinity()) == GaussianPoint{0, 0});
  CHECK(moebius_act(j, GaussianPoint{0, 0}).infinite);
  CHECK(moebius_act(f1(3), GaussianPoint::infinity()) == GaussianPoint{Rational(1, 3), 0});
  CHECK_THROWS(MoebiusMap(2, 0, 0, 1));
}

TEST_CASE("images of generalized circles") {
  MoebiusMap j = swap_map();
  GeneralizedCircle im = image_circle(j, vertical_half_plane(1, true));
  CHECK(im.same_region(disc(Rational(1, 2), 0, Rational(1, 4))));
  GeneralizedCircle t = image_circle(f2(2), disc(0, 0, 1));
  CHECK(t.same_region(disc(2, 0, 1)));
  GeneralizedCircle inv = image_circle(j, disc(0, 0, 1));
  GeneralizedCircle outside = disc(0, 0, 1);
  outside.negative_side = false;
  CHECK(inv.same_region(outside));
  CHECK_FALSE(inv.same_region(disc(0, 0, 1)));
}

TEST_CASE("region inclusion") {
  GeneralizedCircle U1 = disc(0, 0, 1);
  CHECK(region_contains(U1, disc(Rational(1, 2), 0, Rational(1, 4))));
  CHECK_FALSE(region_contains(U1, disc(Rational(1, 2), 0, Rational(9, 16))));
  CHECK(region_contains(vertical_half_plane(1, true), disc(2, 0, 1)));
  CHECK_FALSE(region_contains(vertical_half_plane(1, true), disc(Rational(3, 2), 0, 1)));
  CHECK(region_contains(vertical_half_plane(-1, false), disc(-2, 0, 1)));
  GeneralizedCircle outside = disc(0, 0, 1);
  outside.negative_side = false;
  CHECK(region_contains(outside, disc(3, 0, 1)));
  CHECK_FALSE(region_contains(outside, disc(Rational(3, 2), 0, 1)));
  CHECK_THROWS(region_contains(U1, vertical_half_plane(1, true)));
}

TEST_CASE("ping-pong for <f1^n, f2^n>") {
  for (long n : {2L, 3L, 4L, 5L}) {
    CAPTURE(n);
    MoebiusPingPong r = verify_moebius_pingpong(n);
    CHECK(r.certified);
    for (const auto& c : r.checks) {
      CAPTURE(c.name);
      CHECK(c.passed);
    }
    CHECK(r.witness.empty());
  }
  MoebiusPingPong one = verify_moebius_pingpong(1);
  CHECK_FALSE(one.certified);
  CHECK(one.witness.size() == 6);
  REQUIRE(one.witness_value);
  CHECK(*one.witness_value == ZMatrix{{-1, 0}, {0, -1}});
  CHECK_THROWS(verify_moebius_pingpong(0));
}

TEST_CASE("the PSL(2, Z) relation") {
  Psl2Witness w = psl2_witness();
  CHECK(w.letters.size() == 6);
  CHECK(w.syllables == 5);
  REQUIRE(w.trace.size() == 6);
  CHECK(w.trace[2] == ZMatrix{{0, 1}, {-1, 0}});
  CHECK(w.product == ZMatrix{{-1, 0}, {0, -1}});
  CHECK_FALSE(w.product.is_identity());
  CHECK(MoebiusMap(w.product) == MoebiusMap(-1, 0, 0, -1));
}

TEST_CASE("conjugation identity and generation") {
  MoebiusMap j = swap_map();
  for (long n = -4; n <= 6; ++n) CHECK(j * f2(n) * j == f1(n));
  // S = f2 f1^-1 f2 and T = f2.
  CHECK(f2() * f1().inverse() * f2() == MoebiusMap(0, 1, -1, 0));
  CHECK(f2() * f1().inverse() * f2() * f2() * f1().inverse() * f2() * f2() * f1().inverse() * f2() *
            f2() * f1().inverse() * f2() ==
        MoebiusMap(1, 0, 0, 1));
  CHECK(moebius_power(f2(), -3) == MoebiusMap(1, -3, 0, 1));
  CHECK(moebius_power(f1(2), 0) == MoebiusMap(1, 0, 0, 1));
}
