#include "doctest.h"
#include "oracles.hpp"
#include "pingpong/lattice.hpp"
#include "pingpong/polynomial.hpp"
#include "pingpong/signature.hpp"

using namespace pingpong;

TEST_CASE("rationals stay canonical") {
  Rational q = parse_rational("+4/6");
  CHECK(q.get_num() == 2);
  CHECK(q.get_den() == 3);
  CHECK(parse_rational("-3/2") == Rational(-3, 2));
  CHECK(parse_rational("\xE2\x88\x92" "3/2") == Rational(-3, 2));
  CHECK(to_string(make_rational(6, -4)) == "-3/2");
  CHECK(to_string(Rational(5)) == "5");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(make_rational(1, 0), std::domain_error);
  CHECK(floor(Rational(-3, 2)) == -2);
  CHECK(ceil(Rational(-3, 2)) == -1);
  CHECK(is_integer(make_rational(4, 2)));
}

TEST_CASE("signature of small forms") {
  CHECK(signature(to_rational(ZMatrix{{0, 1}, {1, 0}})) == Signature{1, 1, 0});
  CHECK(signature(to_rational(ZMatrix{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}})) == Signature{1, 2, 0});
  CHECK(signature(to_rational(ZMatrix{{-2, 1}, {1, -2}})) == Signature{0, 2, 0});
  CHECK(signature(to_rational(ZMatrix{{1, 1}, {1, 1}})) == Signature{1, 0, 1});
  CHECK_THROWS(signature(to_rational(ZMatrix{{0, 1}, {2, 0}})));
}

TEST_CASE("J - I has characteristic polynomial (x - 2)(x + 1)^2") {
  auto cp = characteristic_polynomial(to_rational(ZMatrix{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
  // x^3 - 3x - 2
  REQUIRE(cp.size() == 4);
  CHECK(cp[0] == -2);
  CHECK(cp[1] == -3);
  CHECK(cp[2] == 0);
  CHECK(cp[3] == 1);
  CHECK(signature_descartes(to_rational(ZMatrix{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}})) == Signature{1, 2, 0});
}

TEST_CASE("interval operations") {
  Interval a(Rational(-1), Rational(2));
  CHECK(pow(a, 2) == Interval(Rational(0), Rational(4)));
  CHECK(pow(a, 3) == Interval(Rational(-1), Rational(8)));
  CHECK(a * a == Interval(Rational(-2), Rational(4)));
  CHECK(a - a == Interval(Rational(-3), Rational(3)));
  CHECK_THROWS_AS(Interval(1) / a, ZeroDivisorInterval);
  CHECK(Interval(1) / Interval(Rational(2), Rational(4)) == Interval(Rational(1, 4), Rational(1, 2)));
  CHECK_THROWS_AS(Interval(Rational(2), Rational(1)), std::invalid_argument);
  CHECK(a.mag() == 2);
}

TEST_CASE("enclose_poly_map examples") {
  Polynomial x = Polynomial::variable(1, 0);
  SUBCASE("square over [-1, 2] contains [0, 4]") {
    Box b = enclose_poly_map({x * x}, {Interval(Rational(-1), Rational(2))});
    CHECK(b[0].contains(Interval(Rational(0), Rational(4))));
  }
  SUBCASE("affine maps are exact") {
    Box b = enclose_poly_map({x + Polynomial::constant(1, 3)}, {Interval(Rational(0), Rational(1))});
    CHECK(b[0] == Interval(Rational(3), Rational(4)));
  }
  SUBCASE("chart alpha map at x = 1") {
    Box b = enclose_poly_map({x + x * x}, {Interval(Rational(1))});
    CHECK(b[0] == Interval(Rational(2)));
  }
  CHECK_THROWS(enclose_poly_map({x}, {Interval(0), Interval(0)}));
}

TEST_CASE("matrix helpers") {
  QMatrix m = to_rational(ZMatrix{{2, 1}, {1, 1}});
  CHECK(determinant(m) == 1);
  CHECK(inverse(m) == to_rational(ZMatrix{{1, -1}, {-1, 2}}));
  CHECK(rank(to_rational(ZMatrix{{1, 2}, {2, 4}})) == 1);
  auto ns = nullspace(to_rational(ZMatrix{{1, 2}, {2, 4}}));
  REQUIRE(ns.size() == 1);
  CHECK(dot(to_rational(ZMatrix{{1, 2}}).row(0), ns[0]) == 0);
  CHECK(content(ZVector{4, -6, 0}) == 2);
  CHECK_THROWS(inverse(to_rational(ZMatrix{{1, 2}, {2, 4}})));
}

TEST_CASE("lattice validation") {
  CHECK_NOTHROW(Lattice::validate(ZMatrix{{0, 1}, {1, 0}}, ZVector{1, 1}));
  Lattice ee = Lattice::validate(ZMatrix{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, ZVector{1, 1, 1});
  CHECK(ee.pair(ZVector{1, 1, 1}, ZVector{1, 1, 1}) == 6);
  try {
    Lattice::validate(ZMatrix{{-2, 1}, {1, -2}}, ZVector{1, 0});
    FAIL("accepted a definite form");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("not hyperbolic") != std::string::npos);
  }
  try {
    Lattice::validate(ZMatrix{{0, 1}, {1, 0}}, ZVector{1, -1});
    FAIL("accepted a negative anchor");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("anchor not positive") != std::string::npos);
  }
  CHECK_THROWS(Lattice::validate(ZMatrix{{0, 1}, {2, 0}}, ZVector{1, 1}));
  CHECK_THROWS(Lattice::validate(ZMatrix{{1, 0}, {0, 0}}, ZVector{1, 0}));
}

TEST_CASE("isometry validation") {
  Lattice ee = Lattice::validate(ZMatrix{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, ZVector{1, 1, 1});
  Isometry g = Isometry::validate(ee, ZMatrix{{1, 0, 2}, {0, 0, -1}, {0, 1, 2}});
  Isometry gp = Isometry::validate(ee, ZMatrix{{0, 0, -1}, {0, 1, 2}, {1, 0, 2}});
  CHECK(g.apply(ZVector{1, 0, 0}) == ZVector{1, 0, 0});
  CHECK(gp.apply(ZVector{0, 1, 0}) == ZVector{0, 1, 0});
  CHECK((g.matrix() * g.inverse(ee).matrix()).is_identity());
  Lattice h = Lattice::validate(ZMatrix{{0, 1}, {1, 0}}, ZVector{1, 1});
  try {
    Isometry::validate(h, ZMatrix{{2, 0}, {0, 1}});
    FAIL("accepted a non-isometry");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("not an isometry") != std::string::npos);
  }
}

TEST_CASE("make_cusp normalizes") {
  Lattice ee = Lattice::validate(ZMatrix{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, ZVector{1, 1, 1});
  CHECK(make_cusp(ee, ZVector{2, 0, 0}).v == ZVector{1, 0, 0});
  CHECK(make_cusp(ee, ZVector{0, -3, 0}).v == ZVector{0, 1, 0});
  CHECK(make_cusp(ee, ZVector{0, 1, 0}).v == ZVector{0, 1, 0});
  try {
    make_cusp(ee, ZVector{1, 1, 1});
    FAIL("accepted a non-isotropic vector");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("not isotropic") != std::string::npos);
  }
  CHECK_THROWS(make_cusp(ee, ZVector{0, 0, 0}));
}
