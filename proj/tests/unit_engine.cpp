#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "pingpong/words.hpp"

using namespace pingpong;

TEST_CASE("players of the rank-3 problem") {
  auto players = fixture::ee_players();
  for (const auto& p : players) {
    CHECK(p.rank() == 1);
    CHECK(p.translations.lambda1 == 1);
    CHECK(p.ell == 1);
    CHECK(p.independent);
    CHECK(p.parts[0].order == 1);
  }
  CHECK(players[0].cusp.v == ZVector{1, 0, 0});
  CHECK(players[1].cusp.v == ZVector{0, 1, 0});
}

TEST_CASE("cusp inference and player validation") {
  Lattice ee = fixture::ee_lattice();
  Player p = build_player(ee, PlayerSpec{"g", std::nullopt, {fixture::g_matrix()}});
  CHECK(p.cusp.v == ZVector{1, 0, 0});

  try {
    build_player(ee, PlayerSpec{"x", ZVector{0, 1, 0}, {fixture::g_matrix()}});
    FAIL("accepted a generator that moves the cusp");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("does not fix the cusp") != std::string::npos);
  }
  try {
    build_player(ee, PlayerSpec{"x", std::nullopt, {fixture::g_matrix(), fixture::gp_matrix()}});
    FAIL("accepted non-commuting generators");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("commute") != std::string::npos);
  }
  try {
    build_player(ee, PlayerSpec{"id", ZVector{1, 0, 0}, {ZMatrix::identity(3)}});
    FAIL("accepted a player without translations");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("translation rank 0") != std::string::npos);
  }
}

TEST_CASE("minimal exponents") {
  CHECK(minimal_exponent(Rational(1), Rational(7)) == 8);
  CHECK(minimal_exponent(Rational(1, 3), Rational(3)) == 10);
  CHECK(minimal_exponent(Rational(1), Rational(1, 2)) == 1);
  CHECK_THROWS(minimal_exponent(Rational(0), Rational(3)));
}

TEST_CASE("verify_pingpong on the rank-3 players") {
  Lattice ee = fixture::ee_lattice();
  auto players = fixture::ee_players();
  SpherePoint p = default_basepoint(players);
  Table table{default_radii(players, p), p};

  VerifyResult r = verify_pingpong(ee, players, table);
  REQUIRE(std::holds_alternative<Certificate>(r));
  const Certificate& cert = std::get<Certificate>(r);
  CHECK(cert.conclusion == "Z * Z");
  for (const auto& rec : cert.players) CHECK(rec.exponent >= 2);
  for (const auto& inc : cert.inclusions) CHECK(inc.lhs > inc.rhs);

  VerifyOptions ones;
  ones.exponents = std::vector<Integer>{1, 1};
  CHECK(std::holds_alternative<Refuted>(verify_pingpong(ee, players, table, ones)));

  CHECK_THROWS(verify_pingpong(ee, {players[0]}, Table{{Rational(2)}, p}));
}

TEST_CASE("certify the bundled rank-3 problem") {
  auto r = certify_free_product(fixture::ee_problem());
  REQUIRE(std::holds_alternative<Certificate>(r));
  const Certificate& cert = std::get<Certificate>(r);
  CHECK(cert.conclusion == "Z * Z");
  CHECK(cert.caveat == kLiftCaveat);
  CHECK(cert.input_digest == problem_digest(fixture::ee_problem()));
  for (const auto& rec : cert.players) CHECK(rec.exponent >= 2);
  RecheckResult rc = recheck(cert);
  CHECK(rc.ok);
  CHECK(rc.failures.empty());

  CertifyOptions two_m;
  two_m.convention = ExponentConvention::two_m;
  auto r2 = certify_free_product(fixture::ee_problem(), two_m);
  REQUIRE(std::holds_alternative<Certificate>(r2));
  CHECK(std::get<Certificate>(r2).players[0].powers[0] == 2);
  CHECK(recheck(std::get<Certificate>(r2)).ok);
}

TEST_CASE("certify reports the failing stage") {
  Problem p = fixture::ee_problem();
  p.players.resize(1);
  try {
    certify_free_product(p);
    FAIL("certified a single player");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("s >= 2") != std::string::npos);
  }

  Problem deg;
  deg.gram = ZMatrix{{0, 1}, {1, 0}};
  deg.anchor = {1, 1};
  deg.players.push_back({"a", ZVector{1, 0}, {ZMatrix::identity(2)}});
  deg.players.push_back({"b", ZVector{0, 1}, {ZMatrix::identity(2)}});
  try {
    certify_free_product(deg);
    FAIL("certified a degenerate problem");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("translation rank 0") != std::string::npos);
    CHECK(e.stage() == "players");
  }
}

TEST_CASE("a rank-2 isometry fixing a cusp is trivial") {
  // g e1 = e1 and g preserving [[0,1],[1,0]] force g e2 = a e1 + e2 with 2a = 0.
  Lattice h = Lattice::validate(ZMatrix{{0, 1}, {1, 0}}, ZVector{1, 1});
  for (long a = -3; a <= 3; ++a) {
    ZMatrix g{{1, a}, {0, 1}};
    bool iso = g.transpose() * h.gram() * g == h.gram();
    CHECK(iso == (a == 0));
  }
}

TEST_CASE("free-product conclusion text") {
  CHECK(free_product_conclusion({1, 1}) == "Z * Z");
  CHECK(free_product_conclusion({2, 1, 3}) == "Z^2 * Z * Z^3");
}

TEST_CASE("digest is stable and sensitive") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  Problem p = fixture::ee_problem();
  std::string d = problem_digest(p);
  CHECK(d.size() == 16);
  p.players[0].name = "h";
  CHECK(problem_digest(p) != d);
}

TEST_CASE("reduce_word examples") {
  std::vector<std::size_t> ranks{1, 1};
  Word w1{{0, {1}}, {0, {-1}}};
  CHECK(reduce_word(w1, ranks).empty());
  Word w2{{0, {1}}, {1, {1}}, {1, {1}}};
  CHECK(reduce_word(w2, ranks) == Word{{0, {1}}, {1, {2}}});
  Word w3{{0, {1}}, {1, {1}}, {1, {-1}}, {0, {1}}};
  CHECK(reduce_word(w3, ranks) == Word{{0, {2}}});
  CHECK_THROWS(reduce_word(Word{{2, {1}}}, ranks));
  CHECK_THROWS(reduce_word(Word{{0, {1, 1}}}, ranks));
  CHECK(letter_count(Word{{0, {2}}, {1, {-3}}}) == 5);
}

TEST_CASE("falsifier finds (g' g^-1 g')^2 up to conjugation") {
  auto players = fixture::ee_players(false);
  WordGroup group = make_word_group(players, {1, 1});
  // The relation itself, evaluated exactly.
  Word s{{1, {1}}, {0, {-1}}, {1, {2}}, {0, {-1}}, {1, {1}}};
  CHECK(group.evaluate(s).is_identity());

  FalsifyOptions opts;
  opts.max_syllables = 6;
  FalsifyResult r = falsify_relations(group, opts);
  REQUIRE(r.witness);
  CHECK(r.value.is_identity());
  CHECK(group.evaluate(*r.witness).is_identity());
  CHECK(r.witness->size() <= 6);
  CHECK(to_string(*r.witness, group) == "g^1 g'^-2 g^1 g'^-2");
}

TEST_CASE("falsifier on a single player or certified exponents") {
  auto players = fixture::ee_players(false);
  WordGroup solo({"g"}, {{players[0].powered(0)}});
  FalsifyOptions opts;
  opts.max_syllables = 8;
  opts.exponent_box = 3;
  FalsifyResult none = falsify_relations(solo, opts);
  CHECK_FALSE(none.witness);

  WordGroup free = make_word_group(players, {4, 4});
  FalsifyOptions o8;
  o8.max_syllables = 8;
  FalsifyResult fr = falsify_relations(free, o8);
  CHECK_FALSE(fr.witness);
  CHECK(fr.completed_length == 8);

  FalsifyOptions tiny;
  tiny.max_syllables = 10;
  tiny.budget = 50;
  FalsifyResult ex = falsify_relations(free, tiny);
  CHECK_FALSE(ex.witness);
  REQUIRE(ex.budget_exhausted_at);
}

TEST_CASE("reduced word counts") {
  // Alphabet per player: nonzero exponents in [-2, 2], rank 1 -> 4 syllables.
  CHECK(reduced_word_count({4, 4}, 0) == 1);
  CHECK(reduced_word_count({4, 4}, 1) == 8);
  CHECK(reduced_word_count({4, 4}, 2) == 32);
  CHECK(reduced_word_count({4, 4}, 3) == 128);
  CHECK(reduced_word_count({2, 3, 5}, 2) == 2 * 8 + 3 * 7 + 5 * 5);
}

TEST_CASE("worker count does not change the result") {
  auto players = fixture::ee_players(false);
  WordGroup group = make_word_group(players, {1, 1});
  FalsifyOptions a, b;
  a.workers = 1;
  b.workers = 3;
  FalsifyResult ra = falsify_relations(group, a), rb = falsify_relations(group, b);
  REQUIRE(ra.witness);
  REQUIRE(rb.witness);
  CHECK(*ra.witness == *rb.witness);
}
