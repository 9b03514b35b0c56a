#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "pingpong/cli.hpp"

using namespace pingpong;

namespace {

std::string schema_error(const std::string& text) {
  try {
    parse_problem(Json::parse(text));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_input);
    return e.what();
  }
  return "";
}

struct Run {
  int code;
  Json report;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "pingpong");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  Json report;
  if (!out.str().empty() && out.str()[0] == '{') report = Json::parse(out.str());
  return {code, report, err.str()};
}

}  // namespace

TEST_CASE("problem schema errors name the location") {
  CHECK(schema_error(R"({"lattice": {"gram": [[0,1],[1]], "anchor": [1,1]}, "players": []})")
            .find("row length: lattice.gram[1]") != std::string::npos);
  CHECK(schema_error(R"({"lattice": {"gram": [[0,"1/x"],[1,0]], "anchor": [1,1]}, "players": []})")
            .find("lattice.gram[0][1]") != std::string::npos);
  CHECK(schema_error(R"({"lattice": {"gram": [[0,1,0],[1,0,0]], "anchor": [1,1]}, "players": []})")
            .find("dimension mismatch") != std::string::npos);
  CHECK(schema_error(R"({"lattice": {"gram": [[0,1],[1,0]], "anchor": [1,1,1]}, "players": []})")
            .find("lattice.anchor") != std::string::npos);
  CHECK(schema_error(R"({"lattice": {"gram": [[0,1],[1,0.5]], "anchor": [1,1]}, "players": []})")
            .find("floating-point") != std::string::npos);
  CHECK(schema_error(R"({"lattice": {"gram": [[0,"1/2"],["1/2",0]], "anchor": [1,1]}, "players": []})")
            .find("non-integral") != std::string::npos);
  CHECK(schema_error(R"({"lattice": {"gram": [[0,1],[1,0]], "anchor": [1,1]},
                         "players": [{"name": "a", "generators": [[[1,0,0],[0,1,0],[0,0,1]]]}]})")
            .find("players[0].generators[0]") != std::string::npos);
  CHECK(schema_error(R"({"players": []})").find("lattice") != std::string::npos);
}

TEST_CASE("bundled problems parse") {
  ProblemFile rank3 = load_problem(fixture::data_path("rank3-kummer-cover.json"));
  CHECK(rank3.problem.gram == fixture::ee_gram());
  REQUIRE(rank3.problem.players.size() == 2);
  CHECK(rank3.problem.players[0].generators[0] == fixture::g_matrix());
  CHECK(rank3.problem.players[1].generators[0] == fixture::gp_matrix());
  ProblemFile rank2 = load_problem(fixture::data_path("rank2-degenerate.json"));
  CHECK(rank2.problem.gram.rows() == 2);
  ProblemFile two = load_problem(fixture::data_path("rank4-eichler-two-cusps.json"));
  Problem expect2 = fixture::u_a2_problem();
  CHECK(two.problem.gram == expect2.gram);
  REQUIRE(two.problem.players.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) CHECK(two.problem.players[i].generators == expect2.players[i].generators);
  ProblemFile three = load_problem(fixture::data_path("rank4-eichler-three-cusps.json"));
  Problem expect3 = fixture::u_a2_problem(true);
  REQUIRE(three.problem.players.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(three.problem.players[i].generators == expect3.players[i].generators);
  CHECK_THROWS(load_problem(fixture::data_path("no-such-file.json")));
}

TEST_CASE("certificates survive serialization") {
  auto r = certify_free_product(fixture::ee_problem());
  REQUIRE(std::holds_alternative<Certificate>(r));
  const Certificate& cert = std::get<Certificate>(r);
  Json j = certificate_to_json(cert);
  std::string text = j.dump();
  CHECK(text.find('.') == std::string::npos);  // no binary floats anywhere
  Certificate back = certificate_from_json(Json::parse(text));
  CHECK(certificate_to_json(back) == j);
  CHECK(recheck(back).ok);
  CHECK(recheck_certificate_json(j).ok);
}

TEST_CASE("the digest rejects an equally valid substitute witness") {
  // In U + A2(-1) the translation lattice is Z^2, so (1, 0) and (1, 1) both
  // attain lambda1 = 1.
  auto r = certify_free_product(fixture::u_a2_problem());
  REQUIRE(std::holds_alternative<Certificate>(r));
  Json j = certificate_to_json(std::get<Certificate>(r));
  Json& coeffs = j["players"][0]["lambda1_coefficients"];
  REQUIRE(coeffs.size() == 2);
  CHECK(recheck_certificate_json(j).ok);
  coeffs[1] = coeffs[1] == "0" ? "1" : "0";
  CHECK(recheck(certificate_from_json(j)).ok);
  RecheckResult bad = recheck_certificate_json(j);
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.failures.size() == 1);
  CHECK(bad.failures[0] == "certificate digest mismatch");
  j.erase("digest");
  CHECK_FALSE(recheck_certificate_json(j).ok);
}

TEST_CASE("cli exit codes and statuses") {
  const std::string rank3 = fixture::data_path("rank3-kummer-cover.json");
  const std::string rank2 = fixture::data_path("rank2-degenerate.json");

  Run cert = run({"certify", rank3});
  CHECK(cert.code == kExitSuccess);
  CHECK(cert.report["status"] == "certified");
  CHECK(cert.report["format"] == 1);
  CHECK(cert.report["payload"]["conclusion"] == "Z * Z");

  Run deg = run({"certify", rank2});
  CHECK(deg.code == kExitInvalidInput);
  CHECK(deg.report["status"] == "invalid_input");
  CHECK(deg.err.find("translation rank 0") != std::string::npos);

  Run rel = run({"falsify", rank3, "--exponents", "1,1", "--max-syllables", "6"});
  CHECK(rel.code == kExitRelationFound);
  CHECK(rel.report["status"] == "relation_found");

  Run none = run({"falsify", rank3, "--exponents", "4,4", "--max-syllables", "4"});
  CHECK(none.code == kExitUndecided);
  CHECK(none.report["status"] == "undecided");

  Run demo1 = run({"moebius-demo", "--n", "1"});
  CHECK(demo1.code == kExitRelationFound);
  Run demo2 = run({"moebius-demo", "--n", "2"});
  CHECK(demo2.code == kExitSuccess);
  CHECK(demo2.report["status"] == "certified");

  Run an = run({"analyze-stabilizer", rank3, "--player", "g'"});
  CHECK(an.code == kExitSuccess);
  CHECK(an.report["payload"]["translation_lattice"]["lambda1"] == "1");
  CHECK(run({"analyze-stabilizer", rank3, "--player", "nobody"}).code == kExitInvalidInput);

  CHECK(run({"certify"}).code == kExitInvalidInput);
  CHECK(run({"frobnicate"}).code == kExitInvalidInput);
  CHECK(run({"certify", rank3, "--exponent-convention", "3m"}).code == kExitInvalidInput);
}

TEST_CASE("reports are deterministic apart from timings") {
  const std::string rank3 = fixture::data_path("rank3-kummer-cover.json");
  Run a = run({"certify", rank3}), b = run({"certify", rank3});
  a.report.erase("timings");
  b.report.erase("timings");
  CHECK(a.report.dump() == b.report.dump());
}

TEST_CASE("recheck through the cli") {
  const std::string rank3 = fixture::data_path("rank3-kummer-cover.json");
  const std::string path = "unit_io_cert.json";
  Run cert = run({"certify", rank3, "-o", path});
  REQUIRE(cert.code == kExitSuccess);
  Run ok = run({"recheck", path});
  CHECK(ok.code == kExitSuccess);
  CHECK(ok.report["payload"]["verified"] == true);

  Json doc = load_json(path);
  doc["payload"]["certificate"]["players"][0]["radius"] = "3";
  {
    std::ofstream f(path);
    f << doc.dump(2);
  }
  Run bad = run({"recheck", path});
  CHECK(bad.code == kExitInvalidInput);
  CHECK(bad.report["payload"]["verified"] == false);
  std::remove(path.c_str());
}
