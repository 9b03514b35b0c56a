#include "pingpong/io.hpp"

#include <fstream>
#include <sstream>

namespace pingpong {

namespace {

Error schema(const std::string& msg) { return invalid_input(msg); }

std::string at(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }
std::string at(const std::string& where, const char* key) { return where.empty() ? key : where + "." + key; }

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw schema("expected an object at " + (where.empty() ? "top level" : where));
  auto it = obj.find(key);
  if (it == obj.end()) throw schema("missing field " + at(where, key));
  return *it;
}

const Json* optional_field(const Json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw schema("expected an array at " + where);
  return j;
}

std::string text(const Json& j, const std::string& where) {
  if (!j.is_string()) throw schema("expected a string at " + where);
  return j.get<std::string>();
}

std::size_t count(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw schema("expected a non-negative integer at " + where);
  return j.get<std::size_t>();
}

long small_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw schema("expected an integer at " + where);
  return j.get<long>();
}

ZVector integer_vector(const Json& j, const std::string& where) {
  ZVector v;
  std::size_t i = 0;
  for (const auto& x : array(j, where)) v.push_back(integer_from_json(x, at(where, i++)));
  return v;
}

QVector rational_vector(const Json& j, const std::string& where) {
  QVector v;
  std::size_t i = 0;
  for (const auto& x : array(j, where)) v.push_back(rational_from_json(x, at(where, i++)));
  return v;
}

ZMatrix integer_matrix(const Json& j, const std::string& where) {
  const Json& rows = array(j, where);
  if (rows.empty()) throw schema("empty matrix at " + where);
  std::size_t cols = 0;
  std::vector<ZVector> data;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ZVector row = integer_vector(rows[i], at(where, i));
    if (i == 0) cols = row.size();
    if (row.size() != cols || cols == 0)
      throw schema("row length: " + at(where, i) + " has " + std::to_string(row.size()) + " entries, expected " +
                   std::to_string(cols));
    data.push_back(std::move(row));
  }
  ZMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = data[i][k];
  return m;
}

ZMatrix square_matrix(const Json& j, const std::string& where, std::optional<std::size_t> dim) {
  ZMatrix m = integer_matrix(j, where);
  if (m.rows() != m.cols())
    throw schema("dimension mismatch: " + where + " is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                 ", expected square");
  if (dim && m.rows() != *dim)
    throw schema("dimension mismatch: " + where + " is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                 ", expected " + std::to_string(*dim) + "x" + std::to_string(*dim));
  return m;
}

void expect_length(const std::vector<Integer>& v, std::size_t n, const std::string& where) {
  if (v.size() != n)
    throw schema("dimension mismatch: " + where + " has length " + std::to_string(v.size()) + ", expected " +
                 std::to_string(n));
}
void expect_length(const QVector& v, std::size_t n, const std::string& where) {
  if (v.size() != n)
    throw schema("dimension mismatch: " + where + " has length " + std::to_string(v.size()) + ", expected " +
                 std::to_string(n));
}

Json interval_json(const Interval& x) { return Json::array({to_json(x.lo()), to_json(x.hi())}); }

}  // namespace

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const QVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json to_json(const ZVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json to_json(const ZMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

Json to_json(const Box& b) {
  Json out = Json::array();
  for (const auto& x : b) out.push_back(interval_json(x));
  return out;
}

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  if (j.is_number_float()) throw schema("floating-point number not permitted at " + where + "; use a fraction string");
  if (!j.is_string()) throw schema("expected a number or fraction string at " + where);
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw schema(std::string(e.what()) + " at " + where);
  }
}

Integer integer_from_json(const Json& j, const std::string& where) {
  Rational q = rational_from_json(j, where);
  if (!is_integer(q)) throw schema("non-integral entry " + to_string(q) + " at " + where);
  return q.get_num();
}

std::string to_string(ExponentConvention c) { return c == ExponentConvention::m ? "m" : "2m"; }

ExponentConvention convention_from_string(const std::string& s) {
  if (s == "m") return ExponentConvention::m;
  if (s == "2m") return ExponentConvention::two_m;
  throw schema("unknown exponent convention '" + s + "' (expected m or 2m)");
}

std::string to_string(RelationMode m) { return m == RelationMode::exact ? "exact" : "projective"; }

RelationMode mode_from_string(const std::string& s) {
  if (s == "exact") return RelationMode::exact;
  if (s == "projective") return RelationMode::projective;
  throw schema("unknown mode '" + s + "' (expected exact or projective)");
}

ProblemFile parse_problem(const Json& doc) {
  ProblemFile pf;
  const Json& lat = field(doc, "lattice", "");
  pf.problem.gram = square_matrix(field(lat, "gram", "lattice"), "lattice.gram", std::nullopt);
  const std::size_t rho = pf.problem.gram.rows();
  pf.problem.anchor = integer_vector(field(lat, "anchor", "lattice"), "lattice.anchor");
  expect_length(pf.problem.anchor, rho, "lattice.anchor");

  const Json& players = array(field(doc, "players", ""), "players");
  for (std::size_t i = 0; i < players.size(); ++i) {
    const std::string where = at("players", i);
    PlayerSpec spec;
    spec.name = text(field(players[i], "name", where), at(where, "name"));
    if (const Json* c = optional_field(players[i], "cusp")) {
      spec.cusp = integer_vector(*c, at(where, "cusp"));
      expect_length(*spec.cusp, rho, at(where, "cusp"));
    }
    const Json& gens = array(field(players[i], "generators", where), at(where, "generators"));
    for (std::size_t k = 0; k < gens.size(); ++k)
      spec.generators.push_back(square_matrix(gens[k], at(at(where, "generators"), k), rho));
    pf.problem.players.push_back(std::move(spec));
  }
  for (std::size_t a = 0; a < pf.problem.players.size(); ++a)
    for (std::size_t b = a + 1; b < pf.problem.players.size(); ++b)
      if (pf.problem.players[a].name == pf.problem.players[b].name)
        throw schema("duplicate player name '" + pf.problem.players[a].name + "'");

  if (const Json* opt = optional_field(doc, "options")) {
    ProblemOptions& o = pf.options;
    if (const Json* r = optional_field(*opt, "radii")) o.radii = rational_vector(*r, "options.radii");
    if (const Json* p = optional_field(*opt, "basepoint")) {
      o.basepoint = rational_vector(*p, "options.basepoint");
      expect_length(*o.basepoint, rho, "options.basepoint");
    }
    if (const Json* d = optional_field(*opt, "depth")) o.depth = static_cast<unsigned>(count(*d, "options.depth"));
    if (const Json* c = optional_field(*opt, "exponent_convention"))
      o.convention = convention_from_string(text(*c, "options.exponent_convention"));
    if (const Json* m = optional_field(*opt, "mode")) o.mode = mode_from_string(text(*m, "options.mode"));
    if (const Json* b = optional_field(*opt, "max_syllables")) o.max_syllables = count(*b, "options.max_syllables");
    if (const Json* e = optional_field(*opt, "exponent_box")) o.exponent_box = small_int(*e, "options.exponent_box");
    if (const Json* b = optional_field(*opt, "budget")) o.budget = count(*b, "options.budget");
  }
  return pf;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw invalid_input("malformed JSON in " + path + ": " + e.what());
  }
}

ProblemFile load_problem(const std::string& path) { return parse_problem(load_json(path)); }

Json certificate_to_json(const Certificate& c) {
  Json j;
  j["lattice"] = {{"gram", to_json(c.gram)}, {"anchor", to_json(c.anchor)}};
  j["exponent_convention"] = to_string(c.convention);
  Json players = Json::array();
  for (const auto& p : c.players) {
    Json pj;
    pj["name"] = p.name;
    pj["cusp"] = to_json(p.cusp);
    pj["generators"] = Json::array();
    for (const auto& g : p.generators) pj["generators"].push_back(to_json(g));
    pj["orders"] = p.orders;
    pj["powers"] = p.powers;
    pj["translations"] = Json::array();
    for (const auto& t : p.translations) pj["translations"].push_back(to_json(t));
    pj["rank"] = p.rank;
    pj["lambda1"] = to_json(p.lambda1);
    pj["lambda1_coefficients"] = to_json(p.lambda1_coefficients);
    pj["lower_bound"] = to_json(p.ell);
    pj["radius"] = to_json(p.radius);
    pj["exponent"] = to_string(p.exponent);
    pj["basepoint"] = to_json(p.basepoint);
    players.push_back(std::move(pj));
  }
  j["players"] = std::move(players);
  j["basepoint"] = to_json(c.basepoint);
  Json incs = Json::array();
  for (const auto& inc : c.inclusions) {
    Json ij;
    ij["i"] = inc.i;
    ij["j"] = inc.j;
    ij["box"] = to_json(inc.box);
    ij["box_norm"] = to_json(inc.box_norm);
    ij["partition"] = Json::array();
    for (const auto& f : inc.partition)
      ij["partition"].push_back({{"axis", f.axis}, {"side", f.side}, {"splits", f.splits}});
    ij["lhs"] = to_json(inc.lhs);
    ij["rhs"] = to_json(inc.rhs);
    incs.push_back(std::move(ij));
  }
  j["inclusions"] = std::move(incs);
  j["conclusion"] = c.conclusion;
  j["caveat"] = c.caveat;
  j["input_digest"] = c.input_digest;
  j["digest"] = fnv1a_hex(j.dump());
  return j;
}

std::string certificate_digest(const Certificate& c) { return certificate_to_json(c)["digest"]; }

RecheckResult recheck_certificate_json(const Json& j) {
  Certificate c = certificate_from_json(j);
  RecheckResult r = recheck(c);
  const Json* stored = j.contains("digest") ? &j["digest"] : nullptr;
  if (!stored || !stored->is_string() || stored->get<std::string>() != certificate_digest(c)) {
    r.ok = false;
    r.failures.push_back("certificate digest mismatch");
  }
  return r;
}

Certificate certificate_from_json(const Json& j) {
  Certificate c;
  const Json& lat = field(j, "lattice", "");
  c.gram = square_matrix(field(lat, "gram", "lattice"), "lattice.gram", std::nullopt);
  c.anchor = integer_vector(field(lat, "anchor", "lattice"), "lattice.anchor");
  c.convention = convention_from_string(text(field(j, "exponent_convention", ""), "exponent_convention"));
  const Json& players = array(field(j, "players", ""), "players");
  for (std::size_t i = 0; i < players.size(); ++i) {
    const std::string w = at("players", i);
    const Json& pj = players[i];
    PlayerRecord p;
    p.name = text(field(pj, "name", w), at(w, "name"));
    p.cusp = integer_vector(field(pj, "cusp", w), at(w, "cusp"));
    const Json& gens = array(field(pj, "generators", w), at(w, "generators"));
    for (std::size_t k = 0; k < gens.size(); ++k)
      p.generators.push_back(square_matrix(gens[k], at(at(w, "generators"), k), c.gram.rows()));
    const Json& orders = array(field(pj, "orders", w), at(w, "orders"));
    for (std::size_t k = 0; k < orders.size(); ++k) p.orders.push_back(count(orders[k], at(at(w, "orders"), k)));
    const Json& powers = array(field(pj, "powers", w), at(w, "powers"));
    for (std::size_t k = 0; k < powers.size(); ++k) p.powers.push_back(count(powers[k], at(at(w, "powers"), k)));
    const Json& ts = array(field(pj, "translations", w), at(w, "translations"));
    for (std::size_t k = 0; k < ts.size(); ++k)
      p.translations.push_back(rational_vector(ts[k], at(at(w, "translations"), k)));
    p.rank = count(field(pj, "rank", w), at(w, "rank"));
    p.lambda1 = rational_from_json(field(pj, "lambda1", w), at(w, "lambda1"));
    p.lambda1_coefficients = integer_vector(field(pj, "lambda1_coefficients", w), at(w, "lambda1_coefficients"));
    p.ell = rational_from_json(field(pj, "lower_bound", w), at(w, "lower_bound"));
    p.radius = rational_from_json(field(pj, "radius", w), at(w, "radius"));
    p.exponent = integer_from_json(field(pj, "exponent", w), at(w, "exponent"));
    p.basepoint = rational_vector(field(pj, "basepoint", w), at(w, "basepoint"));
    c.players.push_back(std::move(p));
  }
  c.basepoint = rational_vector(field(j, "basepoint", ""), "basepoint");
  const Json& incs = array(field(j, "inclusions", ""), "inclusions");
  for (std::size_t n = 0; n < incs.size(); ++n) {
    const std::string w = at("inclusions", n);
    const Json& ij = incs[n];
    Inclusion inc;
    inc.i = count(field(ij, "i", w), at(w, "i"));
    inc.j = count(field(ij, "j", w), at(w, "j"));
    const Json& box = array(field(ij, "box", w), at(w, "box"));
    for (std::size_t k = 0; k < box.size(); ++k) {
      const std::string bw = at(at(w, "box"), k);
      const Json& iv = array(box[k], bw);
      if (iv.size() != 2) throw schema("expected [lo, hi] at " + bw);
      Rational lo = rational_from_json(iv[0], bw), hi = rational_from_json(iv[1], bw);
      if (lo > hi) throw schema("empty interval at " + bw);
      inc.box.emplace_back(lo, hi);
    }
    inc.box_norm = rational_from_json(field(ij, "box_norm", w), at(w, "box_norm"));
    const Json& part = array(field(ij, "partition", w), at(w, "partition"));
    for (std::size_t k = 0; k < part.size(); ++k) {
      const std::string fw = at(at(w, "partition"), k);
      FacePartition f;
      f.axis = count(field(part[k], "axis", fw), at(fw, "axis"));
      f.side = static_cast<int>(small_int(field(part[k], "side", fw), at(fw, "side")));
      const Json& splits = array(field(part[k], "splits", fw), at(fw, "splits"));
      for (std::size_t s = 0; s < splits.size(); ++s)
        f.splits.push_back(static_cast<int>(small_int(splits[s], at(at(fw, "splits"), s))));
      inc.partition.push_back(std::move(f));
    }
    inc.lhs = rational_from_json(field(ij, "lhs", w), at(w, "lhs"));
    inc.rhs = rational_from_json(field(ij, "rhs", w), at(w, "rhs"));
    c.inclusions.push_back(std::move(inc));
  }
  c.conclusion = text(field(j, "conclusion", ""), "conclusion");
  c.caveat = text(field(j, "caveat", ""), "caveat");
  c.input_digest = text(field(j, "input_digest", ""), "input_digest");
  return c;
}

Json word_to_json(const Word& w, const WordGroup& group) {
  Json out = Json::array();
  for (const auto& s : w) out.push_back({{"player", group.name(s.player)}, {"exponents", s.exponents}});
  return out;
}

Json moebius_pingpong_to_json(const MoebiusPingPong& r) {
  Json j;
  j["n"] = r.n;
  j["certified"] = r.certified;
  j["conclusion"] = r.conclusion;
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["checks"] = std::move(checks);
  if (!r.witness.empty()) {
    Json letters = Json::array();
    for (const auto& [name, e] : r.witness) letters.push_back({{"generator", name}, {"exponent", e}});
    j["witness"] = std::move(letters);
    j["witness_value"] = to_json(*r.witness_value);
  }
  return j;
}

Json make_report(const std::string& command, const std::string& status, const std::string& digest, Json payload,
                 Json timings) {
  Json j;
  j["format"] = kReportFormat;
  j["tool"] = "pingpong";
  j["version"] = kToolVersion;
  j["command"] = command;
  j["status"] = status;
  j["input_digest"] = digest;
  j["payload"] = std::move(payload);
  j["timings"] = std::move(timings);
  return j;
}

}  // namespace pingpong
