#include "pingpong/engine.hpp"

#include <cstdint>
#include <cstdio>

#include "pingpong/integer_lattice.hpp"

namespace pingpong {

const char* const kLiftCaveat =
    "statement holds for the subgroups of O(NS) generated by the given matrices; lifting to birational maps "
    "assumes a finite kernel of the NS representation";

namespace {

Error with_player(const Error& e, const std::string& name) {
  return Error(e.kind(), "player " + name + ": " + e.what(), e.stage());
}

Cusp infer_cusp(const Lattice& lattice, const std::vector<Isometry>& gens, const std::string& name) {
  const std::size_t rho = lattice.rank();
  QMatrix stacked(rho * gens.size(), rho);
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (std::size_t i = 0; i < rho; ++i)
      for (std::size_t j = 0; j < rho; ++j)
        stacked(k * rho + i, j) = Rational(gens[k].matrix()(i, j)) - (i == j ? 1 : 0);
  std::vector<QVector> fixed = nullspace(stacked);
  if (fixed.empty()) throw invalid_input("player " + name + ": cannot infer cusp: no common fixed vector");
  QMatrix F = QMatrix::from_columns(fixed, rho);
  QMatrix restricted = F.transpose() * lattice.rational_gram() * F;
  std::vector<QVector> radical = nullspace(restricted);
  if (radical.size() != 1)
    throw invalid_input("player " + name + ": cannot infer cusp: fixed space has a " +
                        std::to_string(radical.size()) + "-dimensional radical");
  QVector v = F * radical[0];
  Integer den = 1;
  for (const auto& x : v) den = lcm(den, x.get_den());
  ZVector z(rho);
  for (std::size_t i = 0; i < rho; ++i) z[i] = Rational(v[i] * den).get_num();
  return make_cusp(lattice, primitive_part(z), name);
}

Rational sup(const QVector& x) { return sup_norm(x); }

struct VerifyFailure {
  std::size_t radius_index;
  std::string reason;
};

// Shared by verify_pingpong and certify_free_product; on Undecided also
// reports which radius to enlarge.
std::variant<Certificate, VerifyFailure, Refuted> verify_impl(const Lattice& lattice, const std::vector<Player>& players,
                                                             const Table& table, const VerifyOptions& options) {
  const std::size_t s = players.size();
  if (s < 2) throw precondition("ping-pong needs s >= 2 players");
  if (table.radii.size() != s) throw precondition("one radius per player required");
  if (options.exponents && options.exponents->size() != s) throw precondition("one exponent per player required");
  for (const auto& R : table.radii)
    if (R <= 0) throw precondition("radii must be positive");

  std::vector<QVector> base(s);
  for (std::size_t i = 0; i < s; ++i) {
    auto p = from_boundary(players[i].chart, table.basepoint);
    if (!p) throw precondition("basepoint is the cusp of player " + players[i].name);
    if (sup(*p) >= table.radii[i])
      return VerifyFailure{i, "basepoint lies in U of player " + players[i].name};
    base[i] = *p;
    for (std::size_t j = 0; j < s; ++j) {
      if (j == i) continue;
      auto pos = cusp_position(players[i].chart, players[j].cusp);
      if (sup(*pos) >= table.radii[i])
        return VerifyFailure{i, "cusp of " + players[j].name + " lies in U of " + players[i].name};
    }
  }

  Certificate cert;
  cert.gram = lattice.gram();
  cert.anchor = lattice.anchor();
  // Stored scaled so that (p, v) = 1 for the first cusp.
  cert.basepoint = to_boundary(players[0].chart, base[0]).y;
  std::vector<Rational> worst(s, Rational(0));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      if (i == j) continue;
      auto tr = transport_enclosure(players[i].chart, players[j].chart, table.radii[j], options.transport);
      if (auto* u = std::get_if<Undecided>(&tr))
        return VerifyFailure{j, "transport of U(" + players[j].name + ") into chart " + players[i].name + ": " +
                                    u->reason};
      auto& enc = std::get<TransportEnclosure>(tr);
      Inclusion inc;
      inc.i = i;
      inc.j = j;
      inc.box_norm = sup_norm(enc.box);
      inc.box = std::move(enc.box);
      inc.partition = std::move(enc.partition);
      inc.rhs = table.radii[i] + std::max(inc.box_norm, sup(base[i]));
      worst[i] = std::max(worst[i], inc.rhs);
      cert.inclusions.push_back(std::move(inc));
    }

  std::vector<Integer> exps(s);
  for (std::size_t i = 0; i < s; ++i)
    exps[i] = options.exponents ? (*options.exponents)[i] : minimal_exponent(players[i].ell, worst[i]);
  for (auto& inc : cert.inclusions) {
    inc.lhs = Rational(exps[inc.i]) * players[inc.i].ell;
    if (inc.lhs <= inc.rhs)
      return Refuted{"exponent " + to_string(exps[inc.i]) + " of " + players[inc.i].name + " gives " +
                     to_string(inc.lhs) + " <= " + to_string(inc.rhs) + " against " + players[inc.j].name};
  }

  std::vector<std::size_t> ranks;
  for (std::size_t i = 0; i < s; ++i) {
    const Player& pl = players[i];
    PlayerRecord rec;
    rec.name = pl.name;
    rec.cusp = pl.cusp.v;
    for (std::size_t k = 0; k < pl.generators.size(); ++k) {
      rec.generators.push_back(pl.generators[k].matrix());
      rec.orders.push_back(pl.parts[k].order);
      rec.powers.push_back(pl.parts[k].power);
      rec.translations.push_back(pl.parts[k].t);
    }
    rec.rank = pl.rank();
    rec.lambda1 = pl.translations.lambda1;
    const auto& tl = pl.translations;
    rec.lambda1_coefficients = tl.shortest_coefficients;
    rec.ell = pl.ell;
    rec.radius = table.radii[i];
    rec.exponent = exps[i];
    rec.basepoint = base[i];
    cert.players.push_back(std::move(rec));
    ranks.push_back(pl.rank());
  }
  cert.conclusion = free_product_conclusion(ranks);
  cert.caveat = kLiftCaveat;
  return cert;
}

void append(std::string& out, const std::string& s) {
  out += s;
  out += ';';
}

void append(std::string& out, const ZMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) append(out, to_string(m.row(i)));
}

}  // namespace

Player build_player(const Lattice& lattice, const PlayerSpec& spec, ExponentConvention convention,
                    bool compute_lambda) {
  try {
    if (spec.generators.empty()) throw invalid_input("no generators");
    std::vector<Isometry> gens;
    for (const auto& m : spec.generators) {
      if (m.rows() != lattice.rank() || m.cols() != lattice.rank())
        throw invalid_input("dimension mismatch: generator is " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()));
      gens.push_back(Isometry::validate(lattice, m));
    }
    for (std::size_t a = 0; a < gens.size(); ++a)
      for (std::size_t b = a + 1; b < gens.size(); ++b)
        if (gens[a].matrix() * gens[b].matrix() != gens[b].matrix() * gens[a].matrix())
          throw invalid_input("generators " + std::to_string(a) + " and " + std::to_string(b) + " do not commute");
    Cusp cusp = spec.cusp ? make_cusp(lattice, *spec.cusp, spec.name) : infer_cusp(lattice, gens, spec.name);
    for (std::size_t k = 0; k < gens.size(); ++k)
      if (gens[k].apply(cusp.v) != cusp.v)
        throw invalid_input("generator " + std::to_string(k) + " does not fix the cusp " + to_string(cusp.v));
    Chart chart(lattice, cusp);
    std::vector<TranslationPart> parts;
    std::vector<TranslationGenerator> tgens;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      parts.push_back(translation_part(lattice, gens[k], chart.basis(), convention));
      tgens.push_back({spec.name + "[" + std::to_string(k) + "]", parts.back().t});
    }
    TranslationLattice tl = translation_lattice(tgens, compute_lambda);
    std::vector<QVector> scaled;
    for (const auto& b : tl.basis) {
      QVector q = to_rational(b);
      for (auto& x : q) x /= tl.denominator;
      scaled.push_back(std::move(q));
    }
    Rational ell = sup_norm_lower_bound(scaled).bound;
    bool independent = tl.rank == gens.size();
    return Player{spec.name, std::move(cusp), std::move(gens), std::move(chart), std::move(parts), std::move(tl),
                  std::move(ell), independent};
  } catch (const Error& e) {
    throw with_player(e, spec.name);
  }
}

SpherePoint default_basepoint(const std::vector<Player>& players) {
  if (players.empty()) throw precondition("no players");
  const Chart& chart0 = players[0].chart;
  const std::size_t n = chart0.dim();
  std::vector<QVector> candidates;
  std::size_t grid = 1;
  for (std::size_t k = 0; k < n && grid <= 3125; ++k) grid *= 5;
  if (grid <= 3125) {
    for (std::size_t idx = 0; idx < grid; ++idx) {
      QVector x(n);
      std::size_t rest = idx;
      for (std::size_t k = n; k-- > 0;) {
        x[k] = static_cast<long>(rest % 5) - 2;
        rest /= 5;
      }
      candidates.push_back(std::move(x));
    }
  } else {
    candidates.emplace_back(n);
    for (std::size_t k = 0; k < n; ++k)
      for (long c : {1L, -1L, 2L, -2L}) {
        QVector x(n);
        x[k] = c;
        candidates.push_back(std::move(x));
      }
  }
  std::vector<QVector> cusps0;
  for (std::size_t j = 1; j < players.size(); ++j) cusps0.push_back(*cusp_position(chart0, players[j].cusp));

  std::optional<SpherePoint> best;
  Rational best_score;
  for (const auto& x : candidates) {
    bool is_cusp = false;
    for (const auto& c : cusps0) is_cusp = is_cusp || c == x;
    if (is_cusp) continue;
    SpherePoint p = to_boundary(chart0, x);
    Rational score = sup(x);
    for (std::size_t i = 1; i < players.size(); ++i) score = std::max(score, sup(*from_boundary(players[i].chart, p)));
    if (!best || score < best_score) {
      best = p;
      best_score = score;
    }
  }
  if (!best) throw precondition("no basepoint candidate avoids every cusp");
  return *best;
}

std::vector<Rational> default_radii(const std::vector<Player>& players, const SpherePoint& basepoint) {
  std::vector<Rational> radii;
  for (std::size_t i = 0; i < players.size(); ++i) {
    Rational m = 1;
    for (std::size_t j = 0; j < players.size(); ++j)
      if (j != i) m = std::max(m, sup(*cusp_position(players[i].chart, players[j].cusp)));
    auto p = from_boundary(players[i].chart, basepoint);
    if (!p) throw precondition("basepoint is the cusp of player " + players[i].name);
    m = std::max(m, sup(*p));
    radii.push_back(2 * m);
  }
  return radii;
}

Integer minimal_exponent(const Rational& ell, const Rational& bound) {
  if (ell <= 0) throw precondition("translation rank 0: no exponent exists");
  Integer c = floor(bound / ell) + 1;
  return c < 1 ? Integer(1) : c;
}

VerifyResult verify_pingpong(const Lattice& lattice, const std::vector<Player>& players, const Table& table,
                             const VerifyOptions& options) {
  auto r = verify_impl(lattice, players, table, options);
  if (auto* f = std::get_if<VerifyFailure>(&r)) return Undecided{f->reason};
  if (auto* x = std::get_if<Refuted>(&r)) return *x;
  return std::get<Certificate>(std::move(r));
}

std::string problem_digest(const Problem& problem) {
  std::string canon = "gram;";
  append(canon, problem.gram);
  append(canon, "anchor");
  append(canon, to_string(problem.anchor));
  for (const auto& p : problem.players) {
    append(canon, "player");
    append(canon, p.name);
    append(canon, p.cusp ? to_string(*p.cusp) : "-");
    for (const auto& g : p.generators) {
      append(canon, "generator");
      append(canon, g);
    }
  }
  return fnv1a_hex(canon);
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string free_product_conclusion(const std::vector<std::size_t>& ranks) {
  std::string out;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (i) out += " * ";
    out += ranks[i] == 1 ? "Z" : "Z^" + std::to_string(ranks[i]);
  }
  return out;
}

std::variant<Certificate, Undecided> certify_free_product(const Problem& problem, const CertifyOptions& options) {
  auto staged = [](const std::string& stage, auto&& fn) {
    try {
      return fn();
    } catch (const Error& e) {
      throw e.tagged(stage);
    }
  };
  Lattice lattice = staged("lattice", [&] { return Lattice::validate(problem.gram, problem.anchor); });
  std::vector<Player> players = staged("players", [&] {
    if (problem.players.size() < 2) throw precondition("ping-pong needs s >= 2 players");
    std::vector<Player> out;
    for (const auto& spec : problem.players) out.push_back(build_player(lattice, spec, options.convention));
    for (std::size_t i = 0; i < out.size(); ++i)
      for (std::size_t j = i + 1; j < out.size(); ++j)
        if (out[i].cusp.v == out[j].cusp.v)
          throw invalid_input("players " + out[i].name + " and " + out[j].name + " share a cusp");
    return out;
  });
  Table table = staged("table", [&] {
    SpherePoint p = options.basepoint ? make_sphere_point(lattice, *options.basepoint) : default_basepoint(players);
    std::vector<Rational> radii = options.radii ? *options.radii : default_radii(players, p);
    if (radii.size() != players.size())
      throw invalid_input("dimension mismatch: " + std::to_string(radii.size()) + " radii for " +
                          std::to_string(players.size()) + " players");
    for (const auto& R : radii)
      if (R <= 0) throw invalid_input("radii must be positive");
    return Table{std::move(radii), std::move(p)};
  });

  VerifyOptions vopts;
  vopts.transport = options.transport;
  std::string reason;
  for (unsigned attempt = 0; attempt <= options.retries; ++attempt) {
    auto r = staged("verify", [&] { return verify_impl(lattice, players, table, vopts); });
    if (auto* c = std::get_if<Certificate>(&r)) {
      c->convention = options.convention;
      c->input_digest = problem_digest(problem);
      return std::move(*c);
    }
    if (auto* ref = std::get_if<Refuted>(&r)) throw internal_error("searched exponent refuted: " + ref->reason);
    const auto& f = std::get<VerifyFailure>(r);
    reason = f.reason;
    table.radii[f.radius_index] *= 2;
  }
  return Undecided{reason + " (after " + std::to_string(options.retries) + " radius doublings)"};
}

RecheckResult recheck(const Certificate& cert) {
  RecheckResult res;
  auto fail = [&](const std::string& msg) {
    res.ok = false;
    res.failures.push_back(msg);
  };
  try {
    Lattice lattice = Lattice::validate(cert.gram, cert.anchor);
    const std::size_t s = cert.players.size();
    if (s < 2) {
      fail("fewer than two players");
      return res;
    }

    Problem problem{cert.gram, cert.anchor, {}};
    std::vector<Player> players;
    for (const auto& rec : cert.players) {
      problem.players.push_back({rec.name, rec.cusp, rec.generators});
      players.push_back(build_player(lattice, problem.players.back(), cert.convention, false));
    }
    if (problem_digest(problem) != cert.input_digest) fail("input digest mismatch");

    std::vector<std::size_t> ranks;
    for (std::size_t i = 0; i < s; ++i) {
      const Player& pl = players[i];
      const PlayerRecord& rec = cert.players[i];
      const std::string who = "player " + rec.name + ": ";
      if (pl.cusp.v != rec.cusp) fail(who + "cusp is not normalized");
      std::vector<unsigned long> orders, powers;
      std::vector<QVector> ts;
      for (const auto& part : pl.parts) {
        orders.push_back(part.order);
        powers.push_back(part.power);
        ts.push_back(part.t);
      }
      if (orders != rec.orders) fail(who + "orders differ");
      if (powers != rec.powers) fail(who + "powers differ");
      if (ts != rec.translations) fail(who + "translations differ");
      if (pl.rank() != rec.rank) fail(who + "rank differs");
      if (pl.ell != rec.ell) fail(who + "lower bound differs");
      ranks.push_back(pl.rank());

      const auto& tl = pl.translations;
      if (rec.lambda1_coefficients.size() != tl.basis.size() || content(rec.lambda1_coefficients) == 0) {
        fail(who + "bad shortest-vector witness");
      } else {
        ZVector z(tl.basis.empty() ? 0 : tl.basis[0].size());
        for (std::size_t k = 0; k < tl.basis.size(); ++k)
          for (std::size_t c = 0; c < z.size(); ++c) z[c] += rec.lambda1_coefficients[k] * tl.basis[k][c];
        Integer m = 0;
        for (const auto& x : z) m = std::max<Integer>(m, abs(x));
        if (make_rational(m, tl.denominator) != rec.lambda1) fail(who + "lambda1 is not attained by its witness");
      }
      if (rec.lambda1 < rec.ell) fail(who + "lambda1 below the lower bound");
      if (rec.radius <= 0) fail(who + "radius not positive");
    }
    if (!res.ok) return res;

    SpherePoint p = make_sphere_point(lattice, cert.basepoint);
    for (std::size_t i = 0; i < s; ++i) {
      const PlayerRecord& rec = cert.players[i];
      auto pi = from_boundary(players[i].chart, p);
      if (!pi || *pi != rec.basepoint) fail("player " + rec.name + ": basepoint coordinates differ");
      else if (i == 0 && to_boundary(players[0].chart, *pi).y != cert.basepoint) fail("basepoint is not normalized");
      else if (sup(*pi) >= rec.radius) fail("player " + rec.name + ": basepoint inside U");
      for (std::size_t j = 0; j < s; ++j)
        if (j != i && sup(*cusp_position(players[i].chart, players[j].cusp)) >= rec.radius)
          fail("player " + rec.name + ": cusp of " + cert.players[j].name + " inside U");
    }

    if (cert.inclusions.size() != s * (s - 1)) {
      fail("wrong number of inclusions");
      return res;
    }
    std::vector<Rational> worst(s, Rational(0));
    std::size_t idx = 0;
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) {
        if (i == j) continue;
        const Inclusion& inc = cert.inclusions[idx++];
        const std::string pair = "inclusion (" + std::to_string(i) + ", " + std::to_string(j) + "): ";
        if (inc.i != i || inc.j != j) {
          fail(pair + "out of order");
          continue;
        }
        for (const auto& part : inc.partition)
          for (int sp : part.splits) res.nodes_evaluated += sp < 0;
        auto box = replay_transport(players[i].chart, players[j].chart, cert.players[j].radius, inc.partition);
        if (auto* u = std::get_if<Undecided>(&box)) {
          fail(pair + "replay failed: " + u->reason);
          continue;
        }
        if (std::get<Box>(box) != inc.box) fail(pair + "transported box differs");
        if (sup_norm(inc.box) != inc.box_norm) fail(pair + "box norm differs");
        Rational rhs = cert.players[i].radius + std::max(inc.box_norm, sup(cert.players[i].basepoint));
        Rational lhs = Rational(cert.players[i].exponent) * cert.players[i].ell;
        if (rhs != inc.rhs) fail(pair + "right-hand side differs");
        if (lhs != inc.lhs) fail(pair + "left-hand side differs");
        if (!(lhs > rhs)) fail(pair + "inequality fails");
        worst[i] = std::max(worst[i], rhs);
      }
    for (std::size_t i = 0; i < s; ++i)
      if (cert.players[i].exponent != minimal_exponent(cert.players[i].ell, worst[i]))
        fail("player " + cert.players[i].name + ": exponent is not minimal");
    if (cert.conclusion != free_product_conclusion(ranks)) fail("conclusion differs");
    if (cert.caveat != kLiftCaveat) fail("caveat differs");
  } catch (const std::exception& e) {
    fail(e.what());
  }
  return res;
}

}  // namespace pingpong
