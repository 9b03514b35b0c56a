#pragma once

// Ping-pong certification for parabolic subgroups fixing distinct cusps.
//
// Player i contributes H_i = <g_k^(p_k c_i)>, p_k the translation power of
// generator k and c_i the certified exponent. Every h in H_i \ {1} acts on
// chart i as a translation of sup-norm >= c_i * ell_i, so the inclusion
// h(U_j u {p}) in U_i reduces to one rational inequality per ordered pair.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pingpong/charts.hpp"

namespace pingpong {

struct PlayerSpec {
  std::string name;
  std::optional<ZVector> cusp;  // inferred from the generators when absent
  std::vector<ZMatrix> generators;
};

struct Player {
  std::string name;
  Cusp cusp;
  std::vector<Isometry> generators;
  Chart chart;
  std::vector<TranslationPart> parts;  // one per generator
  TranslationLattice translations;     // lambda1 left at 0 unless computed
  Rational ell;                        // search-free lower bound, <= lambda1
  bool independent = false;            // translation vectors linearly independent

  std::size_t rank() const { return translations.rank; }
  /// Generator k raised to its translation power.
  ZMatrix powered(std::size_t k) const { return parts[k].powered; }
};

/// Validates generators (isometries, pairwise commuting, fixing the cusp),
/// infers a missing cusp as the radical of the common fixed space, and builds
/// the translation lattice. Errors: "translation rank 0", "generators do not
/// commute", "does not fix the cusp", "cannot infer cusp".
Player build_player(const Lattice& lattice, const PlayerSpec& spec,
                    ExponentConvention convention = ExponentConvention::m, bool compute_lambda = true);

struct Table {
  std::vector<Rational> radii;
  SpherePoint basepoint;
};

/// Default basepoint: an integer point of chart 0 with sup-norm <= 2 that is
/// no cusp and minimises the largest chart norm. Default radii: twice the
/// largest of 1, the foreign cusp positions and the basepoint in each chart.
SpherePoint default_basepoint(const std::vector<Player>& players);
std::vector<Rational> default_radii(const std::vector<Player>& players, const SpherePoint& basepoint);

/// Smallest integer c >= 1 with c * ell > bound. Errors when ell <= 0.
Integer minimal_exponent(const Rational& ell, const Rational& bound);

struct Inclusion {
  std::size_t i, j;  // h(U_j u {p}) in U_i for h in H_i \ {1}
  Box box;           // encloses U_j in chart i
  std::vector<FacePartition> partition;
  Rational box_norm;
  Rational lhs;  // c_i * ell_i
  Rational rhs;  // R_i + max(box_norm, ||p_i||)
};

struct PlayerRecord {
  std::string name;
  ZVector cusp;
  std::vector<ZMatrix> generators;
  std::vector<unsigned long> orders;
  std::vector<unsigned long> powers;
  std::vector<QVector> translations;
  std::size_t rank = 0;
  Rational lambda1;
  ZVector lambda1_coefficients;  // over the translation lattice basis
  Rational ell;
  Rational radius;
  Integer exponent;
  QVector basepoint;  // basepoint in this chart
};

struct Certificate {
  ZMatrix gram;
  ZVector anchor;
  ExponentConvention convention = ExponentConvention::m;
  std::vector<PlayerRecord> players;
  QVector basepoint;  // ambient isotropic vector
  std::vector<Inclusion> inclusions;
  std::string conclusion;
  std::string caveat;
  std::string input_digest;
};

struct Refuted {
  std::string reason;
};

using VerifyResult = std::variant<Certificate, Undecided, Refuted>;

struct VerifyOptions {
  TransportOptions transport;
  std::optional<std::vector<Integer>> exponents;  // fixed instead of searched
};

/// Checks the ping-pong inequalities for the given table. With fixed exponents a failing
/// inequality gives Refuted (the inequality, not freeness, is refuted).
/// Errors: fewer than two players.
VerifyResult verify_pingpong(const Lattice& lattice, const std::vector<Player>& players, const Table& table,
                             const VerifyOptions& options = {});

struct Problem {
  ZMatrix gram;
  ZVector anchor;
  std::vector<PlayerSpec> players;
};

struct CertifyOptions {
  std::optional<std::vector<Rational>> radii;
  std::optional<QVector> basepoint;  // ambient vector
  TransportOptions transport;
  ExponentConvention convention = ExponentConvention::m;
  unsigned retries = 4;  // radius doublings after Undecided
};

/// FNV-1a 64 as 16 hex digits.
std::string fnv1a_hex(const std::string& data);
/// fnv1a_hex of a canonical rendering of the problem.
std::string problem_digest(const Problem& problem);

std::string free_product_conclusion(const std::vector<std::size_t>& ranks);
extern const char* const kLiftCaveat;

/// Full pipeline. Errors carry the failing stage: "lattice", "players",
/// "table", "verify".
std::variant<Certificate, Undecided> certify_free_product(const Problem& problem, const CertifyOptions& options = {});

struct RecheckResult {
  bool ok = true;
  std::vector<std::string> failures;
  std::size_t nodes_evaluated = 0;  // leaf evaluations during partition replay
};

/// Re-verifies a certificate from its stored data by recomputation and
/// comparison; no enumeration or branching decisions.
RecheckResult recheck(const Certificate& certificate);

}  // namespace pingpong
