#pragma once

// Free-product words over players with commuting generators, and an exact
// search for relations among them.

#include <optional>
#include <string>
#include <vector>

#include "pingpong/engine.hpp"

namespace pingpong {

/// player^(exponents): the product of the player's generators raised to the
/// given exponents (they commute, so order does not matter).
struct Syllable {
  std::size_t player;
  std::vector<long> exponents;

  bool operator==(const Syllable&) const = default;
};

using Word = std::vector<Syllable>;

/// Matrices per player with their inverses; all players act on the same space.
class WordGroup {
 public:
  /// Inverses must be exact integer matrices (det = +-1).
  WordGroup(std::vector<std::string> names, std::vector<std::vector<ZMatrix>> generators);

  std::size_t players() const { return gens_.size(); }
  std::size_t rank(std::size_t player) const { return gens_.at(player).size(); }
  std::size_t dim() const { return dim_; }
  const std::string& name(std::size_t player) const { return names_.at(player); }
  const ZMatrix& generator(std::size_t player, std::size_t k) const { return gens_.at(player).at(k); }
  const ZMatrix& inverse(std::size_t player, std::size_t k) const { return invs_.at(player).at(k); }

  ZMatrix evaluate(const Syllable& s) const;
  ZMatrix evaluate(const Word& w) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<ZMatrix>> gens_, invs_;
  std::size_t dim_ = 0;
};

/// Generators (g_k^(p_k))^(c_i) of the players at the given exponents.
WordGroup make_word_group(const std::vector<Player>& players, const std::vector<Integer>& exponents);

/// Merges adjacent syllables of one player and drops trivial ones, to a
/// fixpoint. Errors: unknown player, exponent length mismatch.
Word reduce_word(Word w, const std::vector<std::size_t>& ranks);

/// Letters = sum of |exponents|.
std::size_t letter_count(const Word& w);
/// The word as a flat sequence of (player, generator, +-1).
std::vector<std::tuple<std::size_t, std::size_t, int>> letters(const Word& w);
std::string to_string(const Word& w, const WordGroup& group);

enum class RelationMode { exact, projective };

struct FalsifyOptions {
  std::size_t max_syllables = 6;
  long exponent_box = 2;  // syllable exponents in [-box, box]
  RelationMode mode = RelationMode::exact;
  unsigned long long budget = 200000000ULL;  // words examined at most
  unsigned workers = 0;                      // 0: PINGPONG_WORKERS or 1
};

struct FalsifyResult {
  std::optional<Word> witness;
  ZMatrix value;                        // exact evaluation of the witness
  std::size_t completed_length = 0;     // all words up to this many syllables searched
  unsigned long long words_examined = 0;
  std::optional<std::size_t> budget_exhausted_at;
};

/// Number of reduced words with exactly L syllables (saturating).
unsigned long long reduced_word_count(const std::vector<std::size_t>& syllables_per_player, std::size_t length);

/// Iterative deepening over syllable count; candidates are screened modulo
/// 2^31 - 1 and confirmed by exact multiplication. The first relation in
/// (length, lexicographic) order is returned regardless of worker count.
/// An empty witness proves nothing about freeness.
FalsifyResult falsify_relations(const WordGroup& group, const FalsifyOptions& options);

}  // namespace pingpong
