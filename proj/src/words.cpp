#include "pingpong/words.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <thread>

namespace pingpong {

WordGroup::WordGroup(std::vector<std::string> names, std::vector<std::vector<ZMatrix>> generators)
    : names_(std::move(names)), gens_(std::move(generators)) {
  if (names_.size() != gens_.size()) throw precondition("one name per player required");
  bool first = true;
  for (const auto& player : gens_) {
    if (player.empty()) throw invalid_input("player without generators");
    std::vector<ZMatrix> inv;
    for (const auto& g : player) {
      if (first) {
        dim_ = g.rows();
        first = false;
      }
      if (g.rows() != dim_ || g.cols() != dim_) throw invalid_input("dimension mismatch between word generators");
      try {
        inv.push_back(to_integer(pingpong::inverse(to_rational(g))));
      } catch (const std::domain_error&) {
        throw invalid_input("generator is not invertible over Z");
      }
    }
    invs_.push_back(std::move(inv));
  }
}

ZMatrix WordGroup::evaluate(const Syllable& s) const {
  if (s.player >= gens_.size()) throw invalid_input("unknown player " + std::to_string(s.player));
  if (s.exponents.size() != gens_[s.player].size()) throw invalid_input("syllable exponent length mismatch");
  ZMatrix out = ZMatrix::identity(dim_);
  for (std::size_t k = 0; k < s.exponents.size(); ++k) {
    long e = s.exponents[k];
    const ZMatrix& base = e >= 0 ? gens_[s.player][k] : invs_[s.player][k];
    out = out * power(base, static_cast<unsigned long>(e >= 0 ? e : -e));
  }
  return out;
}

ZMatrix WordGroup::evaluate(const Word& w) const {
  ZMatrix out = ZMatrix::identity(dim_);
  for (const auto& s : w) out = out * evaluate(s);
  return out;
}

WordGroup make_word_group(const std::vector<Player>& players, const std::vector<Integer>& exponents) {
  if (exponents.size() != players.size()) throw invalid_input("one exponent per player required");
  std::vector<std::string> names;
  std::vector<std::vector<ZMatrix>> gens;
  for (std::size_t i = 0; i < players.size(); ++i) {
    if (exponents[i] < 1 || !exponents[i].fits_ulong_p()) throw invalid_input("exponents must be positive");
    names.push_back(players[i].name);
    std::vector<ZMatrix> g;
    for (std::size_t k = 0; k < players[i].generators.size(); ++k)
      g.push_back(power(players[i].powered(k), exponents[i].get_ui()));
    gens.push_back(std::move(g));
  }
  return WordGroup(std::move(names), std::move(gens));
}

Word reduce_word(Word w, const std::vector<std::size_t>& ranks) {
  Word out;
  for (auto& s : w) {
    if (s.player >= ranks.size()) throw invalid_input("unknown player " + std::to_string(s.player));
    if (s.exponents.size() != ranks[s.player]) throw invalid_input("syllable exponent length mismatch");
    auto trivial = [](const Syllable& x) {
      return std::all_of(x.exponents.begin(), x.exponents.end(), [](long e) { return e == 0; });
    };
    if (trivial(s)) continue;
    if (!out.empty() && out.back().player == s.player) {
      for (std::size_t k = 0; k < s.exponents.size(); ++k) out.back().exponents[k] += s.exponents[k];
      if (trivial(out.back())) out.pop_back();
    } else {
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::size_t letter_count(const Word& w) {
  std::size_t n = 0;
  for (const auto& s : w)
    for (long e : s.exponents) n += static_cast<std::size_t>(e < 0 ? -e : e);
  return n;
}

std::vector<std::tuple<std::size_t, std::size_t, int>> letters(const Word& w) {
  std::vector<std::tuple<std::size_t, std::size_t, int>> out;
  for (const auto& s : w)
    for (std::size_t k = 0; k < s.exponents.size(); ++k)
      for (long c = 0; c < (s.exponents[k] < 0 ? -s.exponents[k] : s.exponents[k]); ++c)
        out.emplace_back(s.player, k, s.exponents[k] < 0 ? -1 : 1);
  return out;
}

std::string to_string(const Word& w, const WordGroup& group) {
  std::string out;
  for (const auto& s : w) {
    if (!out.empty()) out += ' ';
    out += group.name(s.player) + "^";
    if (s.exponents.size() == 1) {
      out += std::to_string(s.exponents[0]);
    } else {
      out += '(';
      for (std::size_t k = 0; k < s.exponents.size(); ++k) out += (k ? "," : "") + std::to_string(s.exponents[k]);
      out += ')';
    }
  }
  return out;
}

unsigned long long reduced_word_count(const std::vector<std::size_t>& per_player, std::size_t length) {
  using u128 = unsigned __int128;
  const u128 cap = std::numeric_limits<unsigned long long>::max();
  if (length == 0) return 1;
  std::vector<u128> ending(per_player.begin(), per_player.end());
  for (std::size_t l = 1; l < length; ++l) {
    u128 total = 0;
    for (auto x : ending) total = std::min(cap, total + x);
    std::vector<u128> next(ending.size());
    for (std::size_t i = 0; i < ending.size(); ++i) next[i] = std::min(cap, per_player[i] * (total - ending[i]));
    ending = std::move(next);
  }
  u128 total = 0;
  for (auto x : ending) total = std::min(cap, total + x);
  return static_cast<unsigned long long>(total);
}

namespace {

constexpr std::uint64_t kPrime = 2147483647ULL;

struct ModMatrix {
  std::size_t d = 0;
  std::vector<std::uint64_t> a;
};

ModMatrix reduce_mod(const ZMatrix& m) {
  ModMatrix out{m.rows(), std::vector<std::uint64_t>(m.rows() * m.cols())};
  const Integer p(static_cast<unsigned long>(kPrime));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Integer r = m(i, j) % p;
      if (r < 0) r += p;
      out.a[i * out.d + j] = r.get_ui();
    }
  return out;
}

void multiply(const ModMatrix& x, const ModMatrix& y, ModMatrix& out) {
  const std::size_t d = x.d;
  out.d = d;
  out.a.resize(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      unsigned __int128 acc = 0;
      for (std::size_t k = 0; k < d; ++k) acc += static_cast<unsigned __int128>(x.a[i * d + k]) * y.a[k * d + j];
      out.a[i * d + j] = static_cast<std::uint64_t>(acc % kPrime);
    }
}

bool is_scalar(const ModMatrix& m, std::uint64_t diag) {
  for (std::size_t i = 0; i < m.d; ++i)
    for (std::size_t j = 0; j < m.d; ++j)
      if (m.a[i * m.d + j] != (i == j ? diag : 0)) return false;
  return true;
}

// Non-zero exponent vectors in [-box, box]^r, small ones first.
std::vector<std::vector<long>> alphabet(std::size_t r, long box) {
  double size = 1;
  for (std::size_t k = 0; k < r; ++k) size *= static_cast<double>(2 * box + 1);
  if (size > 1e6) throw invalid_input("syllable alphabet too large; lower the exponent box");
  std::vector<std::vector<long>> out;
  std::vector<long> e(r, -box);
  while (true) {
    if (std::any_of(e.begin(), e.end(), [](long x) { return x != 0; })) out.push_back(e);
    std::size_t k = 0;
    while (k < r && e[k] == box) e[k++] = -box;
    if (k == r) break;
    ++e[k];
  }
  auto key = [](const std::vector<long>& v) {
    long sup = 0, l1 = 0;
    std::vector<long> enc;
    for (long x : v) {
      long a = x < 0 ? -x : x;
      sup = std::max(sup, a);
      l1 += a;
      enc.push_back(2 * a - (x > 0 ? 1 : 0));
    }
    return std::make_tuple(sup, l1, enc);
  };
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  return out;
}

struct Letter {
  std::size_t player;
  std::size_t index;  // into the player's alphabet
  ModMatrix mod;
};

struct Search {
  const WordGroup& group;
  RelationMode mode;
  std::vector<std::vector<std::vector<long>>> alphabets;
  std::vector<Letter> letters;  // all syllables, player-major

  Word word_of(const std::vector<std::size_t>& path) const {
    Word w;
    for (std::size_t li : path) w.push_back({letters[li].player, alphabets[letters[li].player][letters[li].index]});
    return w;
  }

  bool confirm(const Word& w, ZMatrix& value) const {
    value = group.evaluate(w);
    if (value.is_identity()) return true;
    if (mode == RelationMode::projective) {
      ZMatrix neg = ZMatrix::identity(group.dim());
      for (std::size_t i = 0; i < neg.rows(); ++i) neg(i, i) = -1;
      return value == neg;
    }
    return false;
  }

  // Depth-first over words of exactly `length` syllables starting with `first`.
  std::optional<std::pair<Word, ZMatrix>> run(std::size_t first, std::size_t length) const {
    std::vector<ModMatrix> prefix(length);
    std::vector<std::size_t> path(length);
    prefix[0] = letters[first].mod;
    path[0] = first;
    std::optional<std::pair<Word, ZMatrix>> found;
    auto hit = [&](const ModMatrix& m) {
      return is_scalar(m, 1) || (mode == RelationMode::projective && is_scalar(m, kPrime - 1));
    };
    std::function<bool(std::size_t)> descend = [&](std::size_t depth) {
      if (depth == length) {
        if (!hit(prefix[depth - 1])) return false;
        Word w = word_of(path);
        ZMatrix value;
        if (!confirm(w, value)) return false;
        found.emplace(std::move(w), std::move(value));
        return true;
      }
      const std::size_t prev = letters[path[depth - 1]].player;
      for (std::size_t li = 0; li < letters.size(); ++li) {
        if (letters[li].player == prev) continue;
        path[depth] = li;
        multiply(prefix[depth - 1], letters[li].mod, prefix[depth]);
        if (descend(depth + 1)) return true;
      }
      return false;
    };
    descend(1);
    return found;
  }
};

unsigned worker_count(unsigned requested) {
  if (requested) return requested;
  if (const char* env = std::getenv("PINGPONG_WORKERS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

}  // namespace

FalsifyResult falsify_relations(const WordGroup& group, const FalsifyOptions& options) {
  if (group.players() < 1) throw precondition("falsify needs at least one player");
  if (options.exponent_box < 1) throw invalid_input("exponent box must be at least 1");
  Search search{group, options.mode, {}, {}};
  std::vector<std::size_t> per_player;
  for (std::size_t p = 0; p < group.players(); ++p) {
    search.alphabets.push_back(alphabet(group.rank(p), options.exponent_box));
    per_player.push_back(search.alphabets.back().size());
    for (std::size_t i = 0; i < search.alphabets[p].size(); ++i)
      search.letters.push_back({p, i, reduce_mod(group.evaluate(Syllable{p, search.alphabets[p][i]}))});
  }

  FalsifyResult result;
  const unsigned workers = worker_count(options.workers);
  for (std::size_t length = 1; length <= options.max_syllables; ++length) {
    unsigned long long count = reduced_word_count(per_player, length);
    if (count > options.budget || result.words_examined > options.budget - count) {
      result.budget_exhausted_at = length;
      return result;
    }
    const std::size_t firsts = search.letters.size();
    std::vector<std::optional<std::pair<Word, ZMatrix>>> hits(firsts);
    std::atomic<std::size_t> best{firsts};
    auto work = [&](unsigned t) {
      for (std::size_t f = t; f < firsts; f += workers) {
        if (f > best.load()) return;
        hits[f] = search.run(f, length);
        if (hits[f]) {
          std::size_t cur = best.load();
          while (f < cur && !best.compare_exchange_weak(cur, f)) {
          }
          return;
        }
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }
    for (auto& h : hits)
      if (h) {
        result.witness = std::move(h->first);
        result.value = std::move(h->second);
        result.completed_length = length - 1;
        return result;
      }
    result.words_examined += count;
    result.completed_length = length;
  }
  return result;
}

}  // namespace pingpong
