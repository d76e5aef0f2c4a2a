#include "vlab/games.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "vlab/errors.hpp"

namespace vlab {

void validate(const Signature& sig) {
  if (!sig.use_order && !sig.use_successor && !sig.mod_q)
    throw std::invalid_argument("signature must enable at least one relation");
  if (sig.mod_q && *sig.mod_q < 2) throw std::invalid_argument("modular predicate needs q > 1");
}

void validate(const PebbledWord& w) {
  for (std::uint32_t p : w.pebbles)
    if (p == 0 || p > w.word.size()) throw std::invalid_argument("pebble position out of range");
}

const char* to_string(Player p) { return p == Player::duplicator ? "Duplicator" : "Spoiler"; }

namespace {

// Atomic relations of a pebble configuration, in play order.  Equality of
// pebble pairs is always part of the language; order, successor and the
// modular position predicate join per the signature.
std::vector<std::int32_t> atomic_facts(const std::string& w, const std::vector<std::uint32_t>& ps,
                                       const Signature& sig) {
  std::vector<std::int32_t> out;
  out.reserve(ps.size() * 2 + ps.size() * ps.size() * 2);
  for (std::uint32_t p : ps) {
    out.push_back(static_cast<unsigned char>(w[p - 1]));
    if (sig.mod_q) out.push_back(p % *sig.mod_q == 0 ? 1 : 0);
  }
  for (std::size_t i = 0; i + 1 < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      out.push_back(ps[i] == ps[j] ? 1 : 0);
      if (sig.use_order) out.push_back(ps[i] < ps[j] ? -1 : (ps[i] == ps[j] ? 0 : 1));
      if (sig.use_successor) {
        out.push_back(ps[j] == ps[i] + 1 ? 1 : 0);
        out.push_back(ps[i] == ps[j] + 1 ? 1 : 0);
      }
    }
  return out;
}

using Memo = std::map<std::pair<std::vector<std::uint32_t>, std::uint32_t>, std::uint32_t>;

// Hash-consed hierarchical game types: the depth-0 type of a configuration
// is its atomic facts, and the depth-(r+1) type pairs those facts with the
// set of depth-r types reachable by placing one more pebble.  Two
// configurations get the same id exactly when the types are structurally
// equal, which happens exactly when Duplicator survives that many rounds.
struct GameSolver {
  const Signature& sig;
  std::map<std::tuple<std::uint32_t, std::vector<std::int32_t>, std::vector<std::uint32_t>>,
           std::uint32_t>
      ids;

  std::uint32_t intern(std::uint32_t level, std::vector<std::int32_t> atomic,
                       std::vector<std::uint32_t> children) {
    auto key = std::make_tuple(level, std::move(atomic), std::move(children));
    auto [it, fresh] = ids.emplace(std::move(key), static_cast<std::uint32_t>(ids.size()));
    (void)fresh;
    return it->second;
  }

  std::uint32_t type_of(const std::string& w, Memo& memo, std::vector<std::uint32_t>& ps,
                        std::uint32_t level) {
    auto key = std::make_pair(ps, level);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::uint32_t id;
    if (level == 0) {
      id = intern(0, atomic_facts(w, ps, sig), {});
    } else {
      std::vector<std::uint32_t> children;
      children.reserve(w.size());
      for (std::uint32_t p = 1; p <= w.size(); ++p) {
        ps.push_back(p);
        children.push_back(type_of(w, memo, ps, level - 1));
        ps.pop_back();
      }
      std::sort(children.begin(), children.end());
      children.erase(std::unique(children.begin(), children.end()), children.end());
      id = intern(level, atomic_facts(w, ps, sig), std::move(children));
    }
    memo.emplace(std::move(key), id);
    return id;
  }
};

// Pure-order games on unpebbled words reduce to a substring refinement:
// every factor starts in a single class, and at each level the class of s
// becomes the set of (class(x), letter, class(y)) over the splits s = x a y.
// Equal classes for the full words after r passes coincide with the r-round
// game value: a pebble factors a word into prefix, letter and suffix, and
// the remaining rounds distribute over the two sides.  Cubic in the word
// length, so it handles words far beyond the pebble recursion.
Player order_game(const std::string& a, const std::string& b, std::uint32_t rounds) {
  double work = (std::pow(double(a.size()) + 1, 3) + std::pow(double(b.size()) + 1, 3)) *
                double(std::max<std::uint32_t>(rounds, 1));
  if (work > 2e8) throw CapExceeded("order game exceeds the work budget");

  struct Table {
    const std::string& w;
    std::size_t n;
    std::vector<std::uint32_t> cls;  // class of the factor starting at `start` of length `len`
    explicit Table(const std::string& s) : w(s), n(s.size()), cls((n + 1) * (n + 1), 0) {}
    std::uint32_t& at(std::size_t start, std::size_t len) { return cls[start * (n + 1) + len]; }
  };
  Table ta(a), tb(b);
  for (std::uint32_t level = 1; level <= rounds; ++level) {
    std::map<std::vector<std::uint64_t>, std::uint32_t> canon;
    auto pass = [&canon](Table& t) {
      std::vector<std::uint32_t> next(t.cls.size(), 0);
      for (std::size_t len = 0; len <= t.n; ++len)
        for (std::size_t start = 0; start + len <= t.n; ++start) {
          std::vector<std::uint64_t> key;
          key.reserve(len);
          for (std::size_t i = 0; i < len; ++i) {
            std::uint64_t left = t.at(start, i);
            std::uint64_t letter = static_cast<unsigned char>(t.w[start + i]);
            std::uint64_t right = t.at(start + i + 1, len - i - 1);
            key.push_back((left << 32) | (letter << 24) | right);
          }
          std::sort(key.begin(), key.end());
          key.erase(std::unique(key.begin(), key.end()), key.end());
          auto [it, fresh] = canon.emplace(std::move(key), static_cast<std::uint32_t>(canon.size()));
          (void)fresh;
          next[start * (t.n + 1) + len] = it->second;
        }
      t.cls = std::move(next);
    };
    pass(ta);
    pass(tb);
  }
  return ta.at(0, a.size()) == tb.at(0, b.size()) ? Player::duplicator : Player::spoiler;
}

}  // namespace

Player ef_winner(const PebbledWord& w, const PebbledWord& w2, std::uint32_t rounds,
                 const Signature& sig) {
  validate(sig);
  validate(w);
  validate(w2);
  if (w.pebbles.size() != w2.pebbles.size())
    throw std::invalid_argument("pebble counts of the two words differ");
  if (sig.use_order && !sig.use_successor && !sig.mod_q && w.pebbles.empty() &&
      w2.pebbles.empty())
    return order_game(w.word, w2.word, rounds);
  // at most sum over both words of |w|^0 + ... + |w|^rounds configurations
  for (const PebbledWord* pw : {&w, &w2}) {
    double configs = 1, total = 1;
    for (std::uint32_t i = 0; i < rounds; ++i) {
      configs *= double(pw->word.size());
      total += configs;
      if (total > 4e6) throw CapExceeded("game configuration space exceeds the work budget");
    }
  }
  GameSolver solver{sig, {}};
  Memo m1, m2;
  std::vector<std::uint32_t> ps1 = w.pebbles, ps2 = w2.pebbles;
  std::uint32_t t1 = solver.type_of(w.word, m1, ps1, rounds);
  std::uint32_t t2 = solver.type_of(w2.word, m2, ps2, rounds);
  return t1 == t2 ? Player::duplicator : Player::spoiler;
}

Player ef_winner(const std::string& w, const std::string& w2, std::uint32_t rounds,
                 const Signature& sig) {
  return ef_winner(PebbledWord{w, {}}, PebbledWord{w2, {}}, rounds, sig);
}

std::vector<std::vector<std::string>> equiv_classes(const std::string& alphabet,
                                                    std::uint32_t depth, std::uint32_t max_len,
                                                    const Signature& sig) {
  validate(sig);
  if (alphabet.empty()) throw std::invalid_argument("alphabet must be nonempty");
  std::string letters = alphabet;
  std::sort(letters.begin(), letters.end());
  if (std::adjacent_find(letters.begin(), letters.end()) != letters.end())
    throw std::invalid_argument("alphabet letters must be distinct");
  if (letters.size() > 3) throw CapExceeded("equiv_classes handles at most 3 letters");
  if (max_len > 10) throw CapExceeded("equiv_classes handles word length at most 10");
  if (depth > 3) throw CapExceeded("equiv_classes handles depth at most 3");

  GameSolver solver{sig, {}};
  std::map<std::uint32_t, std::size_t> bucket;  // root type id -> class index
  std::vector<std::vector<std::string>> classes;
  std::vector<std::string> frontier{""};
  for (std::uint32_t len = 0;; ++len) {
    for (const std::string& word : frontier) {
      Memo memo;
      std::vector<std::uint32_t> ps;
      std::uint32_t id = solver.type_of(word, memo, ps, depth);
      auto [it, fresh] = bucket.emplace(id, classes.size());
      if (fresh) classes.emplace_back();
      classes[it->second].push_back(word);
    }
    if (len == max_len) break;
    std::vector<std::string> next;
    next.reserve(frontier.size() * letters.size());
    for (const std::string& word : frontier)
      for (char c : letters) next.push_back(word + c);
    frontier = std::move(next);
  }
  return classes;
}

bool verify_pumping(const std::string& u, std::uint32_t d, const Signature& sig) {
  validate(sig);
  if (d > 30 || (std::uint64_t{u.size()} << d) > 64)
    throw CapExceeded("verify_pumping handles |u| * 2^d <= 64");
  std::string big;
  for (std::uint64_t i = 0, reps = std::uint64_t{1} << d; i < reps; ++i) big += u;
  std::string small = big.substr(0, big.size() - u.size());
  return ef_winner(small, big, d, sig) == Player::duplicator;
}

}  // namespace vlab
