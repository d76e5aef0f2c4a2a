#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "vlab/dfa.hpp"

// Shared helpers for the test suites.  Everything here is deliberately
// independent of the library's internals: word enumeration and the
// recursive regex matcher act as oracles for the compiled automata.

namespace testutil {

// All words over `alphabet` of length <= max_len, in length-then-lex order.
inline std::vector<std::string> words_upto(const std::string& alphabet, std::size_t max_len) {
  std::vector<std::string> out{""};
  std::size_t level_start = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_start; i < level_end; ++i)
      for (char c : alphabet) out.push_back(out[i] + c);
    level_start = level_end;
  }
  return out;
}

// Definitional regex membership, by structural recursion on the tree.
// Exponential in word length, which is fine at oracle scale.
inline bool regex_matches(const vlab::Regex& r, const std::string& w) {
  using K = vlab::Regex::Kind;
  switch (r.kind) {
    case K::empty:
      return false;
    case K::epsilon:
      return w.empty();
    case K::letter:
      return w.size() == 1 && w[0] == r.letter;
    case K::union_:
      for (const auto& c : r.children)
        if (regex_matches(c, w)) return true;
      return false;
    case K::intersection:
      for (const auto& c : r.children)
        if (!regex_matches(c, w)) return false;
      return true;
    case K::concat: {
      // fold right: first child takes a prefix, the rest handles the suffix
      if (r.children.size() == 1) return regex_matches(r.children[0], w);
      vlab::Regex rest{K::concat, 0, {r.children.begin() + 1, r.children.end()}};
      for (std::size_t cut = 0; cut <= w.size(); ++cut)
        if (regex_matches(r.children[0], w.substr(0, cut)) &&
            regex_matches(rest, w.substr(cut)))
          return true;
      return false;
    }
    case K::star: {
      if (w.empty()) return true;
      // first nonempty block, then recurse on the tail
      for (std::size_t cut = 1; cut <= w.size(); ++cut)
        if (regex_matches(r.children[0], w.substr(0, cut)) && regex_matches(r, w.substr(cut)))
          return true;
      return false;
    }
    case K::complement:
      return !regex_matches(r.children[0], w);
  }
  return false;
}

// Same language up to bounded length, by exhaustive enumeration.
inline bool same_language_upto(const vlab::Dfa& a, const vlab::Dfa& b, std::size_t max_len) {
  if (a.alphabet != b.alphabet) return false;
  for (const std::string& w : words_upto(a.alphabet, max_len))
    if (vlab::accepts(a, w) != vlab::accepts(b, w)) return false;
  return true;
}

// Seeded random regex over two letters, for round-trip and compile checks.
// Only uses the generator's raw output, so results are stable across
// platforms.
inline vlab::Regex random_regex(std::mt19937_64& rng, int depth) {
  using K = vlab::Regex::Kind;
  auto pick = [&](std::uint64_t n) { return static_cast<std::size_t>(rng() % n); };
  if (depth == 0) {
    switch (pick(4)) {
      case 0: return vlab::Regex::make_letter('a');
      case 1: return vlab::Regex::make_letter('b');
      case 2: return vlab::Regex::make_epsilon();
      default: return vlab::Regex::make_empty();
    }
  }
  switch (pick(6)) {
    case 0: {
      vlab::Regex r{K::union_, 0, {}};
      r.children.push_back(random_regex(rng, depth - 1));
      r.children.push_back(random_regex(rng, depth - 1));
      return r;
    }
    case 1: {
      vlab::Regex r{K::intersection, 0, {}};
      r.children.push_back(random_regex(rng, depth - 1));
      r.children.push_back(random_regex(rng, depth - 1));
      return r;
    }
    case 2: {
      vlab::Regex r{K::concat, 0, {}};
      r.children.push_back(random_regex(rng, depth - 1));
      r.children.push_back(random_regex(rng, depth - 1));
      return r;
    }
    case 3:
      return vlab::Regex{K::star, 0, {random_regex(rng, depth - 1)}};
    case 4:
      return vlab::Regex{K::complement, 0, {random_regex(rng, depth - 1)}};
    default:
      return random_regex(rng, 0);
  }
}

// Seeded random complete DFA; uniform via raw generator output.
inline vlab::Dfa random_dfa(std::mt19937_64& rng, std::uint32_t max_states,
                            const std::string& alphabet) {
  vlab::Dfa d;
  d.alphabet = alphabet;
  d.state_count = 1 + static_cast<std::uint32_t>(rng() % max_states);
  d.initial = static_cast<std::uint32_t>(rng() % d.state_count);
  d.accepting.resize(d.state_count);
  for (std::uint32_t q = 0; q < d.state_count; ++q) d.accepting[q] = rng() % 2 == 0;
  d.delta.resize(static_cast<std::size_t>(d.state_count) * alphabet.size());
  for (auto& t : d.delta) t = static_cast<std::uint32_t>(rng() % d.state_count);
  return d;
}

}  // namespace testutil
