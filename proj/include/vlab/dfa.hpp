#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vlab/regex.hpp"

namespace vlab {

// Complete deterministic automaton.  Every DFA in this library is kept
// complete (a sink state is materialized where needed); minimize() also
// renumbers states in BFS order from the initial state, so two minimal DFAs
// recognize the same language over the same alphabet iff they are equal.
struct Dfa {
  std::string alphabet;          // sorted, duplicate-free lowercase letters
  std::uint32_t state_count = 0;
  std::uint32_t initial = 0;
  std::vector<bool> accepting;   // indexed by state
  std::vector<std::uint32_t> delta;  // state * |alphabet| + letter_index -> state

  std::uint32_t next(std::uint32_t state, std::uint32_t letter_index) const {
    return delta[state * alphabet.size() + letter_index];
  }
  // Index of c in the alphabet; throws std::invalid_argument if absent.
  std::uint32_t letter_index(char c) const;
  // State reached from `from` along w.
  std::uint32_t walk(std::uint32_t from, const std::string& w) const;

  bool operator==(const Dfa& other) const = default;
};

void validate(const Dfa& d);  // shape invariants; throws std::invalid_argument

// Canonical minimal complete DFA for the same language (Moore refinement on
// the reachable part, then BFS renumbering).
Dfa minimize(const Dfa& d);

// Compiles to the canonical minimal complete DFA over pr.alphabet.
Dfa compile(const ParsedRegex& pr);

bool accepts(const Dfa& d, const std::string& w);
bool is_empty(const Dfa& d);

// Boolean operations require identical alphabets ("alphabet mismatch").
Dfa union_(const Dfa& a, const Dfa& b);
Dfa intersection(const Dfa& a, const Dfa& b);
Dfa complement(const Dfa& a);

// w^{-1}L and Lw^{-1}; letters of w must belong to d's alphabet.
Dfa left_quotient(const Dfa& d, const std::string& w);
Dfa right_quotient(const Dfa& d, const std::string& w);

// Morphism between free monoids, classified by the shape of its images.
struct FreeMorphism {
  enum class Class { arbitrary, non_erasing, length_multiplying, length_preserving };

  std::string source;               // sorted alphabet A
  std::string target;               // sorted alphabet B
  std::vector<std::string> images;  // image of source[i], a word over target
  Class cls = Class::arbitrary;

  const std::string& image(char c) const;
  std::string apply(const std::string& w) const;
};

// Checks alphabets, image letters, and the declared class invariant
// (non-erasing: no empty image; length-multiplying: all images one common
// length; length-preserving: all images single letters).
void validate(const FreeMorphism& f);

// f^{-1}(L) for L = L(d) over f.target; result is over f.source.
Dfa inverse_image(const Dfa& d, const FreeMorphism& f);

// Bit-exact JSON interchange:
// {"alphabet":["a","b"],"states":3,"initial":0,"accepting":[0],"delta":[[1,2],[0,2],[2,2]]}
std::string dfa_to_json(const Dfa& d);
Dfa dfa_from_json(const std::string& text);

}  // namespace vlab
