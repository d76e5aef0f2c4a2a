#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "vlab/dfa.hpp"
#include "vlab/monoid.hpp"
#include "vlab/stamp.hpp"

namespace vlab {

// Brute-force syntactic monoid: group words by the state transformation
// they induce on minimize(d), enumerating level by level with
// deduplication and stopping once a whole level adds nothing new.  The
// multiplication table is built from representative concatenation (the
// concatenated word is walked through the automaton when the monoid is
// small; beyond 512 elements the equivalent transformation composition is
// used).  Refuses (std::invalid_argument) when max_len is below the
// completeness bound state_count^2, or when new transformations still
// appear at length max_len; CapExceeded beyond the 8192-element table
// budget.
FiniteMonoid syntactic_monoid_bruteforce(const Dfa& d, std::uint32_t max_len);

// Exact number of accepted words of length n, by dynamic programming over
// states in big-integer arithmetic.  n <= 200.
boost::multiprecision::cpp_int count_words(const Dfa& d, std::uint32_t n);

// Deterministic random complete DFA and its transition monoid.  The DFA
// has initial state 0 and draws, straight off a mt19937_64 stream seeded
// as given, first one accepting bit per state and then one transition
// entry per (state, letter) pair.  states <= 6, letters <= 2 (alphabet is
// a prefix of "ab").  Propagates CapExceeded from the monoid construction.
TransitionMonoid random_transition_monoid(std::uint64_t seed, std::uint32_t states,
                                          std::uint32_t letters);

// All distinct scattered subwords of w of length <= k, in length-then-lex
// order; the empty word is always first.  k <= 4.
std::vector<std::string> subword_vector(const std::string& w, std::uint32_t k);

// True iff membership in L(d) is constant on every subword-vector class of
// words of length <= max_len.  Necessary for k-piecewise testability, so a
// violation refutes membership in the corresponding variety level.
// k <= 4, max_len <= 12; refuses (CapExceeded) when the enumeration would
// exceed four million words.
bool piecewise_consistency(const Dfa& d, std::uint32_t k, std::uint32_t max_len);

// Fixture corpus: JSON lines of the form
//   {"operation": ..., "input": {...}, "output": ..., "provenance": ...}
// Blank lines and lines starting with '#' are skipped.  Operations:
//   count_words            {regex, alphabet?, n} -> decimal string
//   synt_bf_size           {regex, alphabet?, max_len} -> integer
//   subword_vector         {word, k} -> array of strings
//   piecewise_consistency  {regex, alphabet?, k, max_len} -> bool
//   random_monoid_size     {seed, states, letters} -> integer
//   accepts                {regex, alphabet?, word} -> bool
// A malformed line, unknown operation, or mismatched output counts as a
// failure; the runner never throws on fixture content.
struct FixtureResult {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::vector<std::string> failures;  // one message per failing line
};

FixtureResult run_fixture_text(const std::string& text);

}  // namespace vlab
