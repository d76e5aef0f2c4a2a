#pragma once

#include <string>
#include <vector>

namespace vlab {

// Extended regular expression over a lowercase alphabet.
//
//   expr   := term ("+" term)*
//   term   := inter ("&" inter)*
//   inter  := factor+
//   factor := atom ("*")*
//   atom   := letter | "1" | "0" | "~" atom | "(" expr ")"
//
// "1" is the empty word, "0" the empty language, "~" complement relative to
// the declared alphabet.  Whitespace is insignificant.
struct Regex {
  enum class Kind { empty, epsilon, letter, union_, intersection, concat, star, complement };

  Kind kind = Kind::empty;
  char letter = 0;               // Kind::letter only
  std::vector<Regex> children;   // n-ary for union_/intersection/concat, unary for star/complement

  static Regex make_empty() { return {Kind::empty, 0, {}}; }
  static Regex make_epsilon() { return {Kind::epsilon, 0, {}}; }
  static Regex make_letter(char c) { return {Kind::letter, c, {}}; }
};

// A parsed expression together with its alphabet: the letters occurring in
// the text plus any explicitly declared extras, sorted and deduplicated.
// The alphabet may properly contain the letters used (complement and
// compilation are relative to it).
struct ParsedRegex {
  Regex root;
  std::string alphabet;
};

// Throws ParseError with a 0-based input offset on malformed input.
ParsedRegex parse_regex(const std::string& text, const std::string& extra_alphabet = "");

// Prints in the grammar above; parse_regex(to_string(r)) reproduces the tree.
std::string to_string(const Regex& r);

}  // namespace vlab
