#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vlab/dfa.hpp"
#include "vlab/monoid.hpp"

namespace vlab {

inline constexpr std::uint64_t kDefaultMonoidCap = 1'000'000;

// Surjective morphism from a free monoid onto a finite monoid, given by the
// letter images.  Surjectivity means every element is a product of letter
// images (the identity being the empty product).
struct Stamp {
  std::string alphabet;  // sorted, duplicate-free
  FiniteMonoid monoid;
  std::vector<std::uint32_t> letter_image;  // per alphabet position

  std::uint32_t image_of(char c) const;
  std::uint32_t image_of_word(const std::string& w) const;
};

// Checks shape and surjectivity (closure of letter images reaches every
// element).
void validate(const Stamp& s);

// Transition monoid of a complete DFA: elements are the distinct state
// transformations of words, numbered in length-then-lex discovery order
// (element 0 is the identity transformation); representatives[i] is the
// shortest such word for element i.
struct TransitionMonoid {
  Stamp stamp;
  std::vector<std::string> representatives;
  std::vector<std::vector<std::uint32_t>> transformations;  // element -> state images
};

// Throws CapExceeded when more than `cap` elements appear, or when the
// multiplication table would exceed a fixed memory budget (8192 elements,
// a 256 MiB table) regardless of the cap.
TransitionMonoid transition_monoid(const Dfa& d, std::uint64_t cap = kDefaultMonoidCap);

// Syntactic stamp of the language of d: the transition monoid of minimize(d)
// together with the image of the language.
struct SyntacticData {
  Dfa minimal;
  Stamp stamp;
  std::vector<bool> accepting;  // image of the language inside the monoid
  std::vector<std::string> representatives;
};

SyntacticData syntactic_stamp(const Dfa& d, std::uint64_t cap = kDefaultMonoidCap);

// Syntactic order on the syntactic monoid: m1 <= m2 iff every context that
// accepts m2 accepts m1, i.e. for all s, t: s m2 t in P implies s m1 t in P.
OrderedMonoid syntactic_order(const SyntacticData& s);

// Subsemigroup generated by the letter images (images of all nonempty
// words), as a standalone table plus the embedding into the monoid.
struct GeneratedSemigroup {
  FiniteSemigroup semigroup;
  std::vector<std::uint32_t> monoid_elements;  // semigroup element -> monoid element
};

GeneratedSemigroup syntactic_semigroup(const Stamp& s);

// Stable semigroup: phi(A^s) for the smallest s >= 1 with
// phi(A^s) == phi(A^2s); that set is closed under product.
struct StableSemigroup {
  std::uint32_t exponent = 0;  // the s above
  FiniteSemigroup semigroup;
  std::vector<std::uint32_t> monoid_elements;
};

StableSemigroup stable_semigroup(const Stamp& s);

// Least fixed point of m -> (m phi(v) m)^w with v running through ever longer
// prefixes of the length-then-lex enumeration of A*; lands on an idempotent
// of the minimal ideal (the zero, when there is one).
std::uint32_t rho_image(const Stamp& s);

// The language recognized through an accepting subset, as a canonical
// minimal DFA (states = monoid elements reached from the identity).
Dfa stamp_language_dfa(const Stamp& s, const std::vector<bool>& accepting);

}  // namespace vlab
