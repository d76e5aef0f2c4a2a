#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vlab/monoid.hpp"
#include "vlab/stamp.hpp"

namespace vlab {

// Term over variables a-z with concatenation, the empty product, and omega
// powers x^(w+k).  Plain integer exponents are expanded into repeated
// concatenation while parsing, so evaluation only sees omega exponents.
struct OmegaTerm {
  enum class Kind { var, one, concat, omega_power };

  Kind kind = Kind::one;
  char var = 0;                     // Kind::var
  std::vector<OmegaTerm> children;  // concat: n-ary; omega_power: single child
  std::int64_t offset = 0;          // omega_power: the k in x^(w+k)
};

// identity := term ("=" | "<=") term
// term     := factor+
// factor   := atom ("^" power)?
// atom     := [a-z] | "1" | "(" term ")"
// power    := "w" | "(" "w" ("+" | "-") [0-9]+ ")" | [0-9]+
// Whitespace is insignificant.
struct Identity {
  enum class Relation { equal, leq };
  enum class Interp { plain, semigroup, c_ne, c_lm };

  OmegaTerm lhs, rhs;
  Relation relation = Relation::equal;
  Interp interpretation = Interp::plain;
};

Identity parse_identity(const std::string& text);  // ParseError on bad input
std::string to_string(const OmegaTerm& t);
std::string to_string(const Identity& id);

// Variables of both sides, sorted and deduplicated.
std::vector<char> variables(const Identity& id);

// Evaluates with `assignment[v - 'a']` as the value of variable v.  The one
// term needs `identity` (pass std::nullopt for semigroup evaluation, where
// encountering 1 is an error).
std::uint32_t eval_term(const FiniteSemigroup& s, std::optional<std::uint32_t> identity,
                        const OmegaTerm& t, const std::int64_t* assignment);

// A falsifying assignment, for witness reporting.
struct IdentityViolation {
  std::vector<char> vars;
  std::vector<std::uint32_t> values;  // parallel to vars, carrier element indices
  std::uint32_t lhs_value = 0, rhs_value = 0;
  std::uint32_t clm_length = 0;  // the witnessing image length k (C_lm only)
};

// Plain interpretation: variables range over all monoid elements.  The leq
// relation needs the ordered overloads.
std::optional<IdentityViolation> find_violation(const FiniteMonoid& m, const Identity& id);
std::optional<IdentityViolation> find_violation(const OrderedMonoid& om, const Identity& id);
bool satisfies(const FiniteMonoid& m, const Identity& id);
bool satisfies(const OrderedMonoid& om, const Identity& id);

// Semigroup interpretation: variables range over semigroup elements; the
// term 1 is rejected.
std::optional<IdentityViolation> find_violation(const FiniteSemigroup& s, const Identity& id);
bool semigroup_satisfies(const FiniteSemigroup& s, const Identity& id);

// Stamp interpretations.  C_ne: variables range over the images of nonempty
// words (the generated subsemigroup).  C_lm: for each image length k up to
// index+period of the subset sequence phi(A^k), variables range over
// phi(A^k).  Witness values are monoid element indices.  Inequalities need
// `order`.
std::optional<IdentityViolation> find_stamp_violation(const Stamp& s, const Identity& id,
                                                      Identity::Interp interp,
                                                      const OrderedMonoid* order = nullptr);
bool stamp_satisfies(const Stamp& s, const Identity& id, Identity::Interp interp,
                     const OrderedMonoid* order = nullptr);

}  // namespace vlab
