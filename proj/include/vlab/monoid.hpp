#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vlab {

// Finite semigroup given by its multiplication table (row i, column j holds
// the index of element i * element j).
struct FiniteSemigroup {
  std::uint32_t n = 0;
  std::vector<std::uint32_t> table;  // n * n, row-major

  std::uint32_t mul(std::uint32_t i, std::uint32_t j) const { return table[i * n + j]; }
};

// Finite monoid; by construction every monoid this library produces has its
// identity at index 0, but deserialized tables may put it elsewhere.
struct FiniteMonoid {
  std::uint32_t n = 0;
  std::vector<std::uint32_t> table;
  std::uint32_t identity = 0;

  std::uint32_t mul(std::uint32_t i, std::uint32_t j) const { return table[i * n + j]; }
  FiniteSemigroup as_semigroup() const { return {n, table}; }
};

// Shape, identity laws, and exhaustive associativity (O(n^3)).
void validate(const FiniteSemigroup& s);
void validate(const FiniteMonoid& m);

// Monoid with a stable partial order compatible with multiplication.
struct OrderedMonoid {
  FiniteMonoid monoid;
  std::vector<bool> leq;  // n * n; leq[i*n+j] iff element i <= element j

  bool le(std::uint32_t i, std::uint32_t j) const { return leq[i * monoid.n + j]; }
};

// Partial-order axioms plus compatibility (x <= y implies sxt <= syt).
void validate(const OrderedMonoid& om);

// x^k for k >= 1 by repeated multiplication.
std::uint32_t power(const FiniteSemigroup& s, std::uint32_t x, std::uint64_t k);

// The unique idempotent power x^w of x.
std::uint32_t omega_power(const FiniteSemigroup& s, std::uint32_t x);
std::uint32_t omega_power(const FiniteMonoid& m, std::uint32_t x);

// x^(w+k) for any integer offset k: with e = x^w and p the size of the cycle
// group {e, ex, ex^2, ...}, this is e * x^(k mod p) (nonnegative residue).
// In particular x^(w-1) * x == x^w.
std::uint32_t omega_offset_power(const FiniteSemigroup& s, std::uint32_t x, std::int64_t k);
std::uint32_t omega_offset_power(const FiniteMonoid& m, std::uint32_t x, std::int64_t k);

std::vector<std::uint32_t> idempotents(const FiniteSemigroup& s);

// Green's equivalences from principal ideal comparisons.
struct GreenClasses {
  std::vector<std::uint32_t> r_class;  // element -> class id
  std::vector<std::uint32_t> l_class;
  std::vector<std::uint32_t> j_class;
  std::uint32_t r_count = 0, l_count = 0, j_count = 0;
};
GreenClasses green_classes(const FiniteMonoid& m);

bool is_r_trivial(const FiniteMonoid& m);
bool is_l_trivial(const FiniteMonoid& m);
bool is_j_trivial(const FiniteMonoid& m);

// Aperiodicity as a structural property: no nontrivial subgroup, i.e. the
// cycle group at every element's idempotent power is trivial.
bool is_aperiodic(const FiniteSemigroup& s);

// The minimal two-sided ideal (nonempty in any finite semigroup).
std::vector<std::uint32_t> minimal_ideal(const FiniteSemigroup& s);
std::vector<std::uint32_t> minimal_ideal(const FiniteMonoid& m);

// A zero is an element z with zx == xz == z for all x.
std::optional<std::uint32_t> zero_element(const FiniteSemigroup& s);
bool has_zero(const FiniteSemigroup& s);
bool has_zero(const FiniteMonoid& m);

// A semigroup is nilpotent here when it has a zero which is its only
// idempotent.
bool is_nilpotent(const FiniteSemigroup& s);

// Componentwise product; element (i, j) has index i * n.n + j, so the
// identity lands at index 0 whenever both identities sit at 0.
FiniteMonoid direct_product(const FiniteMonoid& m, const FiniteMonoid& n);

// Division: m divides n iff some submonoid of n (containing n's identity)
// maps onto m.  Exhaustive search; refuses when n.n exceeds the cap.
bool divides(const FiniteMonoid& m, const FiniteMonoid& n, std::uint32_t cap = 8);

// Plain-text multiplication table format:
//   line 1:        n
//   lines 2..n+1:  n space-separated element indices (row i of the table)
//   next line:     "identity K"
//   optional:      "gen <letter> <idx>" lines (letter images of a stamp)
//   optional:      "le <i> <j>" lines (order pairs; reflexive pairs omitted)
struct MtabFile {
  FiniteMonoid monoid;
  std::vector<std::pair<char, std::uint32_t>> generators;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> order_pairs;  // i <= j, i != j
};

std::string write_mtab(const MtabFile& f);
MtabFile read_mtab(const std::string& text);  // ParseError on malformed input

}  // namespace vlab
