#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vlab/dfa.hpp"
#include "vlab/monoid.hpp"
#include "vlab/stamp.hpp"

namespace vlab {

// Monoid T acting on monoid S from the left: each lambda_t is an
// endomorphism of S, and t -> lambda_t is a morphism from T into the
// endomorphism monoid of S.
struct LeftAction {
  FiniteMonoid s;  // the acted monoid S
  FiniteMonoid t;  // the acting monoid T
  std::vector<std::uint32_t> table;  // t_elem * s.n + s_elem -> S element

  std::uint32_t act(std::uint32_t te, std::uint32_t se) const { return table[te * s.n + se]; }
};

// Left action plus a commuting right action rho (each rho_t an endomorphism,
// t -> rho_t an anti-compatible morphism, lambda_t(rho(s, t')) ==
// rho(lambda_t(s), t')).
struct BiAction {
  LeftAction left;
  std::vector<std::uint32_t> rtable;  // s_elem * t.n + t_elem -> S element

  std::uint32_t ract(std::uint32_t se, std::uint32_t te) const {
    return rtable[se * left.t.n + te];
  }
};

// Exhaustive law checks; violations are reported with a witness triple.
void validate(const LeftAction& a);
void validate(const BiAction& a);

// Monoid on S x T with (s,t)(s',t') = (s * lambda(t, s'), t t'); element
// (s, t) sits at index s * |T| + t.  The action laws are validated first;
// the result additionally passes the full associativity check whenever the
// carrier has at most 512 elements (beyond that the laws guarantee it).
// Refuses (CapExceeded) when the carrier would blow the multiplication
// table budget.
FiniteMonoid semidirect_product(const LeftAction& a);

// Monoid on S x T with (s,t)(s',t') = (rho(s, t') * lambda(t, s'), t t').
FiniteMonoid block_product(const BiAction& a);

// Wreath product U ∘ T: the power monoid U^T under the coordinate-shifting
// action lambda(t, f)(x) = f(x t).  A function f is encoded as an integer
// with base-|U| digit x equal to f(x), so element (f, t) of the product
// sits at index f_code * |T| + t.
struct WreathProduct {
  FiniteMonoid product;
  LeftAction action;  // T acting on U^T

  std::uint32_t u_size = 0, t_size = 0;
  // digit x of the power-monoid element code: the U component at coordinate x
  std::uint32_t coordinate(std::uint32_t f_code, std::uint32_t x) const;
};

// Refuses (CapExceeded) when |U|^|T| * |T| exceeds the cap or the table
// budget.
WreathProduct wreath_product(const FiniteMonoid& u, const FiniteMonoid& t,
                             std::uint64_t cap = 100'000);

// A stamp together with the accepting subset that cuts out a language.
struct StampLanguage {
  Stamp stamp;
  std::vector<bool> accepting;
};

// Stamp recognizing L a A* built on the wreath product U1^T * T, where phi
// (with the given accepting subset) recognizes L on T and U1 = {1, z} is
// the two-element monoid with zero.  The letter image of b flags, at
// coordinate x, whether x lies in the accepting subset and b is the marker;
// the product accumulates flags along ever-later splits, and acceptance
// reads the flag at coordinate 1.  The carrier is restricted to the
// submonoid generated by the letter images.
StampLanguage la_astar_stamp(const Stamp& phi, const std::vector<bool>& accepting, char marker);

// Stamp recognizing K a L on the block product U1^(T x T) x T, where one
// stamp phi recognizes K and L through two accepting subsets.  Coordinate
// (x, y) of the accumulated function flags whether some split w = u a v has
// x*phi(u) accepting for K and phi(v)*y accepting for L; acceptance reads
// coordinate (1, 1).  Every call verifies its result against a directly
// built automaton for K a L and throws InternalError on disagreement.
StampLanguage kal_stamp(const Stamp& phi, const std::vector<bool>& k_accepting, char marker,
                        const std::vector<bool>& l_accepting);

// DFA for K marker L (all words u marker v with u in K, v in L) by the
// subset construction; K and L must share an alphabet containing marker.
Dfa marked_concat_dfa(const Dfa& k, char marker, const Dfa& l);

// Factorization of a stamp into a semidirect product S * T: psi projects
// onto the submonoid of T generated by the second components, sigma
// decorates a word with the T-images of its strict prefixes, and chi maps a
// decorated letter (t, a) to lambda(t, s_a).  The first component of
// phi(a1...an) is then the S-product of chi over sigma(a1...an); this
// identity is checked exhaustively on all words up to length 5 at
// construction.
struct WreathDecomposition {
  Stamp psi;                         // projection stamp, onto its image in T
  std::vector<std::uint32_t> psi_t;  // psi element -> element of T
  std::string alphabet;
  std::uint32_t t_size = 0;
  std::vector<std::uint32_t> chi;  // chi[t * |alphabet| + i] for letter alphabet[i]

  std::uint32_t chi_of(std::uint32_t t, char a) const;
  // decorated word over T x A: (T-image of the strict prefix, next letter)
  std::vector<std::pair<std::uint32_t, char>> sigma(const std::string& w) const;
};

// phi must map onto the monoid built by semidirect_product(a) (same table);
// anything else is rejected as a metadata mismatch.
WreathDecomposition wreath_decompose(const Stamp& phi, const LeftAction& a);

// Plain-text action table format:
//   line 1:  "S <n> T <m>"
//   then     n*m lines "act <t> <s> <s'>"   (lambda, row-major in t, then s)
//   then     optionally n*m lines "ract <s> <t> <s'>"  (rho, for a BiAction)
struct ActFile {
  std::uint32_t s_size = 0, t_size = 0;
  std::vector<std::uint32_t> left;                  // t * s_size + s -> s'
  std::optional<std::vector<std::uint32_t>> right;  // s * t_size + t -> s'
};

std::string write_act(const ActFile& f);
ActFile read_act(const std::string& text);  // ParseError on malformed input

ActFile act_file(const LeftAction& a);
ActFile act_file(const BiAction& a);

// Attach monoids to a parsed table; sizes must match and the laws must hold.
LeftAction left_action(const ActFile& f, const FiniteMonoid& s, const FiniteMonoid& t);
BiAction bi_action(const ActFile& f, const FiniteMonoid& s, const FiniteMonoid& t);

}  // namespace vlab
