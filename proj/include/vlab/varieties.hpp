#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vlab/dfa.hpp"
#include "vlab/omega_term.hpp"
#include "vlab/stamp.hpp"

namespace vlab {

// Where a variety's defining conditions are evaluated.
enum class CarrierKind {
  monoid,          // syntactic monoid, plain interpretation
  ordered_monoid,  // syntactic ordered monoid (inequalities allowed)
  semigroup,       // syntactic semigroup (images of nonempty words, standalone)
  stamp_c_ne,      // stamp with variables over images of nonempty words
  stamp_c_lm,      // stamp with variables over each phi(A^k) separately
  structural       // no identities; a named predicate instead
};

struct VarietyDef {
  std::string name;         // registry key, e.g. "J1", "QA"
  std::string description;  // human-readable characterization
  CarrierKind carrier = CarrierKind::monoid;
  std::vector<std::string> identities;  // conjunctively interpreted
  // Equivalent second basis, when a classical one exists; deciders using
  // either list must agree (exercised by tests).
  std::vector<std::string> alternate_identities;
  // Structural predicate name ("" if none): j_trivial, r_trivial, l_trivial,
  // aperiodic, nilpotent, has_zero, stable_aperiodic.
  std::string structural;
};

const std::vector<VarietyDef>& variety_registry();

// Throws std::invalid_argument for unknown names.
const VarietyDef& find_variety(const std::string& name);

struct MembershipResult {
  bool member = false;
  // On an identity failure: the violated identity and the assignment.
  // Witness values are always syntactic monoid element indices (semigroup
  // carriers are mapped back through their embedding).
  std::string failed_identity;
  std::optional<IdentityViolation> witness;
  std::string note;  // short justification, e.g. which structural test fired
};

// Decides membership of the language underlying `s`.  Entries carrying both
// an identity decider and a structural one that must agree (QA, and the
// order/pattern pair for J+) raise InternalError on disagreement.
MembershipResult is_member(const SyntacticData& s, const VarietyDef& def);
MembershipResult is_member(const SyntacticData& s, const std::string& name);

// Structural decider alone, when the entry names one (nullopt otherwise).
std::optional<bool> structural_member(const SyntacticData& s, const VarietyDef& def);

// True iff no "insertion" pattern exists: accessible states q1, q2 with q2
// reachable from q1 and a word w with q1.w accepting but q2.w rejecting.
// Absence of the pattern characterizes the existential first-order definable
// (upward closed) languages.
bool forbidden_pattern_sigma1(const Dfa& d);

struct DensityInfo {
  bool dense = false;
  // When non-dense: a word u with L and A*uA* disjoint (verified against the
  // automata before returning).
  std::optional<std::string> witness;
};

DensityInfo is_dense(const Dfa& d, std::uint64_t cap = kDefaultMonoidCap);

enum class DensityClass { finite, slender, sparse, exponential };
const char* to_string(DensityClass c);

// Growth of the word-count function, read off the cycle structure of the
// trim minimal automaton: acyclic = finite; all strongly connected
// components simple cycles = sparse (polynomial counts), and slender
// (bounded counts) when additionally no path meets two cycles; a state on
// two distinct cycles = exponential.
DensityClass density_class(const Dfa& d);

enum class Verdict { yes, no, unavailable };
const char* to_string(Verdict v);

struct ClassificationReport {
  Verdict j1 = Verdict::unavailable;
  Verdict piecewise_testable = Verdict::unavailable;
  Verdict star_free = Verdict::unavailable;
  Verdict group = Verdict::unavailable;
  Verdict sigma1 = Verdict::unavailable;
  Verdict first_letter = Verdict::unavailable;
  Verdict qa = Verdict::unavailable;
  Verdict r_trivial = Verdict::unavailable;
  Verdict l_trivial = Verdict::unavailable;
  Verdict da = Verdict::unavailable;
  Verdict has_zero = Verdict::unavailable;
  Verdict dense = Verdict::unavailable;
  DensityClass density = DensityClass::finite;  // always computed
  std::optional<std::string> non_dense_witness;
  bool capped = false;  // syntactic monoid exceeded the cap
};

// Full language classification.  A cap overflow yields a partial report
// (automaton-level fields only) with the rest marked unavailable.  The
// report's implication lattice (j1 => piecewise => star-free, sigma1 =>
// star-free, r- and l-trivial <=> piecewise, group and star-free => trivial)
// is asserted before returning; a violation is an InternalError.
ClassificationReport classify(const Dfa& d, std::uint64_t cap = kDefaultMonoidCap);

// Fixed-key-order JSON rendering of the report.
std::string report_to_json(const ClassificationReport& r);

}  // namespace vlab
