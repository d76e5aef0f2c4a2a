#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vlab {

// Relational signature for word structures.  Letter predicates are always
// present; positions are 1-based and the modular predicate holds at
// positions divisible by q.
struct Signature {
  bool use_order = false;
  bool use_successor = false;
  std::optional<std::uint32_t> mod_q;  // q > 1 when set
};

// At least one relation must be enabled; mod_q, when set, must exceed 1.
void validate(const Signature& sig);

struct PebbledWord {
  std::string word;
  std::vector<std::uint32_t> pebbles;  // 1-based positions, in play order
};

void validate(const PebbledWord& w);

enum class Player { duplicator, spoiler };
const char* to_string(Player p);

// Exact value of the r-round game.  Duplicator wins iff the words (with
// their pebbles, matched by play order) satisfy the same depth-r sentences
// over the signature.  Pure order games on unpebbled words run through a
// substring-class refinement that handles long words; everything else
// recurses over pebble placements and refuses (CapExceeded) when the
// configuration space passes a work budget.
Player ef_winner(const PebbledWord& w, const PebbledWord& w2, std::uint32_t rounds,
                 const Signature& sig);
Player ef_winner(const std::string& w, const std::string& w2, std::uint32_t rounds,
                 const Signature& sig);

// Partition of all words of length <= max_len by game equivalence at the
// given depth.  Classes and their members appear in length-then-lex order.
// Desk-scale guards (CapExceeded): |alphabet| <= 3, max_len <= 10,
// depth <= 3.
std::vector<std::vector<std::string>> equiv_classes(const std::string& alphabet,
                                                    std::uint32_t depth, std::uint32_t max_len,
                                                    const Signature& sig);

// Whether u^(2^d - 1) and u^(2^d) are depth-d equivalent — the repetition
// threshold behind "first order cannot count".  Guard (CapExceeded):
// |u| * 2^d <= 64.
bool verify_pumping(const std::string& u, std::uint32_t d, const Signature& sig);

}  // namespace vlab
