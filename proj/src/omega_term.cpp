#include "vlab/omega_term.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "vlab/errors.hpp"

namespace vlab {
namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  Identity parse() {
    Identity id;
    id.lhs = parse_term();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '=') {
      ++pos_;
      id.relation = Identity::Relation::equal;
    } else if (pos_ + 1 < text_.size() && text_[pos_] == '<' && text_[pos_ + 1] == '=') {
      pos_ += 2;
      id.relation = Identity::Relation::leq;
    } else {
      throw ParseError("expected '=' or '<='", pos_);
    }
    id.rhs = parse_term();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return id;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool at_atom() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return (c >= 'a' && c <= 'z') || c == '1' || c == '(';
  }

  OmegaTerm parse_term() {
    std::vector<OmegaTerm> parts;
    if (!at_atom()) throw ParseError("expected term", pos_);
    while (at_atom()) parts.push_back(parse_factor());
    if (parts.size() == 1) return parts[0];
    return {OmegaTerm::Kind::concat, 0, std::move(parts), 0};
  }

  OmegaTerm parse_factor() {
    OmegaTerm atom = parse_atom();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      return parse_power(std::move(atom));
    }
    return atom;
  }

  OmegaTerm parse_power(OmegaTerm base) {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("expected exponent", pos_);
    char c = text_[pos_];
    if (c == 'w') {
      ++pos_;
      return {OmegaTerm::Kind::omega_power, 0, {std::move(base)}, 0};
    }
    if (c >= '0' && c <= '9') {
      std::int64_t k = parse_int();
      if (k < 1) throw ParseError("integer exponent must be >= 1", pos_);
      // sugar: expand into repeated concatenation
      std::vector<OmegaTerm> copies(static_cast<std::size_t>(k), base);
      if (k == 1) return base;
      return {OmegaTerm::Kind::concat, 0, std::move(copies), 0};
    }
    if (c == '(') {
      std::size_t open = pos_;
      ++pos_;
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != 'w') throw ParseError("expected 'w'", pos_);
      ++pos_;
      skip_ws();
      if (pos_ >= text_.size() || (text_[pos_] != '+' && text_[pos_] != '-'))
        throw ParseError("expected '+' or '-'", pos_);
      bool neg = text_[pos_] == '-';
      ++pos_;
      std::int64_t k = parse_int();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') throw ParseError("unclosed '('", open);
      ++pos_;
      return {OmegaTerm::Kind::omega_power, 0, {std::move(base)}, neg ? -k : k};
    }
    throw ParseError("bad exponent", pos_);
  }

  std::int64_t parse_int() {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] < '0' || text_[pos_] > '9')
      throw ParseError("expected number", pos_);
    std::int64_t v = 0;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 1'000'000) throw ParseError("exponent too large", pos_);
      ++pos_;
    }
    return v;
  }

  OmegaTerm parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("expected term", pos_);
    char c = text_[pos_];
    if (c >= 'a' && c <= 'z') {
      ++pos_;
      return {OmegaTerm::Kind::var, c, {}, 0};
    }
    if (c == '1') {
      ++pos_;
      return {OmegaTerm::Kind::one, 0, {}, 0};
    }
    if (c == '(') {
      std::size_t open = pos_;
      ++pos_;
      OmegaTerm inner = parse_term();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') throw ParseError("unclosed '('", open);
      ++pos_;
      return inner;
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

void print_term(const OmegaTerm& t, bool parenthesize_composite, std::string& out) {
  switch (t.kind) {
    case OmegaTerm::Kind::var:
      out += t.var;
      break;
    case OmegaTerm::Kind::one:
      out += '1';
      break;
    case OmegaTerm::Kind::concat: {
      bool parens = parenthesize_composite;
      if (parens) out += '(';
      for (const OmegaTerm& c : t.children) print_term(c, true, out);
      if (parens) out += ')';
      break;
    }
    case OmegaTerm::Kind::omega_power: {
      print_term(t.children[0], true, out);
      out += '^';
      if (t.offset == 0) {
        out += 'w';
      } else {
        out += "(w";
        out += t.offset > 0 ? '+' : '-';
        out += std::to_string(t.offset > 0 ? t.offset : -t.offset);
        out += ')';
      }
      break;
    }
  }
}

void collect_vars(const OmegaTerm& t, std::set<char>& out) {
  if (t.kind == OmegaTerm::Kind::var) out.insert(t.var);
  for (const OmegaTerm& c : t.children) collect_vars(c, out);
}

}  // namespace

Identity parse_identity(const std::string& text) {
  Parser p(text);
  return p.parse();
}

std::string to_string(const OmegaTerm& t) {
  std::string out;
  print_term(t, false, out);
  return out;
}

std::string to_string(const Identity& id) {
  std::string out = to_string(id.lhs);
  out += id.relation == Identity::Relation::equal ? " = " : " <= ";
  out += to_string(id.rhs);
  return out;
}

std::vector<char> variables(const Identity& id) {
  std::set<char> vars;
  collect_vars(id.lhs, vars);
  collect_vars(id.rhs, vars);
  return {vars.begin(), vars.end()};
}

std::uint32_t eval_term(const FiniteSemigroup& s, std::optional<std::uint32_t> identity,
                        const OmegaTerm& t, const std::int64_t* assignment) {
  switch (t.kind) {
    case OmegaTerm::Kind::var: {
      std::int64_t v = assignment[t.var - 'a'];
      if (v < 0) throw std::invalid_argument(std::string("unassigned variable '") + t.var + "'");
      return static_cast<std::uint32_t>(v);
    }
    case OmegaTerm::Kind::one:
      if (!identity)
        throw std::invalid_argument("the term 1 has no meaning in a semigroup interpretation");
      return *identity;
    case OmegaTerm::Kind::concat: {
      std::uint32_t acc = eval_term(s, identity, t.children[0], assignment);
      for (std::size_t i = 1; i < t.children.size(); ++i)
        acc = s.mul(acc, eval_term(s, identity, t.children[i], assignment));
      return acc;
    }
    case OmegaTerm::Kind::omega_power: {
      std::uint32_t base = eval_term(s, identity, t.children[0], assignment);
      return t.offset == 0 ? omega_power(s, base) : omega_offset_power(s, base, t.offset);
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

// Runs lhs/rhs over all assignments drawn from `domain` (carrier element
// indices) and returns the first violation in odometer order.
std::optional<IdentityViolation> search(const FiniteSemigroup& carrier,
                                        std::optional<std::uint32_t> identity,
                                        const Identity& id,
                                        const std::vector<std::uint32_t>& domain,
                                        const OrderedMonoid* order, std::uint32_t clm_length) {
  if (id.relation == Identity::Relation::leq && order == nullptr)
    throw std::invalid_argument("inequality needs an ordered carrier");
  std::vector<char> vars = variables(id);
  std::size_t k = vars.size();
  if (domain.empty() && k > 0) return std::nullopt;  // no assignments at all
  std::vector<std::size_t> odo(k, 0);
  std::int64_t assignment[26];
  std::fill(assignment, assignment + 26, -1);
  for (;;) {
    for (std::size_t i = 0; i < k; ++i) assignment[vars[i] - 'a'] = domain[odo[i]];
    std::uint32_t lhs = eval_term(carrier, identity, id.lhs, assignment);
    std::uint32_t rhs = eval_term(carrier, identity, id.rhs, assignment);
    bool ok = id.relation == Identity::Relation::equal ? lhs == rhs : order->le(lhs, rhs);
    if (!ok) {
      IdentityViolation v;
      v.vars = vars;
      for (std::size_t i = 0; i < k; ++i) v.values.push_back(domain[odo[i]]);
      v.lhs_value = lhs;
      v.rhs_value = rhs;
      v.clm_length = clm_length;
      return v;
    }
    // next assignment
    std::size_t i = 0;
    while (i < k && ++odo[i] == domain.size()) odo[i++] = 0;
    if (i == k) return std::nullopt;
  }
}

std::vector<std::uint32_t> all_elements(std::uint32_t n) {
  std::vector<std::uint32_t> out(n);
  for (std::uint32_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

}  // namespace

std::optional<IdentityViolation> find_violation(const FiniteMonoid& m, const Identity& id) {
  return search(m.as_semigroup(), m.identity, id, all_elements(m.n), nullptr, 0);
}

std::optional<IdentityViolation> find_violation(const OrderedMonoid& om, const Identity& id) {
  return search(om.monoid.as_semigroup(), om.monoid.identity, id, all_elements(om.monoid.n), &om, 0);
}

bool satisfies(const FiniteMonoid& m, const Identity& id) { return !find_violation(m, id); }
bool satisfies(const OrderedMonoid& om, const Identity& id) { return !find_violation(om, id); }

std::optional<IdentityViolation> find_violation(const FiniteSemigroup& s, const Identity& id) {
  return search(s, std::nullopt, id, all_elements(s.n), nullptr, 0);
}

bool semigroup_satisfies(const FiniteSemigroup& s, const Identity& id) {
  return !find_violation(s, id);
}

std::optional<IdentityViolation> find_stamp_violation(const Stamp& s, const Identity& id,
                                                      Identity::Interp interp,
                                                      const OrderedMonoid* order) {
  const FiniteSemigroup carrier = s.monoid.as_semigroup();
  if (interp == Identity::Interp::c_ne) {
    // images of nonempty words = generated subsemigroup, as monoid elements
    return search(carrier, s.monoid.identity, id, syntactic_semigroup(s).monoid_elements, order, 0);
  }
  if (interp != Identity::Interp::c_lm)
    throw std::invalid_argument("stamp interpretation must be C_ne or C_lm");

  // Subset sequence phi(A^k); variables range over one set per k, with k
  // covering every distinct set (index + period of the sequence).
  if (s.alphabet.empty()) throw std::invalid_argument("C_lm needs a nonempty alphabet");
  std::set<std::uint32_t> current(s.letter_image.begin(), s.letter_image.end());
  std::set<std::set<std::uint32_t>> seen;
  for (std::uint32_t k = 1; seen.insert(current).second; ++k) {
    std::vector<std::uint32_t> domain(current.begin(), current.end());
    auto v = search(carrier, s.monoid.identity, id, domain, order, k);
    if (v) return v;
    std::set<std::uint32_t> next;
    for (std::uint32_t m : current)
      for (std::uint32_t g : s.letter_image) next.insert(s.monoid.mul(m, g));
    current = std::move(next);
  }
  return std::nullopt;
}

bool stamp_satisfies(const Stamp& s, const Identity& id, Identity::Interp interp,
                     const OrderedMonoid* order) {
  return !find_stamp_violation(s, id, interp, order);
}

}  // namespace vlab
