#include "vlab/regex.hpp"

#include <algorithm>
#include <set>

#include "vlab/errors.hpp"

namespace vlab {
namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  Regex parse() {
    Regex r = parse_expr();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return r;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\n' || text_[pos_] == '\r'))
      ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  // True at a position where an atom may start.
  bool at_atom() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return (c >= 'a' && c <= 'z') || c == '1' || c == '0' || c == '~' || c == '(';
  }

  Regex parse_expr() {
    std::vector<Regex> parts{parse_term()};
    while (peek_is('+')) {
      ++pos_;
      parts.push_back(parse_term());
    }
    if (parts.size() == 1) return parts[0];
    return {Regex::Kind::union_, 0, std::move(parts)};
  }

  Regex parse_term() {
    std::vector<Regex> parts{parse_inter()};
    while (peek_is('&')) {
      ++pos_;
      parts.push_back(parse_inter());
    }
    if (parts.size() == 1) return parts[0];
    return {Regex::Kind::intersection, 0, std::move(parts)};
  }

  Regex parse_inter() {
    std::vector<Regex> parts;
    if (!at_atom()) throw ParseError("expected expression", pos_);
    while (at_atom()) parts.push_back(parse_factor());
    if (parts.size() == 1) return parts[0];
    return {Regex::Kind::concat, 0, std::move(parts)};
  }

  Regex parse_factor() {
    Regex r = parse_atom();
    while (peek_is('*')) {
      ++pos_;
      r = Regex{Regex::Kind::star, 0, {std::move(r)}};
    }
    return r;
  }

  Regex parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("expected expression", pos_);
    char c = text_[pos_];
    if (c >= 'a' && c <= 'z') {
      ++pos_;
      return Regex::make_letter(c);
    }
    if (c == '1') {
      ++pos_;
      return Regex::make_epsilon();
    }
    if (c == '0') {
      ++pos_;
      return Regex::make_empty();
    }
    if (c == '~') {
      ++pos_;
      Regex inner = parse_atom();
      return Regex{Regex::Kind::complement, 0, {std::move(inner)}};
    }
    if (c == '(') {
      std::size_t open = pos_;
      ++pos_;
      Regex inner = parse_expr();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')')
        throw ParseError("unclosed '('", open);
      ++pos_;
      return inner;
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

void collect_letters(const Regex& r, std::set<char>& out) {
  if (r.kind == Regex::Kind::letter) out.insert(r.letter);
  for (const Regex& c : r.children) collect_letters(c, out);
}

// Precedence levels, loosest to tightest: union < intersection < concat <
// star/complement < atom.
int precedence(Regex::Kind k) {
  switch (k) {
    case Regex::Kind::union_: return 0;
    case Regex::Kind::intersection: return 1;
    case Regex::Kind::concat: return 2;
    case Regex::Kind::star:
    case Regex::Kind::complement: return 3;
    default: return 4;
  }
}

void print(const Regex& r, int parent_prec, std::string& out) {
  int prec = precedence(r.kind);
  bool parens = prec < parent_prec;
  if (parens) out += '(';
  switch (r.kind) {
    case Regex::Kind::empty: out += '0'; break;
    case Regex::Kind::epsilon: out += '1'; break;
    case Regex::Kind::letter: out += r.letter; break;
    case Regex::Kind::union_:
      for (std::size_t i = 0; i < r.children.size(); ++i) {
        if (i) out += '+';
        print(r.children[i], 1, out);
      }
      break;
    case Regex::Kind::intersection:
      for (std::size_t i = 0; i < r.children.size(); ++i) {
        if (i) out += '&';
        print(r.children[i], 2, out);
      }
      break;
    case Regex::Kind::concat:
      for (const Regex& c : r.children) print(c, 3, out);
      break;
    case Regex::Kind::star:
      print(r.children[0], 4, out);
      out += '*';
      break;
    case Regex::Kind::complement:
      out += '~';
      // ~ applies to an atom, so any composite child needs parentheses.
      print(r.children[0], 4, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

ParsedRegex parse_regex(const std::string& text, const std::string& extra_alphabet) {
  for (std::size_t i = 0; i < extra_alphabet.size(); ++i) {
    char c = extra_alphabet[i];
    if (c < 'a' || c > 'z')
      throw std::invalid_argument("alphabet letters must be lowercase a-z");
  }
  Parser p(text);
  ParsedRegex result;
  result.root = p.parse();
  std::set<char> letters(extra_alphabet.begin(), extra_alphabet.end());
  collect_letters(result.root, letters);
  result.alphabet.assign(letters.begin(), letters.end());
  return result;
}

std::string to_string(const Regex& r) {
  std::string out;
  print(r, 0, out);
  return out;
}

}  // namespace vlab
