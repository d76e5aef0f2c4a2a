#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "test_util.hpp"
#include "vlab/dfa.hpp"
#include "vlab/errors.hpp"
#include "vlab/regex.hpp"

using namespace vlab;
using testutil::regex_matches;
using testutil::same_language_upto;
using testutil::words_upto;

TEST_CASE("regex parses with the documented precedence") {
  ParsedRegex pr = parse_regex("a+b&cd*");
  REQUIRE(pr.root.kind == Regex::Kind::union_);
  REQUIRE(pr.root.children.size() == 2);
  CHECK(pr.root.children[0].kind == Regex::Kind::letter);
  const Regex& inter = pr.root.children[1];
  REQUIRE(inter.kind == Regex::Kind::intersection);
  REQUIRE(inter.children.size() == 2);
  CHECK(inter.children[0].kind == Regex::Kind::letter);
  const Regex& cat = inter.children[1];
  REQUIRE(cat.kind == Regex::Kind::concat);
  REQUIRE(cat.children.size() == 2);
  CHECK(cat.children[1].kind == Regex::Kind::star);
  CHECK(pr.alphabet == "abcd");
}

TEST_CASE("regex star binds to the atom and complement to the next atom") {
  ParsedRegex pr = parse_regex("~ab*");
  REQUIRE(pr.root.kind == Regex::Kind::concat);
  CHECK(pr.root.children[0].kind == Regex::Kind::complement);
  CHECK(pr.root.children[1].kind == Regex::Kind::star);
}

TEST_CASE("regex parse errors carry 0-based positions") {
  CHECK_THROWS_AS(parse_regex("(("), ParseError);
  try {
    parse_regex("((");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
  try {
    parse_regex("a+");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
  try {
    parse_regex("a)b");
  } catch (const ParseError& e) {
    CHECK(e.position() == 1);
  }
  CHECK_THROWS_AS(parse_regex("A"), ParseError);
  CHECK_THROWS_AS(parse_regex(""), ParseError);
}

TEST_CASE("regex print/parse round-trips on random trees") {
  std::mt19937_64 rng(20260822);
  for (int i = 0; i < 300; ++i) {
    Regex r = testutil::random_regex(rng, 4);
    std::string text = to_string(r);
    ParsedRegex back = parse_regex(text, "ab");
    CHECK(to_string(back.root) == text);
  }
}

TEST_CASE("declared alphabet extends the letters in the text") {
  ParsedRegex pr = parse_regex("b*", "ab");
  CHECK(pr.alphabet == "ab");
  Dfa d = compile(pr);
  CHECK(accepts(d, "bb"));
  CHECK_FALSE(accepts(d, "a"));
  CHECK_THROWS_AS(parse_regex("a", "A"), std::invalid_argument);
}

TEST_CASE("compile produces canonical minimal complete automata") {
  // frozen sizes, confirmed by hand minimization
  CHECK(compile(parse_regex("1", "a")).state_count == 2);     // initial + sink
  CHECK(compile(parse_regex("(aa)*")).state_count == 2);      // parity cycle
  CHECK(compile(parse_regex("(a+b)*")).state_count == 1);
  CHECK(compile(parse_regex("(ab)*")).state_count == 3);      // cycle + sink
  CHECK(compile(parse_regex("0", "ab")).state_count == 1);
  // complete: every state has an outgoing edge per letter by construction
  Dfa d = compile(parse_regex("a(a+b)*"));
  CHECK(d.delta.size() == d.state_count * d.alphabet.size());
}

TEST_CASE("compiled automata agree with definitional regex matching") {
  const char* cases[] = {
      "(ab)*",        "(aa)*",          "a(a+b)*",      "(a+b)*a(a+b)*",
      "a*b*",         "~(a*b*)",        "a*&b*",        "(a+b)*&~(aa(a+b)*)",
      "~a(a+b)*b",    "(a+1)(b+1)ab",   "~(~a*+~b*)",   "((a+b)(a+b))*",
  };
  for (const char* text : cases) {
    ParsedRegex pr = parse_regex(text, "ab");
    Dfa d = compile(pr);
    for (const std::string& w : words_upto(pr.alphabet, 7))
      CHECK(accepts(d, w) == regex_matches(pr.root, w));
  }
}

TEST_CASE("random regexes compile to the language the tree denotes") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 120; ++i) {
    Regex r = testutil::random_regex(rng, 3);
    ParsedRegex pr{r, "ab"};
    Dfa d = compile(pr);
    for (const std::string& w : words_upto("ab", 5))
      CHECK(accepts(d, w) == regex_matches(r, w));
  }
}

TEST_CASE("minimize collapses duplicate states and is idempotent") {
  // states 1 and 3 are behaviorally identical copies, as are 0 and 2
  Dfa d;
  d.alphabet = "a";
  d.state_count = 4;
  d.initial = 0;
  d.accepting = {false, true, false, true};
  d.delta = {1, 2, 3, 0};
  Dfa m = minimize(d);
  CHECK(m.state_count == 2);
  CHECK(m == minimize(m));
  CHECK(same_language_upto(m, d, 8));
}

TEST_CASE("minimize drops unreachable states") {
  Dfa d;
  d.alphabet = "a";
  d.state_count = 3;
  d.initial = 0;
  d.accepting = {true, false, true};
  d.delta = {0, 0, 2};  // state 2 unreachable
  CHECK(minimize(d).state_count == 1);
}

TEST_CASE("minimization is canonical: equal languages give equal structs") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    Dfa d = testutil::random_dfa(rng, 5, "ab");
    Dfa m1 = minimize(d);
    // relabel states by a rotation, then re-minimize
    std::uint32_t n = d.state_count;
    Dfa rot = d;
    auto newid = [&](std::uint32_t q) { return (q + 1) % n; };
    rot.initial = newid(d.initial);
    for (std::uint32_t q = 0; q < n; ++q) {
      rot.accepting[newid(q)] = d.accepting[q];
      for (std::size_t a = 0; a < d.alphabet.size(); ++a)
        rot.delta[newid(q) * d.alphabet.size() + a] = newid(d.next(q, a));
    }
    CHECK(minimize(rot) == m1);
    CHECK(same_language_upto(m1, d, 6));
  }
}

TEST_CASE("boolean operations match their word-level definitions") {
  Dfa x = compile(parse_regex("(ab)*", "ab"));
  Dfa y = compile(parse_regex("a*b*", "ab"));
  Dfa u = union_(x, y);
  Dfa i = intersection(x, y);
  Dfa c = complement(x);
  for (const std::string& w : words_upto("ab", 7)) {
    CHECK(accepts(u, w) == (accepts(x, w) || accepts(y, w)));
    CHECK(accepts(i, w) == (accepts(x, w) && accepts(y, w)));
    CHECK(accepts(c, w) == !accepts(x, w));
  }
  CHECK(complement(c) == x);
  CHECK(is_empty(intersection(x, c)));
  CHECK_FALSE(is_empty(x));
  Dfa z = compile(parse_regex("a*", "a"));
  CHECK_THROWS_AS(union_(x, z), std::invalid_argument);
}

TEST_CASE("quotients satisfy their defining membership equations") {
  for (const char* text : {"(ab)*", "a(a+b)*", "a*b*", "(a+b)*a"}) {
    Dfa d = compile(parse_regex(text, "ab"));
    for (const std::string& v : words_upto("ab", 3)) {
      Dfa lq = left_quotient(d, v);
      Dfa rq = right_quotient(d, v);
      for (const std::string& w : words_upto("ab", 5)) {
        CHECK(accepts(lq, w) == accepts(d, v + w));
        CHECK(accepts(rq, w) == accepts(d, w + v));
      }
    }
    CHECK(left_quotient(d, "") == minimize(d));
    CHECK(right_quotient(d, "") == minimize(d));
  }
  Dfa d = compile(parse_regex("(ab)*"));
  CHECK_THROWS_AS(left_quotient(d, "c"), std::invalid_argument);
}

TEST_CASE("left quotient of (ab)* by a is b(ab)*") {
  Dfa lq = left_quotient(compile(parse_regex("(ab)*")), "a");
  CHECK(lq == compile(parse_regex("b(ab)*", "ab")));
}

TEST_CASE("morphism validation enforces the declared class") {
  FreeMorphism erasing{"ab", "a", {"a", ""}, FreeMorphism::Class::arbitrary};
  CHECK_NOTHROW(validate(erasing));
  erasing.cls = FreeMorphism::Class::non_erasing;
  CHECK_THROWS_AS(validate(erasing), std::invalid_argument);

  FreeMorphism lm{"ab", "ab", {"ab", "ba"}, FreeMorphism::Class::length_multiplying};
  CHECK_NOTHROW(validate(lm));
  lm.images = {"ab", "b"};
  CHECK_THROWS_AS(validate(lm), std::invalid_argument);

  FreeMorphism lp{"ab", "c", {"c", "c"}, FreeMorphism::Class::length_preserving};
  CHECK_NOTHROW(validate(lp));

  FreeMorphism bad{"ab", "a", {"a", "x"}, FreeMorphism::Class::arbitrary};
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("inverse image satisfies accepts(f^-1 L, w) == accepts(L, f(w))") {
  Dfa even = compile(parse_regex("(aa)*"));
  FreeMorphism f{"ab", "a", {"a", ""}, FreeMorphism::Class::arbitrary};
  Dfa pre = inverse_image(even, f);
  CHECK(pre.alphabet == "ab");
  for (const std::string& w : words_upto("ab", 6))
    CHECK(accepts(pre, w) == accepts(even, f.apply(w)));

  // b erased: the language is "even number of a's" over {a, b}
  CHECK(accepts(pre, "abab"));
  CHECK(accepts(pre, "bb"));
  CHECK_FALSE(accepts(pre, "ab"));

  FreeMorphism g{"a", "b", {"bb"}, FreeMorphism::Class::length_multiplying};
  Dfa bb = inverse_image(compile(parse_regex("(bb)*")), g);
  CHECK(bb == compile(parse_regex("a*")));

  CHECK_THROWS_AS(inverse_image(even, g), std::invalid_argument);  // alphabet mismatch
}

TEST_CASE("DFA JSON round-trips bit-exactly") {
  std::string text =
      R"({"alphabet":["a","b"],"states":3,"initial":0,"accepting":[0],"delta":[[1,2],[0,2],[2,2]]})";
  Dfa d = dfa_from_json(text);
  CHECK(d.state_count == 3);
  CHECK(dfa_to_json(d) == text);
  CHECK(d == compile(parse_regex("(aa)*", "ab")));

  CHECK_THROWS_AS(dfa_from_json("{"), ParseError);
  CHECK_THROWS_AS(dfa_from_json(R"({"alphabet":["a"],"states":1,"initial":5,"accepting":[],"delta":[[0]]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(dfa_from_json(R"({"alphabet":["a"],"states":2,"initial":0,"accepting":[],"delta":[[0]]})"),
                  std::invalid_argument);
}

TEST_CASE("dfa validation rejects malformed tables") {
  Dfa d;
  d.alphabet = "ba";  // unsorted
  d.state_count = 1;
  d.accepting = {false};
  d.delta = {0, 0};
  CHECK_THROWS_AS(validate(d), std::invalid_argument);
  d.alphabet = "ab";
  CHECK_NOTHROW(validate(d));
  d.delta = {0, 7};
  CHECK_THROWS_AS(validate(d), std::invalid_argument);
}
