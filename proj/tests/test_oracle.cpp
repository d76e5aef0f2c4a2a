#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "test_util.hpp"
#include "vlab/dfa.hpp"
#include "vlab/errors.hpp"
#include "vlab/monoid.hpp"
#include "vlab/oracle.hpp"
#include "vlab/regex.hpp"
#include "vlab/stamp.hpp"

using namespace vlab;

namespace {

Dfa lang(const std::string& re, const std::string& extra = "") {
  return compile(parse_regex(re, extra));
}

}  // namespace

TEST_CASE("brute-force word grouping reproduces the known monoid sizes") {
  CHECK(syntactic_monoid_bruteforce(lang("(aa)*"), 4).n == 2);
  CHECK(syntactic_monoid_bruteforce(lang("(a+b)*"), 1).n == 1);
  CHECK(syntactic_monoid_bruteforce(lang("(ab)*"), 9).n == 6);
  // the completeness bound for (ab)* is 3^2 = 9
  CHECK_THROWS_AS(syntactic_monoid_bruteforce(lang("(ab)*"), 8), std::invalid_argument);
}

TEST_CASE("brute-force word grouping agrees with the transition monoid construction") {
  for (const char* re : {"(ab)*", "a*b*", "(a+b)*a(a+b)*", "(aa)*", "(a+bb)*", "~(a*b*)"}) {
    Dfa d = lang(re);
    FiniteMonoid bf = syntactic_monoid_bruteforce(d, 100);
    FiniteMonoid tm = transition_monoid(minimize(d)).stamp.monoid;
    CHECK(bf.n == tm.n);
    CHECK(bf.identity == tm.identity);
    CHECK(bf.table == tm.table);
  }
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 25; ++i) {
    Dfa d = testutil::random_dfa(rng, 4, "ab");
    FiniteMonoid bf = syntactic_monoid_bruteforce(d, 100);
    CHECK(bf.table == transition_monoid(minimize(d)).stamp.monoid.table);
  }
}

TEST_CASE("word counting matches closed forms and direct enumeration") {
  CHECK(count_words(lang("a*b*"), 5) == 6);
  CHECK(count_words(lang("(a+b)*"), 10) == 1024);
  CHECK(count_words(lang("0", "ab"), 7) == 0);
  CHECK(count_words(lang("(a+b)*"), 200) == boost::multiprecision::cpp_int(1) << 200);
  for (const char* re : {"a*b*", "(ab)*", "(a+b)*a(a+b)*"}) {
    Dfa d = lang(re);
    std::vector<std::uint64_t> by_len(9, 0);
    for (const std::string& w : testutil::words_upto("ab", 8))
      if (accepts(d, w)) ++by_len[w.size()];
    for (std::uint32_t n = 0; n <= 8; ++n) CHECK(count_words(d, n) == by_len[n]);
  }
  CHECK_THROWS_AS(count_words(lang("a*"), 201), std::invalid_argument);
}

TEST_CASE("random transition monoids are deterministic with recorded sizes") {
  TransitionMonoid a = random_transition_monoid(2, 5, 2);
  TransitionMonoid b = random_transition_monoid(2, 5, 2);
  CHECK(a.stamp.monoid.table == b.stamp.monoid.table);
  CHECK(a.representatives == b.representatives);
  // sizes recorded on first run and kept as regression anchors
  CHECK(a.stamp.monoid.n == 224);
  CHECK(random_transition_monoid(1, 4, 2).stamp.monoid.n == 5);
  CHECK(random_transition_monoid(3, 3, 2).stamp.monoid.n == 24);
  CHECK(random_transition_monoid(7, 6, 2).stamp.monoid.n == 306);
  CHECK(random_transition_monoid(11, 6, 1).stamp.monoid.n == 4);
  CHECK_THROWS_AS(random_transition_monoid(0, 7, 2), std::invalid_argument);
  CHECK_THROWS_AS(random_transition_monoid(0, 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(random_transition_monoid(0, 0, 1), std::invalid_argument);
}

TEST_CASE("subword vectors list scattered subwords in length-lex order") {
  CHECK(subword_vector("abab", 2) ==
        std::vector<std::string>{"", "a", "b", "aa", "ab", "ba", "bb"});
  CHECK(subword_vector("aaa", 4) == std::vector<std::string>{"", "a", "aa", "aaa"});
  CHECK(subword_vector("", 3) == std::vector<std::string>{""});
  CHECK(subword_vector("ba", 1) == std::vector<std::string>{"", "a", "b"});
  CHECK(subword_vector("abc", 3).size() == 8);  // all eight scattered subwords
  CHECK_THROWS_AS(subword_vector("a", 5), std::invalid_argument);
}

TEST_CASE("piecewise consistency separates subword-determined languages") {
  CHECK(piecewise_consistency(lang("(a+b)*a(a+b)*b(a+b)*"), 2, 12));
  CHECK(piecewise_consistency(lang("a*b*"), 2, 12));  // no b before a
  CHECK_FALSE(piecewise_consistency(lang("(aa)*"), 4, 12));
  CHECK_FALSE(piecewise_consistency(lang("(ab)*"), 2, 8));
  CHECK_THROWS_AS(piecewise_consistency(lang("a*"), 5, 8), std::invalid_argument);
  CHECK_THROWS_AS(piecewise_consistency(lang("a*"), 2, 13), std::invalid_argument);
}

TEST_CASE("J-trivial syntactic monoids never violate piecewise consistency") {
  std::mt19937_64 rng(909);
  int j_trivial = 0;
  for (int i = 0; i < 40; ++i) {
    Dfa d = testutil::random_dfa(rng, 3, "ab");
    SyntacticData sd = syntactic_stamp(d);
    if (!is_j_trivial(sd.stamp.monoid)) continue;
    ++j_trivial;
    CHECK(piecewise_consistency(d, 4, 10));
  }
  CHECK(j_trivial >= 5);
}

TEST_CASE("fixture runner evaluates lines, compares outputs, and reports failures") {
  std::string good =
      R"({"operation": "count_words", "input": {"regex": "a*", "n": 3}, "output": "1", "provenance": "x"})";
  std::string bad =
      R"({"operation": "count_words", "input": {"regex": "a*", "n": 3}, "output": "2", "provenance": "x"})";
  std::string unknown = R"({"operation": "zzz", "input": {}, "output": 0})";
  std::string malformed = "{not json";
  FixtureResult r =
      run_fixture_text(good + "\n\n# comment\n" + bad + "\n" + unknown + "\n" + malformed + "\n");
  CHECK(r.total == 4);
  CHECK(r.passed == 1);
  REQUIRE(r.failures.size() == 3);
  CHECK(r.failures[0].find("line 4") == 0);
  CHECK(r.failures[0].find("expected") != std::string::npos);
  CHECK(r.failures[1].find("unknown operation") != std::string::npos);
  CHECK(r.failures[2].find("line 6") == 0);
}

TEST_CASE("recorded fixture corpus stays green") {
  std::ifstream in(std::string(VLAB_FIXTURE_DIR) + "/oracle.jsonl");
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  FixtureResult r = run_fixture_text(ss.str());
  for (const std::string& f : r.failures) CHECK_MESSAGE(false, f);
  CHECK(r.total == 18);
  CHECK(r.passed == 18);
}
