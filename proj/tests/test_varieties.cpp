#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "test_util.hpp"
#include "vlab/dfa.hpp"
#include "vlab/errors.hpp"
#include "vlab/varieties.hpp"

using namespace vlab;

namespace {

SyntacticData synt(const char* regex, const char* extra = "") {
  return syntactic_stamp(compile(parse_regex(regex, extra)));
}

Dfa lang(const char* regex, const char* extra = "") {
  return compile(parse_regex(regex, extra));
}

bool member(const char* variety, const char* regex, const char* extra = "") {
  return is_member(synt(regex, extra), variety).member;
}

}  // namespace

TEST_CASE("registry holds the catalog") {
  CHECK(variety_registry().size() == 18);
  CHECK(find_variety("J").identities.size() == 2);
  CHECK(find_variety("J").alternate_identities.size() == 2);
  CHECK(find_variety("DA").carrier == CarrierKind::monoid);
  CHECK(find_variety("K").carrier == CarrierKind::semigroup);
  CHECK(find_variety("J+").carrier == CarrierKind::ordered_monoid);
  CHECK(find_variety("K1").carrier == CarrierKind::stamp_c_ne);
  CHECK(find_variety("QA").carrier == CarrierKind::stamp_c_lm);
  CHECK(find_variety("Zero").carrier == CarrierKind::structural);
  CHECK_THROWS_AS(find_variety("nosuch"), std::invalid_argument);
  // identity-backed entries parse
  for (const VarietyDef& def : variety_registry()) {
    for (const std::string& t : def.identities) CHECK_NOTHROW(parse_identity(t));
    for (const std::string& t : def.alternate_identities) CHECK_NOTHROW(parse_identity(t));
    CHECK((def.carrier != CarrierKind::structural || !def.structural.empty()));
  }
}

TEST_CASE("star freeness is aperiodicity of the syntactic monoid") {
  CHECK(member("A", "(ab)*"));
  CHECK_FALSE(member("A", "(aa)*"));
  CHECK(member("A", "a*b*"));
  CHECK(member("G", "(aa)*"));
  CHECK_FALSE(member("G", "(ab)*"));
  CHECK(member("G", "a*", "a"));  // trivial group
}

TEST_CASE("membership samples across the catalog") {
  // letter-set language: contains a and b, no c
  const char* both_no_c = "(a+b+c)*a(a+b+c)*&(a+b+c)*b(a+b+c)*&(a+b)*";
  CHECK(member("J1", both_no_c));
  CHECK_FALSE(member("J1", "(a+b)*a(a+b)*b(a+b)*"));  // a-before-b is order sensitive
  CHECK(member("J1", "(a+b)*a(a+b)*"));

  CHECK(member("J", "(a+b)*a(a+b)*b(a+b)*"));  // piecewise testable
  CHECK_FALSE(member("J", "(ab)*"));
  CHECK(member("Com", "(aa)*"));
  CHECK_FALSE(member("Com", "a(a+b)*"));
  CHECK(member("J1vG", "(aa)*"));
  CHECK(member("J1vG", "(a+b)*a(a+b)*"));
  CHECK_FALSE(member("J1vG", "(ab)*"));

  CHECK(member("R", "a*b*"));
  CHECK(member("L", "a*b*"));
  CHECK(member("DA", "a*b*"));
  CHECK_FALSE(member("DA", "(ab)*"));  // the Brandt monoid is the classic non-DA witness
  CHECK(member("DA", "(a+b)*a"));
  CHECK_FALSE(member("R", "(a+b)*a"));
  CHECK(member("L", "(a+b)*a"));
  CHECK_FALSE(member("L", "a(a+b)*"));
  CHECK(member("R", "a(a+b)*"));
}

TEST_CASE("prefix, suffix, and local varieties act on the syntactic semigroup") {
  CHECK(member("K", "a(a+b)*"));
  CHECK_FALSE(member("D", "a(a+b)*"));
  CHECK(member("D", "(a+b)*a"));
  CHECK_FALSE(member("K", "(a+b)*a"));
  CHECK(member("LI", "a(a+b)*"));
  CHECK(member("LI", "(a+b)*a"));
  CHECK_FALSE(member("LI", "(ab)*"));
  CHECK_FALSE(member("K", "(a+b)*a(a+b)*"));

  CHECK(member("Nilpotent", "ab"));
  CHECK(member("Nilpotent", "~(ab)"));  // cofinite twin
  CHECK_FALSE(member("Nilpotent", "a*", "ab"));
  CHECK_FALSE(member("Nilpotent", "(ab)*"));
}

TEST_CASE("ordered varieties") {
  CHECK(member("J+", "(a+b)*a(a+b)*"));
  CHECK_FALSE(member("J+", "~((a+b)*a(a+b)*)"));
  CHECK(member("J+", "(a+b)*", "ab"));
  CHECK(member("J+", "(a+b)*a(a+b)*b(a+b)*"));
  CHECK_FALSE(member("J+", "a(a+b)*"));  // not closed under inserting a letter in front

  CHECK(member("PolIneq", "(a+b)*a(a+b)*"));
  CHECK_FALSE(member("PolIneq", "(aa)*"));
}

TEST_CASE("first-letter membership uses the nonempty-word interpretation") {
  CHECK(member("K1", "a(a+b)*"));
  CHECK_FALSE(member("K1", "c*a(a+b+c)*"));
  CHECK(member("K1", "b(a+b)*"));
  CHECK_FALSE(member("K1", "(a+b)*a"));
}

TEST_CASE("quasi-aperiodicity runs both deciders in agreement") {
  CHECK(member("QA", "(aa)*"));  // letter-length counting handles the parity
  CHECK(member("QA", "(ab)*"));
  CHECK(member("QA", "a*b*"));
  // parity of a with a neutral letter cannot be fixed by position counting
  Dfa mixed = inverse_image(lang("(aa)*"),
                            FreeMorphism{"ab", "a", {"a", ""}, FreeMorphism::Class::arbitrary});
  CHECK_FALSE(is_member(syntactic_stamp(mixed), "QA").member);
}

TEST_CASE("zero detection as a variety entry") {
  CHECK(member("Zero", "(ab)*"));
  CHECK(member("Zero", "a*b*"));
  CHECK_FALSE(member("Zero", "a(a+b)*"));  // two left zeros, so no zero
  CHECK_FALSE(member("Zero", "(aa)*"));
  MembershipResult r = is_member(synt("(aa)*"), "Zero");
  CHECK(r.note == "has_zero fails");
}

TEST_CASE("negative membership carries an auditable witness") {
  MembershipResult r = is_member(synt("(aa)*"), "A");
  REQUIRE_FALSE(r.member);
  CHECK(r.failed_identity == "x^w = xx^w");
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->vars == std::vector<char>{'x'});
  CHECK(r.witness->values == std::vector<std::uint32_t>{1});  // the class of a
  CHECK(r.witness->lhs_value == 0);
  CHECK(r.witness->rhs_value == 1);

  // semigroup witnesses come back as monoid element indices
  MembershipResult d = is_member(synt("a(a+b)*"), "D");
  REQUIRE_FALSE(d.member);
  REQUIRE(d.witness.has_value());
  for (std::uint32_t v : d.witness->values) CHECK(v < synt("a(a+b)*").stamp.monoid.n);
}

TEST_CASE("identity deciders agree with their structural twins") {
  // random DFAs whose syntactic monoid fits a small cap; worst cases are
  // skipped (their monoids grow towards states^states)
  std::mt19937_64 rng(20240817);
  int kept = 0;
  for (int i = 0; i < 500 && kept < 100; ++i) {
    SyntacticData s;
    try {
      s = syntactic_stamp(testutil::random_dfa(rng, 5, "ab"), 400);
    } catch (const CapExceeded&) {
      continue;
    }
    ++kept;
    for (const char* name : {"J", "A", "R", "L"}) {
      const VarietyDef& def = find_variety(name);
      bool by_identity = is_member(s, def).member;
      CHECK(by_identity == *structural_member(s, def));
      // the alternate basis, when present, agrees too
      if (!def.alternate_identities.empty()) {
        bool alt = true;
        for (const std::string& t : def.alternate_identities)
          alt = alt && satisfies(s.stamp.monoid, parse_identity(t));
        CHECK(alt == by_identity);
      }
    }
  }
  CHECK(kept >= 50);
}

TEST_CASE("insertion-pattern search matches the order decider") {
  CHECK(forbidden_pattern_sigma1(lang("(a+b)*a(a+b)*")));
  CHECK_FALSE(forbidden_pattern_sigma1(lang("~((a+b)*a(a+b)*)")));
  CHECK(forbidden_pattern_sigma1(lang("(a+b)*")));
  CHECK(forbidden_pattern_sigma1(lang("0", "ab")));

  // is_member("J+") raises InternalError if the two ever disagree
  std::mt19937_64 rng(991);
  int kept = 0;
  for (int i = 0; i < 2000 && kept < 300; ++i) {
    Dfa d = testutil::random_dfa(rng, 6, "ab");
    SyntacticData s;
    try {
      s = syntactic_stamp(d, 150);
    } catch (const CapExceeded&) {
      continue;
    }
    ++kept;
    CHECK(is_member(s, "J+").member == forbidden_pattern_sigma1(d));
  }
  CHECK(kept >= 100);
}

TEST_CASE("density verdicts with verified witnesses") {
  CHECK(is_dense(lang("(a+b)*")).dense);
  CHECK(is_dense(lang("(a+b)*a(a+b)*")).dense);

  DensityInfo bstar = is_dense(lang("b*", "ab"));
  REQUIRE_FALSE(bstar.dense);
  REQUIRE(bstar.witness.has_value());
  CHECK(bstar.witness->find('a') != std::string::npos);

  DensityInfo ab = is_dense(lang("(ab)*"));
  REQUIRE_FALSE(ab.dense);
  CHECK(*ab.witness == "aa");

  // empty language: the witness is a letter
  DensityInfo none = is_dense(lang("0", "ab"));
  REQUIRE_FALSE(none.dense);
  CHECK(*none.witness == "a");

  // one-letter universe: a^n is always a factor of a^2n, so even the parity
  // language is dense
  CHECK(is_dense(lang("a*", "a")).dense);
  CHECK(is_dense(lang("(aa)*")).dense);
}

TEST_CASE("witness soundness on random samples") {
  std::mt19937_64 rng(314159);
  for (int i = 0; i < 60; ++i) {
    Dfa d = testutil::random_dfa(rng, 5, "ab");
    DensityInfo di;
    try {
      di = is_dense(d, 400);
    } catch (const CapExceeded&) {
      continue;
    }
    if (di.dense) continue;
    REQUIRE(di.witness.has_value());
    // L and A* witness A* are disjoint: check by word enumeration up to length 7
    for (const std::string& w : testutil::words_upto("ab", 7))
      if (accepts(d, w)) CHECK(w.find(*di.witness) == std::string::npos);
  }
}

TEST_CASE("density classes from cycle structure") {
  CHECK(density_class(lang("ab+ba")) == DensityClass::finite);
  CHECK(density_class(lang("0", "ab")) == DensityClass::finite);
  CHECK(density_class(lang("1", "ab")) == DensityClass::finite);
  CHECK(density_class(lang("a*", "a")) == DensityClass::slender);
  CHECK(density_class(lang("a*", "ab")) == DensityClass::slender);
  CHECK(density_class(lang("(ab)*")) == DensityClass::slender);
  CHECK(density_class(lang("a*b", "ab")) == DensityClass::slender);
  CHECK(density_class(lang("ab*a")) == DensityClass::slender);
  CHECK(density_class(lang("a*b*")) == DensityClass::sparse);
  CHECK(density_class(lang("a*ba*")) == DensityClass::sparse);
  CHECK(density_class(lang("a*b*a*")) == DensityClass::sparse);
  CHECK(density_class(lang("(a+b)*")) == DensityClass::exponential);
  CHECK(density_class(lang("(a+b)*a(a+b)*")) == DensityClass::exponential);
  CHECK(density_class(lang("(aa)*")) == DensityClass::slender);
}

TEST_CASE("classification of (ab)* end to end") {
  ClassificationReport r = classify(lang("(ab)*"));
  CHECK(r.j1 == Verdict::no);
  CHECK(r.piecewise_testable == Verdict::no);
  CHECK(r.star_free == Verdict::yes);
  CHECK(r.group == Verdict::no);
  CHECK(r.sigma1 == Verdict::no);
  CHECK(r.first_letter == Verdict::no);
  CHECK(r.qa == Verdict::yes);
  CHECK(r.r_trivial == Verdict::no);
  CHECK(r.l_trivial == Verdict::no);
  CHECK(r.da == Verdict::no);
  CHECK(r.has_zero == Verdict::yes);
  CHECK(r.dense == Verdict::no);
  CHECK(*r.non_dense_witness == "aa");
  CHECK(r.density == DensityClass::slender);
  CHECK_FALSE(r.capped);

  CHECK(report_to_json(r) == R"({
  "j1": false,
  "piecewise_testable": false,
  "star_free": true,
  "group": false,
  "sigma1": false,
  "first_letter": false,
  "qa": true,
  "r_trivial": false,
  "l_trivial": false,
  "da": false,
  "has_zero": true,
  "dense": false,
  "density_class": "slender"
})");
}

TEST_CASE("classification examples from the catalog") {
  const char* both_no_c = "(a+b+c)*a(a+b+c)*&(a+b+c)*b(a+b+c)*&(a+b)*";
  CHECK(classify(lang(both_no_c)).j1 == Verdict::yes);
  CHECK(classify(lang("(a+b)*a(a+b)*")).sigma1 == Verdict::yes);
  CHECK(classify(lang("~((a+b)*a(a+b)*)")).sigma1 == Verdict::no);
  CHECK(classify(lang("a(a+b)*")).first_letter == Verdict::yes);
  CHECK(classify(lang("c*a(a+b+c)*")).first_letter == Verdict::no);
  CHECK(classify(lang("(aa)*")).group == Verdict::yes);
  CHECK(classify(lang("(aa)*")).qa == Verdict::yes);
}

TEST_CASE("classification respects the implication lattice on random inputs") {
  std::mt19937_64 rng(777);
  int processed = 0;
  for (int i = 0; i < 120; ++i) {
    Dfa d = testutil::random_dfa(rng, 5, "ab");
    // classify performs internal lattice assertions; reaching here means they
    // all held, but spot-check the reported values too
    ClassificationReport r = classify(d, 150);
    if (r.capped) continue;
    ++processed;
    if (r.j1 == Verdict::yes) CHECK(r.piecewise_testable == Verdict::yes);
    if (r.piecewise_testable == Verdict::yes) CHECK(r.star_free == Verdict::yes);
    if (r.sigma1 == Verdict::yes) CHECK(r.star_free == Verdict::yes);
    CHECK((r.piecewise_testable == Verdict::yes) ==
          (r.r_trivial == Verdict::yes && r.l_trivial == Verdict::yes));
    if (r.piecewise_testable == Verdict::yes) CHECK(r.da == Verdict::yes);
  }
  CHECK(processed >= 40);
}

TEST_CASE("cap overflow yields a partial report") {
  ClassificationReport r = classify(lang("(ab)*"), 3);
  CHECK(r.capped);
  CHECK(r.j1 == Verdict::unavailable);
  CHECK(r.dense == Verdict::unavailable);
  CHECK(r.density == DensityClass::slender);  // automaton-level field survives
  std::string js = report_to_json(r);
  CHECK(js.find("\"j1\": \"unavailable\"") != std::string::npos);
  CHECK(js.find("\"density_class\": \"slender\"") != std::string::npos);
}

TEST_CASE("closure of star freeness under quotients and inverse images") {
  for (const char* text : {"(ab)*", "a*b*", "(a+b)*a(a+b)*"}) {
    Dfa d = lang(text, "ab");
    bool sf = classify(d).star_free == Verdict::yes;
    for (const std::string& w : testutil::words_upto("ab", 2)) {
      CHECK((classify(left_quotient(d, w)).star_free == Verdict::yes) == sf);
      CHECK((classify(right_quotient(d, w)).star_free == Verdict::yes) == sf);
    }
    FreeMorphism f{"ab", "ab", {"ab", "ba"}, FreeMorphism::Class::length_multiplying};
    CHECK((classify(inverse_image(d, f)).star_free == Verdict::yes) == sf);
  }
}
