#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "vlab/dfa.hpp"
#include "vlab/errors.hpp"
#include "vlab/omega_term.hpp"
#include "vlab/stamp.hpp"

using namespace vlab;

namespace {

FiniteMonoid u1() { return {2, {0, 1, 1, 1}, 0}; }

FiniteMonoid cyclic(std::uint32_t k) {
  FiniteMonoid m;
  m.n = k;
  m.identity = 0;
  m.table.resize(k * k);
  for (std::uint32_t i = 0; i < k; ++i)
    for (std::uint32_t j = 0; j < k; ++j) m.table[i * k + j] = (i + j) % k;
  return m;
}

SyntacticData synt(const char* regex, const char* extra = "") {
  return syntactic_stamp(compile(parse_regex(regex, extra)));
}

std::string round_trip(const char* text) { return to_string(parse_identity(text)); }

}  // namespace

TEST_CASE("identity parsing round-trips standard shapes") {
  CHECK(round_trip("x^w = xx^w") == "x^w = xx^w");
  CHECK(round_trip("(xy)^wx=(xy)^w") == "(xy)^wx = (xy)^w");
  CHECK(round_trip("x^(w-1)y = z") == "x^(w-1)y = z");
  CHECK(round_trip("x^(w+2) = x^w") == "x^(w+2) = x^w");
  CHECK(round_trip("x <= 1") == "x <= 1");
  CHECK(round_trip("x^wyx^w <= x^w") == "x^wyx^w <= x^w");
  CHECK(round_trip("(x^wy)^(w+1) = z") == "(x^wy)^(w+1) = z");
  CHECK(round_trip("xy = yx") == "xy = yx");
  // integer exponents are sugar for repeated concatenation
  CHECK(round_trip("x^3 = y") == "xxx = y");
  CHECK(round_trip("x^1 = x") == "x = x");
  CHECK(round_trip("(xy)^2 = 1") == "(xy)(xy) = 1");
}

TEST_CASE("identity parsing reports errors with positions") {
  auto pos_of = [](const char* text) -> std::size_t {
    try {
      parse_identity(text);
    } catch (const ParseError& e) {
      return e.position();
    }
    FAIL("expected ParseError for: ", text);
    return 0;
  };
  CHECK(pos_of("x") == 1);          // missing relation
  CHECK(pos_of("x =") == 3);        // missing rhs
  CHECK(pos_of("= x") == 0);        // missing lhs
  CHECK(pos_of("x^0 = x") == 3);    // integer exponents start at 1
  CHECK(pos_of("x^(w) = x") == 4);  // offset form needs a sign
  CHECK(pos_of("x^(w+) = x") == 5);
  CHECK(pos_of("X = x") == 0);      // uppercase is not a variable
  CHECK(pos_of("x = y)") == 5);
  CHECK(pos_of("x^(v+1) = x") == 3);
  CHECK(pos_of("(x = x") == 0);     // unclosed paren reported at the opener
  CHECK_THROWS_AS(parse_identity(""), ParseError);
  CHECK_THROWS_AS(parse_identity("x == y"), ParseError);
}

TEST_CASE("variables are collected sorted and deduplicated") {
  CHECK(variables(parse_identity("yxz = x")) == std::vector<char>{'x', 'y', 'z'});
  CHECK(variables(parse_identity("1 = 1")).empty());
  CHECK(variables(parse_identity("(ab)^wa = b")) == std::vector<char>{'a', 'b'});
}

TEST_CASE("groups satisfy the omega-is-identity law") {
  CHECK(satisfies(cyclic(2), parse_identity("x^w = 1")));
  CHECK(satisfies(cyclic(3), parse_identity("x^w = 1")));
  CHECK(satisfies(cyclic(6), parse_identity("x^w = 1")));
  CHECK_FALSE(satisfies(u1(), parse_identity("x^w = 1")));
  CHECK_FALSE(satisfies(synt("(ab)*").stamp.monoid, parse_identity("x^w = 1")));
}

TEST_CASE("integer exponent sugar evaluates correctly") {
  CHECK_FALSE(satisfies(cyclic(3), parse_identity("x^3 = x")));
  CHECK(satisfies(cyclic(3), parse_identity("x^4 = x")));
  CHECK(satisfies(cyclic(3), parse_identity("x^3 = 1")));
  CHECK(satisfies(u1(), parse_identity("x^2 = x")));
  CHECK_FALSE(satisfies(cyclic(2), parse_identity("x^2 = x")));
}

TEST_CASE("aperiodicity identity separates (ab)* from (aa)*") {
  Identity ap = parse_identity("x^w = xx^w");
  CHECK(satisfies(synt("(ab)*").stamp.monoid, ap));
  CHECK(satisfies(u1(), ap));
  CHECK_FALSE(satisfies(synt("(aa)*").stamp.monoid, ap));
  CHECK_FALSE(satisfies(cyclic(3), ap));
}

TEST_CASE("violation witnesses are concrete and minimal in odometer order") {
  // (ab)* is not J-trivial: the first counterexample to (xy)^w x = (xy)^w in
  // scan order is x = [b], y = [a], where lhs = [b] and rhs = [ba].
  auto v = find_violation(synt("(ab)*").stamp.monoid, parse_identity("(xy)^wx = (xy)^w"));
  REQUIRE(v.has_value());
  CHECK(v->vars == std::vector<char>{'x', 'y'});
  CHECK(v->values == std::vector<std::uint32_t>{2, 1});
  CHECK(v->lhs_value == 2);  // [b]
  CHECK(v->rhs_value == 5);  // [ba]
  CHECK(v->clm_length == 0);

  // the witness really does violate the identity when re-evaluated
  const FiniteMonoid& m = synt("(ab)*").stamp.monoid;
  std::int64_t asg[26];
  std::fill(asg, asg + 26, -1);
  asg['x' - 'a'] = v->values[0];
  asg['y' - 'a'] = v->values[1];
  Identity id = parse_identity("(xy)^wx = (xy)^w");
  CHECK(eval_term(m.as_semigroup(), m.identity, id.lhs, asg) == v->lhs_value);
  CHECK(eval_term(m.as_semigroup(), m.identity, id.rhs, asg) == v->rhs_value);
  CHECK(v->lhs_value != v->rhs_value);
}

TEST_CASE("omega idempotent equivalences hold across sample monoids") {
  for (const char* text : {"(ab)*", "(aa)*", "a(a+b)*", "a*b*", "(a+b)*a(a+b)*"}) {
    FiniteMonoid m = synt(text, "ab").stamp.monoid;
    CHECK(satisfies(m, parse_identity("x^(w-1)x = x^w")));
    CHECK(satisfies(m, parse_identity("xx^(w-1) = x^w")));
    CHECK(satisfies(m, parse_identity("x^wx^w = x^w")));
    CHECK(satisfies(m, parse_identity("x^(w+1)x^(w-1) = x^w")));
    CHECK(satisfies(m, parse_identity("(x^w)^w = x^w")));
  }
}

TEST_CASE("commutativity identity") {
  CHECK(satisfies(cyclic(4), parse_identity("xy = yx")));
  CHECK(satisfies(u1(), parse_identity("xy = yx")));
  CHECK_FALSE(satisfies(synt("(ab)*").stamp.monoid, parse_identity("xy = yx")));
  CHECK_FALSE(satisfies(synt("a(a+b)*").stamp.monoid, parse_identity("xy = yx")));
}

TEST_CASE("ordered interpretation decides inequalities") {
  OrderedMonoid ideal = syntactic_order(synt("(a+b)*a(a+b)*"));
  CHECK(satisfies(ideal, parse_identity("x <= 1")));
  CHECK_FALSE(satisfies(ideal, parse_identity("1 <= x")));

  OrderedMonoid even = syntactic_order(synt("(aa)*"));
  auto v = find_violation(even, parse_identity("x <= 1"));
  REQUIRE(v.has_value());
  CHECK(v->values == std::vector<std::uint32_t>{1});
  CHECK(v->lhs_value == 1);
  CHECK(v->rhs_value == 0);

  // equalities work on ordered carriers too
  CHECK(satisfies(even, parse_identity("xy = yx")));
}

TEST_CASE("inequalities require an ordered carrier") {
  CHECK_THROWS_AS(satisfies(u1(), parse_identity("x <= 1")), std::invalid_argument);
  FiniteSemigroup lz{2, {0, 0, 1, 1}};
  CHECK_THROWS_AS(semigroup_satisfies(lz, parse_identity("x <= xx")), std::invalid_argument);
}

TEST_CASE("semigroup interpretation ranges over semigroup elements") {
  FiniteSemigroup lz{2, {0, 0, 1, 1}};  // left-zero: xy = x
  CHECK(semigroup_satisfies(lz, parse_identity("xy = x")));
  CHECK_FALSE(semigroup_satisfies(lz, parse_identity("xy = y")));
  CHECK(semigroup_satisfies(lz, parse_identity("xx = x")));
  // the term 1 has no semigroup meaning
  CHECK_THROWS_AS(semigroup_satisfies(lz, parse_identity("x = 1")), std::invalid_argument);
}

TEST_CASE("nonempty-word interpretation restricts to the generated subsemigroup") {
  Identity left_zero = parse_identity("xy = x");
  // a(a+b)*: every nonempty word acts as its first letter
  Stamp first = synt("a(a+b)*").stamp;
  CHECK(stamp_satisfies(first, left_zero, Identity::Interp::c_ne));
  // but the full monoid contains the identity, which breaks xy = x
  CHECK_FALSE(satisfies(first.monoid, left_zero));

  // c*a(a+b+c)*: the image of c is the identity, so the subsemigroup is the
  // whole monoid and the law fails
  Stamp not_first = synt("c*a(a+b+c)*").stamp;
  CHECK_FALSE(stamp_satisfies(not_first, left_zero, Identity::Interp::c_ne));
  auto v = find_stamp_violation(not_first, left_zero, Identity::Interp::c_ne);
  REQUIRE(v.has_value());
  CHECK(v->lhs_value != v->rhs_value);
}

TEST_CASE("length-multiplying interpretation checks each image length") {
  Identity qa = parse_identity("(x^(w-1)y)^w = (x^(w-1)y)^(w+1)");
  // parity of a over {a}: each phi(A^k) is a singleton, law holds levelwise
  CHECK(stamp_satisfies(synt("(aa)*").stamp, qa, Identity::Interp::c_lm));
  // parity of a over {a, b} with b neutral: phi(A^1) is the whole group
  Dfa even = inverse_image(compile(parse_regex("(aa)*")),
                           FreeMorphism{"ab", "a", {"a", ""}, FreeMorphism::Class::arbitrary});
  Stamp mixed = syntactic_stamp(even).stamp;
  CHECK_FALSE(stamp_satisfies(mixed, qa, Identity::Interp::c_lm));
  auto v = find_stamp_violation(mixed, qa, Identity::Interp::c_lm);
  REQUIRE(v.has_value());
  CHECK(v->clm_length == 1);
  CHECK(v->vars == std::vector<char>{'x', 'y'});

  // the plain interpretation agrees on the mixed stamp (domain is everything)
  CHECK_FALSE(satisfies(mixed.monoid, qa));
}

TEST_CASE("levelwise domains really differ from the full monoid") {
  // over {a}: x <= 1 fails plainly on the ideal monoid of A*aA* restricted
  // level domains never contain the identity together with [a]
  Stamp s = synt("(aa)*").stamp;
  // phi(A^1) = {g} misses the identity, so xy = 1 holds at k = 1 but fails
  // at k = 2 where phi(A^2) = {1}
  auto v = find_stamp_violation(s, parse_identity("xy = x"), Identity::Interp::c_lm);
  REQUIRE(v.has_value());
  CHECK(v->clm_length == 1);  // g * g = 1 != g already at the first level
}

TEST_CASE("variable-free identities evaluate both sides") {
  CHECK(satisfies(u1(), parse_identity("1 = 1")));
  CHECK(satisfies(cyclic(3), parse_identity("11 = 1")));
}
