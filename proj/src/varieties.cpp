#include "vlab/varieties.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

#include <json.hpp>

#include "vlab/errors.hpp"

namespace vlab {

const std::vector<VarietyDef>& variety_registry() {
  static const std::vector<VarietyDef> reg = {
      {"J1",
       "idempotent commutative monoids (languages determined by the set of letters occurring)",
       CarrierKind::monoid,
       {"xy = yx", "x^2 = x"},
       {},
       ""},
      {"J",
       "J-trivial monoids (piecewise testable languages, Simon)",
       CarrierKind::monoid,
       {"(xy)^wx = (xy)^w", "y(xy)^w = (xy)^w"},
       {"(xy)^w = (yx)^w", "xx^w = x^w"},
       "j_trivial"},
      {"A",
       "aperiodic monoids (star-free languages, Schutzenberger)",
       CarrierKind::monoid,
       {"x^w = xx^w"},
       {},
       "aperiodic"},
      {"G",
       "groups (languages recognized by permutation automata)",
       CarrierKind::monoid,
       {"x^w = 1"},
       {},
       ""},
      {"Com", "commutative monoids", CarrierKind::monoid, {"xy = yx"}, {}, ""},
      {"J1vG",
       "join of the idempotent commutative monoids and the groups",
       CarrierKind::monoid,
       {"x^(w+1) = x", "x^wy^w = y^wx^w"},
       {},
       ""},
      {"R",
       "R-trivial monoids (disjoint unions of A_0*a_1 A_1*a_2...)",
       CarrierKind::monoid,
       {"(xy)^wx = (xy)^w"},
       {},
       "r_trivial"},
      {"L",
       "L-trivial monoids (left dual of R)",
       CarrierKind::monoid,
       {"y(xy)^w = (xy)^w"},
       {},
       "l_trivial"},
      {"DA",
       "monoids whose regular J-classes are idempotent (two-variable first order, "
       "unambiguous polynomials)",
       CarrierKind::monoid,
       {"(xyz)^wz(xyz)^w = (xyz)^w"},
       {},
       ""},
      {"K",
       "semigroups with ey = e for every idempotent e (languages determined by a prefix)",
       CarrierKind::semigroup,
       {"x^wy = x^w"},
       {},
       ""},
      {"D",
       "semigroups with ye = e for every idempotent e (languages determined by a suffix)",
       CarrierKind::semigroup,
       {"yx^w = x^w"},
       {},
       ""},
      {"LI",
       "locally trivial semigroups (languages determined by a prefix and a suffix)",
       CarrierKind::semigroup,
       {"x^wyx^w = x^w"},
       {},
       ""},
      {"Nilpotent",
       "nilpotent semigroups: a zero which is the only idempotent (finite and cofinite "
       "languages)",
       CarrierKind::structural,
       {},
       {},
       "nilpotent"},
      {"J+",
       "ordered monoids with every element below 1 (existential first-order sentences, "
       "shuffle ideals)",
       CarrierKind::ordered_monoid,
       {"x <= 1"},
       {},
       ""},
      {"PolIneq",
       "ordered monoids satisfying the local inequality of polynomial closures",
       CarrierKind::ordered_monoid,
       {"x^wyx^w <= x^w"},
       {},
       ""},
      {"K1",
       "stamps whose nonempty-word images form a left-zero semigroup (membership depends "
       "only on the first letter)",
       CarrierKind::stamp_c_ne,
       {"xy = x"},
       {},
       ""},
      {"QA",
       "quasi-aperiodic stamps (first order with letter, order, and modular position "
       "predicates)",
       CarrierKind::stamp_c_lm,
       {"(x^(w-1)y)^w = (x^(w-1)y)^(w+1)"},
       {},
       "stable_aperiodic"},
      {"Zero",
       "monoids with a zero (languages with a zero)",
       CarrierKind::structural,
       {},
       {},
       "has_zero"},
  };
  return reg;
}

const VarietyDef& find_variety(const std::string& name) {
  for (const VarietyDef& v : variety_registry())
    if (v.name == name) return v;
  throw std::invalid_argument("unknown variety: " + name);
}

std::optional<bool> structural_member(const SyntacticData& s, const VarietyDef& def) {
  const std::string& p = def.structural;
  if (p.empty()) return std::nullopt;
  if (p == "j_trivial") return is_j_trivial(s.stamp.monoid);
  if (p == "r_trivial") return is_r_trivial(s.stamp.monoid);
  if (p == "l_trivial") return is_l_trivial(s.stamp.monoid);
  if (p == "aperiodic") return is_aperiodic(s.stamp.monoid.as_semigroup());
  if (p == "nilpotent") return is_nilpotent(syntactic_semigroup(s.stamp).semigroup);
  if (p == "has_zero") return has_zero(s.stamp.monoid);
  if (p == "stable_aperiodic") return is_aperiodic(stable_semigroup(s.stamp).semigroup);
  throw std::logic_error("unknown structural predicate: " + p);
}

namespace {

MembershipResult check_identities(const SyntacticData& s, CarrierKind carrier,
                                  const std::vector<std::string>& texts) {
  MembershipResult r;
  r.member = true;
  std::optional<OrderedMonoid> order;
  std::optional<GeneratedSemigroup> sg;
  for (const std::string& text : texts) {
    Identity id = parse_identity(text);
    std::optional<IdentityViolation> v;
    switch (carrier) {
      case CarrierKind::monoid:
        v = find_violation(s.stamp.monoid, id);
        break;
      case CarrierKind::ordered_monoid:
        if (!order) order = syntactic_order(s);
        v = find_violation(*order, id);
        break;
      case CarrierKind::semigroup: {
        if (!sg) sg = syntactic_semigroup(s.stamp);
        v = find_violation(sg->semigroup, id);
        if (v) {  // report witnesses as monoid elements
          for (std::uint32_t& x : v->values) x = sg->monoid_elements[x];
          v->lhs_value = sg->monoid_elements[v->lhs_value];
          v->rhs_value = sg->monoid_elements[v->rhs_value];
        }
        break;
      }
      case CarrierKind::stamp_c_ne:
        v = find_stamp_violation(s.stamp, id, Identity::Interp::c_ne);
        break;
      case CarrierKind::stamp_c_lm:
        v = find_stamp_violation(s.stamp, id, Identity::Interp::c_lm);
        break;
      case CarrierKind::structural:
        throw std::logic_error("structural entries have no identities");
    }
    if (v) {
      r.member = false;
      r.failed_identity = text;
      r.witness = std::move(v);
      return r;
    }
  }
  return r;
}

}  // namespace

MembershipResult is_member(const SyntacticData& s, const VarietyDef& def) {
  if (def.carrier == CarrierKind::structural) {
    MembershipResult r;
    r.member = *structural_member(s, def);
    r.note = def.structural + (r.member ? " holds" : " fails");
    return r;
  }
  MembershipResult r = check_identities(s, def.carrier, def.identities);
  if (def.name == "QA") {
    // the identity decider and the stable-semigroup test are equivalent;
    // run both and insist they agree
    bool st = *structural_member(s, def);
    if (st != r.member)
      throw InternalError(std::string("QA deciders disagree: identity says ") +
                          (r.member ? "member" : "non-member") + ", stable semigroup is " +
                          (st ? "aperiodic" : "not aperiodic"));
    r.note = st ? "stable semigroup aperiodic" : "stable semigroup not aperiodic";
  } else if (def.name == "J+") {
    // likewise for the order decider and the pattern search on the automaton
    bool pattern_free = forbidden_pattern_sigma1(s.minimal);
    if (pattern_free != r.member)
      throw InternalError(std::string("existential-fragment deciders disagree: order says ") +
                          (r.member ? "member" : "non-member") + ", pattern search says " +
                          (pattern_free ? "member" : "non-member"));
    r.note = pattern_free ? "no insertion pattern" : "insertion pattern found";
  }
  return r;
}

MembershipResult is_member(const SyntacticData& s, const std::string& name) {
  return is_member(s, find_variety(name));
}

bool forbidden_pattern_sigma1(const Dfa& d) {
  validate(d);
  const std::uint32_t n = d.state_count;
  const std::size_t k = d.alphabet.size();

  auto reachable_from = [&](std::uint32_t start) {
    std::vector<char> seen(n, 0);
    std::queue<std::uint32_t> q;
    seen[start] = 1;
    q.push(start);
    while (!q.empty()) {
      std::uint32_t p = q.front();
      q.pop();
      for (std::size_t a = 0; a < k; ++a) {
        std::uint32_t t = d.delta[p * k + a];
        if (!seen[t]) {
          seen[t] = 1;
          q.push(t);
        }
      }
    }
    return seen;
  };

  std::vector<char> accessible = reachable_from(d.initial);

  // pair BFS from every (q1, q2) with q1 accessible and q2 reachable from q1
  std::vector<char> seen(static_cast<std::size_t>(n) * n, 0);
  std::queue<std::uint32_t> queue;
  auto push = [&](std::uint32_t p, std::uint32_t q) {
    std::uint32_t idx = p * n + q;
    if (!seen[idx]) {
      seen[idx] = 1;
      queue.push(idx);
    }
  };
  for (std::uint32_t q1 = 0; q1 < n; ++q1) {
    if (!accessible[q1]) continue;
    std::vector<char> from_q1 = reachable_from(q1);
    for (std::uint32_t q2 = 0; q2 < n; ++q2)
      if (from_q1[q2]) push(q1, q2);
  }
  while (!queue.empty()) {
    std::uint32_t idx = queue.front();
    queue.pop();
    std::uint32_t p = idx / n, q = idx % n;
    if (d.accepting[p] && !d.accepting[q]) return false;  // pattern found
    for (std::size_t a = 0; a < k; ++a) push(d.delta[p * k + a], d.delta[q * k + a]);
  }
  return true;
}

namespace {

// Complete DFA for "u occurs as a factor", by longest-matched-prefix states.
Dfa factor_automaton(const std::string& alphabet, const std::string& u) {
  const std::uint32_t len = static_cast<std::uint32_t>(u.size());
  Dfa d;
  d.alphabet = alphabet;
  d.state_count = len + 1;
  d.initial = 0;
  d.accepting.assign(len + 1, false);
  d.accepting[len] = true;
  d.delta.resize(static_cast<std::size_t>(len + 1) * alphabet.size());
  for (std::uint32_t i = 0; i <= len; ++i) {
    for (std::size_t a = 0; a < alphabet.size(); ++a) {
      std::uint32_t next;
      if (i == len) {
        next = len;  // already seen the factor
      } else if (alphabet[a] == u[i]) {
        next = i + 1;
      } else {
        std::string s = u.substr(0, i) + alphabet[a];
        std::uint32_t best = 0;
        for (std::uint32_t m = std::min<std::uint32_t>(i, len); m > 0; --m)
          if (s.compare(s.size() - m, m, u, 0, m) == 0) {
            best = m;
            break;
          }
        next = best;
      }
      d.delta[i * alphabet.size() + a] = next;
    }
  }
  return d;
}

DensityInfo dense_from_synt(const SyntacticData& s) {
  const std::string& alphabet = s.stamp.alphabet;
  if (is_empty(s.minimal)) {
    // no word of L has any factor at all
    std::string witness = alphabet.empty() ? std::string() : std::string(1, alphabet[0]);
    return {false, witness};
  }
  std::vector<std::uint32_t> ideal = minimal_ideal(s.stamp.monoid);
  for (std::uint32_t e : ideal)
    if (s.accepting[e]) return {true, std::nullopt};
  // non-dense: any word mapping into the minimal ideal is never a factor of
  // a word in L; take the shortest representative and verify exactly
  std::string witness = s.representatives[ideal.front()];
  Dfa factor = factor_automaton(alphabet, witness);
  if (!is_empty(intersection(s.minimal, factor)))
    throw InternalError("non-dense witness '" + witness + "' failed its disjointness check");
  return {false, witness};
}

}  // namespace

DensityInfo is_dense(const Dfa& d, std::uint64_t cap) {
  return dense_from_synt(syntactic_stamp(d, cap));
}

const char* to_string(DensityClass c) {
  switch (c) {
    case DensityClass::finite: return "finite";
    case DensityClass::slender: return "slender";
    case DensityClass::sparse: return "sparse";
    case DensityClass::exponential: return "exponential";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::unavailable: return "unavailable";
  }
  return "?";
}

DensityClass density_class(const Dfa& d) {
  Dfa m = minimize(d);
  const std::uint32_t n = m.state_count;
  const std::size_t k = m.alphabet.size();

  // trim = accessible (all, after minimize) and co-accessible
  std::vector<std::vector<std::uint32_t>> rev(n);
  for (std::uint32_t q = 0; q < n; ++q)
    for (std::size_t a = 0; a < k; ++a) rev[m.delta[q * k + a]].push_back(q);
  std::vector<char> trim(n, 0);
  std::queue<std::uint32_t> bfs;
  for (std::uint32_t q = 0; q < n; ++q)
    if (m.accepting[q]) {
      trim[q] = 1;
      bfs.push(q);
    }
  while (!bfs.empty()) {
    std::uint32_t q = bfs.front();
    bfs.pop();
    for (std::uint32_t p : rev[q])
      if (!trim[p]) {
        trim[p] = 1;
        bfs.push(p);
      }
  }

  // strongly connected components of the trim subgraph (Kosaraju)
  std::vector<std::uint32_t> order;
  order.reserve(n);
  {
    std::vector<char> vis(n, 0);
    for (std::uint32_t s = 0; s < n; ++s) {
      if (!trim[s] || vis[s]) continue;
      std::vector<std::pair<std::uint32_t, std::size_t>> stack{{s, 0}};
      vis[s] = 1;
      while (!stack.empty()) {
        auto& [q, ai] = stack.back();
        if (ai == k) {
          order.push_back(q);
          stack.pop_back();
          continue;
        }
        std::uint32_t t = m.delta[q * k + ai++];
        if (trim[t] && !vis[t]) {
          vis[t] = 1;
          stack.emplace_back(t, 0);
        }
      }
    }
  }
  std::vector<std::int32_t> comp(n, -1);
  std::int32_t comp_count = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] >= 0) continue;
    std::vector<std::uint32_t> stack{*it};
    comp[*it] = comp_count;
    while (!stack.empty()) {
      std::uint32_t q = stack.back();
      stack.pop_back();
      for (std::uint32_t p : rev[q])
        if (trim[p] && comp[p] < 0) {
          comp[p] = comp_count;
          stack.push_back(p);
        }
    }
    ++comp_count;
  }

  // cycle structure: letter edges inside a component
  std::vector<char> cyclic(comp_count, 0);
  bool any_cycle = false, doubled = false;
  for (std::uint32_t q = 0; q < n; ++q) {
    if (!trim[q]) continue;
    std::uint32_t intra = 0;
    for (std::size_t a = 0; a < k; ++a) {
      std::uint32_t t = m.delta[q * k + a];
      if (trim[t] && comp[t] == comp[q]) ++intra;
    }
    if (intra >= 1) {
      cyclic[comp[q]] = 1;
      any_cycle = true;
    }
    if (intra >= 2) doubled = true;  // two distinct cycles through q
  }
  if (!any_cycle) return DensityClass::finite;
  if (doubled) return DensityClass::exponential;

  // all components are simple cycles; slender iff no path joins two of them
  std::vector<std::vector<std::int32_t>> dag(comp_count);
  for (std::uint32_t q = 0; q < n; ++q) {
    if (!trim[q]) continue;
    for (std::size_t a = 0; a < k; ++a) {
      std::uint32_t t = m.delta[q * k + a];
      if (trim[t] && comp[t] != comp[q]) dag[comp[q]].push_back(comp[t]);
    }
  }
  for (std::int32_t c = 0; c < comp_count; ++c) {
    if (!cyclic[c]) continue;
    std::vector<char> vis(comp_count, 0);
    std::vector<std::int32_t> stack{c};
    vis[c] = 1;
    while (!stack.empty()) {
      std::int32_t x = stack.back();
      stack.pop_back();
      if (x != c && cyclic[x]) return DensityClass::sparse;
      for (std::int32_t y : dag[x])
        if (!vis[y]) {
          vis[y] = 1;
          stack.push_back(y);
        }
    }
  }
  return DensityClass::slender;
}

ClassificationReport classify(const Dfa& d, std::uint64_t cap) {
  validate(d);
  ClassificationReport r;
  Dfa minimal = minimize(d);
  r.density = density_class(minimal);
  SyntacticData synt;
  try {
    synt = syntactic_stamp(minimal, cap);
  } catch (const CapExceeded&) {
    r.capped = true;
    return r;  // automaton-level fields only
  }
  auto verdict = [&](const char* name) {
    return is_member(synt, find_variety(name)).member ? Verdict::yes : Verdict::no;
  };
  r.j1 = verdict("J1");
  r.piecewise_testable = verdict("J");
  r.star_free = verdict("A");
  r.group = verdict("G");
  r.sigma1 = verdict("J+");
  r.first_letter = verdict("K1");
  r.qa = verdict("QA");
  r.r_trivial = verdict("R");
  r.l_trivial = verdict("L");
  r.da = verdict("DA");
  r.has_zero = verdict("Zero");
  DensityInfo di = dense_from_synt(synt);
  r.dense = di.dense ? Verdict::yes : Verdict::no;
  r.non_dense_witness = di.witness;

  auto implies = [](Verdict a, Verdict b) { return a != Verdict::yes || b == Verdict::yes; };
  if (!implies(r.j1, r.piecewise_testable) || !implies(r.piecewise_testable, r.star_free) ||
      !implies(r.sigma1, r.star_free))
    throw InternalError("classification implication lattice violated");
  if ((r.piecewise_testable == Verdict::yes) !=
      (r.r_trivial == Verdict::yes && r.l_trivial == Verdict::yes))
    throw InternalError("R- and L-triviality together must coincide with piecewise testability");
  if (r.group == Verdict::yes && r.star_free == Verdict::yes && synt.stamp.monoid.n != 1)
    throw InternalError("a star-free group language must have a trivial monoid");
  return r;
}

std::string report_to_json(const ClassificationReport& r) {
  nlohmann::ordered_json j;
  auto put = [&](const char* key, Verdict v) {
    if (v == Verdict::unavailable)
      j[key] = "unavailable";
    else
      j[key] = v == Verdict::yes;
  };
  put("j1", r.j1);
  put("piecewise_testable", r.piecewise_testable);
  put("star_free", r.star_free);
  put("group", r.group);
  put("sigma1", r.sigma1);
  put("first_letter", r.first_letter);
  put("qa", r.qa);
  put("r_trivial", r.r_trivial);
  put("l_trivial", r.l_trivial);
  put("da", r.da);
  put("has_zero", r.has_zero);
  put("dense", r.dense);
  j["density_class"] = to_string(r.density);
  return j.dump(2);
}

}  // namespace vlab
