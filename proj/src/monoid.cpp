#include "vlab/monoid.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "vlab/errors.hpp"

namespace vlab {

void validate(const FiniteSemigroup& s) {
  if (s.n == 0) throw std::invalid_argument("semigroup needs at least one element");
  if (s.table.size() != static_cast<std::size_t>(s.n) * s.n)
    throw std::invalid_argument("multiplication table has wrong size");
  for (std::uint32_t v : s.table)
    if (v >= s.n) throw std::invalid_argument("table entry out of range");
  for (std::uint32_t i = 0; i < s.n; ++i)
    for (std::uint32_t j = 0; j < s.n; ++j)
      for (std::uint32_t k = 0; k < s.n; ++k)
        if (s.mul(s.mul(i, j), k) != s.mul(i, s.mul(j, k)))
          throw std::invalid_argument("multiplication is not associative at (" +
                                      std::to_string(i) + ", " + std::to_string(j) + ", " +
                                      std::to_string(k) + ")");
}

void validate(const FiniteMonoid& m) {
  validate(m.as_semigroup());
  if (m.identity >= m.n) throw std::invalid_argument("identity index out of range");
  for (std::uint32_t i = 0; i < m.n; ++i)
    if (m.mul(m.identity, i) != i || m.mul(i, m.identity) != i)
      throw std::invalid_argument("identity element fails the identity law at " + std::to_string(i));
}

void validate(const OrderedMonoid& om) {
  validate(om.monoid);
  std::uint32_t n = om.monoid.n;
  if (om.leq.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("order relation has wrong size");
  for (std::uint32_t i = 0; i < n; ++i)
    if (!om.le(i, i)) throw std::invalid_argument("order is not reflexive");
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      if (i != j && om.le(i, j) && om.le(j, i))
        throw std::invalid_argument("order is not antisymmetric");
      if (!om.le(i, j)) continue;
      for (std::uint32_t k = 0; k < n; ++k)
        if (!om.le(om.monoid.mul(i, k), om.monoid.mul(j, k)) ||
            !om.le(om.monoid.mul(k, i), om.monoid.mul(k, j)))
          throw std::invalid_argument("order is not compatible with multiplication");
      for (std::uint32_t k = 0; k < n; ++k)
        if (om.le(j, k) && !om.le(i, k))
          throw std::invalid_argument("order is not transitive");
    }
}

std::uint32_t power(const FiniteSemigroup& s, std::uint32_t x, std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("semigroup power needs exponent >= 1");
  std::uint32_t acc = x;
  for (std::uint64_t i = 1; i < k; ++i) acc = s.mul(acc, x);
  return acc;
}

std::uint32_t omega_power(const FiniteSemigroup& s, std::uint32_t x) {
  // The cyclic subsemigroup of x has at most n elements, so an idempotent
  // power appears within 2n+2 steps.
  std::uint32_t p = x;
  for (std::uint64_t i = 0; i < 2ull * s.n + 2; ++i) {
    if (s.mul(p, p) == p) return p;
    p = s.mul(p, x);
  }
  throw InternalError("no idempotent power found");
}

std::uint32_t omega_power(const FiniteMonoid& m, std::uint32_t x) {
  return omega_power(m.as_semigroup(), x);
}

std::uint32_t omega_offset_power(const FiniteSemigroup& s, std::uint32_t x, std::int64_t k) {
  std::uint32_t e = omega_power(s, x);
  // Cycle group size: smallest p >= 1 with e * x^p == e.
  std::uint32_t p = 1;
  std::uint32_t cur = s.mul(e, x);
  while (cur != e) {
    cur = s.mul(cur, x);
    ++p;
  }
  std::int64_t r = k % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  std::uint32_t out = e;
  for (std::int64_t i = 0; i < r; ++i) out = s.mul(out, x);
  return out;
}

std::uint32_t omega_offset_power(const FiniteMonoid& m, std::uint32_t x, std::int64_t k) {
  return omega_offset_power(m.as_semigroup(), x, k);
}

std::vector<std::uint32_t> idempotents(const FiniteSemigroup& s) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < s.n; ++i)
    if (s.mul(i, i) == i) out.push_back(i);
  return out;
}

namespace {

// x <=_R y iff x lies in yM iff x is reachable from y by right
// multiplications, so the R-classes are the strongly connected components of
// the graph v -> v*x (and dually for L; for J both edge kinds together,
// since every element of MyM arises by a chain of one-sided products).
// Iterative Tarjan with edges enumerated straight from the table: O(n^2).
template <typename Next>
std::uint32_t scc_partition(std::uint32_t n, std::uint32_t degree, Next next,
                            std::vector<std::uint32_t>& comp) {
  comp.assign(n, 0);
  std::vector<std::uint32_t> order(n, 0), low(n, 0), edge_at(n, 0);
  std::vector<bool> open(n, false);
  std::vector<std::uint32_t> stack, call;
  std::uint32_t counter = 1, comps = 0;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (order[root] != 0) continue;
    call.push_back(root);
    while (!call.empty()) {
      std::uint32_t v = call.back();
      if (order[v] == 0) {
        order[v] = low[v] = counter++;
        stack.push_back(v);
        open[v] = true;
      }
      bool descended = false;
      while (edge_at[v] < degree) {
        std::uint32_t w = next(v, edge_at[v]++);
        if (order[w] == 0) {
          call.push_back(w);
          descended = true;
          break;
        }
        if (open[w]) low[v] = std::min(low[v], order[w]);
      }
      if (descended) continue;
      call.pop_back();
      if (!call.empty()) low[call.back()] = std::min(low[call.back()], low[v]);
      if (low[v] == order[v]) {
        while (true) {
          std::uint32_t w = stack.back();
          stack.pop_back();
          open[w] = false;
          comp[w] = comps;
          if (w == v) break;
        }
        ++comps;
      }
    }
  }
  return comps;
}

}  // namespace

GreenClasses green_classes(const FiniteMonoid& m) {
  GreenClasses g;
  const std::uint32_t n = m.n;
  g.r_count = scc_partition(
      n, n, [&](std::uint32_t v, std::uint32_t x) { return m.mul(v, x); }, g.r_class);
  g.l_count = scc_partition(
      n, n, [&](std::uint32_t v, std::uint32_t x) { return m.mul(x, v); }, g.l_class);
  g.j_count = scc_partition(
      n, 2 * n,
      [&](std::uint32_t v, std::uint32_t x) {
        return x < n ? m.mul(v, x) : m.mul(x - n, v);
      },
      g.j_class);
  return g;
}

bool is_r_trivial(const FiniteMonoid& m) { return green_classes(m).r_count == m.n; }
bool is_l_trivial(const FiniteMonoid& m) { return green_classes(m).l_count == m.n; }
bool is_j_trivial(const FiniteMonoid& m) { return green_classes(m).j_count == m.n; }

bool is_aperiodic(const FiniteSemigroup& s) {
  for (std::uint32_t x = 0; x < s.n; ++x) {
    std::uint32_t e = omega_power(s, x);
    if (s.mul(e, x) != e) return false;  // cycle group at e is nontrivial
  }
  return true;
}

std::vector<std::uint32_t> minimal_ideal(const FiniteSemigroup& s) {
  // The product of all elements (in any order) lies in every principal
  // two-sided ideal, so its own principal ideal is the minimal one.
  std::uint32_t p = 0;
  for (std::uint32_t i = 1; i < s.n; ++i) p = s.mul(p, i);
  std::vector<bool> in(s.n, false);
  in[p] = true;
  std::vector<std::uint32_t> stack{p};
  while (!stack.empty()) {
    std::uint32_t v = stack.back();
    stack.pop_back();
    for (std::uint32_t x = 0; x < s.n; ++x) {
      for (std::uint32_t t : {s.mul(x, v), s.mul(v, x)}) {
        if (!in[t]) {
          in[t] = true;
          stack.push_back(t);
        }
      }
    }
  }
  std::vector<std::uint32_t> members;
  for (std::uint32_t j = 0; j < s.n; ++j)
    if (in[j]) members.push_back(j);
  return members;
}

std::vector<std::uint32_t> minimal_ideal(const FiniteMonoid& m) {
  return minimal_ideal(m.as_semigroup());
}

std::optional<std::uint32_t> zero_element(const FiniteSemigroup& s) {
  for (std::uint32_t z = 0; z < s.n; ++z) {
    bool ok = true;
    for (std::uint32_t x = 0; x < s.n && ok; ++x)
      ok = s.mul(z, x) == z && s.mul(x, z) == z;
    if (ok) return z;
  }
  return std::nullopt;
}

bool has_zero(const FiniteSemigroup& s) { return zero_element(s).has_value(); }
bool has_zero(const FiniteMonoid& m) { return has_zero(m.as_semigroup()); }

bool is_nilpotent(const FiniteSemigroup& s) {
  auto z = zero_element(s);
  if (!z) return false;
  return idempotents(s).size() == 1;  // the zero is idempotent, so it is the one
}

FiniteMonoid direct_product(const FiniteMonoid& m, const FiniteMonoid& n) {
  FiniteMonoid p;
  p.n = m.n * n.n;
  p.identity = m.identity * n.n + n.identity;
  p.table.assign(static_cast<std::size_t>(p.n) * p.n, 0);
  for (std::uint32_t a = 0; a < m.n; ++a)
    for (std::uint32_t b = 0; b < n.n; ++b)
      for (std::uint32_t c = 0; c < m.n; ++c)
        for (std::uint32_t d = 0; d < n.n; ++d)
          p.table[(a * n.n + b) * p.n + (c * n.n + d)] = m.mul(a, c) * n.n + n.mul(b, d);
  return p;
}

namespace {

// Backtracking search for a surjective morphism from the submonoid `sub`
// (elements of n, closed, containing n's identity) onto m.
bool onto_morphism_exists(const FiniteMonoid& m, const FiniteMonoid& n,
                          const std::vector<std::uint32_t>& sub) {
  if (sub.size() < m.n) return false;  // cannot be surjective
  std::vector<std::int64_t> pos(n.n, -1);  // n element -> position in sub
  for (std::size_t i = 0; i < sub.size(); ++i) pos[sub[i]] = static_cast<std::int64_t>(i);

  std::vector<std::uint32_t> img(sub.size());
  std::vector<std::uint32_t> covered(m.n, 0);
  std::uint32_t covered_count = 0;

  auto consistent = [&](std::size_t k) {
    // Check every product among assigned elements that became checkable at
    // step k: one of the operands is sub[k], or the product lands on sub[k].
    // Closure of sub guarantees pos[product] >= 0.
    for (std::size_t j = 0; j <= k; ++j)
      for (std::size_t l = 0; l <= k; ++l) {
        std::uint32_t p = n.mul(sub[j], sub[l]);
        std::size_t pp = static_cast<std::size_t>(pos[p]);
        if (j != k && l != k && pp != k) continue;
        if (pp <= k && m.mul(img[j], img[l]) != img[pp]) return false;
      }
    return true;
  };

  std::function<bool(std::size_t)> go = [&](std::size_t k) -> bool {
    if (k == sub.size()) return covered_count == m.n;
    // surjectivity pruning: remaining slots must cover the missing images
    if (covered_count + (sub.size() - k) < m.n) return false;
    for (std::uint32_t v = 0; v < m.n; ++v) {
      if (sub[k] == n.identity && v != m.identity) continue;
      img[k] = v;
      if (!consistent(k)) continue;
      if (covered[v]++ == 0) ++covered_count;
      if (go(k + 1)) return true;
      if (--covered[v] == 0) --covered_count;
    }
    return false;
  };
  return go(0);
}

void enumerate_submonoids(const FiniteMonoid& n, std::vector<std::vector<std::uint32_t>>& out) {
  // All subsets containing the identity, filtered for closure.  n.n <= 8 so
  // 2^n subsets is fine.
  std::uint32_t count = n.n;
  for (std::uint64_t mask = 0; mask < (1ull << count); ++mask) {
    if (!(mask & (1ull << n.identity))) continue;
    std::vector<std::uint32_t> sub;
    for (std::uint32_t i = 0; i < count; ++i)
      if (mask & (1ull << i)) sub.push_back(i);
    bool closed = true;
    for (std::uint32_t a : sub) {
      for (std::uint32_t b : sub)
        if (!(mask & (1ull << n.mul(a, b)))) {
          closed = false;
          break;
        }
      if (!closed) break;
    }
    if (closed) out.push_back(std::move(sub));
  }
}

}  // namespace

bool divides(const FiniteMonoid& m, const FiniteMonoid& n, std::uint32_t cap) {
  if (n.n > cap)
    throw CapExceeded("divides is oracle-scale only: |N| = " + std::to_string(n.n) +
                      " exceeds cap " + std::to_string(cap));
  if (m.n > n.n) return false;
  std::vector<std::vector<std::uint32_t>> subs;
  enumerate_submonoids(n, subs);
  for (const auto& sub : subs)
    if (onto_morphism_exists(m, n, sub)) return true;
  return false;
}

std::string write_mtab(const MtabFile& f) {
  std::ostringstream out;
  out << f.monoid.n << "\n";
  for (std::uint32_t i = 0; i < f.monoid.n; ++i) {
    for (std::uint32_t j = 0; j < f.monoid.n; ++j) {
      if (j) out << ' ';
      out << f.monoid.mul(i, j);
    }
    out << "\n";
  }
  out << "identity " << f.monoid.identity << "\n";
  for (const auto& [letter, idx] : f.generators) out << "gen " << letter << ' ' << idx << "\n";
  for (const auto& [i, j] : f.order_pairs) out << "le " << i << ' ' << j << "\n";
  return out.str();
}

MtabFile read_mtab(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };

  if (!next_line()) throw ParseError("mtab: missing size line", 0);
  MtabFile f;
  std::uint64_t n = 0;
  {
    std::istringstream ls(line);
    if (!(ls >> n) || n == 0) throw ParseError("mtab: bad size line", line_no);
  }
  f.monoid.n = static_cast<std::uint32_t>(n);
  f.monoid.table.reserve(n * n);
  for (std::uint64_t i = 0; i < n; ++i) {
    if (!next_line()) throw ParseError("mtab: missing table row", line_no);
    std::istringstream ls(line);
    for (std::uint64_t j = 0; j < n; ++j) {
      std::uint64_t v;
      if (!(ls >> v) || v >= n) throw ParseError("mtab: bad table entry", line_no);
      f.monoid.table.push_back(static_cast<std::uint32_t>(v));
    }
    std::string rest;
    if (ls >> rest) throw ParseError("mtab: trailing data in table row", line_no);
  }
  if (!next_line()) throw ParseError("mtab: missing identity line", line_no);
  bool have_identity = false;
  do {
    std::istringstream ls(line);
    std::string keyword;
    ls >> keyword;
    if (keyword == "identity") {
      std::uint64_t k;
      if (!(ls >> k) || k >= n) throw ParseError("mtab: bad identity line", line_no);
      f.monoid.identity = static_cast<std::uint32_t>(k);
      have_identity = true;
    } else if (keyword == "gen") {
      std::string letter;
      std::uint64_t idx;
      if (!(ls >> letter >> idx) || letter.size() != 1 || letter[0] < 'a' || letter[0] > 'z' ||
          idx >= n)
        throw ParseError("mtab: bad gen line", line_no);
      f.generators.emplace_back(letter[0], static_cast<std::uint32_t>(idx));
    } else if (keyword == "le") {
      std::uint64_t i, j;
      if (!(ls >> i >> j) || i >= n || j >= n) throw ParseError("mtab: bad le line", line_no);
      f.order_pairs.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    } else {
      throw ParseError("mtab: unknown keyword '" + keyword + "'", line_no);
    }
  } while (next_line());
  if (!have_identity) throw ParseError("mtab: missing identity line", line_no);
  validate(f.monoid);
  return f;
}

}  // namespace vlab
