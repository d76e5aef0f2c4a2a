#include "vlab/stamp.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "vlab/errors.hpp"

namespace vlab {

std::uint32_t Stamp::image_of(char c) const {
  auto pos = alphabet.find(c);
  if (pos == std::string::npos)
    throw std::invalid_argument("letter '" + std::string(1, c) + "' not in alphabet");
  return letter_image[pos];
}

std::uint32_t Stamp::image_of_word(const std::string& w) const {
  std::uint32_t m = monoid.identity;
  for (char c : w) m = monoid.mul(m, image_of(c));
  return m;
}

void validate(const Stamp& s) {
  if (!std::is_sorted(s.alphabet.begin(), s.alphabet.end()) ||
      std::adjacent_find(s.alphabet.begin(), s.alphabet.end()) != s.alphabet.end())
    throw std::invalid_argument("alphabet must be sorted and duplicate-free");
  if (s.letter_image.size() != s.alphabet.size())
    throw std::invalid_argument("stamp needs one image per letter");
  for (std::uint32_t v : s.letter_image)
    if (v >= s.monoid.n) throw std::invalid_argument("letter image out of range");
  // surjectivity: close {identity} under right multiplication by letter images
  std::vector<bool> seen(s.monoid.n, false);
  std::vector<std::uint32_t> stack{s.monoid.identity};
  seen[s.monoid.identity] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    std::uint32_t v = stack.back();
    stack.pop_back();
    for (std::uint32_t g : s.letter_image) {
      std::uint32_t t = s.monoid.mul(v, g);
      if (!seen[t]) {
        seen[t] = true;
        ++reached;
        stack.push_back(t);
      }
    }
  }
  if (reached != s.monoid.n) throw std::invalid_argument("stamp is not surjective");
}

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (std::uint32_t x : v) {
      h ^= x + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

TransitionMonoid transition_monoid(const Dfa& d, std::uint64_t cap) {
  validate(d);
  std::size_t letters = d.alphabet.size();
  std::uint32_t states = d.state_count;

  std::vector<std::vector<std::uint32_t>> letter_tf(letters, std::vector<std::uint32_t>(states));
  for (std::size_t a = 0; a < letters; ++a)
    for (std::uint32_t q = 0; q < states; ++q)
      letter_tf[a][q] = d.next(q, static_cast<std::uint32_t>(a));

  TransitionMonoid out;
  std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VecHash> index;

  std::vector<std::uint32_t> id(states);
  for (std::uint32_t q = 0; q < states; ++q) id[q] = q;

  // Beyond this many elements the n x n multiplication table would pass the
  // memory budget (~256 MiB) no matter what the element cap allows.
  constexpr std::uint64_t kTableBudget = 8192;

  auto intern = [&](std::vector<std::uint32_t> tf, const std::string& word) {
    auto it = index.find(tf);
    if (it != index.end()) return std::make_pair(it->second, false);
    if (out.transformations.size() >= cap)
      throw CapExceeded("transition monoid exceeds cap of " + std::to_string(cap) + " elements");
    if (out.transformations.size() >= kTableBudget)
      throw CapExceeded("transition monoid multiplication table would exceed the memory budget (" +
                        std::to_string(kTableBudget) + " elements)");
    std::uint32_t e = static_cast<std::uint32_t>(out.transformations.size());
    index.emplace(tf, e);
    out.transformations.push_back(std::move(tf));
    out.representatives.push_back(word);
    return std::make_pair(e, true);
  };

  // Length-then-lex BFS: the queue is processed in discovery order and
  // letters are tried in alphabet order, so representatives are the
  // length-lex least words of their elements.
  intern(id, "");
  std::queue<std::uint32_t> queue;
  queue.push(0);
  out.stamp.letter_image.assign(letters, 0);
  while (!queue.empty()) {
    std::uint32_t e = queue.front();
    queue.pop();
    for (std::size_t a = 0; a < letters; ++a) {
      std::vector<std::uint32_t> tf(states);
      for (std::uint32_t q = 0; q < states; ++q) tf[q] = letter_tf[a][out.transformations[e][q]];
      auto [t, fresh] = intern(std::move(tf), out.representatives[e] + d.alphabet[a]);
      if (fresh) queue.push(t);
      if (e == 0) out.stamp.letter_image[a] = t;
    }
  }

  std::uint32_t n = static_cast<std::uint32_t>(out.transformations.size());
  out.stamp.alphabet = d.alphabet;
  out.stamp.monoid.n = n;
  out.stamp.monoid.identity = 0;
  out.stamp.monoid.table.assign(static_cast<std::size_t>(n) * n, 0);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      // product i*j is the transformation "apply i, then j"
      std::vector<std::uint32_t> tf(states);
      for (std::uint32_t q = 0; q < states; ++q) tf[q] = out.transformations[j][out.transformations[i][q]];
      auto it = index.find(tf);
      if (it == index.end()) throw InternalError("transition monoid closure missed a product");
      out.stamp.monoid.table[i * n + j] = it->second;
    }
  return out;
}

SyntacticData syntactic_stamp(const Dfa& d, std::uint64_t cap) {
  SyntacticData out;
  out.minimal = minimize(d);
  TransitionMonoid tm = transition_monoid(out.minimal, cap);
  out.stamp = std::move(tm.stamp);
  out.representatives = std::move(tm.representatives);
  out.accepting.assign(out.stamp.monoid.n, false);
  for (std::uint32_t e = 0; e < out.stamp.monoid.n; ++e)
    out.accepting[e] = out.minimal.accepting[tm.transformations[e][out.minimal.initial]];
  return out;
}

OrderedMonoid syntactic_order(const SyntacticData& s) {
  const FiniteMonoid& m = s.stamp.monoid;
  const std::uint32_t n = m.n;
  // context profile of e: the set of pairs (x, y) with x e y accepted,
  // packed into words; m1 <= m2 iff profile(m2) is a subset of profile(m1)
  const std::size_t words = (static_cast<std::size_t>(n) * n + 63) / 64;
  std::vector<std::uint64_t> profile(n * words, 0);
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t e = 0; e < n; ++e) {
      std::uint32_t xe = m.mul(x, e);
      std::uint64_t* row = profile.data() + static_cast<std::size_t>(e) * words;
      for (std::uint32_t y = 0; y < n; ++y)
        if (s.accepting[m.mul(xe, y)]) {
          std::size_t bit = static_cast<std::size_t>(x) * n + y;
          row[bit >> 6] |= std::uint64_t{1} << (bit & 63);
        }
    }
  OrderedMonoid om;
  om.monoid = m;
  om.leq.assign(static_cast<std::size_t>(n) * n, false);
  for (std::uint32_t m1 = 0; m1 < n; ++m1) {
    const std::uint64_t* p1 = profile.data() + static_cast<std::size_t>(m1) * words;
    for (std::uint32_t m2 = 0; m2 < n; ++m2) {
      const std::uint64_t* p2 = profile.data() + static_cast<std::size_t>(m2) * words;
      bool le = true;
      for (std::size_t w = 0; w < words && le; ++w) le = (p2[w] & ~p1[w]) == 0;
      om.leq[m1 * n + m2] = le;
    }
  }
  return om;
}

GeneratedSemigroup syntactic_semigroup(const Stamp& s) {
  const FiniteMonoid& m = s.monoid;
  // Closure of the letter images under product, in BFS discovery order.
  std::vector<std::int64_t> pos(m.n, -1);
  std::vector<std::uint32_t> elems;
  std::queue<std::uint32_t> queue;
  for (std::uint32_t g : s.letter_image)
    if (pos[g] < 0) {
      pos[g] = static_cast<std::int64_t>(elems.size());
      elems.push_back(g);
      queue.push(g);
    }
  while (!queue.empty()) {
    std::uint32_t v = queue.front();
    queue.pop();
    for (std::uint32_t g : s.letter_image) {
      std::uint32_t t = m.mul(v, g);
      if (pos[t] < 0) {
        pos[t] = static_cast<std::int64_t>(elems.size());
        elems.push_back(t);
        queue.push(t);
      }
    }
  }
  GeneratedSemigroup out;
  std::uint32_t k = static_cast<std::uint32_t>(elems.size());
  out.monoid_elements = elems;
  out.semigroup.n = k;
  out.semigroup.table.assign(static_cast<std::size_t>(k) * k, 0);
  for (std::uint32_t i = 0; i < k; ++i)
    for (std::uint32_t j = 0; j < k; ++j) {
      std::int64_t p = pos[m.mul(elems[i], elems[j])];
      if (p < 0) throw InternalError("generated semigroup is not closed");
      out.semigroup.table[i * k + j] = static_cast<std::uint32_t>(p);
    }
  return out;
}

StableSemigroup stable_semigroup(const Stamp& s) {
  const FiniteMonoid& m = s.monoid;
  std::set<std::uint32_t> gen(s.letter_image.begin(), s.letter_image.end());
  if (gen.empty()) throw std::invalid_argument("stable semigroup needs a nonempty alphabet");

  // Subset sequence S_k = phi(A^k); eventually periodic, so find the first
  // repeat to get index and period.
  std::vector<std::set<std::uint32_t>> seq{gen};
  std::map<std::set<std::uint32_t>, std::uint32_t> first_at{{gen, 1}};
  std::uint32_t index, period;
  for (std::uint32_t k = 2;; ++k) {
    std::set<std::uint32_t> next;
    for (std::uint32_t v : seq.back())
      for (std::uint32_t g : gen) next.insert(m.mul(v, g));
    auto [it, fresh] = first_at.emplace(next, k);
    seq.push_back(std::move(next));
    if (!fresh) {
      index = it->second;
      period = k - it->second;
      break;
    }
  }
  // S_s == S_2s iff s is in the cycle and s == 2s mod period.
  std::uint32_t s_exp = period;
  while (s_exp < index) s_exp += period;

  StableSemigroup out;
  out.exponent = s_exp;
  const std::set<std::uint32_t>& stable = seq[s_exp - 1];
  out.monoid_elements.assign(stable.begin(), stable.end());
  std::vector<std::int64_t> pos(m.n, -1);
  for (std::size_t i = 0; i < out.monoid_elements.size(); ++i)
    pos[out.monoid_elements[i]] = static_cast<std::int64_t>(i);
  std::uint32_t k = static_cast<std::uint32_t>(out.monoid_elements.size());
  out.semigroup.n = k;
  out.semigroup.table.assign(static_cast<std::size_t>(k) * k, 0);
  for (std::uint32_t i = 0; i < k; ++i)
    for (std::uint32_t j = 0; j < k; ++j) {
      std::int64_t p = pos[m.mul(out.monoid_elements[i], out.monoid_elements[j])];
      if (p < 0) throw InternalError("stable subset is not closed under product");
      out.semigroup.table[i * k + j] = static_cast<std::uint32_t>(p);
    }
  return out;
}

std::uint32_t rho_image(const Stamp& s) {
  const FiniteMonoid& m = s.monoid;
  std::vector<bool> in_ideal(m.n, false);
  for (std::uint32_t v : minimal_ideal(m)) in_ideal[v] = true;

  // Enumerate A* in length-then-lex order, keeping phi(v_n) for the growing
  // concatenation v_n = u_1 u_2 ... u_n.
  std::size_t letters = s.alphabet.size();
  std::uint32_t acc = m.identity;    // phi of the concatenation so far
  std::uint32_t current = m.identity;  // m_n, starting from phi(empty word)

  if (letters == 0) return m.identity;

  std::vector<std::uint32_t> word;  // current u_n as letter indices
  auto advance = [&]() {
    // length-then-lex successor
    std::size_t i = word.size();
    while (i > 0 && word[i - 1] == letters - 1) --i;
    if (i == 0) {
      word.assign(word.size() + 1, 0);
    } else {
      ++word[i - 1];
      for (std::size_t j = i; j < word.size(); ++j) word[j] = 0;
    }
  };

  // Termination: once the concatenation's image enters the minimal ideal,
  // the iterate becomes an idempotent of the ideal and is a true fixed
  // point.  That is guaranteed as soon as some enumerated word maps into the
  // ideal, which happens for a word no longer than the monoid's generator
  // BFS depth; the step cap covers all such words at desk scale.
  for (std::uint64_t steps = 0; steps < 200'000; ++steps) {
    std::uint32_t u = m.identity;
    for (std::uint32_t a : word) u = m.mul(u, s.letter_image[a]);
    acc = m.mul(acc, u);  // now acc = phi(v_n) for v_n = u_1 ... u_n
    advance();
    std::uint32_t next = omega_power(m, m.mul(m.mul(current, acc), current));
    if (next == current && m.mul(current, current) == current && in_ideal[current]) return current;
    current = next;
  }
  throw InternalError("rho iteration did not stabilize");
}

Dfa stamp_language_dfa(const Stamp& s, const std::vector<bool>& accepting) {
  if (accepting.size() != s.monoid.n)
    throw std::invalid_argument("accepting subset has wrong size");
  Dfa d;
  d.alphabet = s.alphabet;
  d.state_count = s.monoid.n;
  d.initial = s.monoid.identity;
  d.accepting = accepting;
  d.delta.assign(static_cast<std::size_t>(s.monoid.n) * s.alphabet.size(), 0);
  for (std::uint32_t q = 0; q < s.monoid.n; ++q)
    for (std::size_t a = 0; a < s.alphabet.size(); ++a)
      d.delta[q * s.alphabet.size() + a] = s.monoid.mul(q, s.letter_image[a]);
  return minimize(d);
}

}  // namespace vlab
