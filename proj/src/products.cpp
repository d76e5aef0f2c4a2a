#include "vlab/products.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "vlab/errors.hpp"

namespace vlab {

namespace {

constexpr std::uint64_t kTableBudget = 8192;  // same table budget as transition_monoid

std::string triple(const char* a, std::uint32_t x, const char* b, std::uint32_t y, const char* c,
                   std::uint32_t z) {
  return std::string("(") + a + "=" + std::to_string(x) + ", " + b + "=" + std::to_string(y) +
         ", " + c + "=" + std::to_string(z) + ")";
}

// Semidirect table with no validation; element (s, t) sits at s * |T| + t.
FiniteMonoid semidirect_table(const LeftAction& a) {
  const std::uint32_t ns = a.s.n, nt = a.t.n;
  const std::uint64_t n = std::uint64_t{ns} * nt;
  if (n > kTableBudget)
    throw CapExceeded("product carrier would exceed the multiplication table budget (" +
                      std::to_string(kTableBudget) + " elements)");
  FiniteMonoid p;
  p.n = static_cast<std::uint32_t>(n);
  p.table.resize(n * n);
  for (std::uint32_t s1 = 0; s1 < ns; ++s1)
    for (std::uint32_t t1 = 0; t1 < nt; ++t1)
      for (std::uint32_t s2 = 0; s2 < ns; ++s2)
        for (std::uint32_t t2 = 0; t2 < nt; ++t2) {
          std::uint32_t s3 = a.s.mul(s1, a.act(t1, s2));
          std::uint32_t t3 = a.t.mul(t1, t2);
          p.table[std::size_t{s1 * nt + t1} * p.n + (s2 * nt + t2)] = s3 * nt + t3;
        }
  p.identity = a.s.identity * nt + a.t.identity;
  return p;
}

}  // namespace

void validate(const LeftAction& a) {
  validate(a.s);
  validate(a.t);
  if (a.table.size() != std::size_t{a.s.n} * a.t.n)
    throw std::invalid_argument("action table size does not match |T| * |S|");
  for (std::uint32_t v : a.table)
    if (v >= a.s.n) throw std::invalid_argument("action table entry out of range");
  for (std::uint32_t s = 0; s < a.s.n; ++s)
    if (a.act(a.t.identity, s) != s)
      throw std::invalid_argument("identity of T must act trivially, violated at (s=" +
                                  std::to_string(s) + ")");
  for (std::uint32_t t = 0; t < a.t.n; ++t) {
    if (a.act(t, a.s.identity) != a.s.identity)
      throw std::invalid_argument("action must fix the identity of S, violated at (t=" +
                                  std::to_string(t) + ")");
    for (std::uint32_t x = 0; x < a.s.n; ++x)
      for (std::uint32_t y = 0; y < a.s.n; ++y)
        if (a.act(t, a.s.mul(x, y)) != a.s.mul(a.act(t, x), a.act(t, y)))
          throw std::invalid_argument("action of t is not an endomorphism at " +
                                      triple("t", t, "s", x, "s'", y));
  }
  for (std::uint32_t t1 = 0; t1 < a.t.n; ++t1)
    for (std::uint32_t t2 = 0; t2 < a.t.n; ++t2)
      for (std::uint32_t s = 0; s < a.s.n; ++s)
        if (a.act(a.t.mul(t1, t2), s) != a.act(t1, a.act(t2, s)))
          throw std::invalid_argument("t -> lambda_t is not a morphism at " +
                                      triple("t", t1, "t'", t2, "s", s));
}

void validate(const BiAction& a) {
  validate(a.left);
  const FiniteMonoid& s = a.left.s;
  const FiniteMonoid& t = a.left.t;
  if (a.rtable.size() != std::size_t{s.n} * t.n)
    throw std::invalid_argument("right action table size does not match |S| * |T|");
  for (std::uint32_t v : a.rtable)
    if (v >= s.n) throw std::invalid_argument("right action table entry out of range");
  for (std::uint32_t x = 0; x < s.n; ++x)
    if (a.ract(x, t.identity) != x)
      throw std::invalid_argument("identity of T must act trivially on the right, violated at (s=" +
                                  std::to_string(x) + ")");
  for (std::uint32_t te = 0; te < t.n; ++te) {
    if (a.ract(s.identity, te) != s.identity)
      throw std::invalid_argument("right action must fix the identity of S, violated at (t=" +
                                  std::to_string(te) + ")");
    for (std::uint32_t x = 0; x < s.n; ++x)
      for (std::uint32_t y = 0; y < s.n; ++y)
        if (a.ract(s.mul(x, y), te) != s.mul(a.ract(x, te), a.ract(y, te)))
          throw std::invalid_argument("right action of t is not an endomorphism at " +
                                      triple("s", x, "s'", y, "t", te));
  }
  for (std::uint32_t x = 0; x < s.n; ++x)
    for (std::uint32_t t1 = 0; t1 < t.n; ++t1)
      for (std::uint32_t t2 = 0; t2 < t.n; ++t2)
        if (a.ract(x, t.mul(t1, t2)) != a.ract(a.ract(x, t1), t2))
          throw std::invalid_argument("s -> rho_t is not a morphism at " +
                                      triple("s", x, "t", t1, "t'", t2));
  for (std::uint32_t te = 0; te < t.n; ++te)
    for (std::uint32_t x = 0; x < s.n; ++x)
      for (std::uint32_t t2 = 0; t2 < t.n; ++t2)
        if (a.left.act(te, a.ract(x, t2)) != a.ract(a.left.act(te, x), t2))
          throw std::invalid_argument("left and right actions do not commute at " +
                                      triple("t", te, "s", x, "t'", t2));
}

FiniteMonoid semidirect_product(const LeftAction& a) {
  validate(a);
  FiniteMonoid p = semidirect_table(a);
  if (p.n <= 512) validate(p);
  return p;
}

FiniteMonoid block_product(const BiAction& a) {
  validate(a);
  const FiniteMonoid& sm = a.left.s;
  const FiniteMonoid& tm = a.left.t;
  const std::uint32_t ns = sm.n, nt = tm.n;
  const std::uint64_t n = std::uint64_t{ns} * nt;
  if (n > kTableBudget)
    throw CapExceeded("product carrier would exceed the multiplication table budget (" +
                      std::to_string(kTableBudget) + " elements)");
  FiniteMonoid p;
  p.n = static_cast<std::uint32_t>(n);
  p.table.resize(n * n);
  for (std::uint32_t s1 = 0; s1 < ns; ++s1)
    for (std::uint32_t t1 = 0; t1 < nt; ++t1)
      for (std::uint32_t s2 = 0; s2 < ns; ++s2)
        for (std::uint32_t t2 = 0; t2 < nt; ++t2) {
          std::uint32_t s3 = sm.mul(a.ract(s1, t2), a.left.act(t1, s2));
          std::uint32_t t3 = tm.mul(t1, t2);
          p.table[std::size_t{s1 * nt + t1} * p.n + (s2 * nt + t2)] = s3 * nt + t3;
        }
  p.identity = sm.identity * nt + tm.identity;
  if (p.n <= 512) validate(p);
  return p;
}

std::uint32_t WreathProduct::coordinate(std::uint32_t f_code, std::uint32_t x) const {
  std::uint64_t p = 1;
  for (std::uint32_t i = 0; i < x; ++i) p *= u_size;
  return static_cast<std::uint32_t>((f_code / p) % u_size);
}

WreathProduct wreath_product(const FiniteMonoid& u, const FiniteMonoid& t, std::uint64_t cap) {
  validate(u);
  validate(t);
  std::uint64_t npow = 1;
  for (std::uint32_t i = 0; i < t.n; ++i) {
    npow *= u.n;
    if (npow * t.n > cap)
      throw CapExceeded("wreath product carrier exceeds the cap (" + std::to_string(cap) +
                        " elements)");
  }
  if (npow * t.n > kTableBudget)
    throw CapExceeded("wreath product carrier would exceed the multiplication table budget (" +
                      std::to_string(kTableBudget) + " elements)");
  const std::uint32_t nu = u.n, nt = t.n;
  const std::uint32_t np = static_cast<std::uint32_t>(npow);
  std::vector<std::uint64_t> pw(nt + 1);
  pw[0] = 1;
  for (std::uint32_t i = 0; i < nt; ++i) pw[i + 1] = pw[i] * nu;
  auto digit = [&](std::uint32_t code, std::uint32_t x) {
    return static_cast<std::uint32_t>((code / pw[x]) % nu);
  };

  FiniteMonoid power;  // U^T, componentwise product
  power.n = np;
  power.table.resize(std::size_t{np} * np);
  for (std::uint32_t i = 0; i < np; ++i)
    for (std::uint32_t j = 0; j < np; ++j) {
      std::uint64_t code = 0;
      for (std::uint32_t x = 0; x < nt; ++x) code += std::uint64_t{u.mul(digit(i, x), digit(j, x))} * pw[x];
      power.table[std::size_t{i} * np + j] = static_cast<std::uint32_t>(code);
    }
  std::uint64_t idcode = 0;
  for (std::uint32_t x = 0; x < nt; ++x) idcode += std::uint64_t{u.identity} * pw[x];
  power.identity = static_cast<std::uint32_t>(idcode);

  std::vector<std::uint32_t> act_table(std::size_t{nt} * np);
  for (std::uint32_t te = 0; te < nt; ++te)
    for (std::uint32_t f = 0; f < np; ++f) {
      std::uint64_t code = 0;
      for (std::uint32_t x = 0; x < nt; ++x) code += std::uint64_t{digit(f, t.mul(x, te))} * pw[x];
      act_table[std::size_t{te} * np + f] = static_cast<std::uint32_t>(code);
    }

  WreathProduct w;
  w.action = LeftAction{std::move(power), t, std::move(act_table)};
  // the power monoid and shift action satisfy the laws by construction; the
  // exhaustive re-check runs only at sizes where it is affordable
  if (np <= 512) validate(w.action);
  w.product = semidirect_table(w.action);
  if (w.product.n <= 512) validate(w.product);
  w.u_size = nu;
  w.t_size = nt;
  return w;
}

namespace {

// Closure of the letter images under product, as a monoid table.  Elements
// are (flag-mask, T-element) pairs; `mul` supplies the product law.
template <class Mul>
std::tuple<FiniteMonoid, std::vector<std::uint32_t>,
           std::vector<std::pair<std::uint64_t, std::uint32_t>>>
closure_monoid(const std::vector<std::pair<std::uint64_t, std::uint32_t>>& letters,
               std::pair<std::uint64_t, std::uint32_t> ident, Mul&& mul) {
  std::map<std::pair<std::uint64_t, std::uint32_t>, std::uint32_t> index;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> elems{ident};
  index.emplace(ident, 0);
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : letters) {
      auto p = mul(elems[i], g);
      if (index.emplace(p, static_cast<std::uint32_t>(elems.size())).second) {
        elems.push_back(p);
        if (elems.size() > kTableBudget)
          throw CapExceeded("generated submonoid would exceed the multiplication table budget (" +
                            std::to_string(kTableBudget) + " elements)");
      }
    }
  FiniteMonoid m;
  m.n = static_cast<std::uint32_t>(elems.size());
  m.identity = 0;
  m.table.resize(std::size_t{m.n} * m.n);
  for (std::uint32_t i = 0; i < m.n; ++i)
    for (std::uint32_t j = 0; j < m.n; ++j)
      m.table[std::size_t{i} * m.n + j] = index.at(mul(elems[i], elems[j]));
  std::vector<std::uint32_t> letter_image;
  letter_image.reserve(letters.size());
  for (const auto& g : letters) letter_image.push_back(index.at(g));
  return {std::move(m), std::move(letter_image), std::move(elems)};
}

}  // namespace

StampLanguage la_astar_stamp(const Stamp& phi, const std::vector<bool>& accepting, char marker) {
  validate(phi);
  if (accepting.size() != phi.monoid.n)
    throw std::invalid_argument("accepting subset size does not match the monoid");
  phi.image_of(marker);  // rejects a marker outside the alphabet
  const std::uint32_t nt = phi.monoid.n;
  if (nt > 64)
    throw CapExceeded("coordinate set exceeds 64 entries; recognizing monoid too large");
  const std::uint32_t id = phi.monoid.identity;
  std::uint64_t acc_mask = 0;
  for (std::uint32_t x = 0; x < nt; ++x)
    if (accepting[x]) acc_mask |= std::uint64_t{1} << x;

  std::vector<std::pair<std::uint64_t, std::uint32_t>> letters;
  for (std::size_t i = 0; i < phi.alphabet.size(); ++i)
    letters.emplace_back(phi.alphabet[i] == marker ? acc_mask : 0, phi.letter_image[i]);

  // lambda(t, f)(x) = f(x t): coordinate x reads the old coordinate x*t
  auto shift = [&](std::uint64_t mask, std::uint32_t t) {
    std::uint64_t out = 0;
    for (std::uint32_t x = 0; x < nt; ++x)
      if (mask >> phi.monoid.mul(x, t) & 1) out |= std::uint64_t{1} << x;
    return out;
  };
  auto mul = [&](std::pair<std::uint64_t, std::uint32_t> a,
                 std::pair<std::uint64_t, std::uint32_t> b) {
    return std::pair<std::uint64_t, std::uint32_t>{a.first | shift(b.first, a.second),
                                                   phi.monoid.mul(a.second, b.second)};
  };
  auto [m, letter_image, elems] = closure_monoid(letters, {0, id}, mul);

  StampLanguage out;
  out.stamp = Stamp{phi.alphabet, std::move(m), std::move(letter_image)};
  out.accepting.resize(out.stamp.monoid.n);
  for (std::uint32_t i = 0; i < out.stamp.monoid.n; ++i)
    out.accepting[i] = elems[i].first >> id & 1;
  return out;
}

Dfa marked_concat_dfa(const Dfa& k, char marker, const Dfa& l) {
  validate(k);
  validate(l);
  if (k.alphabet != l.alphabet) throw std::invalid_argument("alphabet mismatch");
  const std::uint32_t mi = k.letter_index(marker);
  if (l.state_count > 64)
    throw CapExceeded("suffix automaton exceeds 64 states; subset construction refused");
  std::uint64_t l_acc = 0;
  for (std::uint32_t q = 0; q < l.state_count; ++q)
    if (l.accepting[q]) l_acc |= std::uint64_t{1} << q;

  const std::size_t na = k.alphabet.size();
  std::map<std::pair<std::uint32_t, std::uint64_t>, std::uint32_t> index;
  std::vector<std::pair<std::uint32_t, std::uint64_t>> states{{k.initial, 0}};
  index.emplace(states[0], 0);
  std::vector<std::uint32_t> delta;
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto [kq, mask] = states[i];
    for (std::uint32_t c = 0; c < na; ++c) {
      std::uint64_t nm = 0;
      for (std::uint32_t q = 0; q < l.state_count; ++q)
        if (mask >> q & 1) nm |= std::uint64_t{1} << l.next(q, c);
      if (c == mi && k.accepting[kq]) nm |= std::uint64_t{1} << l.initial;
      std::pair<std::uint32_t, std::uint64_t> key{k.next(kq, c), nm};
      auto [it, fresh] = index.emplace(key, static_cast<std::uint32_t>(states.size()));
      if (fresh) {
        states.push_back(key);
        if (states.size() > 100'000)
          throw CapExceeded("marked concatenation automaton exceeds 100000 states");
      }
      delta.push_back(it->second);
    }
  }
  Dfa d;
  d.alphabet = k.alphabet;
  d.state_count = static_cast<std::uint32_t>(states.size());
  d.initial = 0;
  d.accepting.resize(d.state_count);
  for (std::uint32_t i = 0; i < d.state_count; ++i) d.accepting[i] = (states[i].second & l_acc) != 0;
  d.delta = std::move(delta);
  return d;
}

StampLanguage kal_stamp(const Stamp& phi, const std::vector<bool>& k_accepting, char marker,
                        const std::vector<bool>& l_accepting) {
  validate(phi);
  if (k_accepting.size() != phi.monoid.n || l_accepting.size() != phi.monoid.n)
    throw std::invalid_argument("accepting subset size does not match the monoid");
  phi.image_of(marker);
  const std::uint32_t nt = phi.monoid.n;
  if (std::uint64_t{nt} * nt > 64)
    throw CapExceeded("coordinate set exceeds 64 entries; recognizing monoid too large");
  const std::uint32_t id = phi.monoid.identity;
  auto at = [&](std::uint32_t x, std::uint32_t y) { return x * nt + y; };
  std::uint64_t acc_mask = 0;
  for (std::uint32_t x = 0; x < nt; ++x)
    for (std::uint32_t y = 0; y < nt; ++y)
      if (k_accepting[x] && l_accepting[y]) acc_mask |= std::uint64_t{1} << at(x, y);

  std::vector<std::pair<std::uint64_t, std::uint32_t>> letters;
  for (std::size_t i = 0; i < phi.alphabet.size(); ++i)
    letters.emplace_back(phi.alphabet[i] == marker ? acc_mask : 0, phi.letter_image[i]);

  // lambda(t, F)(x, y) = F(x t, y); rho(F, t)(x, y) = F(x, t y)
  auto lshift = [&](std::uint64_t mask, std::uint32_t t) {
    std::uint64_t out = 0;
    for (std::uint32_t x = 0; x < nt; ++x)
      for (std::uint32_t y = 0; y < nt; ++y)
        if (mask >> at(phi.monoid.mul(x, t), y) & 1) out |= std::uint64_t{1} << at(x, y);
    return out;
  };
  auto rshift = [&](std::uint64_t mask, std::uint32_t t) {
    std::uint64_t out = 0;
    for (std::uint32_t x = 0; x < nt; ++x)
      for (std::uint32_t y = 0; y < nt; ++y)
        if (mask >> at(x, phi.monoid.mul(t, y)) & 1) out |= std::uint64_t{1} << at(x, y);
    return out;
  };
  auto mul = [&](std::pair<std::uint64_t, std::uint32_t> a,
                 std::pair<std::uint64_t, std::uint32_t> b) {
    return std::pair<std::uint64_t, std::uint32_t>{rshift(a.first, b.second) | lshift(b.first, a.second),
                                                   phi.monoid.mul(a.second, b.second)};
  };
  auto [m, letter_image, elems] = closure_monoid(letters, {0, id}, mul);

  StampLanguage out;
  out.stamp = Stamp{phi.alphabet, std::move(m), std::move(letter_image)};
  out.accepting.resize(out.stamp.monoid.n);
  for (std::uint32_t i = 0; i < out.stamp.monoid.n; ++i)
    out.accepting[i] = elems[i].first >> at(id, id) & 1;

  // every call checks itself against the directly built automaton
  Dfa direct = minimize(marked_concat_dfa(stamp_language_dfa(phi, k_accepting), marker,
                                          stamp_language_dfa(phi, l_accepting)));
  Dfa mine = minimize(stamp_language_dfa(out.stamp, out.accepting));
  if (!(direct == mine))
    throw InternalError("marked concatenation stamp disagrees with the direct automaton");
  return out;
}

std::uint32_t WreathDecomposition::chi_of(std::uint32_t t, char a) const {
  auto pos = alphabet.find(a);
  if (pos == std::string::npos) throw std::invalid_argument("letter outside the alphabet");
  return chi[t * alphabet.size() + pos];
}

std::vector<std::pair<std::uint32_t, char>> WreathDecomposition::sigma(const std::string& w) const {
  std::vector<std::pair<std::uint32_t, char>> out;
  out.reserve(w.size());
  std::uint32_t sub = psi.monoid.identity;
  for (char c : w) {
    out.emplace_back(psi_t[sub], c);
    sub = psi.monoid.mul(sub, psi.image_of(c));
  }
  return out;
}

WreathDecomposition wreath_decompose(const Stamp& phi, const LeftAction& a) {
  validate(a);
  FiniteMonoid expected = semidirect_table(a);
  if (phi.monoid.n != expected.n || phi.monoid.identity != expected.identity ||
      phi.monoid.table != expected.table)
    throw std::invalid_argument("stamp target is not the semidirect product of the given action");
  const std::uint32_t nt = a.t.n;
  const std::size_t na = phi.alphabet.size();
  auto s_of = [&](std::uint32_t m) { return m / nt; };
  auto t_of = [&](std::uint32_t m) { return m % nt; };

  std::vector<std::uint32_t> tpart(na);
  for (std::size_t i = 0; i < na; ++i) tpart[i] = t_of(phi.letter_image[i]);

  // submonoid of T generated by the letter projections
  std::map<std::uint32_t, std::uint32_t> sub;
  std::vector<std::uint32_t> elems{a.t.identity};
  sub.emplace(a.t.identity, 0);
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::uint32_t g : tpart) {
      std::uint32_t e = a.t.mul(elems[i], g);
      if (sub.emplace(e, static_cast<std::uint32_t>(elems.size())).second) elems.push_back(e);
    }
  FiniteMonoid tm;
  tm.n = static_cast<std::uint32_t>(elems.size());
  tm.identity = 0;
  tm.table.resize(std::size_t{tm.n} * tm.n);
  for (std::uint32_t i = 0; i < tm.n; ++i)
    for (std::uint32_t j = 0; j < tm.n; ++j)
      tm.table[std::size_t{i} * tm.n + j] = sub.at(a.t.mul(elems[i], elems[j]));

  WreathDecomposition d;
  std::vector<std::uint32_t> psi_images(na);
  for (std::size_t i = 0; i < na; ++i) psi_images[i] = sub.at(tpart[i]);
  d.psi = Stamp{phi.alphabet, std::move(tm), std::move(psi_images)};
  d.psi_t = std::move(elems);
  d.alphabet = phi.alphabet;
  d.t_size = nt;
  d.chi.resize(std::size_t{nt} * na);
  for (std::uint32_t t = 0; t < nt; ++t)
    for (std::size_t i = 0; i < na; ++i)
      d.chi[t * na + i] = a.act(t, s_of(phi.letter_image[i]));

  // factorization check on every word up to length 5: the S component of
  // phi(w) must equal the chi-product over the decorated word, and the T
  // component must equal the psi image
  struct Node {
    std::uint32_t img, tpre, sfold, psi_sub;
    std::uint32_t depth;
  };
  std::vector<Node> stack{{phi.monoid.identity, a.t.identity, a.s.identity, 0, 0}};
  while (!stack.empty()) {
    Node nd = stack.back();
    stack.pop_back();
    if (s_of(nd.img) != nd.sfold || t_of(nd.img) != nd.tpre || d.psi_t[nd.psi_sub] != nd.tpre)
      throw InternalError("wreath factorization identity failed on a short word");
    if (nd.depth == 5) continue;
    for (std::size_t i = 0; i < na; ++i) {
      Node nx;
      nx.img = phi.monoid.mul(nd.img, phi.letter_image[i]);
      nx.sfold = a.s.mul(nd.sfold, d.chi[nd.tpre * na + i]);
      nx.tpre = a.t.mul(nd.tpre, tpart[i]);
      nx.psi_sub = d.psi.monoid.mul(nd.psi_sub, d.psi.letter_image[i]);
      nx.depth = nd.depth + 1;
      stack.push_back(nx);
    }
  }
  return d;
}

// ---- .act text format ---------------------------------------------------

namespace {

struct Scanner {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  // next whitespace-delimited token; empty at end of input
  std::pair<std::string, std::size_t> token() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    return {text.substr(start, pos - start), start};
  }
  std::uint32_t number(const char* what) {
    auto [tok, start] = token();
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
      throw ParseError(std::string("expected a number for ") + what, start);
    return value;
  }
  void keyword(const char* what) {
    auto [tok, start] = token();
    if (tok != what) throw ParseError(std::string("expected '") + what + "'", start);
  }
};

}  // namespace

std::string write_act(const ActFile& f) {
  std::string out = "S " + std::to_string(f.s_size) + " T " + std::to_string(f.t_size) + "\n";
  for (std::uint32_t t = 0; t < f.t_size; ++t)
    for (std::uint32_t s = 0; s < f.s_size; ++s)
      out += "act " + std::to_string(t) + " " + std::to_string(s) + " " +
             std::to_string(f.left[t * f.s_size + s]) + "\n";
  if (f.right)
    for (std::uint32_t s = 0; s < f.s_size; ++s)
      for (std::uint32_t t = 0; t < f.t_size; ++t)
        out += "ract " + std::to_string(s) + " " + std::to_string(t) + " " +
               std::to_string((*f.right)[s * f.t_size + t]) + "\n";
  return out;
}

ActFile read_act(const std::string& text) {
  Scanner sc{text};
  sc.keyword("S");
  ActFile f;
  f.s_size = sc.number("|S|");
  sc.keyword("T");
  f.t_size = sc.number("|T|");
  if (f.s_size == 0 || f.t_size == 0) throw ParseError("sizes must be positive", 0);
  f.left.resize(std::size_t{f.s_size} * f.t_size);
  for (std::uint32_t t = 0; t < f.t_size; ++t)
    for (std::uint32_t s = 0; s < f.s_size; ++s) {
      sc.keyword("act");
      std::size_t at = sc.pos;
      std::uint32_t tt = sc.number("t");
      std::uint32_t ss = sc.number("s");
      std::uint32_t v = sc.number("result");
      if (tt != t || ss != s) throw ParseError("act lines must appear in row-major order", at);
      if (v >= f.s_size) throw ParseError("action result out of range", at);
      f.left[t * f.s_size + s] = v;
    }
  auto [tok, start] = sc.token();
  if (tok == "ract") {
    f.right.emplace(std::size_t{f.s_size} * f.t_size);
    bool consumed = true;  // the dispatching token was this block's first keyword
    for (std::uint32_t s = 0; s < f.s_size; ++s)
      for (std::uint32_t t = 0; t < f.t_size; ++t) {
        if (!consumed) sc.keyword("ract");
        consumed = false;
        std::size_t at = sc.pos;
        std::uint32_t ss = sc.number("s");
        std::uint32_t tt = sc.number("t");
        std::uint32_t v = sc.number("result");
        if (ss != s || tt != t) throw ParseError("ract lines must appear in row-major order", at);
        if (v >= f.s_size) throw ParseError("action result out of range", at);
        (*f.right)[s * f.t_size + t] = v;
      }
    std::tie(tok, start) = sc.token();
  }
  if (!tok.empty()) throw ParseError("unexpected trailing input", start);
  return f;
}

ActFile act_file(const LeftAction& a) { return {a.s.n, a.t.n, a.table, std::nullopt}; }

ActFile act_file(const BiAction& a) {
  return {a.left.s.n, a.left.t.n, a.left.table, a.rtable};
}

LeftAction left_action(const ActFile& f, const FiniteMonoid& s, const FiniteMonoid& t) {
  if (f.s_size != s.n || f.t_size != t.n)
    throw std::invalid_argument("action file sizes do not match the monoids");
  LeftAction a{s, t, f.left};
  validate(a);
  return a;
}

BiAction bi_action(const ActFile& f, const FiniteMonoid& s, const FiniteMonoid& t) {
  if (!f.right) throw std::invalid_argument("action file carries no right action table");
  LeftAction l{s, t, f.left};
  if (f.s_size != s.n || f.t_size != t.n)
    throw std::invalid_argument("action file sizes do not match the monoids");
  BiAction a{std::move(l), *f.right};
  validate(a);
  return a;
}

}  // namespace vlab
