#include "vlab/dfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "vlab/errors.hpp"

namespace vlab {

std::uint32_t Dfa::letter_index(char c) const {
  auto pos = alphabet.find(c);
  if (pos == std::string::npos)
    throw std::invalid_argument("letter '" + std::string(1, c) + "' not in alphabet");
  return static_cast<std::uint32_t>(pos);
}

std::uint32_t Dfa::walk(std::uint32_t from, const std::string& w) const {
  std::uint32_t q = from;
  for (char c : w) q = next(q, letter_index(c));
  return q;
}

void validate(const Dfa& d) {
  if (d.state_count == 0) throw std::invalid_argument("DFA needs at least one state");
  if (!std::is_sorted(d.alphabet.begin(), d.alphabet.end()) ||
      std::adjacent_find(d.alphabet.begin(), d.alphabet.end()) != d.alphabet.end())
    throw std::invalid_argument("alphabet must be sorted and duplicate-free");
  for (char c : d.alphabet)
    if (c < 'a' || c > 'z') throw std::invalid_argument("alphabet letters must be lowercase a-z");
  if (d.initial >= d.state_count) throw std::invalid_argument("initial state out of range");
  if (d.accepting.size() != d.state_count)
    throw std::invalid_argument("accepting vector has wrong size");
  if (d.delta.size() != static_cast<std::size_t>(d.state_count) * d.alphabet.size())
    throw std::invalid_argument("transition table has wrong size");
  for (std::uint32_t t : d.delta)
    if (t >= d.state_count) throw std::invalid_argument("transition target out of range");
}

namespace {

// Internal epsilon-NFA, used only while compiling regular expressions.
struct Nfa {
  std::size_t letters = 0;
  std::uint32_t state_count = 0;
  std::vector<std::uint32_t> initial;
  std::vector<bool> accepting;
  std::vector<std::vector<std::uint32_t>> delta;  // state * letters + a -> targets
  std::vector<std::vector<std::uint32_t>> eps;    // state -> targets

  std::uint32_t add_state() {
    accepting.push_back(false);
    delta.resize(delta.size() + letters);
    eps.emplace_back();
    return state_count++;
  }
};

Nfa nfa_from_dfa(const Dfa& d) {
  Nfa n;
  n.letters = d.alphabet.size();
  for (std::uint32_t q = 0; q < d.state_count; ++q) n.add_state();
  n.initial = {d.initial};
  n.accepting = d.accepting;
  for (std::uint32_t q = 0; q < d.state_count; ++q)
    for (std::size_t a = 0; a < n.letters; ++a)
      n.delta[q * n.letters + a].push_back(d.next(q, static_cast<std::uint32_t>(a)));
  return n;
}

void eps_close(const Nfa& n, std::set<std::uint32_t>& states) {
  std::deque<std::uint32_t> queue(states.begin(), states.end());
  while (!queue.empty()) {
    std::uint32_t q = queue.front();
    queue.pop_front();
    for (std::uint32_t t : n.eps[q])
      if (states.insert(t).second) queue.push_back(t);
  }
}

// Subset construction; the empty subset is the sink, so the result is complete.
Dfa determinize(const Nfa& n, const std::string& alphabet) {
  Dfa d;
  d.alphabet = alphabet;
  std::map<std::set<std::uint32_t>, std::uint32_t> index;
  std::vector<std::set<std::uint32_t>> subsets;
  std::queue<std::uint32_t> queue;

  auto intern = [&](std::set<std::uint32_t> s) {
    eps_close(n, s);
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(subsets.size());
    index.emplace(s, id);
    subsets.push_back(std::move(s));
    queue.push(id);
    return id;
  };

  d.initial = intern(std::set<std::uint32_t>(n.initial.begin(), n.initial.end()));
  while (!queue.empty()) {
    std::uint32_t id = queue.front();
    queue.pop();
    for (std::size_t a = 0; a < alphabet.size(); ++a) {
      std::set<std::uint32_t> succ;
      for (std::uint32_t q : subsets[id])
        for (std::uint32_t t : n.delta[q * n.letters + a]) succ.insert(t);
      std::uint32_t tid = intern(std::move(succ));
      d.delta.resize(subsets.size() * alphabet.size());
      d.delta[id * alphabet.size() + a] = tid;
    }
  }
  d.state_count = static_cast<std::uint32_t>(subsets.size());
  d.delta.resize(d.state_count * alphabet.size());
  d.accepting.assign(d.state_count, false);
  for (std::uint32_t id = 0; id < d.state_count; ++id)
    for (std::uint32_t q : subsets[id])
      if (n.accepting[q]) d.accepting[id] = true;
  return d;
}

Dfa product(const Dfa& a, const Dfa& b, bool want_union) {
  if (a.alphabet != b.alphabet) throw std::invalid_argument("alphabet mismatch");
  Dfa d;
  d.alphabet = a.alphabet;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> index;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::queue<std::uint32_t> queue;
  auto intern = [&](std::uint32_t qa, std::uint32_t qb) {
    auto key = std::make_pair(qa, qb);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(pairs.size());
    index.emplace(key, id);
    pairs.push_back(key);
    queue.push(id);
    return id;
  };
  d.initial = intern(a.initial, b.initial);
  while (!queue.empty()) {
    std::uint32_t id = queue.front();
    queue.pop();
    auto [qa, qb] = pairs[id];
    for (std::size_t l = 0; l < d.alphabet.size(); ++l) {
      std::uint32_t tid = intern(a.next(qa, static_cast<std::uint32_t>(l)),
                                 b.next(qb, static_cast<std::uint32_t>(l)));
      d.delta.resize(pairs.size() * d.alphabet.size());
      d.delta[id * d.alphabet.size() + l] = tid;
    }
  }
  d.state_count = static_cast<std::uint32_t>(pairs.size());
  d.delta.resize(d.state_count * d.alphabet.size());
  d.accepting.assign(d.state_count, false);
  for (std::uint32_t id = 0; id < d.state_count; ++id) {
    auto [qa, qb] = pairs[id];
    d.accepting[id] =
        want_union ? (a.accepting[qa] || b.accepting[qb]) : (a.accepting[qa] && b.accepting[qb]);
  }
  return d;
}

Dfa compile_node(const Regex& r, const std::string& alphabet);

Dfa single_state(const std::string& alphabet, bool accepting) {
  Dfa d;
  d.alphabet = alphabet;
  d.state_count = 1;
  d.initial = 0;
  d.accepting = {accepting};
  d.delta.assign(alphabet.size(), 0);
  return d;
}

Dfa compile_letter(char c, const std::string& alphabet) {
  // 0 --c--> 1 (accepting), everything else to the sink 2.
  Dfa d;
  d.alphabet = alphabet;
  d.state_count = 3;
  d.initial = 0;
  d.accepting = {false, true, false};
  d.delta.assign(3 * alphabet.size(), 2);
  auto pos = alphabet.find(c);
  d.delta[0 * alphabet.size() + pos] = 1;
  return d;
}

Dfa compile_epsilon(const std::string& alphabet) {
  if (alphabet.empty()) return single_state(alphabet, true);
  Dfa d;
  d.alphabet = alphabet;
  d.state_count = 2;
  d.initial = 0;
  d.accepting = {true, false};
  d.delta.assign(2 * alphabet.size(), 1);
  return d;
}

Dfa compile_concat(const Dfa& a, const Dfa& b) {
  Nfa n;
  n.letters = a.alphabet.size();
  for (std::uint32_t q = 0; q < a.state_count + b.state_count; ++q) n.add_state();
  std::uint32_t off = a.state_count;
  n.initial = {a.initial};
  for (std::uint32_t q = 0; q < a.state_count; ++q) {
    for (std::size_t l = 0; l < n.letters; ++l)
      n.delta[q * n.letters + l].push_back(a.next(q, static_cast<std::uint32_t>(l)));
    if (a.accepting[q]) n.eps[q].push_back(off + b.initial);
  }
  for (std::uint32_t q = 0; q < b.state_count; ++q) {
    for (std::size_t l = 0; l < n.letters; ++l)
      n.delta[(off + q) * n.letters + l].push_back(off + b.next(q, static_cast<std::uint32_t>(l)));
    n.accepting[off + q] = b.accepting[q];
  }
  return determinize(n, a.alphabet);
}

Dfa compile_star(const Dfa& a) {
  Nfa n = nfa_from_dfa(a);
  std::uint32_t hub = n.add_state();  // fresh accepting start, closes the loop
  n.accepting[hub] = true;
  n.eps[hub].push_back(a.initial);
  for (std::uint32_t q = 0; q < a.state_count; ++q)
    if (a.accepting[q]) n.eps[q].push_back(hub);
  n.initial = {hub};
  return determinize(n, a.alphabet);
}

Dfa compile_node(const Regex& r, const std::string& alphabet) {
  switch (r.kind) {
    case Regex::Kind::empty:
      return single_state(alphabet, false);
    case Regex::Kind::epsilon:
      return minimize(compile_epsilon(alphabet));
    case Regex::Kind::letter:
      return minimize(compile_letter(r.letter, alphabet));
    case Regex::Kind::union_:
    case Regex::Kind::intersection: {
      Dfa acc = compile_node(r.children[0], alphabet);
      for (std::size_t i = 1; i < r.children.size(); ++i) {
        Dfa next = compile_node(r.children[i], alphabet);
        acc = minimize(product(acc, next, r.kind == Regex::Kind::union_));
      }
      return acc;
    }
    case Regex::Kind::concat: {
      Dfa acc = compile_node(r.children[0], alphabet);
      for (std::size_t i = 1; i < r.children.size(); ++i) {
        Dfa next = compile_node(r.children[i], alphabet);
        acc = minimize(compile_concat(acc, next));
      }
      return acc;
    }
    case Regex::Kind::star:
      return minimize(compile_star(compile_node(r.children[0], alphabet)));
    case Regex::Kind::complement: {
      Dfa inner = compile_node(r.children[0], alphabet);
      for (std::size_t q = 0; q < inner.state_count; ++q)
        inner.accepting[q] = !inner.accepting[q];
      return minimize(inner);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

Dfa minimize(const Dfa& d) {
  validate(d);
  std::size_t letters = d.alphabet.size();

  // Reachable restriction.
  std::vector<std::uint32_t> order;
  std::vector<std::int64_t> to_new(d.state_count, -1);
  order.push_back(d.initial);
  to_new[d.initial] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t a = 0; a < letters; ++a) {
      std::uint32_t t = d.next(order[i], static_cast<std::uint32_t>(a));
      if (to_new[t] < 0) {
        to_new[t] = static_cast<std::int64_t>(order.size());
        order.push_back(t);
      }
    }
  std::uint32_t n = static_cast<std::uint32_t>(order.size());

  // Moore refinement over the reachable part.
  std::vector<std::uint32_t> cls(n);
  for (std::uint32_t q = 0; q < n; ++q) cls[q] = d.accepting[order[q]] ? 1 : 0;
  std::uint32_t cls_count = 2;
  for (;;) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> sig_index;
    std::vector<std::uint32_t> next_cls(n);
    for (std::uint32_t q = 0; q < n; ++q) {
      std::vector<std::uint32_t> sig;
      sig.reserve(letters + 1);
      sig.push_back(cls[q]);
      for (std::size_t a = 0; a < letters; ++a)
        sig.push_back(cls[to_new[d.next(order[q], static_cast<std::uint32_t>(a))]]);
      auto [it, fresh] = sig_index.emplace(std::move(sig), static_cast<std::uint32_t>(sig_index.size()));
      (void)fresh;
      next_cls[q] = it->second;
    }
    std::uint32_t next_count = static_cast<std::uint32_t>(sig_index.size());
    bool stable = next_count == cls_count;
    cls = std::move(next_cls);
    cls_count = next_count;
    if (stable) break;
  }

  // BFS renumbering of classes from the initial state's class.
  std::vector<std::int64_t> canon(cls_count, -1);
  std::vector<std::uint32_t> rep;  // representative (new-numbered state) per canonical class
  canon[cls[0]] = 0;
  rep.push_back(0);
  for (std::size_t i = 0; i < rep.size(); ++i)
    for (std::size_t a = 0; a < letters; ++a) {
      std::uint32_t t = to_new[d.next(order[rep[i]], static_cast<std::uint32_t>(a))];
      if (canon[cls[t]] < 0) {
        canon[cls[t]] = static_cast<std::int64_t>(rep.size());
        rep.push_back(t);
      }
    }

  Dfa m;
  m.alphabet = d.alphabet;
  m.state_count = static_cast<std::uint32_t>(rep.size());
  m.initial = 0;
  m.accepting.assign(m.state_count, false);
  m.delta.assign(static_cast<std::size_t>(m.state_count) * letters, 0);
  for (std::uint32_t c = 0; c < m.state_count; ++c) {
    std::uint32_t q = rep[c];
    m.accepting[c] = d.accepting[order[q]];
    for (std::size_t a = 0; a < letters; ++a)
      m.delta[c * letters + a] =
          static_cast<std::uint32_t>(canon[cls[to_new[d.next(order[q], static_cast<std::uint32_t>(a))]]]);
  }
  return m;
}

Dfa compile(const ParsedRegex& pr) {
  return minimize(compile_node(pr.root, pr.alphabet));
}

bool accepts(const Dfa& d, const std::string& w) {
  return d.accepting[d.walk(d.initial, w)];
}

bool is_empty(const Dfa& d) {
  std::vector<bool> seen(d.state_count, false);
  std::queue<std::uint32_t> queue;
  seen[d.initial] = true;
  queue.push(d.initial);
  while (!queue.empty()) {
    std::uint32_t q = queue.front();
    queue.pop();
    if (d.accepting[q]) return false;
    for (std::size_t a = 0; a < d.alphabet.size(); ++a) {
      std::uint32_t t = d.next(q, static_cast<std::uint32_t>(a));
      if (!seen[t]) {
        seen[t] = true;
        queue.push(t);
      }
    }
  }
  return true;
}

Dfa union_(const Dfa& a, const Dfa& b) { return minimize(product(a, b, true)); }
Dfa intersection(const Dfa& a, const Dfa& b) { return minimize(product(a, b, false)); }

Dfa complement(const Dfa& a) {
  Dfa d = a;
  for (std::size_t q = 0; q < d.state_count; ++q) d.accepting[q] = !d.accepting[q];
  return minimize(d);
}

Dfa left_quotient(const Dfa& d, const std::string& w) {
  Dfa r = d;
  r.initial = d.walk(d.initial, w);
  return minimize(r);
}

Dfa right_quotient(const Dfa& d, const std::string& w) {
  Dfa r = d;
  for (std::uint32_t q = 0; q < d.state_count; ++q) r.accepting[q] = d.accepting[d.walk(q, w)];
  return minimize(r);
}

const std::string& FreeMorphism::image(char c) const {
  auto pos = source.find(c);
  if (pos == std::string::npos)
    throw std::invalid_argument("letter '" + std::string(1, c) + "' not in source alphabet");
  return images[pos];
}

std::string FreeMorphism::apply(const std::string& w) const {
  std::string out;
  for (char c : w) out += image(c);
  return out;
}

void validate(const FreeMorphism& f) {
  auto check_alphabet = [](const std::string& a, const char* which) {
    if (!std::is_sorted(a.begin(), a.end()) ||
        std::adjacent_find(a.begin(), a.end()) != a.end())
      throw std::invalid_argument(std::string(which) + " alphabet must be sorted and duplicate-free");
    for (char c : a)
      if (c < 'a' || c > 'z')
        throw std::invalid_argument(std::string(which) + " alphabet letters must be lowercase a-z");
  };
  check_alphabet(f.source, "source");
  check_alphabet(f.target, "target");
  if (f.images.size() != f.source.size())
    throw std::invalid_argument("morphism needs one image per source letter");
  for (const std::string& img : f.images)
    for (char c : img)
      if (f.target.find(c) == std::string::npos)
        throw std::invalid_argument("image uses letter outside target alphabet");
  switch (f.cls) {
    case FreeMorphism::Class::arbitrary:
      break;
    case FreeMorphism::Class::non_erasing:
      for (const std::string& img : f.images)
        if (img.empty()) throw std::invalid_argument("non-erasing morphism has an empty image");
      break;
    case FreeMorphism::Class::length_multiplying:
      for (const std::string& img : f.images)
        if (img.size() != f.images[0].size())
          throw std::invalid_argument("length-multiplying morphism needs images of one common length");
      if (!f.images.empty() && f.images[0].empty())
        throw std::invalid_argument("length-multiplying morphism needs nonempty images");
      break;
    case FreeMorphism::Class::length_preserving:
      for (const std::string& img : f.images)
        if (img.size() != 1)
          throw std::invalid_argument("length-preserving morphism needs single-letter images");
      break;
  }
}

Dfa inverse_image(const Dfa& d, const FreeMorphism& f) {
  validate(f);
  if (f.target != d.alphabet) throw std::invalid_argument("alphabet mismatch");
  Dfa r;
  r.alphabet = f.source;
  r.state_count = d.state_count;
  r.initial = d.initial;
  r.accepting = d.accepting;
  r.delta.assign(static_cast<std::size_t>(d.state_count) * f.source.size(), 0);
  for (std::uint32_t q = 0; q < d.state_count; ++q)
    for (std::size_t a = 0; a < f.source.size(); ++a)
      r.delta[q * f.source.size() + a] = d.walk(q, f.images[a]);
  return minimize(r);
}

std::string dfa_to_json(const Dfa& d) {
  nlohmann::ordered_json j;
  j["alphabet"] = nlohmann::json::array();
  for (char c : d.alphabet) j["alphabet"].push_back(std::string(1, c));
  j["states"] = d.state_count;
  j["initial"] = d.initial;
  std::vector<std::uint32_t> acc;
  for (std::uint32_t q = 0; q < d.state_count; ++q)
    if (d.accepting[q]) acc.push_back(q);
  j["accepting"] = acc;
  auto rows = nlohmann::json::array();
  for (std::uint32_t q = 0; q < d.state_count; ++q) {
    auto row = nlohmann::json::array();
    for (std::size_t a = 0; a < d.alphabet.size(); ++a) row.push_back(d.next(q, static_cast<std::uint32_t>(a)));
    rows.push_back(row);
  }
  j["delta"] = rows;
  return j.dump();
}

Dfa dfa_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("bad DFA JSON: ") + e.what(), 0);
  }
  try {
    Dfa d;
    for (const auto& s : j.at("alphabet")) {
      std::string letter = s.get<std::string>();
      if (letter.size() != 1) throw std::invalid_argument("alphabet entries must be single letters");
      d.alphabet += letter[0];
    }
    d.state_count = j.at("states").get<std::uint32_t>();
    d.initial = j.at("initial").get<std::uint32_t>();
    d.accepting.assign(d.state_count, false);
    for (const auto& q : j.at("accepting")) {
      std::uint32_t s = q.get<std::uint32_t>();
      if (s >= d.state_count) throw std::invalid_argument("accepting state out of range");
      d.accepting[s] = true;
    }
    for (const auto& row : j.at("delta"))
      for (const auto& t : row) d.delta.push_back(t.get<std::uint32_t>());
    validate(d);
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad DFA JSON: ") + e.what());
  }
}

}  // namespace vlab
