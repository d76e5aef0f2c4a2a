#include "vlab/oracle.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "vlab/errors.hpp"
#include "vlab/regex.hpp"

namespace vlab {

namespace {

constexpr std::uint64_t kTableBudget = 8192;

}  // namespace

FiniteMonoid syntactic_monoid_bruteforce(const Dfa& d, std::uint32_t max_len) {
  Dfa m = minimize(d);
  const std::uint32_t q = m.state_count;
  if (std::uint64_t{max_len} < std::uint64_t{q} * q)
    throw std::invalid_argument("max_len is below the completeness bound state_count^2 = " +
                                std::to_string(std::uint64_t{q} * q));
  const std::size_t na = m.alphabet.size();

  std::vector<std::uint32_t> id(q);
  for (std::uint32_t i = 0; i < q; ++i) id[i] = i;
  std::map<std::vector<std::uint32_t>, std::uint32_t> index;
  std::vector<std::vector<std::uint32_t>> elems{id};
  std::vector<std::string> reps{""};
  index.emplace(id, 0);

  // level-by-level enumeration; a level that adds nothing new proves the
  // collected set closed, since longer words only append letters to words
  // already grouped
  std::vector<std::uint32_t> frontier{0};
  std::uint32_t level = 0;
  while (!frontier.empty()) {
    if (level == max_len)
      throw std::invalid_argument(
          "new transformations still appear at length max_len; the bound is too small");
    ++level;
    std::vector<std::uint32_t> next;
    for (std::uint32_t e : frontier)
      for (std::size_t c = 0; c < na; ++c) {
        std::vector<std::uint32_t> tr(q);
        for (std::uint32_t i = 0; i < q; ++i)
          tr[i] = m.next(elems[e][i], static_cast<std::uint32_t>(c));
        auto [it, fresh] = index.emplace(tr, static_cast<std::uint32_t>(elems.size()));
        if (fresh) {
          if (elems.size() >= kTableBudget)
            throw CapExceeded("word grouping would exceed the multiplication table budget (" +
                              std::to_string(kTableBudget) + " elements)");
          elems.push_back(std::move(tr));
          reps.push_back(reps[e] + m.alphabet[c]);
          next.push_back(it->second);
        }
      }
    frontier = std::move(next);
  }

  const std::uint32_t n = static_cast<std::uint32_t>(elems.size());
  FiniteMonoid out;
  out.n = n;
  out.identity = 0;
  out.table.resize(std::size_t{n} * n);
  const bool walk_words = n <= 512;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      std::vector<std::uint32_t> tr(q);
      if (walk_words) {
        const std::string w = reps[i] + reps[j];
        for (std::uint32_t s = 0; s < q; ++s) tr[s] = m.walk(s, w);
      } else {
        for (std::uint32_t s = 0; s < q; ++s) tr[s] = elems[j][elems[i][s]];
      }
      auto it = index.find(tr);
      if (it == index.end()) throw InternalError("word grouping missed a concatenation");
      out.table[std::size_t{i} * n + j] = it->second;
    }
  return out;
}

boost::multiprecision::cpp_int count_words(const Dfa& d, std::uint32_t n) {
  validate(d);
  if (n > 200) throw std::invalid_argument("word length exceeds 200");
  using boost::multiprecision::cpp_int;
  std::vector<cpp_int> cur(d.state_count), next(d.state_count);
  cur[d.initial] = 1;
  for (std::uint32_t step = 0; step < n; ++step) {
    for (auto& v : next) v = 0;
    for (std::uint32_t s = 0; s < d.state_count; ++s) {
      if (cur[s] == 0) continue;
      for (std::uint32_t c = 0; c < d.alphabet.size(); ++c) next[d.next(s, c)] += cur[s];
    }
    cur.swap(next);
  }
  cpp_int total = 0;
  for (std::uint32_t s = 0; s < d.state_count; ++s)
    if (d.accepting[s]) total += cur[s];
  return total;
}

TransitionMonoid random_transition_monoid(std::uint64_t seed, std::uint32_t states,
                                          std::uint32_t letters) {
  if (states < 1 || states > 6) throw std::invalid_argument("states must lie in 1..6");
  if (letters < 1 || letters > 2) throw std::invalid_argument("letters must lie in 1..2");
  std::mt19937_64 rng(seed);
  Dfa d;
  d.alphabet = std::string("ab").substr(0, letters);
  d.state_count = states;
  d.initial = 0;
  d.accepting.resize(states);
  for (std::uint32_t s = 0; s < states; ++s) d.accepting[s] = rng() % 2 == 1;
  d.delta.resize(std::size_t{states} * letters);
  for (auto& t : d.delta) t = static_cast<std::uint32_t>(rng() % states);
  return transition_monoid(d);
}

std::vector<std::string> subword_vector(const std::string& w, std::uint32_t k) {
  if (k > 4) throw std::invalid_argument("subword length bound exceeds 4");
  std::set<std::string> seen{""};
  for (char c : w) {
    std::vector<std::string> add;
    for (const std::string& s : seen)
      if (s.size() < k) add.push_back(s + c);
    seen.insert(add.begin(), add.end());
  }
  std::vector<std::string> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

bool piecewise_consistency(const Dfa& d, std::uint32_t k, std::uint32_t max_len) {
  validate(d);
  if (k > 4) throw std::invalid_argument("subword length bound exceeds 4");
  if (max_len > 12) throw std::invalid_argument("max_len exceeds 12");
  std::uint64_t total = 1, level = 1;
  for (std::uint32_t i = 1; i <= max_len; ++i) {
    level *= d.alphabet.size();
    total += level;
    if (total > 4'000'000)
      throw CapExceeded("word enumeration exceeds the four-million-word budget");
  }
  std::map<std::vector<std::string>, bool> cls;
  std::vector<std::string> current{""};
  for (std::uint32_t len = 0;; ++len) {
    for (const std::string& w : current) {
      bool member = accepts(d, w);
      auto [it, fresh] = cls.emplace(subword_vector(w, k), member);
      if (!fresh && it->second != member) return false;
    }
    if (len == max_len) break;
    std::vector<std::string> longer;
    longer.reserve(current.size() * d.alphabet.size());
    for (const std::string& w : current)
      for (char c : d.alphabet) longer.push_back(w + c);
    current = std::move(longer);
  }
  return true;
}

FixtureResult run_fixture_text(const std::string& text) {
  using nlohmann::json;
  FixtureResult res;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    ++res.total;
    std::string err;
    try {
      json j = json::parse(line);
      const std::string op = j.at("operation").get<std::string>();
      const json& input = j.at("input");
      const json& expected = j.at("output");
      auto language = [&]() {
        return compile(parse_regex(input.at("regex").get<std::string>(),
                                   input.value("alphabet", std::string{})));
      };
      json actual;
      if (op == "count_words") {
        actual = count_words(language(), input.at("n").get<std::uint32_t>()).str();
      } else if (op == "synt_bf_size") {
        actual = syntactic_monoid_bruteforce(language(), input.at("max_len").get<std::uint32_t>()).n;
      } else if (op == "subword_vector") {
        actual = subword_vector(input.at("word").get<std::string>(),
                                input.at("k").get<std::uint32_t>());
      } else if (op == "piecewise_consistency") {
        actual = piecewise_consistency(language(), input.at("k").get<std::uint32_t>(),
                                       input.at("max_len").get<std::uint32_t>());
      } else if (op == "random_monoid_size") {
        actual = random_transition_monoid(input.at("seed").get<std::uint64_t>(),
                                          input.at("states").get<std::uint32_t>(),
                                          input.at("letters").get<std::uint32_t>())
                     .stamp.monoid.n;
      } else if (op == "accepts") {
        actual = accepts(language(), input.at("word").get<std::string>());
      } else {
        res.failures.push_back("line " + std::to_string(lineno) + ": unknown operation '" + op +
                               "'");
        continue;
      }
      if (actual == expected) {
        ++res.passed;
        continue;
      }
      err = "expected " + expected.dump() + ", got " + actual.dump();
    } catch (const std::exception& e) {
      err = e.what();
    }
    res.failures.push_back("line " + std::to_string(lineno) + ": " + err);
  }
  return res;
}

}  // namespace vlab
