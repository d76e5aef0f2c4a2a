#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vlab/dfa.hpp"
#include "vlab/errors.hpp"
#include "vlab/games.hpp"
#include "vlab/monoid.hpp"
#include "vlab/omega_term.hpp"
#include "vlab/oracle.hpp"
#include "vlab/products.hpp"
#include "vlab/regex.hpp"
#include "vlab/stamp.hpp"
#include "vlab/varieties.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

vlab::Dfa load_input(const std::string& spec, const std::string& extra_alphabet) {
  if (spec.rfind("regex:", 0) == 0)
    return vlab::compile(vlab::parse_regex(spec.substr(6), extra_alphabet));
  if (spec.rfind("dfa:", 0) == 0) return vlab::dfa_from_json(slurp(spec.substr(4)));
  throw std::invalid_argument("--input must look like regex:\"...\" or dfa:FILE");
}

vlab::Signature parse_sig(const std::string& text) {
  vlab::Signature sig{};
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = text.find(',', pos);
    std::string tok =
        comma == std::string::npos ? text.substr(pos) : text.substr(pos, comma - pos);
    if (tok == "lt") {
      sig.use_order = true;
    } else if (tok == "succ") {
      sig.use_successor = true;
    } else if (tok.rfind("mod=", 0) == 0) {
      sig.mod_q = static_cast<std::uint32_t>(std::stoul(tok.substr(4)));
    } else {
      throw std::invalid_argument("unknown signature token '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return sig;
}

void print_violation(const vlab::IdentityViolation& v, const std::vector<std::string>* reps) {
  auto named = [&](std::uint32_t e) {
    std::string out = std::to_string(e);
    if (reps && e < reps->size()) out += " \"" + (*reps)[e] + "\"";
    return out;
  };
  for (std::size_t i = 0; i < v.vars.size(); ++i)
    std::cout << "  " << v.vars[i] << " = " << named(v.values[i]) << "\n";
  std::cout << "  lhs = " << named(v.lhs_value) << ", rhs = " << named(v.rhs_value) << "\n";
  if (v.clm_length > 0) std::cout << "  at image length " << v.clm_length << "\n";
}

vlab::OrderedMonoid ordered_from(const vlab::MtabFile& f) {
  vlab::OrderedMonoid om;
  om.monoid = f.monoid;
  const std::uint32_t n = f.monoid.n;
  om.leq.assign(std::size_t{n} * n, false);
  for (std::uint32_t i = 0; i < n; ++i) om.leq[std::size_t{i} * n + i] = true;
  for (auto [i, j] : f.order_pairs) om.leq[std::size_t{i} * n + j] = true;
  validate(om);
  return om;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> strict_pairs(const vlab::OrderedMonoid& om) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t i = 0; i < om.monoid.n; ++i)
    for (std::uint32_t j = 0; j < om.monoid.n; ++j)
      if (i != j && om.le(i, j)) pairs.emplace_back(i, j);
  return pairs;
}

vlab::Stamp stamp_from_mtab(const vlab::MtabFile& f) {
  if (f.generators.empty())
    throw std::invalid_argument("this interpretation needs generators in the table file");
  auto gens = f.generators;
  std::sort(gens.begin(), gens.end());
  vlab::Stamp s;
  s.monoid = f.monoid;
  for (auto [c, e] : gens) {
    s.alphabet += c;
    s.letter_image.push_back(e);
  }
  validate(s);
  return s;
}

int run_synt(const std::string& input, const std::string& alphabet, const std::string& emit,
             std::uint64_t cap) {
  vlab::SyntacticData sd = vlab::syntactic_stamp(load_input(input, alphabet), cap);
  vlab::OrderedMonoid om = vlab::syntactic_order(sd);
  auto pairs = strict_pairs(om);
  vlab::MtabFile f{sd.stamp.monoid, {}, pairs};
  for (std::size_t i = 0; i < sd.stamp.alphabet.size(); ++i)
    f.generators.emplace_back(sd.stamp.alphabet[i], sd.stamp.letter_image[i]);
  if (emit == "mtab") {
    std::cout << vlab::write_mtab(f);
    return 0;
  }
  if (emit == "json") {
    nlohmann::json j;
    j["n"] = sd.stamp.monoid.n;
    j["identity"] = sd.stamp.monoid.identity;
    j["table"] = sd.stamp.monoid.table;
    nlohmann::json gens = nlohmann::json::object();
    for (auto [c, e] : f.generators) gens[std::string(1, c)] = e;
    j["generators"] = gens;
    std::vector<std::uint32_t> acc;
    for (std::uint32_t e = 0; e < sd.stamp.monoid.n; ++e)
      if (sd.accepting[e]) acc.push_back(e);
    j["accepting"] = acc;
    nlohmann::json jp = nlohmann::json::array();
    for (auto [i, k] : pairs) jp.push_back({i, k});
    j["order_pairs"] = jp;
    j["representatives"] = sd.representatives;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "alphabet: " << sd.stamp.alphabet << "\n";
  std::cout << "elements: " << sd.stamp.monoid.n << "\n";
  std::cout << "identity: " << sd.stamp.monoid.identity << "\n";
  std::cout << "generators:";
  for (auto [c, e] : f.generators) std::cout << " " << c << "->" << e;
  std::cout << "\naccepting:";
  for (std::uint32_t e = 0; e < sd.stamp.monoid.n; ++e)
    if (sd.accepting[e]) std::cout << " " << e;
  std::cout << "\norder pairs: " << pairs.size() << "\n";
  std::cout << "representatives:";
  for (std::size_t e = 0; e < sd.representatives.size(); ++e)
    std::cout << " " << e << "=\"" << sd.representatives[e] << "\"";
  std::cout << "\n";
  return 0;
}

int run_classify(const std::string& input, const std::string& alphabet, bool as_json,
                 std::uint64_t cap) {
  vlab::ClassificationReport r = vlab::classify(load_input(input, alphabet), cap);
  if (as_json) {
    std::cout << vlab::report_to_json(r) << "\n";
    return 0;
  }
  auto line = [](const char* k, vlab::Verdict v) {
    std::cout << k << ": " << vlab::to_string(v) << "\n";
  };
  line("j1", r.j1);
  line("piecewise_testable", r.piecewise_testable);
  line("star_free", r.star_free);
  line("group", r.group);
  line("sigma1", r.sigma1);
  line("first_letter", r.first_letter);
  line("qa", r.qa);
  line("r_trivial", r.r_trivial);
  line("l_trivial", r.l_trivial);
  line("da", r.da);
  line("has_zero", r.has_zero);
  line("dense", r.dense);
  std::cout << "density: " << vlab::to_string(r.density) << "\n";
  if (r.non_dense_witness) std::cout << "non_dense_witness: \"" << *r.non_dense_witness << "\"\n";
  if (r.capped) std::cout << "capped: true\n";
  return 0;
}

int run_check_variety(const std::string& name, const std::string& input,
                      const std::string& alphabet, bool explain, std::uint64_t cap) {
  const vlab::VarietyDef& def = vlab::find_variety(name);
  vlab::SyntacticData sd = vlab::syntactic_stamp(load_input(input, alphabet), cap);
  vlab::MembershipResult r = vlab::is_member(sd, def);
  if (r.member) {
    std::cout << "member of " << def.name << "\n";
    if (explain && !r.note.empty()) std::cout << "note: " << r.note << "\n";
    return 0;
  }
  std::cout << "not a member of " << def.name << "\n";
  if (!r.failed_identity.empty()) std::cout << "violated: " << r.failed_identity << "\n";
  if (r.witness) print_violation(*r.witness, &sd.representatives);
  if (explain && !r.note.empty()) std::cout << "note: " << r.note << "\n";
  return 1;
}

int run_check_identity(const std::string& text, const std::string& mtab_path, bool ordered,
                       const std::string& interp_name) {
  vlab::MtabFile f = vlab::read_mtab(slurp(mtab_path));
  vlab::Identity id = vlab::parse_identity(text);
  using Interp = vlab::Identity::Interp;
  Interp interp = Interp::plain;
  if (interp_name == "sg") interp = Interp::semigroup;
  else if (interp_name == "cne") interp = Interp::c_ne;
  else if (interp_name == "clm") interp = Interp::c_lm;
  else if (interp_name != "plain") throw std::invalid_argument("unknown interpretation");
  id.interpretation = interp;

  std::optional<vlab::IdentityViolation> v;
  std::optional<vlab::OrderedMonoid> om;
  if (ordered) om = ordered_from(f);
  if (interp == Interp::plain) {
    v = ordered ? vlab::find_violation(*om, id) : vlab::find_violation(f.monoid, id);
  } else if (interp == Interp::semigroup) {
    if (ordered)
      throw std::invalid_argument("the semigroup interpretation has no ordered variant");
    v = vlab::find_violation(f.monoid.as_semigroup(), id);
  } else {
    vlab::Stamp s = stamp_from_mtab(f);
    v = vlab::find_stamp_violation(s, id, interp, om ? &*om : nullptr);
  }
  if (!v) {
    std::cout << "satisfied: " << vlab::to_string(id) << "\n";
    return 0;
  }
  std::cout << "violated: " << vlab::to_string(id) << "\n";
  print_violation(*v, nullptr);
  return 1;
}

int run_density(const std::string& input, const std::string& alphabet, std::uint32_t max_n) {
  vlab::Dfa d = load_input(input, alphabet);
  std::cout << "class: " << vlab::to_string(vlab::density_class(d)) << "\n";
  for (std::uint32_t n = 0; n <= max_n; ++n)
    std::cout << n << " " << vlab::count_words(d, n).str() << "\n";
  return 0;
}

int run_dense(const std::string& input, const std::string& alphabet, std::uint64_t cap) {
  vlab::DensityInfo info = vlab::is_dense(load_input(input, alphabet), cap);
  if (info.dense) {
    std::cout << "dense\n";
    return 0;
  }
  std::cout << "non-dense, witness: \"" << (info.witness ? *info.witness : std::string{})
            << "\"\n";
  return 1;
}

int run_product(const std::string& kind, const std::string& left, const std::string& right,
                const std::string& action, std::uint64_t cap) {
  auto emit = [](const vlab::FiniteMonoid& m) {
    std::cout << vlab::write_mtab(vlab::MtabFile{m, {}, {}});
    return 0;
  };
  vlab::MtabFile l = vlab::read_mtab(slurp(left));
  vlab::MtabFile r = vlab::read_mtab(slurp(right));
  if (kind == "wreath") {
    if (!action.empty())
      throw std::invalid_argument("the wreath product derives its action; drop --action");
    return emit(vlab::wreath_product(l.monoid, r.monoid, cap).product);
  }
  if (action.empty()) throw std::invalid_argument(kind + " needs --action FILE");
  vlab::ActFile af = vlab::read_act(slurp(action));
  if (kind == "semidirect")
    return emit(vlab::semidirect_product(vlab::left_action(af, l.monoid, r.monoid)));
  return emit(vlab::block_product(vlab::bi_action(af, l.monoid, r.monoid)));
}

int run_la_astar(const std::string& input, const std::string& alphabet, const std::string& letter,
                 bool verify, std::uint64_t cap) {
  if (letter.size() != 1) throw std::invalid_argument("--letter takes a single character");
  vlab::Dfa d = load_input(input, alphabet);
  vlab::SyntacticData sd = vlab::syntactic_stamp(d, cap);
  vlab::StampLanguage r = vlab::la_astar_stamp(sd.stamp, sd.accepting, letter[0]);
  std::cout << "elements: " << r.stamp.monoid.n << "\n";
  std::cout << "letter images:";
  for (std::size_t i = 0; i < r.stamp.alphabet.size(); ++i)
    std::cout << " " << r.stamp.alphabet[i] << "->" << r.stamp.letter_image[i];
  std::cout << "\naccepting:";
  for (std::uint32_t e = 0; e < r.stamp.monoid.n; ++e)
    if (r.accepting[e]) std::cout << " " << e;
  std::cout << "\n";
  if (!verify) return 0;
  vlab::Dfa all;
  all.alphabet = sd.stamp.alphabet;
  all.state_count = 1;
  all.initial = 0;
  all.accepting = {true};
  all.delta.assign(all.alphabet.size(), 0);
  vlab::Dfa direct = vlab::minimize(vlab::marked_concat_dfa(sd.minimal, letter[0], all));
  vlab::Dfa mine = vlab::minimize(vlab::stamp_language_dfa(r.stamp, r.accepting));
  if (direct == mine) {
    std::cout << "verified: languages agree\n";
    return 0;
  }
  std::cout << "verification FAILED: languages differ\n";
  return 1;
}

int run_oracle(const std::string& op, const std::string& input, const std::string& alphabet,
               std::uint32_t max_len, std::uint32_t n, std::uint32_t k) {
  vlab::Dfa d = load_input(input, alphabet);
  if (op == "synt-bf") {
    std::cout << "elements: " << vlab::syntactic_monoid_bruteforce(d, max_len).n << "\n";
    return 0;
  }
  if (op == "count") {
    std::cout << vlab::count_words(d, n).str() << "\n";
    return 0;
  }
  bool ok = vlab::piecewise_consistency(d, k, max_len);
  std::cout << (ok ? "consistent" : "inconsistent") << "\n";
  return ok ? 0 : 1;
}

int run_corpus(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw std::invalid_argument("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw std::invalid_argument("no .jsonl fixtures under " + dir);
  std::size_t total = 0, passed = 0;
  for (const auto& f : files) {
    vlab::FixtureResult r = vlab::run_fixture_text(slurp(f.string()));
    total += r.total;
    passed += r.passed;
    std::cout << f.filename().string() << ": " << r.passed << "/" << r.total << "\n";
    for (const std::string& msg : r.failures)
      std::cout << f.filename().string() << ":" << msg << "\n";
  }
  std::cout << "passed " << passed << "/" << total << "\n";
  return passed == total ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"algebraic classification of regular languages"};
  app.require_subcommand(1);
  std::uint64_t cap = 100'000;
  app.add_option("--max-monoid-size", cap, "syntactic monoid element cap")
      ->envname("VARIETYLAB_MAX_MONOID")
      ->capture_default_str();

  std::string input, alphabet, emit, variety, identity, mtab, interp = "plain", left, right,
                                                                   action, letter, sig_text, dir;
  std::string word_left, word_right;
  bool as_json = false, explain = false, ordered = false, verify = false;
  std::uint32_t rounds = 0, max_n = 10, max_len = 0, count_n = 0, k = 2;

  CLI::App* synt = app.add_subcommand("synt", "syntactic monoid of a language");
  synt->fallthrough();
  synt->add_option("--input", input, "regex:\"...\" or dfa:FILE")->required();
  synt->add_option("--alphabet", alphabet, "extra letters adjoined to the alphabet");
  synt->add_option("--emit", emit, "mtab or json")->check(CLI::IsMember({"mtab", "json"}));

  CLI::App* classify = app.add_subcommand("classify", "full classification report");
  classify->fallthrough();
  classify->add_option("--input", input, "regex:\"...\" or dfa:FILE")->required();
  classify->add_option("--alphabet", alphabet, "extra letters adjoined to the alphabet");
  classify->add_flag("--json", as_json, "machine-readable report");

  CLI::App* check = app.add_subcommand("check", "membership and identity checks");
  check->fallthrough();
  check->add_option("--variety", variety, "registry name, e.g. A, J, K1, QA");
  check->add_option("--identity", identity, "identity text, e.g. \"xy = yx\"");
  check->add_option("--input", input, "language for --variety");
  check->add_option("--alphabet", alphabet, "extra letters adjoined to the alphabet");
  check->add_option("--monoid", mtab, "multiplication table file for --identity");
  check->add_flag("--ordered", ordered, "use the stored order pairs");
  check->add_option("--interp", interp, "plain, sg, cne, or clm")
      ->check(CLI::IsMember({"plain", "sg", "cne", "clm"}));
  check->add_flag("--explain", explain, "print notes along with witnesses");

  CLI::App* ef = app.add_subcommand("ef", "round-limited distinguishing-game winner");
  ef->fallthrough();
  ef->add_option("--left", word_left, "first word")->required();
  ef->add_option("--right", word_right, "second word")->required();
  ef->add_option("--rounds", rounds, "number of rounds")->required();
  ef->add_option("--sig", sig_text, "lt[,succ][,mod=Q]")->required();

  CLI::App* density = app.add_subcommand("density", "growth class and word counts");
  density->fallthrough();
  density->add_option("--input", input, "regex:\"...\" or dfa:FILE")->required();
  density->add_option("--alphabet", alphabet, "extra letters adjoined to the alphabet");
  density->add_option("--max-n", max_n, "largest length in the table")->capture_default_str();

  CLI::App* dense = app.add_subcommand("dense", "density verdict with witness");
  dense->fallthrough();
  dense->add_option("--input", input, "regex:\"...\" or dfa:FILE")->required();
  dense->add_option("--alphabet", alphabet, "extra letters adjoined to the alphabet");

  CLI::App* product = app.add_subcommand("product", "monoid products and recognizers");
  product->fallthrough();
  std::string kind;
  product->add_option("kind", kind, "semidirect, wreath, block, or la-astar")
      ->required()
      ->check(CLI::IsMember({"semidirect", "wreath", "block", "la-astar"}));
  product->add_option("--left", left, "acted monoid table (.mtab)");
  product->add_option("--right", right, "acting monoid table (.mtab)");
  product->add_option("--action", action, "action table (.act)");
  product->add_option("--input", input, "language for la-astar");
  product->add_option("--alphabet", alphabet, "extra letters adjoined to the alphabet");
  product->add_option("--letter", letter, "marker letter for la-astar");
  product->add_flag("--verify", verify, "check the construction against a direct automaton");

  CLI::App* oracle = app.add_subcommand("oracle", "brute-force baselines");
  oracle->fallthrough();
  std::string oracle_op;
  oracle->add_option("op", oracle_op, "synt-bf, count, or piecewise")
      ->required()
      ->check(CLI::IsMember({"synt-bf", "count", "piecewise"}));
  oracle->add_option("--input", input, "regex:\"...\" or dfa:FILE")->required();
  oracle->add_option("--alphabet", alphabet, "extra letters adjoined to the alphabet");
  oracle->add_option("--max-len", max_len, "word-length bound");
  oracle->add_option("--n", count_n, "word length for count");
  oracle->add_option("--k", k, "subword length bound")->capture_default_str();

  CLI::App* corpus = app.add_subcommand("corpus", "run recorded fixtures");
  corpus->fallthrough();
  corpus->add_option("--dir", dir, "directory of .jsonl files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(synt)) return run_synt(input, alphabet, emit, cap);
    if (app.got_subcommand(classify)) return run_classify(input, alphabet, as_json, cap);
    if (app.got_subcommand(check)) {
      if (!variety.empty() && identity.empty()) {
        if (input.empty()) throw std::invalid_argument("--variety needs --input");
        return run_check_variety(variety, input, alphabet, explain, cap);
      }
      if (variety.empty() && !identity.empty()) {
        if (mtab.empty()) throw std::invalid_argument("--identity needs --monoid FILE");
        return run_check_identity(identity, mtab, ordered, interp);
      }
      throw std::invalid_argument("check takes exactly one of --variety or --identity");
    }
    if (app.got_subcommand(ef)) {
      std::cout << vlab::to_string(
                       vlab::ef_winner(word_left, word_right, rounds, parse_sig(sig_text)))
                << "\n";
      return 0;
    }
    if (app.got_subcommand(density)) return run_density(input, alphabet, max_n);
    if (app.got_subcommand(dense)) return run_dense(input, alphabet, cap);
    if (app.got_subcommand(product)) {
      if (kind == "la-astar") return run_la_astar(input, alphabet, letter, verify, cap);
      if (left.empty() || right.empty())
        throw std::invalid_argument(kind + " needs --left and --right table files");
      return run_product(kind, left, right, action, cap);
    }
    if (app.got_subcommand(oracle)) return run_oracle(oracle_op, input, alphabet, max_len, count_n, k);
    if (app.got_subcommand(corpus)) return run_corpus(dir);
  } catch (const vlab::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const vlab::CapExceeded& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
