#pragma once

// Command layer of the intval tool: argument parsing and dispatch, returning
// the text, optional JSON and exit code instead of printing, so tests can run
// commands in-process.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "intval/intval.hpp"

namespace intval::cli {

enum Exit : int { ok = 0, math_false = 1, input_error = 2, verification_failed = 3, budget_exhausted = 4 };

struct CommandResult {
  std::string text;
  std::optional<Json> json;
  int exit_code = ok;
};

namespace detail {

inline std::string bool_text(bool b) { return b ? "true" : "false"; }

inline Json factorization_json(const Factorization& f) {
  Json parts = Json::array();
  for (const auto& p : f.parts) parts.push_back(to_string(p));
  return Json{{"unit", f.unit}, {"length", f.length()}, {"parts", parts}};
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << body;
}

inline std::vector<std::size_t> parse_m_list(const std::string& text) {
  std::vector<std::size_t> out;
  ::intval::detail::Cursor c(text);
  do {
    std::size_t at = c.position();
    Integer v = c.unsigned_integer();
    if (v < 1 || v > 1000) throw ParseError("m entries must be between 1 and 1000", at);
    out.push_back(v.get_ui());
  } while (c.accept(','));
  c.expect_end();
  return out;
}

/// Parse errors are reported together with the offending argument.
template <class Parser>
auto parse_arg(const char* what, const std::string& text, Parser parser) {
  try {
    return parser(text);
  } catch (const ParseError& e) {
    throw std::invalid_argument(std::string(what) + " \"" + text + "\": " + e.what());
  }
}

inline Integer parse_integer(const std::string& text) {
  ::intval::detail::Cursor c(text);
  Integer v = c.signed_integer();
  c.expect_end();
  return v;
}

inline SubsetSpec subset_arg(const std::string& t) { return parse_arg("subset", t, [](const std::string& x) { return parse_subset(x); }); }
inline IntValElement element_arg(const std::string& t) {
  return parse_arg("element", t, [](const std::string& x) { return parse_element(x); });
}
inline IntPolynomial poly_arg(const std::string& t) {
  return parse_arg("polynomial", t, [](const std::string& x) { return parse_polynomial(x); });
}
inline Integer integer_arg(const char* what, const std::string& t) { return parse_arg(what, t, parse_integer); }

inline Json sequence_list(const std::vector<ZeroSumSequence>& seqs) {
  Json a = Json::array();
  for (const auto& s : seqs) a.push_back(to_string(s));
  return a;
}

inline CommandResult verification_result(const VerificationReport& rep) {
  CommandResult r;
  std::ostringstream out;
  for (const auto& c : rep.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.passed && !c.detail.empty()) out << ": " << c.detail;
    out << "\n";
  }
  out << rep.kind << ": " << rep.checks.size() << " checks, " << rep.failures().size() << " failed; lengths "
      << to_string(LengthMultiset{rep.lengths}) << "\n";
  out << (rep.passed() ? "verified" : "verification FAILED") << "\n";
  r.text = out.str();
  r.json = to_json(rep);
  r.exit_code = rep.passed() ? ok : verification_failed;
  return r;
}

}  // namespace detail

/// Run one command line (without the program name).
inline CommandResult run(const std::vector<std::string>& args) {
  using namespace detail;
  CLI::App app{"Factorization in rings of integer-valued polynomials Int(S, Z)", "intval"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "Machine-readable JSON output");

  std::string subset_text, poly_text, element_text;
  std::string prime_text, bound_text;
  std::size_t power = 1;
  auto with_subset = [&](CLI::App* sub, std::string& positional, const char* name) {
    sub->add_option("--subset", subset_text, "Subset S: Z, 2Z, 1+4Z or a comma-separated union")->required();
    sub->add_option(name, positional)->required();
  };
  auto* fixdiv_cmd = app.add_subcommand("fixdiv", "Fixed divisor gcd{g(s) : s in S}");
  with_subset(fixdiv_cmd, poly_text, "poly");
  auto* member_cmd = app.add_subcommand("member", "Is the element in Int(S, Z)?");
  with_subset(member_cmd, element_text, "element");
  auto* primitive_cmd = app.add_subcommand("image-primitive", "Is the fixed divisor of the element 1?");
  with_subset(primitive_cmd, element_text, "element");
  auto* irreducible_cmd = app.add_subcommand("irreducible", "Irreducibility in Int(S, Z), with a witness");
  with_subset(irreducible_cmd, element_text, "element");
  auto* factorize_cmd = app.add_subcommand("factorize", "All essentially different factorizations");
  with_subset(factorize_cmd, element_text, "element");
  auto* lengths_cmd = app.add_subcommand("lengths", "Multiset of factorization lengths");
  with_subset(lengths_cmd, element_text, "element");

  auto* residues_cmd = app.add_subcommand("residues", "Residue classes mod q^k met by S");
  residues_cmd->add_option("--subset", subset_text)->required();
  residues_cmd->add_option("--prime", prime_text)->required();
  residues_cmd->add_option("--power", power)->check(CLI::Range(1, 64));
  auto* relevant_cmd = app.add_subcommand("relevant-primes", "Primes q with |R_S(q)| <= bound");
  relevant_cmd->add_option("--subset", subset_text)->required();
  relevant_cmd->add_option("--bound", bound_text)->required();

  ConstructionOptions opts;
  std::size_t crt_bound = 100000;
  std::string p_text, m_text, out_path;
  std::size_t n = 1;
  auto* construct_cmd = app.add_subcommand("construct", "Build a certificate");
  construct_cmd->require_subcommand(1);
  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--p", p_text, "The prime p, M = pZ")->required();
    sub->add_option("--out", out_path, "Write the certificate JSON here");
    sub->add_option("--crt-bound", crt_bound, "CRT scan length per system");
    sub->add_option("--replacement-budget", opts.replacement_budget, "Candidates per replaced polynomial");
    sub->add_option("--retry-budget", opts.retry_budget, "CRT retries");
  };
  auto* construct_lengths = construct_cmd->add_subcommand("lengths", "Prescribed multiset of lengths m_1+1, ..., m_n+1");
  add_budget(construct_lengths);
  construct_lengths->add_option("--m", m_text, "Nondecreasing m_1,...,m_n")->required();
  auto* construct_unbounded_cmd = construct_cmd->add_subcommand("unbounded", "(x/p) H with a factorization of length n+1");
  add_budget(construct_unbounded_cmd);
  construct_unbounded_cmd->add_option("--n", n)->required()->check(CLI::Range(1, 50));

  std::string cert_path;
  auto* verify_cmd = app.add_subcommand("verify", "Replay a certificate");
  verify_cmd->add_option("certificate", cert_path)->required();

  std::string group_text;
  std::vector<std::string> seq_texts(2);
  auto* block_cmd = app.add_subcommand("block", "Zero-sum sequences over a finite abelian group");
  block_cmd->require_subcommand(1);
  auto* block_atoms = block_cmd->add_subcommand("atoms", "Is the sequence an atom? Without a sequence: list all atoms over G\\{0}");
  block_atoms->add_option("--group", group_text)->required();
  block_atoms->add_option("sequence", seq_texts[0]);
  auto* block_factorize = block_cmd->add_subcommand("factorize", "Factorizations into atoms and their lengths");
  block_factorize->add_option("--group", group_text)->required();
  block_factorize->add_option("sequence", seq_texts[0])->required();
  auto* block_lemma = block_cmd->add_subcommand("lemma24", "Check max L(UV) <= min{|U|,|V|} and the equality law for atoms U V");
  block_lemma->add_option("--group", group_text)->required();
  block_lemma->add_option("U", seq_texts[0])->required();
  block_lemma->add_option("V", seq_texts[1])->required();

  CommandResult r;
  if (args.empty()) {
    r.text = app.help();
    r.exit_code = input_error;
    return r;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    r.text = app.help();
    return r;
  } catch (const CLI::CallForAllHelp&) {
    r.text = app.help("", CLI::AppFormatMode::All);
    return r;
  } catch (const CLI::ParseError& e) {
    r.text = std::string("error: ") + e.what() + "\n";
    r.exit_code = input_error;
    return r;
  }

  auto finish = [&](CommandResult res) {
    if (!json) res.json.reset();
    return res;
  };
  try {
    if (fixdiv_cmd->parsed()) {
      SubsetSpec S = subset_arg(subset_text);
      IntPolynomial g = poly_arg(poly_text);
      if (g.is_zero()) throw ParseError("fixed divisor of the zero polynomial is undefined", 0);
      Integer d = fixdiv(S, g);
      r.text = d.get_str() + "\n";
      r.json = Json{{"subset", to_string(S)}, {"poly", to_string(g)}, {"fixdiv", d.get_str()}};
      return finish(r);
    }
    if (member_cmd->parsed()) {
      SubsetSpec S = subset_arg(subset_text);
      IntValElement e = element_arg(element_text);
      Integer d = fixdiv(S, e.poly());
      bool m = divides(e.den(), d);
      r.text = bool_text(m) + "\n";
      r.json = Json{{"subset", to_string(S)}, {"element", to_string(e)}, {"member", m}, {"fixdiv_primitive_part", d.get_str()}};
      r.exit_code = m ? ok : math_false;
      return finish(r);
    }
    if (primitive_cmd->parsed() || irreducible_cmd->parsed()) {
      SubsetSpec S = subset_arg(subset_text);
      IntValElement e = element_arg(element_text);
      r.json = Json{{"subset", to_string(S)}, {"element", to_string(e)}};
      if (!is_member(S, e)) {
        r.text = "false: " + to_string(e) + " is not in Int(" + to_string(S) + ", Z)\n";
        (*r.json)["member"] = false;
        (*r.json)[primitive_cmd->parsed() ? "image_primitive" : "irreducible"] = false;
        r.exit_code = math_false;
        return finish(r);
      }
      if (primitive_cmd->parsed()) {
        bool b = is_image_primitive(S, e);
        r.text = bool_text(b) + "\n";
        (*r.json)["image_primitive"] = b;
        r.exit_code = b ? ok : math_false;
        return finish(r);
      }
      if (e.is_unit()) {
        r.text = "false: units are not irreducible\n";
        (*r.json)["irreducible"] = false;
        (*r.json)["reason"] = "unit";
        r.exit_code = math_false;
        return finish(r);
      }
      IrreducibilityResult res = is_irreducible(S, e);
      r.text = bool_text(res.irreducible) + ": " + res.reason + "\n";
      (*r.json)["irreducible"] = res.irreducible;
      (*r.json)["reason"] = res.reason;
      if (res.witness) {
        r.text += "witness: [" + to_string(res.witness->first) + "] * [" + to_string(res.witness->second) + "]\n";
        (*r.json)["witness"] = Json::array({to_string(res.witness->first), to_string(res.witness->second)});
      }
      r.exit_code = res.irreducible ? ok : math_false;
      return finish(r);
    }
    if (factorize_cmd->parsed() || lengths_cmd->parsed()) {
      SubsetSpec S = subset_arg(subset_text);
      IntValElement e = element_arg(element_text);
      auto fs = factorizations(S, e);
      LengthMultiset lm = lengths_of(fs);
      r.json = Json{{"subset", to_string(S)}, {"element", to_string(e)}, {"lengths", lm.lengths}};
      if (factorize_cmd->parsed()) {
        Json list = Json::array();
        for (const auto& f : fs) {
          r.text += std::to_string(f.length()) + ": " + to_string(f) + "\n";
          list.push_back(factorization_json(f));
        }
        (*r.json)["factorizations"] = list;
      } else {
        r.text = to_string(lm) + "\n";
      }
      return finish(r);
    }
    if (residues_cmd->parsed()) {
      SubsetSpec S = subset_arg(subset_text);
      Integer q = integer_arg("prime", prime_text);
      if (q < 2 || !is_prime(q)) throw std::invalid_argument("--prime must be a prime");
      ResidueData rd = residues_mod(S, q, power);
      r.text = "modulus " + rd.modulus.get_str() + ", " + std::to_string(rd.residues.size()) + " classes:";
      Json list = Json::array();
      for (const auto& c : rd.residues) {
        r.text += " " + c.get_str();
        list.push_back(c.get_str());
      }
      r.text += "\n";
      r.json = Json{{"subset", to_string(S)}, {"modulus", rd.modulus.get_str()}, {"residues", list}};
      return finish(r);
    }
    if (relevant_cmd->parsed()) {
      SubsetSpec S = subset_arg(subset_text);
      Integer b = integer_arg("bound", bound_text);
      if (b < 1 || b > 1000000) throw std::invalid_argument("--bound must be between 1 and 1000000");
      Json list = Json::array();
      for (const auto& pc : relevant_primes(S, b)) {
        r.text += pc.prime.get_str() + " " + std::to_string(pc.count) + "\n";
        list.push_back(Json{{"prime", pc.prime.get_str()}, {"count", pc.count}});
      }
      r.json = Json{{"subset", to_string(S)}, {"bound", b.get_str()}, {"primes", list}};
      return finish(r);
    }
    if (construct_cmd->parsed()) {
      Integer p = integer_arg("p", p_text);
      if (p < 2 || !is_prime(p)) throw std::invalid_argument("--p must be a prime");
      opts.crt_search_bound = static_cast<unsigned long>(crt_bound);
      Json cert;
      std::ostringstream out;
      if (construct_lengths->parsed()) {
        auto c = construct_prescribed_lengths(p, parse_arg("m list", m_text, parse_m_list), opts);
        cert = to_json(c);
        out << "N = " << c.N << ", deg H = " << c.H.degree() << ", predicted lengths";
        for (const auto& f : c.predicted) out << " " << f.length();
        out << "\nH = " << to_string(c.H) << "\n";
      } else {
        auto c = construct_unbounded(p, n, opts);
        cert = to_json(c);
        out << "n = " << c.n << ", deg H = " << c.H.degree() << "\nH = " << to_string(c.H) << "\nleft = " << to_string(c.left)
            << "\n";
      }
      if (!out_path.empty()) {
        write_file(out_path, cert.dump(2) + "\n");
        out << "certificate written to " << out_path << "\n";
      }
      r.text = out.str();
      r.json = cert;
      return finish(r);
    }
    if (verify_cmd->parsed()) {
      Json cert;
      try {
        cert = Json::parse(read_file(cert_path));
      } catch (const Json::parse_error& e) {
        throw std::invalid_argument(std::string("certificate is not valid JSON: ") + e.what());
      }
      return finish(verification_result(verify_certificate(cert)));
    }
    if (block_cmd->parsed()) {
      FiniteAbelianGroup G = parse_arg("group", group_text, [](const std::string& x) { return parse_group(x); });
      if (block_atoms->parsed()) {
        if (seq_texts[0].empty()) {
          auto atoms = nonzero_atoms(G);
          for (const auto& a : atoms) r.text += to_string(a) + "\n";
          r.json = Json{{"group", to_string(G)}, {"atoms", sequence_list(atoms)}};
          return finish(r);
        }
        ZeroSumSequence s = parse_arg("sequence", seq_texts[0], [&](const std::string& x) { return parse_sequence(G, x); });
        if (s.empty()) throw std::invalid_argument("the empty sequence is not an atom");
        bool zero = s.is_zero_sum();
        bool atom = zero && is_atom(s);
        r.text = bool_text(atom) + (zero ? "" : ": sum is not zero") + "\n";
        r.json = Json{{"group", to_string(G)}, {"sequence", to_string(s)}, {"zero_sum", zero}, {"atom", atom}};
        r.exit_code = atom ? ok : math_false;
        return finish(r);
      }
      if (block_factorize->parsed()) {
        ZeroSumSequence s = parse_arg("sequence", seq_texts[0], [&](const std::string& x) { return parse_sequence(G, x); });
        if (!s.is_zero_sum()) throw std::invalid_argument("sequence is not zero-sum");
        auto fs = block_factorizations(s);
        Json list = Json::array();
        std::set<std::size_t> ls;
        for (const auto& f : fs) {
          std::string line = std::to_string(f.size()) + ":";
          for (const auto& a : f) line += " " + to_string(a);
          r.text += line + "\n";
          list.push_back(sequence_list(f));
          ls.insert(f.size());
        }
        std::string set_text = "{";
        for (auto l : ls) set_text += (set_text.size() > 1 ? ", " : "") + std::to_string(l);
        r.text += "lengths " + set_text + "}\n";
        r.json = Json{{"group", to_string(G)}, {"sequence", to_string(s)}, {"factorizations", list}, {"lengths", ls}};
        return finish(r);
      }
      auto sequence = [&](const std::string& x) { return parse_sequence(G, x); };
      ZeroSumSequence U = parse_arg("U", seq_texts[0], sequence);
      ZeroSumSequence V = parse_arg("V", seq_texts[1], sequence);
      Lemma24Report rep = lemma24_check(U, V);
      std::ostringstream out;
      out << "max L(UV) = " << rep.max_length << ", min{|U|,|V|} = " << rep.min_atom_length
          << ", max{|U|,|V|} = " << rep.max_atom_length << ", V = -U: " << bool_text(rep.v_is_negative_u) << "\n"
          << "bound max L(UV) <= min{|U|,|V|}: " << bool_text(rep.bound_holds) << "\n"
          << "equality law max L(UV) = max{|U|,|V|} iff V = -U: " << bool_text(rep.equality_law_holds);
      if (!rep.equality_law_holds && rep.both_length_two) out << " (|U| = |V| = 2)";
      out << "\n";
      r.text = out.str();
      r.json = Json{{"group", to_string(G)},
                    {"U", to_string(U)},
                    {"V", to_string(V)},
                    {"max_length", rep.max_length},
                    {"v_is_negative_u", rep.v_is_negative_u},
                    {"bound_holds", rep.bound_holds},
                    {"equality_law_holds", rep.equality_law_holds},
                    {"both_length_two", rep.both_length_two}};
      r.exit_code = rep.holds() ? ok : math_false;
      return finish(r);
    }
  } catch (const BudgetExhausted& e) {
    r = CommandResult{std::string("budget exhausted: ") + e.what() + "\n", std::nullopt, budget_exhausted};
    return r;
  } catch (const std::invalid_argument& e) {
    r = CommandResult{std::string("error: ") + e.what() + "\n", std::nullopt, input_error};
    return r;
  } catch (const std::domain_error& e) {
    r = CommandResult{std::string("error: ") + e.what() + "\n", std::nullopt, input_error};
    return r;
  }
  r.text = app.help();
  r.exit_code = input_error;
  return r;
}

}  // namespace intval::cli
