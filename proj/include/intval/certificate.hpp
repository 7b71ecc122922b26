#pragma once

// JSON form of the construction certificates (schema 1) and the verifier that
// replays them from the stored data alone.

#include <algorithm>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "intval/constructions.hpp"
#include "intval/integer.hpp"
#include "intval/polynomial.hpp"
#include "intval/qx_factor.hpp"
#include "intval/ring.hpp"
#include "intval/subsets.hpp"
#include "intval/text.hpp"

namespace intval {

using Json = nlohmann::ordered_json;

inline constexpr int certificate_schema = 1;

/// Certificate JSON that does not match the schema.
class CertificateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail::cert {

inline Json ints(const std::vector<Integer>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

inline Json polys(const std::vector<IntPolynomial>& v) {
  Json a = Json::array();
  for (const auto& f : v) a.push_back(to_string(f));
  return a;
}

inline Json factorization_json(const Factorization& f) {
  Json parts = Json::array();
  for (const auto& p : f.parts) parts.push_back(to_string(p));
  return Json{{"unit", f.unit}, {"parts", parts}};
}

inline Json primes_json(const std::vector<ResiduePrime>& v) {
  Json a = Json::array();
  for (const auto& r : v) a.push_back(Json{{"prime", r.prime.get_str()}, {"t", r.t}});
  return a;
}

inline Json replacement_json(const ReplacementData& r) { return Json{{"bound", r.bound}, {"exponent", r.exponent}}; }

inline const Json& field(const Json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) throw CertificateError("certificate: missing field '" + key + "'");
  return j.at(key);
}

inline Integer integer(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (!j.is_string()) throw CertificateError("certificate: " + where + " must be an integer string");
  Integer v;
  if (v.set_str(j.get<std::string>(), 10) != 0) throw CertificateError("certificate: " + where + " is not a decimal integer");
  return v;
}

inline std::size_t count(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long>() >= 0))
    throw CertificateError("certificate: " + where + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

inline const Json& array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw CertificateError("certificate: " + where + " must be an array");
  return j;
}

inline IntPolynomial poly(const Json& j, const std::string& where) {
  if (!j.is_string()) throw CertificateError("certificate: " + where + " must be a polynomial string");
  try {
    return parse_polynomial(j.get<std::string>());
  } catch (const ParseError& e) {
    throw CertificateError("certificate: " + where + ": " + e.what());
  }
}

inline IntValElement element(const Json& j, const std::string& where) {
  if (!j.is_string()) throw CertificateError("certificate: " + where + " must be an element string");
  try {
    return parse_element(j.get<std::string>());
  } catch (const ParseError& e) {
    throw CertificateError("certificate: " + where + ": " + e.what());
  }
}

inline std::vector<Integer> int_list(const Json& j, const std::string& where) {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < array(j, where).size(); ++i) out.push_back(integer(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<std::vector<Integer>> int_table(const Json& j, const std::string& where) {
  std::vector<std::vector<Integer>> out;
  for (std::size_t i = 0; i < array(j, where).size(); ++i) out.push_back(int_list(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<IntPolynomial> poly_list(const Json& j, const std::string& where) {
  std::vector<IntPolynomial> out;
  for (std::size_t i = 0; i < array(j, where).size(); ++i) out.push_back(poly(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<ResiduePrime> prime_list(const Json& j) {
  std::vector<ResiduePrime> out;
  for (std::size_t i = 0; i < array(j, "primes").size(); ++i) {
    std::string at = "primes[" + std::to_string(i) + "]";
    out.push_back({integer(field(j[i], "prime"), at + ".prime"), count(field(j[i], "t"), at + ".t")});
  }
  return out;
}

inline ReplacementData replacement(const Json& j, const std::string& where) {
  return {count(field(j, "bound"), where + ".bound"), count(field(j, "exponent"), where + ".exponent")};
}

inline Factorization factorization(const Json& j, const std::string& where) {
  Factorization f;
  const Json& u = field(j, "unit");
  if (!u.is_number_integer() || (u.get<long>() != 1 && u.get<long>() != -1))
    throw CertificateError("certificate: " + where + ".unit must be 1 or -1");
  f.unit = static_cast<int>(u.get<long>());
  const Json& parts = array(field(j, "parts"), where + ".parts");
  for (std::size_t i = 0; i < parts.size(); ++i) f.parts.push_back(element(parts[i], where + ".parts[" + std::to_string(i) + "]"));
  return f;
}

}  // namespace detail::cert

inline Json to_json(const PrescribedLengthsCertificate& c) {
  using namespace detail::cert;
  Json j;
  j["schema"] = certificate_schema;
  j["kind"] = "prescribed_lengths";
  j["p"] = c.p.get_str();
  j["m"] = c.m;
  j["N"] = c.N;
  j["retry"] = c.retry;
  j["primes"] = primes_json(c.primes);
  j["Q"] = ints(c.Q);
  Json a = Json::array(), cc = Json::array();
  for (const auto& row : c.a) a.push_back(ints(row));
  for (const auto& row : c.c) cc.push_back(ints(row));
  j["a"] = a;
  j["c"] = cc;
  j["e"] = c.e.get_str();
  j["w"] = to_string(c.w);
  j["g"] = polys(c.g);
  j["G"] = polys(c.G);
  j["first_replacement"] = replacement_json(c.first);
  j["second_replacement"] = replacement_json(c.second);
  Json idx = Json::array();
  for (const auto& q : c.index_map) idx.push_back(Json::array({q.k, q.i, q.h, q.j}));
  j["index_map"] = idx;
  Json blocks = Json::array();
  for (const auto& b : c.blocks) blocks.push_back(Json{{"k", b.k}, {"i", b.i}, {"f", to_string(b.f)}, {"F", to_string(b.F)}});
  j["blocks"] = blocks;
  j["H_num"] = to_string(c.H_num);
  j["H"] = to_string(c.H);
  Json pred = Json::array();
  for (const auto& f : c.predicted) pred.push_back(factorization_json(f));
  j["predicted"] = pred;
  return j;
}

inline Json to_json(const UnboundedCertificate& c) {
  using namespace detail::cert;
  Json j;
  j["schema"] = certificate_schema;
  j["kind"] = "unbounded";
  j["p"] = c.p.get_str();
  j["n"] = c.n;
  j["retry"] = c.retry;
  j["primes"] = primes_json(c.primes);
  j["Q"] = ints(c.Q);
  Json a = Json::array();
  for (const auto& row : c.a) a.push_back(ints(row));
  j["a"] = a;
  j["T"] = ints(c.T);
  j["g"] = to_string(c.g);
  j["G"] = to_string(c.G);
  j["replacement"] = replacement_json(c.replacement);
  j["H"] = to_string(c.H);
  j["left"] = to_string(c.left);
  Json lin = Json::array();
  for (const auto& l : c.linear_parts) lin.push_back(to_string(l));
  j["linear_parts"] = lin;
  return j;
}

inline std::string certificate_kind(const Json& j) {
  using namespace detail::cert;
  const Json& schema = field(j, "schema");
  if (!schema.is_number_integer() || schema.get<long>() != certificate_schema)
    throw CertificateError("certificate: unsupported schema (expected " + std::to_string(certificate_schema) + ")");
  const Json& kind = field(j, "kind");
  if (!kind.is_string() || (kind != "prescribed_lengths" && kind != "unbounded"))
    throw CertificateError("certificate: kind must be \"prescribed_lengths\" or \"unbounded\"");
  return kind.get<std::string>();
}

inline PrescribedLengthsCertificate prescribed_from_json(const Json& j) {
  using namespace detail::cert;
  if (certificate_kind(j) != "prescribed_lengths") throw CertificateError("certificate: not a prescribed_lengths certificate");
  PrescribedLengthsCertificate c;
  c.p = integer(field(j, "p"), "p");
  for (std::size_t i = 0; i < array(field(j, "m"), "m").size(); ++i) c.m.push_back(count(j["m"][i], "m[" + std::to_string(i) + "]"));
  c.N = count(field(j, "N"), "N");
  c.retry = count(field(j, "retry"), "retry");
  c.primes = prime_list(field(j, "primes"));
  c.Q = int_list(field(j, "Q"), "Q");
  c.a = int_table(field(j, "a"), "a");
  c.c = int_table(field(j, "c"), "c");
  c.e = integer(field(j, "e"), "e");
  c.w = poly(field(j, "w"), "w");
  c.g = poly_list(field(j, "g"), "g");
  c.G = poly_list(field(j, "G"), "G");
  c.first = replacement(field(j, "first_replacement"), "first_replacement");
  c.second = replacement(field(j, "second_replacement"), "second_replacement");
  const Json& idx = array(field(j, "index_map"), "index_map");
  for (std::size_t l = 0; l < idx.size(); ++l) {
    std::string at = "index_map[" + std::to_string(l) + "]";
    if (!idx[l].is_array() || idx[l].size() != 4) throw CertificateError("certificate: " + at + " must be [k, i, h, j]");
    c.index_map.push_back({count(idx[l][0], at), count(idx[l][1], at), count(idx[l][2], at), count(idx[l][3], at)});
  }
  const Json& blocks = array(field(j, "blocks"), "blocks");
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    std::string at = "blocks[" + std::to_string(b) + "]";
    c.blocks.push_back({count(field(blocks[b], "k"), at + ".k"), count(field(blocks[b], "i"), at + ".i"),
                        poly(field(blocks[b], "f"), at + ".f"), poly(field(blocks[b], "F"), at + ".F")});
  }
  c.H_num = poly(field(j, "H_num"), "H_num");
  c.H = element(field(j, "H"), "H");
  const Json& pred = array(field(j, "predicted"), "predicted");
  for (std::size_t i = 0; i < pred.size(); ++i) c.predicted.push_back(factorization(pred[i], "predicted[" + std::to_string(i) + "]"));
  return c;
}

inline UnboundedCertificate unbounded_from_json(const Json& j) {
  using namespace detail::cert;
  if (certificate_kind(j) != "unbounded") throw CertificateError("certificate: not an unbounded certificate");
  UnboundedCertificate c;
  c.p = integer(field(j, "p"), "p");
  c.n = count(field(j, "n"), "n");
  c.retry = count(field(j, "retry"), "retry");
  c.primes = prime_list(field(j, "primes"));
  c.Q = int_list(field(j, "Q"), "Q");
  c.a = int_table(field(j, "a"), "a");
  c.T = int_list(field(j, "T"), "T");
  c.g = poly(field(j, "g"), "g");
  c.G = poly(field(j, "G"), "G");
  c.replacement = replacement(field(j, "replacement"), "replacement");
  c.H = element(field(j, "H"), "H");
  c.left = element(field(j, "left"), "left");
  const Json& lin = array(field(j, "linear_parts"), "linear_parts");
  for (std::size_t i = 0; i < lin.size(); ++i) c.linear_parts.push_back(element(lin[i], "linear_parts[" + std::to_string(i) + "]"));
  return c;
}

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

struct VerificationReport {
  std::string kind;
  std::vector<Check> checks;
  /// Lengths of the enumerated factorizations of the verified element.
  std::vector<std::size_t> lengths;

  bool passed() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
  std::vector<Check> failures() const {
    std::vector<Check> out;
    for (const auto& c : checks)
      if (!c.passed) out.push_back(c);
    return out;
  }
  bool add(std::string name, bool ok, std::string detail = {}) {
    checks.push_back({std::move(name), ok, std::move(detail)});
    return ok;
  }
};

inline Json to_json(const VerificationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e{{"name", c.name}, {"passed", c.passed}};
    if (!c.detail.empty()) e["detail"] = c.detail;
    checks.push_back(e);
  }
  return Json{{"kind", r.kind}, {"passed", r.passed()}, {"lengths", r.lengths}, {"checks", checks}};
}

namespace detail::cert {

inline std::string idx(std::size_t i) { return "[" + std::to_string(i + 1) + "]"; }
inline std::string idx(std::size_t i, std::size_t j) { return "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]"; }

inline std::size_t v(const Integer& q, const Integer& n) {
  auto val = valuation(q, n);
  return val ? *val : static_cast<std::size_t>(-1);
}

inline bool congruent(const IntPolynomial& a, const IntPolynomial& b, const Integer& m) {
  return (a - b).reduced_mod(m).is_zero();
}

inline bool pairwise_distinct(const std::vector<IntPolynomial>& fs) {
  std::set<IntPolynomial> seen(fs.begin(), fs.end());
  return seen.size() == fs.size();
}

inline bool same_factorizations(std::vector<Factorization> a, std::vector<Factorization> b) {
  if (a.size() != b.size()) return false;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].same_as(b[i])) return false;
  return true;
}

inline std::string describe(const std::vector<Factorization>& fs) {
  std::string out;
  for (const auto& f : fs) out += (out.empty() ? "" : "; ") + to_string(f);
  return out;
}

/// Shared checks on the prime list; false when the remaining data cannot be
/// indexed safely.
inline bool check_primes(VerificationReport& rep, const Integer& p, const std::vector<ResiduePrime>& primes,
                         std::size_t expected, std::size_t min_t) {
  const SubsetSpec M = SubsetSpec::multiples(p);
  if (!rep.add("primes count", primes.size() == expected && expected > 0,
               "have " + std::to_string(primes.size()) + ", need " + std::to_string(expected)))
    return false;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const auto& r = primes[i];
    bool ok = is_prime(r.prime) && r.prime != p && r.t == residue_count(M, r.prime) && r.t > min_t;
    rep.add("prime p" + idx(i), ok, r.prime.get_str() + " with t = " + std::to_string(r.t));
  }
  bool sorted = std::is_sorted(primes.begin(), primes.end(), [](const ResiduePrime& a, const ResiduePrime& b) { return a.t < b.t; });
  std::set<Integer> distinct;
  for (const auto& r : primes) distinct.insert(r.prime);
  rep.add("primes distinct and sorted by t", sorted && distinct.size() == primes.size());
  rep.add("primes are the smallest admissible", primes == select_primes(p, expected, min_t));
  return true;
}

/// value is the CRT solution the construction picks for these conditions.
inline void canonical(VerificationReport& rep, const std::string& name, const Integer& value, const CongruenceSystem& sys,
                      std::size_t retry) {
  try {
    Integer want = crt_solve(sys, ConstructionOptions{}.crt_search_bound, retry);
    rep.add(name + " is the canonical CRT solution", value == want, "expected " + want.get_str());
  } catch (const std::exception& e) {
    rep.add(name + " is the canonical CRT solution", false, e.what());
  }
}

inline void check_enumeration(VerificationReport& rep, const SubsetSpec& M, const IntValElement& target,
                              const std::vector<Factorization>& expected, bool exact) {
  std::vector<Factorization> fs;
  try {
    fs = factorizations(M, target);
  } catch (const std::exception& e) {
    rep.add("enumeration", false, e.what());
    return;
  }
  rep.lengths = lengths_of(fs).lengths;
  if (exact) {
    rep.add("enumeration matches predicted factorizations", same_factorizations(fs, expected),
            std::to_string(fs.size()) + " found: " + describe(fs));
    return;
  }
  bool all = std::all_of(expected.begin(), expected.end(), [&](const Factorization& f) {
    return std::any_of(fs.begin(), fs.end(), [&](const Factorization& g) { return g.same_as(f); });
  });
  rep.add("enumeration contains predicted factorizations", all, std::to_string(fs.size()) + " found: " + describe(fs));
}

}  // namespace detail::cert

inline VerificationReport verify_certificate(const PrescribedLengthsCertificate& c) {
  using namespace detail::cert;
  VerificationReport rep;
  rep.kind = "prescribed_lengths";
  if (!rep.add("p prime", c.p >= 2 && is_prime(c.p), c.p.get_str())) return rep;
  const SubsetSpec M = SubsetSpec::multiples(c.p);
  try {
    detail::check_m_list(c.m);
    rep.add("m list", true);
  } catch (const std::exception& e) {
    rep.add("m list", false, e.what());
    return rep;
  }
  std::vector<std::size_t> want_lengths;
  for (auto m : c.m) want_lengths.push_back(m + 1);
  std::sort(want_lengths.begin(), want_lengths.end());

  if (c.m.size() == 1) {
    const unsigned long len = c.m[0] + 1;
    IntValElement expect = IntValElement::from_fraction(IntPolynomial::monomial(1, len), pow(c.p, len));
    rep.add("H == (x/p)^(m1+1)", c.H == expect, to_string(c.H));
    std::vector<IntValElement> parts(len, IntValElement::from_fraction(IntPolynomial::x(), c.p));
    std::vector<Factorization> pred{make_factorization(1, std::move(parts))};
    rep.add("predicted factorizations", same_factorizations(c.predicted, pred));
    check_enumeration(rep, M, c.H, c.predicted, true);
    rep.add("lengths", rep.lengths == want_lengths, to_string(LengthMultiset{rep.lengths}));
    return rep;
  }

  rep.add("N == (sum m)^2 - sum m^2", c.N == prescribed_prime_count(c.m), std::to_string(c.N));
  if (!check_primes(rep, c.p, c.primes, prescribed_prime_count(c.m), 2)) return rep;
  const std::size_t N = c.primes.size();
  const Integer d = detail::prime_product(c.primes);
  rep.add("Q == primes with t <= t_N outside the prime list", c.Q == detail::primes_outside(M, c.primes.back().t, c.primes));

  bool shape = c.a.size() == N && c.c.size() == N;
  for (std::size_t i = 0; shape && i < N; ++i) shape = c.a[i].size() == c.primes[i].t && c.c[i].size() == c.primes[i].t;
  if (!rep.add("residue tables shaped t_1..t_N", shape)) return rep;

  for (std::size_t i = 0; i < N; ++i) {
    const Integer& pi = c.primes[i].prime;
    std::set<Integer> classes;
    bool in_M = true;
    for (const auto& a : c.a[i]) {
      classes.insert(mod(a, pi));
      in_M = in_M && M.contains(a);
    }
    rep.add("a" + idx(i) + " complete residue system", classes.size() == c.primes[i].t && in_M);
    rep.add("a" + idx(i, 0) + " == 0", c.a[i][0] == 0, c.a[i][0].get_str());
    rep.add("a" + idx(i, 1) + " == p", c.a[i][1] == c.p, c.a[i][1].get_str());
    std::vector<CongruenceSystem> heads(2);
    heads[0].require(0, pi);
    heads[1].require(mod(c.p, pi), pi);
    rep.add("a" + idx(i) + " is the canonical residue system", c.a[i] == complete_residue_system(M, pi, heads));
  }

  for (std::size_t i = 0; i < N; ++i) {
    const Integer& pi = c.primes[i].prime;
    for (std::size_t j = 0; j < c.c[i].size(); ++j) {
      const Integer& x = c.c[i][j];
      const std::string name = "c" + idx(i, j);
      rep.add(name + " cond(1) c == a mod p_i", mod(x - c.a[i][j], pi) == 0, x.get_str());
      rep.add(name + " cond(1) c != a mod p_i^2", mod(x - c.a[i][j], pi * pi) != 0, x.get_str());
      std::string bad2, bad3;
      for (std::size_t k = 0; k < N; ++k) {
        if (k == i) continue;
        if (mod(x - c.a[k][0], c.primes[k].prime) == 0) bad2 += " p" + idx(k);
        if (mod(x - c.a[k][1], c.primes[k].prime) == 0) bad3 += " p" + idx(k);
      }
      rep.add(name + " cond(2) c != a_{k,1} mod p_k", bad2.empty(), bad2);
      rep.add(name + " cond(3) c != a_{k,2} mod p_k", bad3.empty(), bad3);
      std::string bad4;
      for (const auto& q : c.Q)
        if (mod(x - 1, q) != 0) bad4 += " " + q.get_str();
      rep.add(name + " cond(4) c == 1 mod q", bad4.empty(), bad4);
      canonical(rep, name, x, detail::c_conditions(c, i, j), c.retry);
    }
  }
  for (std::size_t i = 0; i < N; ++i) {
    const Integer& pi = c.primes[i].prime;
    rep.add("e cond(1) e == a_{i,1} mod p" + idx(i), mod(c.e - c.a[i][0], pi) == 0, c.e.get_str());
    rep.add("e cond(1) e != a_{i,1} mod p" + idx(i) + "^2", mod(c.e - c.a[i][0], pi * pi) != 0, c.e.get_str());
  }
  {
    std::string bad;
    for (const auto& q : c.Q)
      if (mod(c.e - 1, q) != 0) bad += " " + q.get_str();
    rep.add("e cond(2) e == 1 mod q", bad.empty(), bad);
    rep.add("e nonzero", c.e != 0);
    canonical(rep, "e", c.e, detail::e_conditions(c), c.retry);
  }
  rep.add("w == x - e", c.w == IntPolynomial::linear(c.e), to_string(c.w));

  if (!rep.add("g and G lists have N entries", c.g.size() == N && c.G.size() == N)) return rep;
  for (std::size_t i = 0; i < N; ++i) {
    IntPolynomial g = IntPolynomial::constant(1);
    for (std::size_t j = 1; j < c.c[i].size(); ++j) g *= IntPolynomial::linear(c.c[i][j]);
    rep.add("g" + idx(i) + " == prod_{j>=2} (x - c[i,j])", c.g[i] == g);
  }
  const Integer P1 = replacement_modulus(M, std::max<std::size_t>(c.first.bound, 1), c.first.exponent);
  const Integer P2 = replacement_modulus(M, std::max<std::size_t>(c.second.bound, 1), c.second.exponent);
  for (std::size_t i = 0; i < N; ++i) {
    const auto& G = c.G[i];
    rep.add("G" + idx(i) + " monic of degree deg g", G.is_monic() && G.degree() == c.g[i].degree());
    rep.add("G" + idx(i) + " irreducible over Q", G.degree() >= 1 && is_irreducible_qx(G));
    rep.add("G" + idx(i) + " == g mod replacement modulus", congruent(G, c.g[i], P1));
  }
  rep.add("G pairwise distinct", pairwise_distinct(c.G));

  IntPolynomial reference = c.w;
  for (const auto& g : c.g) reference *= g * g;
  const std::size_t need_bound = static_cast<std::size_t>(reference.degree());
  rep.add("replacement prime bounds cover deg(w prod g^2)", c.first.bound >= need_bound && c.second.bound >= need_bound);

  if (!rep.add("index map is the lexicographic (k,i,h,j) enumeration", c.index_map == detail::matrix_indices(c.m)))
    return rep;
  std::vector<std::pair<std::size_t, std::size_t>> rows;
  for (std::size_t k = 1; k <= c.m.size(); ++k)
    for (std::size_t i = 1; i <= c.m[k - 1]; ++i) rows.emplace_back(k, i);
  bool block_shape = c.blocks.size() == rows.size();
  for (std::size_t b = 0; block_shape && b < rows.size(); ++b)
    block_shape = c.blocks[b].k == rows[b].first && c.blocks[b].i == rows[b].second;
  if (!rep.add("blocks indexed by I", block_shape)) return rep;
  std::vector<IntPolynomial> Fs;
  for (const auto& b : c.blocks) {
    const std::string name = "[" + std::to_string(b.k) + "," + std::to_string(b.i) + "]";
    IntPolynomial f = IntPolynomial::constant(1);
    for (auto l : detail::block_members(c.index_map, b.k, b.i)) f *= c.G[l];
    rep.add("f" + name + " == prod B[k,i]", b.f == f);
    rep.add("F" + name + " monic of degree deg f", b.F.is_monic() && b.F.degree() == b.f.degree());
    rep.add("F" + name + " irreducible over Q", b.F.degree() >= 1 && is_irreducible_qx(b.F));
    rep.add("F" + name + " == f mod replacement modulus", congruent(b.F, b.f, P2));
    Fs.push_back(b.F);
  }
  rep.add("F pairwise distinct", pairwise_distinct(Fs));

  for (std::size_t i = 0; i < N; ++i) {
    const Integer& pi = c.primes[i].prime;
    bool b1 = v(pi, c.G[i](c.a[i][0])) == 0;
    for (std::size_t k = 0; k < N; ++k)
      if (k != i) b1 = b1 && v(pi, c.G[k](c.a[i][0])) == 0 && v(pi, c.G[k](c.a[i][1])) == 0;
    rep.add("bullet(1) p" + idx(i) + ": v(G_i(a_{i,1})) = v(G_j(a_{i,1})) = v(G_j(a_{i,2})) = 0", b1);
    bool b2 = true;
    for (std::size_t j = 1; j < c.a[i].size(); ++j) b2 = b2 && v(pi, c.G[i](c.a[i][j])) == 1;
    rep.add("bullet(2) p" + idx(i) + ": v(G_i(a_{i,j})) = 1 for j >= 2", b2);
    rep.add("bullet(3) p" + idx(i) + ": v(w(a_{i,1})) = 1", v(pi, c.w(c.a[i][0])) == 1);
  }
  {
    IntPolynomial prodG2 = c.w;
    for (const auto& G : c.G) prodG2 *= G * G;
    std::string bad;
    for (const auto& q : c.Q)
      if (mod(prodG2(0), q) == 0) bad += " " + q.get_str();
    rep.add("bullet(4): 0 is not a root of w prod G^2 mod q", bad.empty(), bad);
  }

  IntPolynomial H_num = c.w * detail::product(Fs);
  rep.add("H_num == w prod F", c.H_num == H_num);
  rep.add("H == H_num / prod p", c.H == IntValElement::from_fraction(c.H_num, d), to_string(c.H));
  const Integer fd = fixdiv(M, c.H_num);
  rep.add("fixdiv(H_num) == prod p", fd == d, "fixdiv = " + fd.get_str() + ", prod p = " + d.get_str());

  for (std::size_t h = 0; h <= c.m.size(); ++h) {
    IntPolynomial with_f = c.w, with_F = c.w;
    for (const auto& b : c.blocks) {
      if (b.k == h) continue;
      with_f *= b.f;
      with_F *= b.F;
    }
    std::string which = h == 0 ? "full product" : "I \\ I_" + std::to_string(h);
    Integer a = fixdiv(M, with_f), b = fixdiv(M, with_F);
    rep.add("replacement soundness " + which, a == b, a.get_str() + " vs " + b.get_str());
  }

  std::vector<Factorization> pred = predicted_factorizations(c);
  rep.add("predicted factorizations recomputed", same_factorizations(c.predicted, pred));
  bool products = std::all_of(c.predicted.begin(), c.predicted.end(), [&](const Factorization& f) { return f.product() == c.H; });
  rep.add("predicted factorizations multiply to H", products);
  check_enumeration(rep, M, c.H, pred, true);
  rep.add("lengths", rep.lengths == want_lengths, to_string(LengthMultiset{rep.lengths}));
  return rep;
}

inline VerificationReport verify_certificate(const UnboundedCertificate& c) {
  using namespace detail::cert;
  VerificationReport rep;
  rep.kind = "unbounded";
  if (!rep.add("p prime", c.p >= 2 && is_prime(c.p), c.p.get_str())) return rep;
  if (!rep.add("n positive", c.n >= 1)) return rep;
  const SubsetSpec M = SubsetSpec::multiples(c.p);
  if (!check_primes(rep, c.p, c.primes, c.n, 1)) return rep;
  const std::size_t n = c.n;
  const std::size_t tn = c.primes.back().t;
  const Integer d = detail::prime_product(c.primes);
  rep.add("Q == primes with t <= t_n + n outside the prime list", c.Q == detail::primes_outside(M, tn + n, c.primes));

  bool shape = c.a.size() == n && c.T.size() == tn;
  for (std::size_t i = 0; shape && i < n; ++i) shape = c.a[i].size() == c.primes[i].t;
  if (!rep.add("residue tables shaped t_1..t_n and |T| = t_n", shape)) return rep;
  for (std::size_t i = 0; i < n; ++i) {
    const Integer& pi = c.primes[i].prime;
    std::set<Integer> classes;
    for (const auto& a : c.a[i]) classes.insert(mod(a, pi));
    rep.add("a" + idx(i) + " complete residue system", classes.size() == c.primes[i].t);
    rep.add("a" + idx(i, 0) + " == 0 mod p_i", mod(c.a[i][0], pi) == 0, c.a[i][0].get_str());
    rep.add("a" + idx(i, 0) + " != 0 mod p", mod(c.a[i][0], c.p) != 0, c.a[i][0].get_str());
    std::vector<CongruenceSystem> head(1);
    head[0].require(0, pi);
    auto want = complete_residue_system(M, pi, head);
    want[0] = pi;
    rep.add("a" + idx(i) + " is the canonical residue system", c.a[i] == want);
  }
  for (std::size_t j = 0; j < tn; ++j) {
    const Integer& r = c.T[j];
    const std::string name = "T" + idx(j);
    for (std::size_t i = 0; i < n; ++i) {
      const Integer& pi = c.primes[i].prime;
      if (j == 0) {
        rep.add(name + " cond(1) r_1 == 0 mod p" + idx(i), mod(r, pi) == 0, r.get_str());
      } else if (j < c.primes[i].t) {
        rep.add(name + " cond(2) r == a" + idx(i, j) + " mod p_i", mod(r - c.a[i][j], pi) == 0, r.get_str());
        rep.add(name + " cond(2) r != a" + idx(i, j) + " mod p_i^2", mod(r - c.a[i][j], pi * pi) != 0, r.get_str());
      } else {
        rep.add(name + " cond(3) r == p mod p" + idx(i), mod(r - c.p, pi) == 0, r.get_str());
      }
    }
    std::string bad;
    for (const auto& q : c.Q)
      if (mod(r - 1, q) != 0) bad += " " + q.get_str();
    rep.add(name + " cond(4) r == 1 mod q", bad.empty(), bad);
    canonical(rep, name, r, detail::t_conditions(c, j), c.retry);
  }

  IntPolynomial g = IntPolynomial::constant(1);
  for (std::size_t j = 1; j < tn; ++j) g *= IntPolynomial::linear(c.T[j]);
  rep.add("g == prod_{j>=2} (x - r_j)", c.g == g);
  rep.add("G monic of degree deg g", c.G.is_monic() && c.G.degree() == c.g.degree());
  rep.add("G irreducible over Q", c.G.degree() >= 1 && is_irreducible_qx(c.G));
  const Integer P = replacement_modulus(M, std::max<std::size_t>(c.replacement.bound, 1), c.replacement.exponent);
  rep.add("G == g mod replacement modulus", congruent(c.G, c.g, P));
  rep.add("replacement prime bound covers t_n + n", c.replacement.bound >= tn + n);

  std::vector<IntPolynomial> linear;
  for (const auto& a : c.a) linear.push_back(IntPolynomial::linear(a[0]));
  bool lin_ok = c.linear_parts.size() == n;
  for (std::size_t i = 0; lin_ok && i < n; ++i) lin_ok = c.linear_parts[i] == IntValElement::from_polynomial(linear[i]);
  if (!rep.add("linear parts == x - a_{i,1}", lin_ok)) return rep;

  {
    // Every selection among x, g and the linear parts keeps its fixed divisor
    // when g becomes G.
    const std::size_t items = n + 2;
    std::string bad;
    for (std::size_t mask = 1; mask < (std::size_t{1} << items); ++mask) {
      if (!(mask & 2)) continue;  // selections without g are unchanged
      IntPolynomial with_g = IntPolynomial::constant(1), with_G = IntPolynomial::constant(1);
      if (mask & 1) {
        with_g *= IntPolynomial::x();
        with_G *= IntPolynomial::x();
      }
      with_g *= c.g;
      with_G *= c.G;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t{4} << i)) {
          with_g *= linear[i];
          with_G *= linear[i];
        }
      if (fixdiv(M, with_g) != fixdiv(M, with_G)) bad += " " + std::to_string(mask);
    }
    rep.add("replacement soundness for every selection", bad.empty(), bad);
  }

  IntValElement H = IntValElement::from_fraction(c.G * detail::product(linear), d);
  IntValElement left = IntValElement::from_fraction(IntPolynomial::x() * c.G, d * c.p);
  rep.add("H == G prod (x - a_{i,1}) / prod p", c.H == H, to_string(c.H));
  rep.add("left == x G / (p prod p)", c.left == left, to_string(c.left));
  auto irreducible = [&](const std::string& name, const IntValElement& e) {
    try {
      auto r = is_irreducible(M, e);
      rep.add(name + " irreducible", r.irreducible, r.reason);
    } catch (const std::exception& ex) {
      rep.add(name + " irreducible", false, ex.what());
    }
  };
  irreducible("H", c.H);
  irreducible("left", c.left);
  for (std::size_t i = 0; i < n; ++i) irreducible("linear" + idx(i), c.linear_parts[i]);

  const IntValElement x_over_p = IntValElement::from_fraction(IntPolynomial::x(), c.p);
  IntValElement rhs = c.left;
  for (const auto& l : c.linear_parts) rhs = rhs * l;
  const IntValElement target = x_over_p * c.H;
  rep.add("(x/p) H == left * prod linear parts", target == rhs);

  std::vector<IntValElement> long_parts = c.linear_parts;
  long_parts.push_back(c.left);
  std::vector<Factorization> expected{make_factorization(1, {x_over_p, c.H}), make_factorization(1, long_parts)};
  check_enumeration(rep, M, target, expected, false);
  std::size_t max_len = rep.lengths.empty() ? 0 : rep.lengths.back();
  rep.add("max length >= n + 1", max_len >= n + 1, "max length " + std::to_string(max_len));
  return rep;
}

/// Dispatch on the certificate kind.
inline VerificationReport verify_certificate(const Json& j) {
  const std::string kind = certificate_kind(j);
  if (kind == "prescribed_lengths") return verify_certificate(prescribed_from_json(j));
  return verify_certificate(unbounded_from_json(j));
}

}  // namespace intval
