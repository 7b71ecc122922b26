#pragma once

// Single-datum mutations of certificates. Each mutant carries the report-name
// prefix that a localized failure entry must start with.

#include <string>
#include <vector>

#include "intval/intval.hpp"

namespace tamper {

template <class Cert>
struct Mutant {
  std::string datum;   // e.g. "c[1,3] + 9"
  std::string prefix;  // report entries for this datum start with it
  Cert cert;
};

inline std::string at(std::size_t i) { return "[" + std::to_string(i + 1); }
inline std::string at(std::size_t i, std::size_t j) { return at(i) + "," + std::to_string(j + 1) + "]"; }

// Offsets applied to a datum tied to the prime p_i: small shifts, a shift by
// p_i^2 that keeps the residue mod p_i, and a shift by the full modulus that
// keeps every congruence.
inline std::vector<intval::Integer> offsets(const intval::Integer& pi, const intval::Integer& all) {
  return {1, -1, pi * pi, all};
}

template <class Cert>
intval::Integer all_moduli(const Cert& c) {
  intval::Integer P = 1;
  for (const auto& r : c.primes) P *= r.prime * r.prime;
  for (const auto& q : c.Q) P *= q;
  return P;
}

inline std::vector<Mutant<intval::PrescribedLengthsCertificate>> mutants(const intval::PrescribedLengthsCertificate& c) {
  std::vector<Mutant<intval::PrescribedLengthsCertificate>> out;
  const intval::Integer all = all_moduli(c);
  for (std::size_t i = 0; i < c.a.size(); ++i) {
    const auto& pi = c.primes[i].prime;
    for (std::size_t j = 0; j < c.a[i].size(); ++j)
      for (const auto& d : offsets(pi, all)) {
        auto m = c;
        m.a[i][j] += d;
        out.push_back({"a" + at(i, j) + " + " + d.get_str(), "a" + at(i), std::move(m)});
      }
    for (std::size_t j = 0; j < c.c[i].size(); ++j)
      for (const auto& d : offsets(pi, all)) {
        auto m = c;
        m.c[i][j] += d;
        out.push_back({"c" + at(i, j) + " + " + d.get_str(), "c" + at(i, j), std::move(m)});
      }
  }
  if (!c.primes.empty()) {
    std::vector<intval::Integer> ds{1, -1, all};
    for (const auto& r : c.primes) ds.push_back(r.prime * r.prime);
    for (const auto& d : ds) {
      auto m = c;
      m.e += d;
      out.push_back({"e + " + d.get_str(), "e ", std::move(m)});
    }
  }
  return out;
}

inline std::vector<Mutant<intval::UnboundedCertificate>> mutants(const intval::UnboundedCertificate& c) {
  std::vector<Mutant<intval::UnboundedCertificate>> out;
  const intval::Integer all = all_moduli(c);
  for (std::size_t i = 0; i < c.a.size(); ++i)
    for (std::size_t j = 0; j < c.a[i].size(); ++j)
      for (const auto& d : offsets(c.primes[i].prime, all)) {
        auto m = c;
        m.a[i][j] += d;
        out.push_back({"a" + at(i, j) + " + " + d.get_str(), "a" + at(i), std::move(m)});
      }
  std::vector<intval::Integer> ds{1, -1, all};
  for (const auto& r : c.primes) ds.push_back(r.prime * r.prime);
  for (std::size_t j = 0; j < c.T.size(); ++j)
    for (const auto& d : ds) {
      auto m = c;
      m.T[j] += d;
      out.push_back({"T" + at(j) + "] + " + d.get_str(), "T" + at(j) + "]", std::move(m)});
    }
  return out;
}

// Empty when the mutant is rejected with an entry starting with the prefix;
// otherwise a description of what went wrong.
template <class Cert>
std::string check(const Mutant<Cert>& m) {
  auto rep = intval::verify_certificate(m.cert);
  if (rep.passed()) return m.datum + ": verification passed";
  for (const auto& f : rep.failures())
    if (f.name.rfind(m.prefix, 0) == 0) return {};
  return m.datum + ": no failure entry starting with '" + m.prefix + "' (first failure: " + rep.failures().front().name +
         ")";
}

}  // namespace tamper
