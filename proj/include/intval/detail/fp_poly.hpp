#pragma once

// Dense polynomials over F_p for word-size primes p, low degree first.

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "intval/integer.hpp"

namespace intval::detail::fp {

using Poly = std::vector<std::uint64_t>;

struct Field {
  std::uint64_t p;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const {
    if (a % p == 0) throw std::domain_error("fp: inverse of zero");
    return pow(a, p - 2);
  }
  std::uint64_t reduce(const Integer& n) const {
    Integer r = mod(n, Integer(static_cast<unsigned long>(p)));
    return r.get_ui();
  }
};

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline Poly from_integers(const std::vector<Integer>& coeffs, const Field& F) {
  Poly out(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) out[i] = F.reduce(coeffs[i]);
  trim(out);
  return out;
}

inline Poly sub(Poly a, const Poly& b, const Field& F) {
  if (b.size() > a.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.sub(a[i], b[i]);
  trim(a);
  return a;
}

inline Poly mul(const Poly& a, const Poly& b, const Field& F) {
  if (a.empty() || b.empty()) return {};
  std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += static_cast<unsigned __int128>(a[i]) * b[j];
  }
  Poly out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<std::uint64_t>(acc[i] % F.p);
  trim(out);
  return out;
}

inline Poly scale(Poly a, std::uint64_t c, const Field& F) {
  for (auto& v : a) v = F.mul(v, c);
  trim(a);
  return a;
}

inline Poly monic(const Poly& a, const Field& F) {
  if (a.empty()) return a;
  return scale(a, F.inv(a.back()), F);
}

/// (quotient, remainder) of a by nonzero b.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b, const Field& F) {
  if (b.empty()) throw std::domain_error("fp: division by zero polynomial");
  if (a.size() < b.size()) return {{}, a};
  const std::uint64_t lc_inv = F.inv(b.back());
  const std::size_t db = b.size() - 1;
  Poly q(a.size() - db, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    std::uint64_t coef = F.mul(a[k + db], lc_inv);
    q[k] = coef;
    if (!coef) continue;
    for (std::size_t j = 0; j <= db; ++j) a[k + j] = F.sub(a[k + j], F.mul(coef, b[j]));
  }
  a.resize(db);
  trim(a);
  trim(q);
  return {q, a};
}

inline Poly rem(const Poly& a, const Poly& b, const Field& F) { return divmod(a, b, F).second; }

inline Poly gcd(Poly a, Poly b, const Field& F) {
  while (!b.empty()) {
    Poly r = rem(a, b, F);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, F);
}

/// Monic g = gcd(a, b) with s*a + t*b = g.
struct ExtGcd {
  Poly g, s, t;
};

inline ExtGcd ext_gcd(const Poly& a, const Poly& b, const Field& F) {
  Poly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1, F);
    Poly s2 = sub(s0, mul(q, s1, F), F);
    Poly t2 = sub(t0, mul(q, t1, F), F);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) return {{}, {}, {}};
  std::uint64_t inv = F.inv(r0.back());
  return {scale(r0, inv, F), scale(s0, inv, F), scale(t0, inv, F)};
}

inline Poly derivative(const Poly& a, const Field& F) {
  if (a.size() <= 1) return {};
  Poly d(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = F.mul(a[i], i % F.p);
  trim(d);
  return d;
}

/// base^e mod m.
inline Poly powmod(Poly base, const Integer& e, const Poly& m, const Field& F) {
  Poly result{1};
  result = rem(result, m, F);
  base = rem(base, m, F);
  const std::size_t bits = bit_length(e);
  for (std::size_t i = bits; i-- > 0;) {
    result = rem(mul(result, result, F), m, F);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, base, F), m, F);
  }
  return result;
}

inline bool is_squarefree(const Poly& f, const Field& F) {
  if (deg(f) <= 0) return true;
  Poly d = derivative(f, F);
  if (d.empty()) return false;
  return deg(gcd(f, d, F)) == 0;
}

/// Distinct-degree factorization of a monic squarefree f: pairs (d, product of
/// all irreducible factors of degree d).
inline std::vector<std::pair<int, Poly>> distinct_degree(const Poly& f_in, const Field& F) {
  std::vector<std::pair<int, Poly>> out;
  Poly f = f_in;
  const Integer p(static_cast<unsigned long>(F.p));
  Poly h = rem(Poly{0, 1}, f, F);
  int d = 0;
  while (deg(f) >= 2 * (d + 1)) {
    ++d;
    h = powmod(h, p, f, F);
    Poly g = gcd(f, sub(h, Poly{0, 1}, F), F);
    if (deg(g) > 0) {
      out.emplace_back(d, g);
      f = divmod(f, g, F).first;
      h = rem(h, f, F);
    }
  }
  if (deg(f) > 0) out.emplace_back(deg(f), f);
  return out;
}

/// Split a monic product of irreducibles of common degree d (odd p).
inline void equal_degree(const Poly& f, int d, const Field& F, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (deg(f) == d) {
    out.push_back(f);
    return;
  }
  Integer e = (pow(Integer(static_cast<unsigned long>(F.p)), static_cast<unsigned long>(d)) - 1) / 2;
  std::uniform_int_distribution<std::uint64_t> coin(0, F.p - 1);
  for (;;) {
    Poly a(static_cast<std::size_t>(deg(f)));
    for (auto& c : a) c = coin(rng);
    trim(a);
    if (deg(a) < 1) continue;
    Poly b = sub(powmod(a, e, f, F), Poly{1}, F);
    Poly g = gcd(f, b, F);
    if (deg(g) > 0 && deg(g) < deg(f)) {
      equal_degree(g, d, F, rng, out);
      equal_degree(divmod(f, g, F).first, d, F, rng, out);
      return;
    }
  }
}

/// Monic irreducible factors of a monic squarefree polynomial over F_p
/// (p odd), sorted by (degree, coefficients).
inline std::vector<Poly> factor_squarefree(const Poly& f, const Field& F) {
  if (F.p == 2) throw std::invalid_argument("fp: equal-degree splitting needs an odd prime");
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ F.p);
  std::vector<Poly> out;
  for (const auto& [d, g] : distinct_degree(f, F)) equal_degree(g, d, F, rng, out);
  std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

}  // namespace intval::detail::fp
