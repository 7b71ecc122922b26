#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace intval {

using Integer = mpz_class;

/// Thrown when a bounded search (CRT scan, replacement search, retry loop)
/// runs out of budget.
class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Integer abs(const Integer& n) {
  Integer r;
  mpz_abs(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer pow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

/// Least nonnegative residue of n modulo m (m > 0).
inline Integer mod(const Integer& n, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline bool divides(const Integer& d, const Integer& n) {
  if (d == 0) return n == 0;
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

/// Inverse of a modulo m, when it exists.
inline std::optional<Integer> inverse_mod(const Integer& a, const Integer& m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) return std::nullopt;
  return r;
}

inline std::size_t bit_length(const Integer& n) {
  if (n == 0) return 0;
  return mpz_sizeinbase(n.get_mpz_t(), 2);
}

inline bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

inline Integer next_prime(const Integer& n) {
  Integer r;
  mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

/// All primes q with q <= bound, increasing.
inline std::vector<Integer> primes_up_to(const Integer& bound) {
  std::vector<Integer> out;
  for (Integer q = 2; q <= bound; q = next_prime(q)) out.push_back(q);
  return out;
}

/// p-adic valuation v_q(n). The zero integer has infinite valuation, reported
/// as std::nullopt.
inline std::optional<std::size_t> valuation(const Integer& q, const Integer& n) {
  if (q < 2) throw std::invalid_argument("valuation: base must be >= 2");
  if (n == 0) return std::nullopt;
  Integer rest;
  return static_cast<std::size_t>(
      mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), q.get_mpz_t()));
}

namespace detail {

inline Integer pollard_rho(const Integer& n, unsigned long seed) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  // Brent's variant with batched gcds.
  Integer c = 1 + seed;
  Integer y = 2, x, q = 1, g = 1, ys;
  auto step = [&](const Integer& v) { return mod(v * v + c, n); };
  unsigned long r = 1;
  const unsigned long m = 64;
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) y = step(y);
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
        y = step(y);
        q = mod(q * abs(x - y), n);
      }
      g = gcd(q, n);
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = step(ys);
      g = gcd(abs(x - ys), n);
    } while (g == 1);
  }
  return g;
}

inline void factor_into(const Integer& n, std::vector<Integer>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  for (unsigned long seed = 0;; ++seed) {
    Integer d = pollard_rho(n, seed);
    if (d != n) {
      factor_into(d, primes);
      factor_into(n / d, primes);
      return;
    }
  }
}

}  // namespace detail

/// Prime factorization of |n| (n != 0) as sorted (prime, exponent) pairs.
inline std::vector<std::pair<Integer, std::size_t>> factor_integer(const Integer& n) {
  if (n == 0) throw std::invalid_argument("factor_integer: zero has no factorization");
  Integer m = abs(n);
  std::vector<Integer> primes;
  for (unsigned long p = 2; p < 10000 && p * p <= m; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      primes.emplace_back(p);
      m /= p;
    }
  }
  detail::factor_into(m, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<Integer, std::size_t>> out;
  for (const auto& p : primes) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.emplace_back(p, 1);
  }
  return out;
}

/// x ≡ residue (mod modulus), or x ≢ residue (mod modulus) when used as an
/// exclusion.
struct Congruence {
  Integer residue;
  Integer modulus;
  bool holds_for(const Integer& x) const { return mod(x - residue, modulus) == 0; }
};

/// Congruences with pairwise coprime moduli, plus exclusions (arbitrary moduli).
struct CongruenceSystem {
  std::vector<Congruence> congruences;
  std::vector<Congruence> exclusions;

  CongruenceSystem& require(Integer residue, Integer modulus) {
    congruences.push_back({std::move(residue), std::move(modulus)});
    return *this;
  }
  CongruenceSystem& exclude(Integer residue, Integer modulus) {
    exclusions.push_back({std::move(residue), std::move(modulus)});
    return *this;
  }

  bool satisfied_by(const Integer& x) const {
    for (const auto& c : congruences)
      if (!c.holds_for(x)) return false;
    for (const auto& c : exclusions)
      if (c.holds_for(x)) return false;
    return true;
  }
};

/// Thrown when crt_solve finds no admissible value inside its search window.
class CrtInfeasible : public BudgetExhausted {
 public:
  using BudgetExhausted::BudgetExhausted;
};

/// Least nonnegative x satisfying every congruence and avoiding every
/// exclusion, found by scanning x0, x0 + P, x0 + 2P, ... where x0 is the CRT
/// solution and P the product of the congruence moduli. `skip` discards that
/// many admissible values first (deterministic retries). The scan covers
/// search_bound * P candidates.
inline Integer crt_solve(const CongruenceSystem& sys, const Integer& search_bound,
                         std::size_t skip = 0) {
  if (search_bound < 1) throw std::invalid_argument("crt_solve: search bound must be positive");
  Integer x = 0, product = 1;
  for (std::size_t i = 0; i < sys.congruences.size(); ++i) {
    const auto& c = sys.congruences[i];
    if (c.modulus < 2) throw std::invalid_argument("crt_solve: modulus must be >= 2");
    for (std::size_t j = 0; j < i; ++j) {
      if (gcd(c.modulus, sys.congruences[j].modulus) != 1)
        throw std::invalid_argument("crt_solve: congruence moduli are not pairwise coprime");
    }
    // x + product * k ≡ r (mod m)  =>  k ≡ (r - x) * product^{-1} (mod m)
    Integer inv = *inverse_mod(mod(product, c.modulus), c.modulus);
    Integer k = mod((c.residue - x) * inv, c.modulus);
    x += product * k;
    product *= c.modulus;
    x = mod(x, product);
  }
  for (const auto& c : sys.exclusions)
    if (c.modulus < 1) throw std::invalid_argument("crt_solve: exclusion modulus must be positive");

  std::size_t seen = 0;
  for (Integer step = 0; step < search_bound; ++step) {
    if (sys.satisfied_by(x) && seen++ == skip) return x;
    x += product;
  }
  throw CrtInfeasible("crt_solve: no admissible solution within the search bound");
}

}  // namespace intval
