#pragma once

// Brute-force reference implementations used only by the tests. None of them
// calls the algorithm it is checking.

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "intval/intval.hpp"

namespace oracle {

using intval::Integer;
using intval::IntPolynomial;
using intval::SubsetSpec;

inline Integer eval(const IntPolynomial& g, const Integer& s) {
  Integer acc = 0, power = 1;
  for (const auto& c : g.coeffs()) {
    acc += c * power;
    power *= s;
  }
  return acc;
}

// gcd of g over s = r + m t, t in [-window, window], for every progression.
// g(r + m t) has degree d in t, and the gcd over any d + 1 consecutive t equals
// the gcd over all t (finite differences), so window >= deg g makes this exact.
inline Integer sampled_fixdiv(const SubsetSpec& S, const IntPolynomial& g, long window = -1) {
  if (window < 0) window = 2 * std::max(g.degree(), 1) + 4;
  Integer d = 0;
  for (const auto& p : S.progressions())
    for (long t = -window; t <= window; ++t) {
      Integer v = eval(g, p.offset + p.step * t);
      mpz_gcd(d.get_mpz_t(), d.get_mpz_t(), v.get_mpz_t());
    }
  return d;
}

// Classes mod q^k met by S, by scanning one period of S times q^k.
inline std::set<Integer> sampled_residues(const SubsetSpec& S, const Integer& q, unsigned long k) {
  Integer qk;
  mpz_pow_ui(qk.get_mpz_t(), q.get_mpz_t(), k);
  Integer span = S.period() * qk;
  std::set<Integer> out;
  for (Integer s = 0; s < span; ++s)
    if (S.contains(s)) {
      Integer r = s % qk;
      out.insert(r);
    }
  return out;
}

inline bool trial_prime(const Integer& n) {
  if (n < 2) return false;
  for (Integer d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<Integer> positive_divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<Integer> out;
  for (Integer d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  return out;
}

// Lagrange interpolation through (xs[i], ys[i]); nullopt unless every
// coefficient is an integer.
inline std::optional<IntPolynomial> interpolate(const std::vector<long>& xs, const std::vector<Integer>& ys) {
  const std::size_t n = xs.size();
  std::vector<mpq_class> coeff(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<mpq_class> basis{1};
    mpq_class denom = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      std::vector<mpq_class> next(basis.size() + 1, 0);
      for (std::size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] += basis[k];
        next[k] -= basis[k] * xs[j];
      }
      basis = next;
      denom *= xs[i] - xs[j];
    }
    for (std::size_t k = 0; k < n; ++k) coeff[k] += basis[k] * mpq_class(ys[i]) / denom;
  }
  std::vector<Integer> out;
  for (auto& c : coeff) {
    c.canonicalize();
    if (c.get_den() != 1) return std::nullopt;
    out.push_back(c.get_num());
  }
  return IntPolynomial(out);
}

// Exact division over Z[x] by schoolbook long division.
inline std::optional<IntPolynomial> exact_quotient(const IntPolynomial& f, const IntPolynomial& d) {
  std::vector<Integer> r = f.coeffs();
  const auto& dc = d.coeffs();
  if (r.size() < dc.size()) return std::nullopt;
  std::vector<Integer> q(r.size() - dc.size() + 1);
  for (std::size_t i = q.size(); i-- > 0;) {
    const Integer& top = r[i + dc.size() - 1];
    if (top % dc.back() != 0) return std::nullopt;
    q[i] = top / dc.back();
    for (std::size_t j = 0; j < dc.size(); ++j) r[i + j] -= q[i] * dc[j];
  }
  for (const auto& c : r)
    if (c != 0) return std::nullopt;
  return IntPolynomial(q);
}

// Kronecker: a divisor of degree k of f is determined by its values at k + 1
// points, each dividing the corresponding value of f.
inline std::optional<IntPolynomial> kronecker_factor(const IntPolynomial& f, int k) {
  // Use the k + 1 points in [-8, 8] whose values have the fewest divisors.
  std::vector<std::pair<std::size_t, long>> pool;
  for (long t = -8; t <= 8; ++t) {
    Integer v = eval(f, t);
    if (v == 0) {
      IntPolynomial lin{-t, 1};
      return k == 1 ? std::optional<IntPolynomial>(lin) : std::nullopt;
    }
    pool.emplace_back(positive_divisors(v).size(), t);
  }
  std::sort(pool.begin(), pool.end());
  std::vector<long> xs;
  std::vector<Integer> vals;
  for (int i = 0; i <= k; ++i) {
    xs.push_back(pool[i].second);
    vals.push_back(eval(f, pool[i].second));
  }
  std::vector<std::vector<Integer>> choices;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<Integer> ds;
    for (const auto& d : positive_divisors(vals[i])) {
      ds.push_back(d);
      if (i > 0) ds.push_back(-d);  // fix the sign of the first value
    }
    choices.push_back(ds);
  }
  std::vector<std::size_t> pick(xs.size(), 0);
  std::vector<Integer> ys(xs.size());
  for (;;) {
    for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = choices[i][pick[i]];
    if (auto h = interpolate(xs, ys); h && h->degree() == k)
      if (exact_quotient(f, *h)) return h;
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
    if (i == pick.size()) return std::nullopt;
  }
}

// Sorted list of primitive irreducible factor degrees (with multiplicity) of a
// nonconstant f, found by repeatedly splitting off a least-degree divisor.
inline std::vector<int> kronecker_degrees(IntPolynomial f) {
  std::vector<int> out;
  while (f.degree() > 0) {
    bool split = false;
    for (int k = 1; 2 * k <= f.degree() && !split; ++k)
      if (auto h = kronecker_factor(f, k)) {
        out.push_back(k);
        f = *exact_quotient(f, *h);
        split = true;
      }
    if (!split) {
      out.push_back(f.degree());
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline IntPolynomial from_roots(const std::vector<long>& roots) {
  IntPolynomial g{1};
  for (long r : roots) g *= IntPolynomial{-r, 1};
  return g;
}

// Brute-force irreducibility of (c / b) * prod (x - r) in Int(S, Z) for a
// multiset of integer roots: reducible iff the element is a non-unit product
// of two non-units. Every factor is, up to sign, (A / B) * prod over a
// sub-multiset of roots, so it suffices to try every sub-multiset and every
// admissible constant.
inline bool roots_element_irreducible(const SubsetSpec& S, const std::vector<long>& roots, const Integer& c,
                                      const Integer& b) {
  const IntPolynomial g = from_roots(roots);
  const Integer F = sampled_fixdiv(S, g);
  if ((c * F) % b != 0) throw std::invalid_argument("oracle: not a member");
  if (roots.empty()) return trial_prime(c / b);
  // A split e = e1 e2 has e1 = k1 h1 / F1 and e2 = k2 h2 / F2 with h1 h2 = g,
  // Fi the fixed divisor of hi, and integers k1 k2 = c F1 F2 / b.
  const std::size_t n = roots.size();
  std::set<std::vector<long>> seen;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<long> r1, r2;
    for (std::size_t i = 0; i < n; ++i) (mask >> i & 1 ? r1 : r2).push_back(roots[i]);
    if (!seen.insert(r1).second) continue;
    const Integer F1 = sampled_fixdiv(S, from_roots(r1));
    const Integer F2 = sampled_fixdiv(S, from_roots(r2));
    mpq_class total = mpq_class(c * F1 * F2, b);
    total.canonicalize();
    if (total.get_den() != 1) continue;
    const Integer K = total.get_num();
    for (const auto& k1 : positive_divisors(K)) {
      const Integer k2 = K / k1;
      bool unit1 = r1.empty() && k1 == 1;
      bool unit2 = r2.empty() && k2 == 1;
      if (!unit1 && !unit2) return false;
    }
  }
  return true;
}

// Zero-sum sequences as sorted element-code lists.
using Seq = std::vector<std::size_t>;

inline std::size_t sum_mod(const Seq& s, std::size_t n) {
  std::size_t t = 0;
  for (auto x : s) t = (t + x) % n;
  return t;
}

inline bool cyclic_atom(const Seq& s, std::size_t n) {
  if (s.empty() || sum_mod(s, n) != 0) return false;
  for (unsigned mask = 1; mask + 1 < (1u << s.size()); ++mask) {
    std::size_t t = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (mask >> i & 1) t = (t + s[i]) % n;
    if (t == 0) return false;
  }
  return true;
}

// Set of factorization lengths over Z/n: peel off an atom containing the
// first element, recurse on the rest.
inline std::set<std::size_t> cyclic_lengths(const Seq& s, std::size_t n) {
  if (s.empty()) return {0};
  std::set<std::size_t> out;
  std::set<Seq> tried;
  const std::size_t rest = s.size() - 1;
  for (unsigned mask = 0; mask < (1u << rest); ++mask) {
    Seq atom{s[0]}, remain;
    for (std::size_t i = 0; i < rest; ++i) (mask >> i & 1 ? atom : remain).push_back(s[i + 1]);
    std::sort(atom.begin(), atom.end());
    if (!tried.insert(atom).second || !cyclic_atom(atom, n)) continue;
    for (auto l : cyclic_lengths(remain, n)) out.insert(l + 1);
  }
  return out;
}

inline IntPolynomial random_poly(std::mt19937_64& rng, int max_degree, long max_coeff) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<long> coef(-max_coeff, max_coeff);
  for (;;) {
    int d = deg(rng);
    std::vector<Integer> cs;
    for (int i = 0; i <= d; ++i) cs.emplace_back(coef(rng));
    IntPolynomial g(cs);
    if (!g.is_zero()) return g;
  }
}

}  // namespace oracle
