#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "intval/integer.hpp"
#include "intval/polynomial.hpp"
#include "intval/qx_factor.hpp"
#include "intval/ring.hpp"
#include "intval/subsets.hpp"

namespace intval {

struct ConstructionOptions {
  /// Multiples of the CRT modulus scanned per congruence system.
  Integer crt_search_bound = 100000;
  /// Candidates tried per replaced polynomial.
  std::size_t replacement_budget = 20000;
  /// CRT retries when the fixed divisor check fails.
  std::size_t retry_budget = 32;
};

struct ResiduePrime {
  Integer prime;
  std::size_t t;  // |R_M(prime)|
  friend bool operator==(const ResiduePrime&, const ResiduePrime&) = default;
};

/// Prime bound and exponent of a replacement; the modulus is
/// prod q^(exponent+1) over the primes q with |R_S(q)| <= bound.
struct ReplacementData {
  std::size_t bound = 0;
  std::size_t exponent = 0;
  friend bool operator==(const ReplacementData&, const ReplacementData&) = default;
};

inline Integer replacement_modulus(const SubsetSpec& S, std::size_t bound, std::size_t exponent) {
  Integer P = 1;
  for (const auto& pc : relevant_primes(S, Integer(static_cast<unsigned long>(bound))))
    P *= pow(pc.prime, static_cast<unsigned long>(exponent + 1));
  return P;
}

/// Monic Q[x]-irreducible F_i with deg F_i = deg f_i, pairwise distinct, and
/// F_i ≡ f_i mod q^(n+1) for every prime q with |R_S(q)| <= bound.
///
/// Candidates are f + d*P*x^j for d = 0, 1, -1, 2, -2, ... and, for each
/// nonzero d, j = 0, 1, ..., deg f - 1; the first irreducible candidate not
/// already taken is accepted.
inline std::vector<IntPolynomial> replace_irreducible(const std::vector<IntPolynomial>& targets, std::size_t bound,
                                                      std::size_t n, const SubsetSpec& S,
                                                      std::size_t budget = ConstructionOptions{}.replacement_budget) {
  const Integer P = replacement_modulus(S, std::max<std::size_t>(bound, 1), n);
  std::vector<IntPolynomial> out;
  for (const auto& f : targets) {
    if (f.degree() < 1 || !f.is_monic()) throw std::invalid_argument("replace_irreducible: targets must be monic and nonconstant");
    auto usable = [&](const IntPolynomial& cand) {
      return std::find(out.begin(), out.end(), cand) == out.end() && is_irreducible_qx(cand);
    };
    std::size_t tried = 0;
    bool done = false;
    if (usable(f)) {
      out.push_back(f);
      done = true;
    }
    ++tried;
    for (long mag = 1; !done; ++mag) {
      for (int j = 0; j < f.degree() && !done; ++j) {
        for (long d : {mag, -mag}) {
          if (tried++ >= budget) throw BudgetExhausted("replace_irreducible: attempt budget exhausted");
          IntPolynomial cand = f + IntPolynomial::monomial(P * d, static_cast<std::size_t>(j));
          if (usable(cand)) {
            out.push_back(std::move(cand));
            done = true;
            break;
          }
        }
      }
    }
  }
  return out;
}

/// Position G_l in the matrix B: row (k, i), column (h, j), 1-based, k != h.
struct MatrixIndex {
  std::size_t k, i, h, j;
  friend bool operator==(const MatrixIndex&, const MatrixIndex&) = default;
  friend auto operator<=>(const MatrixIndex&, const MatrixIndex&) = default;
};

/// f = prod of B[k, i] and its replacement F.
struct BlockProduct {
  std::size_t k, i;
  IntPolynomial f, F;
};

struct PrescribedLengthsCertificate {
  Integer p;
  std::vector<std::size_t> m;
  std::size_t N = 0;
  std::size_t retry = 0;
  std::vector<ResiduePrime> primes;
  std::vector<Integer> Q;
  std::vector<std::vector<Integer>> a, c;
  Integer e = 0;
  IntPolynomial w;
  std::vector<IntPolynomial> g, G;
  ReplacementData first, second;
  std::vector<MatrixIndex> index_map;  // index_map[l] places G[l]
  std::vector<BlockProduct> blocks;    // (k, i) in lexicographic order
  IntPolynomial H_num;
  IntValElement H;
  std::vector<Factorization> predicted;
};

struct UnboundedCertificate {
  Integer p;
  std::size_t n = 0;
  std::size_t retry = 0;
  std::vector<ResiduePrime> primes;
  std::vector<Integer> Q;
  std::vector<std::vector<Integer>> a;  // a[i][0] = a_{i,1}
  std::vector<Integer> T;
  IntPolynomial g, G;
  ReplacementData replacement;
  IntValElement H, left;
  std::vector<IntValElement> linear_parts;
};

namespace detail {

inline std::size_t max_valuation(const Integer& d) {
  std::size_t v = 0;
  if (d > 1)
    for (const auto& [q, k] : factor_integer(d)) v = std::max(v, k);
  return v;
}

/// First `count` primes q != p with |R_{pZ}(q)| > min_t, ordered by residue
/// count (stable in q).
inline std::vector<ResiduePrime> select_primes(const Integer& p, std::size_t count, std::size_t min_t) {
  const SubsetSpec M = SubsetSpec::multiples(p);
  std::vector<ResiduePrime> out;
  for (Integer q = 2; out.size() < count; q = next_prime(q)) {
    if (q == p) continue;
    std::size_t t = residue_count(M, q);
    if (t > min_t) out.push_back({q, t});
  }
  std::stable_sort(out.begin(), out.end(), [](const ResiduePrime& x, const ResiduePrime& y) { return x.t < y.t; });
  return out;
}

inline std::vector<Integer> primes_outside(const SubsetSpec& M, std::size_t bound, const std::vector<ResiduePrime>& excluded) {
  std::vector<Integer> out;
  for (const auto& pc : relevant_primes(M, Integer(static_cast<unsigned long>(bound)))) {
    bool in = std::any_of(excluded.begin(), excluded.end(), [&](const ResiduePrime& r) { return r.prime == pc.prime; });
    if (!in) out.push_back(pc.prime);
  }
  return out;
}

inline Integer prime_product(const std::vector<ResiduePrime>& primes) {
  Integer d = 1;
  for (const auto& r : primes) d *= r.prime;
  return d;
}

inline IntPolynomial product(const std::vector<IntPolynomial>& fs) {
  IntPolynomial acc = IntPolynomial::constant(1);
  for (const auto& f : fs) acc *= f;
  return acc;
}

/// (k, i, h, j) with k != h, i <= m_k, j <= m_h, lexicographic.
inline std::vector<MatrixIndex> matrix_indices(const std::vector<std::size_t>& m) {
  std::vector<MatrixIndex> out;
  for (std::size_t k = 1; k <= m.size(); ++k)
    for (std::size_t i = 1; i <= m[k - 1]; ++i)
      for (std::size_t h = 1; h <= m.size(); ++h)
        if (h != k)
          for (std::size_t j = 1; j <= m[h - 1]; ++j) out.push_back({k, i, h, j});
  return out;
}

/// Indices l with G_l in row or column (k, i) of B.
inline std::vector<std::size_t> block_members(const std::vector<MatrixIndex>& idx, std::size_t k, std::size_t i) {
  std::vector<std::size_t> out;
  for (std::size_t l = 0; l < idx.size(); ++l)
    if ((idx[l].k == k && idx[l].i == i) || (idx[l].h == k && idx[l].j == i)) out.push_back(l);
  return out;
}

inline CongruenceSystem c_conditions(const PrescribedLengthsCertificate& cert, std::size_t i, std::size_t j) {
  CongruenceSystem sys;
  const Integer& pi = cert.primes[i].prime;
  sys.require(mod(cert.a[i][j], pi), pi);
  sys.exclude(cert.a[i][j], pi * pi);
  for (std::size_t k = 0; k < cert.primes.size(); ++k) {
    if (k == i) continue;
    sys.exclude(cert.a[k][0], cert.primes[k].prime);
    sys.exclude(cert.a[k][1], cert.primes[k].prime);
  }
  for (const auto& q : cert.Q) sys.require(1, q);
  return sys;
}

inline CongruenceSystem e_conditions(const PrescribedLengthsCertificate& cert) {
  CongruenceSystem sys;
  for (std::size_t i = 0; i < cert.primes.size(); ++i) {
    const Integer& pi = cert.primes[i].prime;
    sys.require(mod(cert.a[i][0], pi), pi);
    sys.exclude(cert.a[i][0], pi * pi);
  }
  for (const auto& q : cert.Q) sys.require(1, q);
  return sys;
}

inline CongruenceSystem t_conditions(const UnboundedCertificate& cert, std::size_t j) {
  CongruenceSystem sys;
  for (std::size_t i = 0; i < cert.primes.size(); ++i) {
    const Integer& pi = cert.primes[i].prime;
    if (j == 0) {
      sys.require(0, pi);
    } else if (j < cert.primes[i].t) {
      sys.require(mod(cert.a[i][j], pi), pi);
      sys.exclude(cert.a[i][j], pi * pi);
    } else {
      sys.require(mod(cert.p, pi), pi);
    }
  }
  for (const auto& q : cert.Q) sys.require(1, q);
  return sys;
}

inline void check_m_list(const std::vector<std::size_t>& m) {
  if (m.empty()) throw std::invalid_argument("m list must be nonempty");
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] < 1) throw std::invalid_argument("m list entries must be positive");
    if (i && m[i] < m[i - 1]) throw std::invalid_argument("m list must be nondecreasing");
  }
}

}  // namespace detail

inline std::size_t prescribed_prime_count(const std::vector<std::size_t>& m) {
  std::size_t sum = 0, sq = 0;
  for (auto v : m) {
    sum += v;
    sq += v * v;
  }
  return sum * sum - sq;
}

/// The factorizations H = F^(h)_1 ... F^(h)_{m_h} * w prod_{(k,i), k != h} F^(k)_i / (p_1...p_N).
inline std::vector<Factorization> predicted_factorizations(const PrescribedLengthsCertificate& cert) {
  std::vector<Factorization> out;
  const Integer d = detail::prime_product(cert.primes);
  for (std::size_t h = 1; h <= cert.m.size(); ++h) {
    std::vector<IntValElement> parts;
    IntPolynomial rest = cert.w;
    for (const auto& b : cert.blocks) {
      if (b.k == h)
        parts.push_back(IntValElement::from_polynomial(b.F));
      else
        rest *= b.F;
    }
    parts.push_back(IntValElement::from_fraction(rest, d));
    out.push_back(make_factorization(1, std::move(parts)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// An element of Int(pZ, Z) whose factorizations have lengths m_1+1, ..., m_n+1.
inline PrescribedLengthsCertificate construct_prescribed_lengths(const Integer& p, const std::vector<std::size_t>& m,
                                                                 const ConstructionOptions& opt = {}) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  detail::check_m_list(m);
  PrescribedLengthsCertificate cert;
  cert.p = p;
  cert.m = m;
  const SubsetSpec M = SubsetSpec::multiples(p);
  if (m.size() == 1) {
    const std::size_t len = m[0] + 1;
    cert.H_num = IntPolynomial::monomial(1, len);
    cert.H = IntValElement::from_fraction(cert.H_num, pow(p, static_cast<unsigned long>(len)));
    std::vector<IntValElement> parts(len, IntValElement::from_fraction(IntPolynomial::x(), p));
    cert.predicted = {make_factorization(1, std::move(parts))};
    return cert;
  }
  cert.N = prescribed_prime_count(m);
  cert.primes = detail::select_primes(p, cert.N, 2);
  cert.Q = detail::primes_outside(M, cert.primes.back().t, cert.primes);
  cert.a.clear();
  for (const auto& pr : cert.primes) {
    std::vector<CongruenceSystem> heads(2);
    heads[0].require(0, pr.prime);
    heads[1].require(mod(p, pr.prime), pr.prime);
    cert.a.push_back(complete_residue_system(M, pr.prime, heads));
  }
  const Integer d = detail::prime_product(cert.primes);
  cert.index_map = detail::matrix_indices(m);

  for (std::size_t r = 0; r < opt.retry_budget; ++r) {
    cert.retry = r;
    cert.c.assign(cert.N, {});
    for (std::size_t i = 0; i < cert.N; ++i)
      for (std::size_t j = 0; j < cert.primes[i].t; ++j)
        cert.c[i].push_back(crt_solve(detail::c_conditions(cert, i, j), opt.crt_search_bound, r));
    cert.e = crt_solve(detail::e_conditions(cert), opt.crt_search_bound, r);
    cert.w = IntPolynomial::linear(cert.e);
    cert.g.assign(cert.N, IntPolynomial::constant(1));
    for (std::size_t i = 0; i < cert.N; ++i)
      for (std::size_t j = 1; j < cert.c[i].size(); ++j) cert.g[i] *= IntPolynomial::linear(cert.c[i][j]);

    // Every block product uses each G twice in total, so w * prod g^2 is the
    // reference product for both replacements.
    IntPolynomial reference = cert.w;
    for (const auto& gi : cert.g) reference *= gi * gi;
    const Integer ref_fixdiv = fixdiv(M, reference);
    if (ref_fixdiv != d) continue;
    const ReplacementData rep{static_cast<std::size_t>(reference.degree()), detail::max_valuation(ref_fixdiv)};
    cert.first = cert.second = rep;
    cert.G = replace_irreducible(cert.g, rep.bound, rep.exponent, M, opt.replacement_budget);

    cert.blocks.clear();
    std::vector<IntPolynomial> fs;
    for (std::size_t k = 1; k <= m.size(); ++k)
      for (std::size_t i = 1; i <= m[k - 1]; ++i) {
        IntPolynomial f = IntPolynomial::constant(1);
        for (auto l : detail::block_members(cert.index_map, k, i)) f *= cert.G[l];
        cert.blocks.push_back({k, i, f, {}});
        fs.push_back(f);
      }
    auto Fs = replace_irreducible(fs, rep.bound, rep.exponent, M, opt.replacement_budget);
    cert.H_num = cert.w;
    for (std::size_t b = 0; b < Fs.size(); ++b) {
      cert.blocks[b].F = Fs[b];
      cert.H_num *= Fs[b];
    }
    if (fixdiv(M, cert.H_num) != d) continue;
    cert.H = IntValElement::from_fraction(cert.H_num, d);
    cert.predicted = predicted_factorizations(cert);
    return cert;
  }
  throw BudgetExhausted("construct_prescribed_lengths: retry budget exhausted");
}

/// Irreducible H in Int(pZ, Z) with (x/p) H = [x G / (p p_1...p_n)] * prod (x - a_{i,1}).
inline UnboundedCertificate construct_unbounded(const Integer& p, std::size_t n, const ConstructionOptions& opt = {}) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (n < 1) throw std::invalid_argument("n must be positive");
  UnboundedCertificate cert;
  cert.p = p;
  cert.n = n;
  const SubsetSpec M = SubsetSpec::multiples(p);
  cert.primes = detail::select_primes(p, n, 1);
  const std::size_t tn = cert.primes.back().t;
  cert.Q = detail::primes_outside(M, tn + n, cert.primes);
  for (const auto& pr : cert.primes) {
    std::vector<CongruenceSystem> head(1);
    head[0].require(0, pr.prime);
    auto a = complete_residue_system(M, pr.prime, head);
    // a_{i,1} must avoid 0 mod p, otherwise x - a_{i,1} is divisible by p on M.
    a[0] = pr.prime;
    cert.a.push_back(std::move(a));
  }
  const Integer d = detail::prime_product(cert.primes);
  std::vector<IntPolynomial> linear;
  for (const auto& a : cert.a) linear.push_back(IntPolynomial::linear(a[0]));
  cert.linear_parts.clear();
  for (const auto& l : linear) cert.linear_parts.push_back(IntValElement::from_polynomial(l));

  for (std::size_t r = 0; r < opt.retry_budget; ++r) {
    cert.retry = r;
    cert.T.clear();
    for (std::size_t j = 0; j < tn; ++j) cert.T.push_back(crt_solve(detail::t_conditions(cert, j), opt.crt_search_bound, r));
    cert.g = IntPolynomial::constant(1);
    for (std::size_t j = 1; j < tn; ++j) cert.g *= IntPolynomial::linear(cert.T[j]);
    const IntPolynomial reference = IntPolynomial::x() * cert.g * detail::product(linear);
    cert.replacement = {static_cast<std::size_t>(reference.degree()), detail::max_valuation(fixdiv(M, reference))};
    cert.G = replace_irreducible({cert.g}, cert.replacement.bound, cert.replacement.exponent, M, opt.replacement_budget)[0];
    IntValElement H = IntValElement::from_fraction(cert.G * detail::product(linear), d);
    IntValElement left = IntValElement::from_fraction(IntPolynomial::x() * cert.G, d * p);
    if (!is_member(M, H) || !is_member(M, left)) continue;
    if (!is_irreducible(M, H).irreducible || !is_irreducible(M, left).irreducible) continue;
    bool ok = std::all_of(cert.linear_parts.begin(), cert.linear_parts.end(),
                          [&](const IntValElement& l) { return is_irreducible(M, l).irreducible; });
    if (!ok) continue;
    cert.H = H;
    cert.left = left;
    return cert;
  }
  throw BudgetExhausted("construct_unbounded: retry budget exhausted");
}

}  // namespace intval
