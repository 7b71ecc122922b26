#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "intval/detail/fp_poly.hpp"
#include "intval/integer.hpp"
#include "intval/polynomial.hpp"

namespace intval {

/// g = unit * constant * prod factors[i].first ^ factors[i].second, every
/// factor primitive, irreducible over Q, positive leading coefficient.
/// Factors are sorted by (degree, coefficients).
struct QxFactorization {
  int unit = 1;
  Integer constant = 1;
  std::vector<std::pair<IntPolynomial, std::size_t>> factors;

  IntPolynomial expand() const {
    IntPolynomial r = IntPolynomial::constant(constant * unit);
    for (const auto& [f, e] : factors) r *= pow(f, e);
    return r;
  }
  std::size_t factor_count() const {
    std::size_t n = 0;
    for (const auto& fe : factors) n += fe.second;
    return n;
  }
};

namespace detail {

/// Squarefree test: a prime l not dividing lc(f) with f mod l squarefree
/// proves it; otherwise fall back to gcd(f, f').
inline bool is_squarefree(const IntPolynomial& f) {
  if (f.degree() <= 1) return true;
  Integer q = 2;
  for (int tries = 0; tries < 32; ++tries) {
    q = next_prime(q);
    if (divides(q, f.leading())) continue;
    fp::Field F{q.get_ui()};
    if (fp::is_squarefree(fp::from_integers(f.coeffs(), F), F)) return true;
  }
  return gcd(f, f.derivative()).degree() == 0;
}

/// Squarefree decomposition of a primitive polynomial with positive leading
/// coefficient (Yun). Returns (part, multiplicity), parts primitive and
/// pairwise coprime.
inline std::vector<std::pair<IntPolynomial, std::size_t>> squarefree_decomposition(const IntPolynomial& f) {
  std::vector<std::pair<IntPolynomial, std::size_t>> out;
  if (f.degree() < 1) return out;
  if (is_squarefree(f)) {
    out.emplace_back(f, 1);
    return out;
  }
  IntPolynomial a = gcd(f, f.derivative());
  if (a.degree() == 0) {
    out.emplace_back(f, 1);
    return out;
  }
  a = primitive_part(a);
  IntPolynomial b = primitive_part(*divide_exact(f, a));
  IntPolynomial c = *divide_exact(f.derivative(), a);
  IntPolynomial d = c - b.derivative();
  for (std::size_t i = 1; b.degree() > 0; ++i) {
    IntPolynomial ai = d.is_zero() ? b : primitive_part(gcd(b, d));
    IntPolynomial nb = *divide_exact(b, ai);
    if (ai.degree() > 0) out.emplace_back(ai, i);
    if (nb.degree() <= 0) break;
    IntPolynomial nc = d.is_zero() ? IntPolynomial{} : *divide_exact(d, ai);
    b = primitive_part(nb);
    d = nc - b.derivative();
  }
  return out;
}

struct ModularData {
  unsigned long prime = 0;
  std::vector<fp::Poly> factors;
  bool proven_irreducible = false;
};

/// Screens several primes: intersects the possible factor degrees implied by
/// each modular factorization. Keeps the prime with the fewest factors.
inline ModularData modular_screen(const IntPolynomial& f, std::size_t wanted_primes = 7) {
  const int n = f.degree();
  if (n > 4000) throw std::invalid_argument("factor_zx: degree too large");
  std::vector<bool> possible(static_cast<std::size_t>(n) + 1, true);
  ModularData best;
  std::size_t used = 0;
  Integer q = 2;
  for (int tries = 0; tries < 400 && used < wanted_primes; ++tries) {
    q = next_prime(q);
    if (divides(q, f.leading())) continue;
    fp::Field F{q.get_ui()};
    fp::Poly fm = fp::from_integers(f.coeffs(), F);
    if (!fp::is_squarefree(fm, F)) continue;
    ++used;
    auto factors = fp::factor_squarefree(fp::monic(fm, F), F);
    std::vector<bool> sums(static_cast<std::size_t>(n) + 1, false);
    sums[0] = true;
    for (const auto& u : factors) {
      int du = fp::deg(u);
      for (int s = n; s >= du; --s)
        if (sums[static_cast<std::size_t>(s - du)]) sums[static_cast<std::size_t>(s)] = true;
    }
    bool any_proper = false;
    for (int s = 1; s < n; ++s) {
      possible[static_cast<std::size_t>(s)] = possible[static_cast<std::size_t>(s)] && sums[static_cast<std::size_t>(s)];
      any_proper = any_proper || possible[static_cast<std::size_t>(s)];
    }
    if (best.prime == 0 || factors.size() < best.factors.size()) {
      best.prime = F.p;
      best.factors = std::move(factors);
    }
    if (!any_proper) {
      best.proven_irreducible = true;
      return best;
    }
  }
  if (best.prime == 0) throw std::runtime_error("factor_zx: no admissible prime found");
  return best;
}

inline IntPolynomial to_integer_poly(const fp::Poly& a) {
  std::vector<Integer> v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v[i] = static_cast<unsigned long>(a[i]);
  return IntPolynomial(std::move(v));
}

inline IntPolynomial mul_mod(const IntPolynomial& a, const IntPolynomial& b, const Integer& m) {
  return (a * b).reduced_mod(m);
}

/// Division by a monic polynomial with coefficients reduced mod m.
inline std::pair<IntPolynomial, IntPolynomial> divmod_monic(const IntPolynomial& a, const IntPolynomial& b,
                                                            const Integer& m) {
  if (a.degree() < b.degree()) return {IntPolynomial{}, a.reduced_mod(m)};
  std::vector<Integer> r = a.reduced_mod(m).coeffs();
  r.resize(static_cast<std::size_t>(a.degree()) + 1);
  const std::size_t db = static_cast<std::size_t>(b.degree());
  std::vector<Integer> q(r.size() - db);
  for (std::size_t k = q.size(); k-- > 0;) {
    q[k] = mod(r[k + db], m);
    if (q[k] == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) mpz_submul(r[k + j].get_mpz_t(), q[k].get_mpz_t(), b.coeffs()[j].get_mpz_t());
  }
  r.resize(db);
  return {IntPolynomial(std::move(q)).reduced_mod(m), IntPolynomial(std::move(r)).reduced_mod(m)};
}

/// Lift f ≡ g*h (mod l) to modulus `target` (a power of l), h monic, given
/// s*g + t*h ≡ 1 (mod l). Quadratic Hensel steps.
inline std::pair<IntPolynomial, IntPolynomial> hensel_pair(const IntPolynomial& f, IntPolynomial g, IntPolynomial h,
                                                           IntPolynomial s, IntPolynomial t, const Integer& l,
                                                           const Integer& target) {
  Integer m = l;
  while (m < target) {
    const Integer M = m * m;
    IntPolynomial e = (f - g * h).reduced_mod(M);
    auto [q, r] = divmod_monic(mul_mod(s, e, M), h, M);
    IntPolynomial gs = (g + t * e + q * g).reduced_mod(M);
    IntPolynomial hs = (h + r).reduced_mod(M);
    IntPolynomial b = (s * gs + t * hs - IntPolynomial::constant(1)).reduced_mod(M);
    auto [c, d] = divmod_monic(mul_mod(s, b, M), hs, M);
    s = (s - d).reduced_mod(M);
    t = (t - t * b - c * gs).reduced_mod(M);
    g = std::move(gs);
    h = std::move(hs);
    m = M;
  }
  return {g.reduced_mod(target), h.reduced_mod(target)};
}

/// Lift all monic modular factors of f (mod l) to monic factors mod target.
inline std::vector<IntPolynomial> hensel_lift(const IntPolynomial& f, const std::vector<fp::Poly>& factors,
                                              const fp::Field& F, const Integer& target) {
  const Integer l(static_cast<unsigned long>(F.p));
  const Integer lc_inv = *inverse_mod(mod(f.leading(), target), target);
  if (factors.size() == 1) return {(f * lc_inv).reduced_mod(target)};
  const std::size_t half = factors.size() / 2;
  std::vector<fp::Poly> left(factors.begin(), factors.begin() + static_cast<std::ptrdiff_t>(half));
  std::vector<fp::Poly> right(factors.begin() + static_cast<std::ptrdiff_t>(half), factors.end());
  fp::Poly a{1}, b{1};
  for (const auto& u : left) a = fp::mul(a, u, F);
  for (const auto& u : right) b = fp::mul(b, u, F);
  fp::Poly g_mod = fp::scale(a, F.reduce(f.leading()), F);
  auto eg = fp::ext_gcd(g_mod, b, F);
  if (fp::deg(eg.g) != 0) throw std::logic_error("hensel_lift: modular factors not coprime");
  auto [g, h] = hensel_pair(f, to_integer_poly(g_mod), to_integer_poly(b), to_integer_poly(eg.s),
                            to_integer_poly(eg.t), l, target);
  IntPolynomial a_lift = (g * lc_inv).reduced_mod(target);
  auto out = hensel_lift(a_lift, left, F, target);
  auto rest = hensel_lift(h, right, F, target);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

inline Integer symmetric(const Integer& v, const Integer& m) {
  Integer r = mod(v, m);
  if (2 * r > m) r -= m;
  return r;
}

inline IntPolynomial symmetric(const IntPolynomial& a, const Integer& m) {
  std::vector<Integer> v(a.coeffs().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = symmetric(a.coeffs()[i], m);
  return IntPolynomial(std::move(v));
}

inline Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

/// Zassenhaus: factor a primitive squarefree f (lc > 0, f(0) != 0).
inline std::vector<IntPolynomial> zassenhaus(const IntPolynomial& f) {
  if (f.degree() <= 1) return {f};
  ModularData md = modular_screen(f);
  if (md.proven_irreducible || md.factors.size() == 1) return {f};
  const fp::Field F{md.prime};
  const Integer l(md.prime);
  Integer norm2 = 0;
  for (const auto& c : f.coeffs()) norm2 += c * c;
  const Integer bound = 2 * abs(f.leading()) * pow(Integer(2), static_cast<unsigned long>(f.degree())) *
                        (isqrt(norm2) + 1);
  Integer M = l;
  while (M <= bound) M *= l;
  std::vector<IntPolynomial> lifted = hensel_lift(f, md.factors, F, M);

  std::vector<IntPolynomial> found;
  std::vector<std::size_t> T(lifted.size());
  for (std::size_t i = 0; i < T.size(); ++i) T[i] = i;
  IntPolynomial rest = f;
  for (std::size_t s = 1; 2 * s <= T.size();) {
    bool progressed = false;
    std::vector<std::size_t> pick(s);
    for (std::size_t i = 0; i < s; ++i) pick[i] = i;
    const Integer lc = rest.leading();
    const Integer target0 = lc * rest.coeff(0);
    for (;;) {
      Integer c0 = lc;
      for (std::size_t i : pick) c0 = mod(c0 * lifted[T[i]].coeff(0), M);
      c0 = symmetric(c0, M);
      if (c0 != 0 && divides(c0, target0)) {
        IntPolynomial cand = IntPolynomial::constant(lc);
        for (std::size_t i : pick) cand = mul_mod(cand, lifted[T[i]], M);
        cand = primitive_part(symmetric(cand, M));
        if (auto quotient = divide_exact(rest, cand)) {
          found.push_back(cand);
          rest = primitive_part(*quotient);
          std::vector<std::size_t> keep;
          for (std::size_t i = 0; i < T.size(); ++i)
            if (std::find(pick.begin(), pick.end(), i) == pick.end()) keep.push_back(T[i]);
          T = std::move(keep);
          progressed = true;
          break;
        }
      }
      // next combination
      std::size_t i = s;
      while (i > 0 && pick[i - 1] == T.size() - s + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < s; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (!progressed) ++s;
  }
  found.push_back(rest);
  return found;
}

/// Rational roots p/q of f when |f(0)| and |lc f| are small enough to enumerate
/// divisors; returns the primitive linear factors q*x - p found.
inline std::vector<IntPolynomial> small_rational_linear_factors(const IntPolynomial& f) {
  std::vector<IntPolynomial> out;
  const Integer limit("1000000000000");
  const Integer& a0 = f.coeffs().front();
  const Integer& an = f.leading();
  if (a0 == 0 || abs(a0) > limit || abs(an) > limit) return out;
  auto divisors = [](const Integer& n) {
    std::vector<Integer> ds{1};
    for (const auto& [p, e] : factor_integer(n)) {
      std::size_t sz = ds.size();
      Integer pk = 1;
      for (std::size_t k = 1; k <= e; ++k) {
        pk *= p;
        for (std::size_t i = 0; i < sz; ++i) ds.push_back(ds[i] * pk);
      }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
  };
  auto num = divisors(a0), den = divisors(an);
  for (const auto& q : den)
    for (const auto& p0 : num)
      for (int sign : {-1, 1}) {
        Integer p = p0 * sign;
        if (gcd(p, q) != 1) continue;
        IntPolynomial lin(std::vector<Integer>{-p, q});
        if (divide_exact(f, lin)) out.push_back(lin);
      }
  return out;
}

}  // namespace detail

/// Complete factorization into Q[x]-irreducible primitive factors.
inline QxFactorization factor_zx(const IntPolynomial& g) {
  if (g.is_zero()) throw std::invalid_argument("factor_zx: zero polynomial");
  ContentSplit cs = content_split(g);
  QxFactorization out;
  out.unit = cs.unit;
  out.constant = cs.content;
  IntPolynomial f = cs.primitive;
  std::size_t x_power = 0;
  while (f.degree() > 0 && f.coeff(0) == 0) {
    f = *divide_exact(f, IntPolynomial::x());
    ++x_power;
  }
  if (x_power) out.factors.emplace_back(IntPolynomial::x(), x_power);
  for (auto& [part, mult] : detail::squarefree_decomposition(f)) {
    IntPolynomial rest = part;
    std::vector<IntPolynomial> irreducibles;
    if (rest.degree() >= 2) {
      for (auto& lin : detail::small_rational_linear_factors(rest)) {
        rest = *divide_exact(rest, lin);
        irreducibles.push_back(lin);
      }
      rest = primitive_part(rest);
    }
    if (rest.degree() >= 1)
      for (auto& h : detail::zassenhaus(rest)) irreducibles.push_back(primitive_part(h));
    for (auto& h : irreducibles) out.factors.emplace_back(std::move(h), mult);
  }
  std::sort(out.factors.begin(), out.factors.end());
  if (out.expand() != g) throw std::logic_error("factor_zx: replay check failed");
  return out;
}

/// True iff g (nonconstant) has no nonconstant proper divisor in Q[x].
inline bool is_irreducible_qx(const IntPolynomial& g) {
  if (g.is_zero() || g.degree() < 1) throw std::invalid_argument("is_irreducible_qx: constant polynomial");
  IntPolynomial f = primitive_part(g);
  if (f.degree() == 1) return true;
  if (f.coeff(0) == 0) return false;
  if (!detail::is_squarefree(f)) return false;
  detail::ModularData md = detail::modular_screen(f);
  if (md.proven_irreducible || md.factors.size() == 1) return true;
  return factor_zx(f).factor_count() == 1;
}

}  // namespace intval
