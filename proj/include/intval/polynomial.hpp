#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "intval/integer.hpp"

namespace intval {

/// Dense polynomial in Z[x]; coeffs()[i] is the coefficient of x^i and the
/// highest stored coefficient is nonzero. The zero polynomial has no
/// coefficients and degree -1.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  IntPolynomial(std::initializer_list<long> coeffs) {
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs) coeffs_.emplace_back(c);
    trim();
  }

  static IntPolynomial constant(const Integer& c) { return IntPolynomial(std::vector<Integer>{c}); }
  static IntPolynomial x() { return IntPolynomial{0, 1}; }
  /// x - root
  static IntPolynomial linear(const Integer& root) {
    return IntPolynomial(std::vector<Integer>{-root, Integer(1)});
  }
  static IntPolynomial monomial(const Integer& c, std::size_t degree) {
    std::vector<Integer> v(degree + 1);
    v[degree] = c;
    return IntPolynomial(std::move(v));
  }

  const std::vector<Integer>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_constant() const { return coeffs_.size() <= 1; }
  const Integer& leading() const {
    if (is_zero()) throw std::domain_error("leading coefficient of the zero polynomial");
    return coeffs_.back();
  }
  Integer coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Integer(0); }
  bool is_monic() const { return !is_zero() && leading() == 1; }

  Integer operator()(const Integer& s) const {
    Integer acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
    return acc;
  }

  IntPolynomial operator-() const {
    IntPolynomial r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  IntPolynomial& operator+=(const IntPolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  IntPolynomial& operator-=(const IntPolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  IntPolynomial& operator*=(const Integer& c) {
    if (c == 0) {
      coeffs_.clear();
      return *this;
    }
    for (auto& v : coeffs_) v *= c;
    return *this;
  }

  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
  friend IntPolynomial operator*(IntPolynomial a, const Integer& c) { return a *= c; }
  friend IntPolynomial operator*(const Integer& c, IntPolynomial a) { return a *= c; }
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        mpz_addmul(out[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
    return IntPolynomial(std::move(out));
  }
  IntPolynomial& operator*=(const IntPolynomial& o) { return *this = *this * o; }

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Order by degree, then coefficients from x^0 upward.
  friend std::strong_ordering operator<=>(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.degree() != b.degree()) return a.degree() <=> b.degree();
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      int c = cmp(a.coeffs_[i], b.coeffs_[i]);
      if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

  IntPolynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Integer> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
    return IntPolynomial(std::move(d));
  }

  /// Coefficients reduced into [0, m).
  IntPolynomial reduced_mod(const Integer& m) const {
    std::vector<Integer> v(coeffs_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = mod(coeffs_[i], m);
    return IntPolynomial(std::move(v));
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Integer> coeffs_;
};

inline IntPolynomial pow(const IntPolynomial& base, std::size_t exp) {
  IntPolynomial r = IntPolynomial::constant(1), b = base;
  while (exp > 0) {
    if (exp & 1) r *= b;
    exp >>= 1;
    if (exp) b *= b;
  }
  return r;
}

/// gcd of the coefficients, always >= 1 for nonzero polynomials.
inline Integer content(const IntPolynomial& g) {
  if (g.is_zero()) throw std::domain_error("content of the zero polynomial");
  Integer c = 0;
  for (const auto& v : g.coeffs()) {
    c = gcd(c, v);
    if (c == 1) break;
  }
  return c;
}

/// g = unit * content * primitive, content >= 1, primitive has positive
/// leading coefficient and coprime coefficients.
struct ContentSplit {
  int unit = 1;
  Integer content;
  IntPolynomial primitive;
};

inline ContentSplit content_split(const IntPolynomial& g) {
  ContentSplit s;
  s.content = content(g);
  s.unit = sgn(g.leading()) < 0 ? -1 : 1;
  std::vector<Integer> v(g.coeffs().size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    mpz_divexact(v[i].get_mpz_t(), g.coeffs()[i].get_mpz_t(), s.content.get_mpz_t());
    if (s.unit < 0) v[i] = -v[i];
  }
  s.primitive = IntPolynomial(std::move(v));
  return s;
}

inline IntPolynomial primitive_part(const IntPolynomial& g) { return content_split(g).primitive; }

/// Exact quotient f / d when d divides f in Z[x].
inline std::optional<IntPolynomial> divide_exact(const IntPolynomial& f, const IntPolynomial& d) {
  if (d.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (f.is_zero()) return IntPolynomial{};
  if (f.degree() < d.degree()) return std::nullopt;
  std::vector<Integer> rem = f.coeffs();
  const std::size_t dd = static_cast<std::size_t>(d.degree());
  std::vector<Integer> q(rem.size() - dd);
  const Integer& lc = d.leading();
  for (std::size_t k = q.size(); k-- > 0;) {
    const Integer& top = rem[k + dd];
    if (top != 0) {
      if (!divides(lc, top)) return std::nullopt;
      mpz_divexact(q[k].get_mpz_t(), top.get_mpz_t(), lc.get_mpz_t());
      for (std::size_t j = 0; j <= dd; ++j)
        mpz_submul(rem[k + j].get_mpz_t(), q[k].get_mpz_t(), d.coeffs()[j].get_mpz_t());
    }
  }
  for (std::size_t j = 0; j < dd; ++j)
    if (rem[j] != 0) return std::nullopt;
  return IntPolynomial(std::move(q));
}

/// Pseudo-remainder: lc(d)^(deg f - deg d + 1) * f mod d.
inline IntPolynomial pseudo_remainder(const IntPolynomial& f, const IntPolynomial& d) {
  if (d.is_zero()) throw std::domain_error("division by the zero polynomial");
  std::vector<Integer> rem = f.coeffs();
  const int dd = d.degree();
  const Integer& lc = d.leading();
  for (int k = static_cast<int>(rem.size()) - 1; k >= dd; --k) {
    Integer top = rem[k];
    for (auto& c : rem) c *= lc;
    if (top != 0)
      for (int j = 0; j <= dd; ++j)
        mpz_submul(rem[k - dd + j].get_mpz_t(), top.get_mpz_t(), d.coeffs()[j].get_mpz_t());
    rem.pop_back();
  }
  return IntPolynomial(std::move(rem));
}

/// gcd in Z[x] (primitive PRS), normalized to positive leading coefficient.
inline IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd of two zero polynomials");
  if (a.is_zero()) return content_split(b).primitive * content(b);
  if (b.is_zero()) return content_split(a).primitive * content(a);
  Integer c = gcd(content(a), content(b));
  IntPolynomial u = primitive_part(a), v = primitive_part(b);
  if (u.degree() < v.degree()) std::swap(u, v);
  while (!v.is_zero()) {
    IntPolynomial r = pseudo_remainder(u, v);
    u = std::move(v);
    v = r.is_zero() ? r : primitive_part(r);
  }
  return primitive_part(u) * c;
}

/// Evaluate at s with all arithmetic modulo m; result in [0, m).
inline Integer eval_mod(const IntPolynomial& g, const Integer& s, const Integer& m) {
  Integer acc = 0;
  for (auto it = g.coeffs().rbegin(); it != g.coeffs().rend(); ++it) acc = mod(acc * s + *it, m);
  return acc;
}

}  // namespace intval
