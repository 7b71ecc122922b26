#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "intval/detail/multiset_partitions.hpp"
#include "intval/integer.hpp"
#include "intval/polynomial.hpp"
#include "intval/qx_factor.hpp"
#include "intval/subsets.hpp"
#include "intval/text.hpp"

namespace intval {

/// The element is not in Int(S, Z).
class NotMember : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Nonzero element sign * (a/b) * g of Q[x] in canonical form: a, b >= 1
/// coprime, g primitive with positive leading coefficient (g = 1 for
/// constants). Equal elements have equal canonical forms.
class IntValElement {
 public:
  /// The element 1.
  IntValElement() = default;
  static IntValElement from_fraction(const IntPolynomial& numerator, const Integer& denominator) {
    if (numerator.is_zero()) throw std::invalid_argument("IntValElement: zero is not a valid element");
    if (denominator == 0) throw std::invalid_argument("IntValElement: zero denominator");
    ContentSplit cs = content_split(numerator);
    IntValElement e;
    e.sign_ = cs.unit * (sgn(denominator) < 0 ? -1 : 1);
    Integer den = abs(denominator);
    Integer g = gcd(cs.content, den);
    e.num_ = cs.content / g;
    e.den_ = den / g;
    e.poly_ = std::move(cs.primitive);
    return e;
  }
  static IntValElement constant(const Integer& c) { return from_fraction(IntPolynomial::constant(c), 1); }
  static IntValElement from_polynomial(const IntPolynomial& g) { return from_fraction(g, 1); }

  int sign() const { return sign_; }
  const Integer& num() const { return num_; }
  const Integer& den() const { return den_; }
  const IntPolynomial& poly() const { return poly_; }
  int degree() const { return poly_.degree(); }
  bool is_constant() const { return poly_.degree() == 0; }
  bool is_unit() const { return is_constant() && num_ == 1 && den_ == 1; }
  /// sign * a * g
  IntPolynomial numerator() const { return poly_ * Integer(num_ * sign_); }

  IntValElement associate() const {
    IntValElement e = *this;
    e.sign_ = 1;
    return e;
  }

  friend IntValElement operator*(const IntValElement& x, const IntValElement& y) {
    return from_fraction(x.numerator() * y.numerator(), x.den_ * y.den_);
  }
  friend bool operator==(const IntValElement&, const IntValElement&) = default;
  /// Order by (g, b, a, sign); g by degree then coefficients.
  friend std::strong_ordering operator<=>(const IntValElement& x, const IntValElement& y) {
    if (auto c = x.poly_ <=> y.poly_; c != 0) return c;
    if (int c = cmp(x.den_, y.den_); c != 0) return c <=> 0;
    if (int c = cmp(x.num_, y.num_); c != 0) return c <=> 0;
    return x.sign_ <=> y.sign_;
  }

 private:
  int sign_ = 1;
  Integer num_ = 1;
  Integer den_ = 1;
  IntPolynomial poly_{1};
};

inline std::string to_string(const IntValElement& e) {
  std::string num = to_string(e.numerator());
  if (e.den() == 1) return num;
  return "(" + num + ")/" + e.den().get_str();
}

/// `(<poly>)/<positive-int>` or `<poly>`.
inline IntValElement parse_element(std::string_view text) {
  detail::Cursor c(text);
  if (c.at_end()) c.fail("empty element");
  IntPolynomial num = detail::PolyParser(c).expr();
  Integer den = 1;
  if (c.accept('/')) {
    std::size_t at = c.position();
    den = c.unsigned_integer();
    if (den == 0) throw ParseError("denominator must be positive", at);
  }
  c.expect_end();
  if (num.is_zero()) throw ParseError("zero is not an element of the multiplicative monoid", 0);
  return IntValElement::from_fraction(num, den);
}

namespace detail {

/// Some s in S with g(s) != 0 (g nonzero): among deg(g)+1 points of one
/// progression at least one is not a root.
inline Integer nonroot_in(const SubsetSpec& S, const IntPolynomial& g) {
  const Progression& p = S.progressions().front();
  for (long j = 0;; ++j) {
    for (long sgn_j : {j, -j}) {
      Integer s = p.offset + p.step * sgn_j;
      if (g(s) != 0) return s;
      if (j == 0) break;
    }
  }
}

/// v_q(fixdiv(S, g)) for primitive nonzero g. Breadth-first refinement of the
/// classes mod q^k met by S: a class on which g is nonzero mod q^k fixes the
/// valuation of every element in it; zero classes are split mod q^(k+1). The
/// witness s0 caps the depth at K = v_q(g(s0)) + 1.
inline std::size_t fixdiv_valuation(const SubsetSpec& S, const IntPolynomial& g, const Integer& q) {
  const Integer s0 = nonroot_in(S, g);
  const std::size_t cap = *valuation(q, g(s0)) + 1;
  std::size_t best = cap - 1;
  std::vector<Integer> frontier;
  for (Integer c = 0; c < q; ++c)
    if (S.meets_class(c, q)) frontier.push_back(c);
  Integer qk = q;
  for (std::size_t k = 1; !frontier.empty() && k - 1 < best && k <= cap; ++k) {
    const IntPolynomial gm = g.reduced_mod(qk);
    const Integer next_mod = qk * q;
    std::vector<Integer> next;
    for (const auto& c : frontier) {
      Integer v = eval_mod(gm, c, qk);
      if (v != 0) {
        best = std::min(best, *valuation(q, v));
      } else if (k < cap) {
        for (Integer j = 0; j < q; ++j) {
          Integer child = c + j * qk;
          if (S.meets_class(child, next_mod)) next.push_back(child);
        }
      }
    }
    frontier = std::move(next);
    qk = next_mod;
  }
  return best;
}

}  // namespace detail

/// gcd{ g(s) : s in S } for nonzero g.
///
/// fixdiv(S, g) = content(g) * fixdiv(S, pp(g)). A prime dividing the fixed
/// divisor of a primitive polynomial must satisfy |R_S(q)| <= deg g (g mod q
/// would vanish on |R_S(q)| distinct classes), so only relevant_primes(S,
/// deg g) are examined, each by an exact valuation search.
inline Integer fixdiv(const SubsetSpec& S, const IntPolynomial& g) {
  if (g.is_zero()) throw std::invalid_argument("fixdiv: zero polynomial");
  ContentSplit cs = content_split(g);
  Integer result = cs.content;
  const IntPolynomial& f = cs.primitive;
  if (f.degree() == 0) return result;
  for (const auto& pc : relevant_primes(S, Integer(f.degree())))
    result *= pow(pc.prime, static_cast<unsigned long>(detail::fixdiv_valuation(S, f, pc.prime)));
  return result;
}

/// e in Int(S, Z) iff b | fixdiv(S, g).
inline bool is_member(const SubsetSpec& S, const IntValElement& e) { return divides(e.den(), fixdiv(S, e.poly())); }

inline void require_member(const SubsetSpec& S, const IntValElement& e) {
  if (!is_member(S, e)) throw NotMember("element " + to_string(e) + " is not integer-valued on " + to_string(S));
}

/// fixdiv(S, e) = a * fixdiv(S, g) / b = 1.
inline bool is_image_primitive(const SubsetSpec& S, const IntValElement& e) {
  Integer d = fixdiv(S, e.poly());
  if (!divides(e.den(), d)) throw NotMember("element " + to_string(e) + " is not integer-valued on " + to_string(S));
  return e.num() == 1 && e.den() == d;
}

struct IrreducibilityResult {
  bool irreducible = false;
  std::string reason;
  /// For reducible elements: two non-units whose product is the element.
  std::optional<std::pair<IntValElement, IntValElement>> witness;
};

namespace detail {

inline IntPolynomial product_of(const QxFactorization& qf, const Counts& part) {
  IntPolynomial h = IntPolynomial::constant(1);
  for (std::size_t i = 0; i < part.size(); ++i)
    if (part[i]) h *= pow(qf.factors[i].first, part[i]);
  return h;
}

/// Memoized fixed divisors of the sub-products of one Q[x] factorization.
class SubproductTable {
 public:
  SubproductTable(const SubsetSpec& S, const QxFactorization& qf) : S_(S), qf_(qf) {}

  const IntPolynomial& poly(const Counts& part) { return entry(part).poly; }
  const Integer& fixdiv_of(const Counts& part) { return entry(part).fixdiv; }

  /// Split of `part` into two nonconstant parts whose fixed divisors multiply
  /// to a multiple of fixdiv(part), if any.
  std::optional<std::pair<Counts, Counts>> divisible_split(const Counts& part) {
    auto& ent = entry(part);
    if (ent.split_checked) return ent.split;
    ent.split_checked = true;
    Counts sub(part.size(), 0);
    const Integer target = ent.fixdiv;
    std::optional<std::pair<Counts, Counts>> found;
    // Enumerate proper nonzero sub-multisets in odometer order.
    for (;;) {
      std::size_t i = 0;
      while (i < sub.size() && sub[i] == part[i]) sub[i++] = 0;
      if (i == sub.size()) break;
      ++sub[i];
      if (sub == part) break;
      Counts other(part.size());
      for (std::size_t j = 0; j < part.size(); ++j) other[j] = part[j] - sub[j];
      if (sub > other) continue;
      if (divides(target, fixdiv_of(sub) * fixdiv_of(other))) {
        found = std::make_pair(sub, other);
        break;
      }
    }
    ent.split = found;
    return found;
  }

 private:
  struct Entry {
    IntPolynomial poly;
    Integer fixdiv;
    bool split_checked = false;
    std::optional<std::pair<Counts, Counts>> split;
  };
  Entry& entry(const Counts& part) {
    auto it = table_.find(part);
    if (it != table_.end()) return it->second;
    Entry e;
    e.poly = product_of(qf_, part);
    e.fixdiv = fixdiv(S_, e.poly);
    return table_.emplace(part, std::move(e)).first->second;
  }
  const SubsetSpec& S_;
  const QxFactorization& qf_;
  std::map<Counts, Entry> table_;
};

inline Counts full_counts(const QxFactorization& qf) {
  Counts c;
  for (const auto& fe : qf.factors) c.push_back(fe.second);
  return c;
}

inline Integer smallest_prime_factor(const Integer& n) { return factor_integer(n).front().first; }

}  // namespace detail

/// Irreducibility in Int(S, Z). Nonconstant elements must be image-primitive;
/// then g/fixdiv(g) is irreducible iff g is irreducible in Z[x] or no split
/// g = f1*f2 into nonconstant factors has fixdiv(g) | fixdiv(f1)*fixdiv(f2).
/// Constants are irreducible iff prime (the units are ±1).
inline IrreducibilityResult is_irreducible(const SubsetSpec& S, const IntValElement& e) {
  if (e.is_unit()) throw std::invalid_argument("is_irreducible: units are neither irreducible nor reducible");
  require_member(S, e);
  IrreducibilityResult res;
  auto split_off_prime = [&](const Integer& q, const std::string& why) {
    res.irreducible = false;
    res.reason = why;
    IntValElement rest = IntValElement::from_fraction(e.numerator(), e.den() * q);
    res.witness = std::make_pair(IntValElement::constant(q), rest);
    return res;
  };
  if (e.is_constant()) {
    if (is_prime(e.num())) {
      res.irreducible = true;
      res.reason = "prime constant";
      return res;
    }
    return split_off_prime(detail::smallest_prime_factor(e.num()), "composite constant");
  }
  const Integer d = fixdiv(S, e.poly());
  if (e.num() > 1) {
    Integer q = detail::smallest_prime_factor(e.num());
    return split_off_prime(q, "constant factor " + q.get_str() + " divides the numerator");
  }
  if (e.den() != d) {
    Integer q = detail::smallest_prime_factor(d / e.den());
    return split_off_prime(q, "not image-primitive: fixed divisor of the element is " + Integer(d / e.den()).get_str());
  }
  QxFactorization qf = factor_zx(e.poly());
  if (qf.factor_count() == 1) {
    res.irreducible = true;
    res.reason = "image-primitive and irreducible in Z[x]";
    return res;
  }
  detail::SubproductTable table(S, qf);
  auto full = detail::full_counts(qf);
  if (auto split = table.divisible_split(full)) {
    const auto& [a, b] = *split;
    const Integer& d1 = table.fixdiv_of(a);
    const Integer& d2 = table.fixdiv_of(b);
    Integer c = d1 * d2 / d;
    res.irreducible = false;
    res.reason = "fixdiv(g) = " + d.get_str() + " divides fixdiv(f1) * fixdiv(f2) = " + Integer(d1 * d2).get_str();
    res.witness = std::make_pair(IntValElement::from_fraction(table.poly(a), d1),
                                 IntValElement::from_fraction(table.poly(b) * Integer(c * e.sign()), d2));
    return res;
  }
  res.irreducible = true;
  res.reason = "no split of g has fixdiv(g) | fixdiv(f1) * fixdiv(f2)";
  return res;
}

/// unit * prod parts, parts irreducible and sorted.
struct Factorization {
  int unit = 1;
  std::vector<IntValElement> parts;

  std::size_t length() const { return parts.size(); }
  IntValElement product() const {
    IntValElement acc = IntValElement::constant(unit);
    for (const auto& p : parts) acc = acc * p;
    return acc;
  }
  /// Essentially the same: equal sorted parts up to associates.
  bool same_as(const Factorization& other) const {
    if (parts.size() != other.parts.size()) return false;
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (parts[i].associate() != other.parts[i].associate()) return false;
    return true;
  }
  friend bool operator==(const Factorization&, const Factorization&) = default;
  friend std::strong_ordering operator<=>(const Factorization& x, const Factorization& y) {
    if (x.parts.size() != y.parts.size()) return x.parts.size() <=> y.parts.size();
    for (std::size_t i = 0; i < x.parts.size(); ++i)
      if (auto c = x.parts[i] <=> y.parts[i]; c != 0) return c;
    return x.unit <=> y.unit;
  }
};

/// Normalize: all signs moved into the unit, parts sorted.
inline Factorization make_factorization(int unit, std::vector<IntValElement> parts) {
  Factorization f;
  f.unit = unit;
  for (auto& p : parts) {
    f.unit *= p.sign();
    p = p.associate();
  }
  std::sort(parts.begin(), parts.end());
  f.parts = std::move(parts);
  return f;
}

inline std::string to_string(const Factorization& f) {
  std::string out = f.unit < 0 ? "-1 * " : "";
  for (std::size_t i = 0; i < f.parts.size(); ++i) {
    if (i) out += " * ";
    out += "[" + to_string(f.parts[i]) + "]";
  }
  return out;
}

/// All essentially different factorizations of e into irreducibles of
/// Int(S, Z), sorted by (length, parts).
///
/// Every nonconstant irreducible part is h/fixdiv(S, h) for a product h of a
/// sub-multiset of the Q[x]-irreducible factors of g, so the search runs over
/// multiset partitions of those factors; the leftover constant
/// sign * a * prod fixdiv(h_P) / b must be an integer and contributes its prime
/// factorization.
inline std::vector<Factorization> factorizations(const SubsetSpec& S, const IntValElement& e) {
  if (e.is_unit()) throw std::invalid_argument("factorizations: units have no factorization");
  require_member(S, e);
  QxFactorization qf = e.is_constant() ? QxFactorization{} : factor_zx(e.poly());
  detail::SubproductTable table(S, qf);
  std::vector<Factorization> out;
  auto accept = [&](const detail::Counts& part) { return !table.divisible_split(part).has_value(); };
  auto visit = [&](const std::vector<detail::Counts>& parts) {
    Integer numer = e.num();
    for (const auto& p : parts) numer *= table.fixdiv_of(p);
    if (!divides(e.den(), numer)) return;
    Integer residual = numer / e.den();
    std::vector<IntValElement> items;
    for (const auto& p : parts) items.push_back(IntValElement::from_fraction(table.poly(p), table.fixdiv_of(p)));
    if (residual != 1)
      for (const auto& [q, k] : factor_integer(residual))
        for (std::size_t i = 0; i < k; ++i) items.push_back(IntValElement::constant(q));
    out.push_back(make_factorization(e.sign(), std::move(items)));
  };
  detail::MultisetPartitions gen(accept, visit);
  gen.run(detail::full_counts(qf));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](const Factorization& a, const Factorization& b) { return a.same_as(b); }),
            out.end());
  return out;
}

/// One length per essentially different factorization, sorted.
struct LengthMultiset {
  std::vector<std::size_t> lengths;
  std::set<std::size_t> as_set() const { return {lengths.begin(), lengths.end()}; }
  friend bool operator==(const LengthMultiset&, const LengthMultiset&) = default;
};

inline LengthMultiset lengths_of(const std::vector<Factorization>& fs) {
  LengthMultiset lm;
  for (const auto& f : fs) lm.lengths.push_back(f.length());
  std::sort(lm.lengths.begin(), lm.lengths.end());
  return lm;
}

inline LengthMultiset lengths(const SubsetSpec& S, const IntValElement& e) { return lengths_of(factorizations(S, e)); }

inline std::string to_string(const LengthMultiset& lm) {
  std::string out = "{";
  for (std::size_t i = 0; i < lm.lengths.size(); ++i) out += (i ? ", " : "") + std::to_string(lm.lengths[i]);
  return out + "}";
}

}  // namespace intval
