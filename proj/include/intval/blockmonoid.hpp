#pragma once

// Zero-sum sequences over a finite abelian group Z/n_1 x ... x Z/n_r.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "intval/detail/multiset_partitions.hpp"
#include "intval/text.hpp"

namespace intval {

class FiniteAbelianGroup {
 public:
  using Element = std::vector<long>;

  explicit FiniteAbelianGroup(std::vector<long> orders) : orders_(std::move(orders)) {
    if (orders_.empty()) throw std::invalid_argument("FiniteAbelianGroup: at least one cyclic factor required");
    size_ = 1;
    for (long n : orders_) {
      if (n < 2) throw std::invalid_argument("FiniteAbelianGroup: cyclic orders must be >= 2");
      if (size_ > 1000000 / n) throw std::invalid_argument("FiniteAbelianGroup: group too large");
      size_ *= static_cast<std::size_t>(n);
    }
  }

  const std::vector<long>& orders() const { return orders_; }
  std::size_t size() const { return size_; }
  std::size_t rank() const { return orders_.size(); }

  Element reduce(Element g) const {
    if (g.size() != orders_.size()) throw std::invalid_argument("group element has the wrong number of components");
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = ((g[i] % orders_[i]) + orders_[i]) % orders_[i];
    return g;
  }

  /// Mixed-radix code in [0, size), first component least significant.
  std::size_t code(const Element& g) const {
    Element r = reduce(g);
    std::size_t c = 0;
    for (std::size_t i = r.size(); i-- > 0;) c = c * static_cast<std::size_t>(orders_[i]) + static_cast<std::size_t>(r[i]);
    return c;
  }
  Element element(std::size_t code) const {
    Element g(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      g[i] = static_cast<long>(code % static_cast<std::size_t>(orders_[i]));
      code /= static_cast<std::size_t>(orders_[i]);
    }
    return g;
  }
  std::size_t add(std::size_t a, std::size_t b) const {
    Element x = element(a), y = element(b);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    return code(x);
  }
  std::size_t negate(std::size_t a) const {
    Element x = element(a);
    for (auto& v : x) v = -v;
    return code(x);
  }
  /// k * a
  std::size_t scale(std::size_t a, std::size_t k) const {
    Element x = element(a);
    for (auto& v : x) v *= static_cast<long>(k);
    return code(x);
  }

  friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;

 private:
  std::vector<long> orders_;
  std::size_t size_ = 1;
};

inline std::string to_string(const FiniteAbelianGroup& G) {
  std::string out;
  for (long n : G.orders()) out += (out.empty() ? "Z" : "xZ") + std::to_string(n);
  return out;
}

/// `Z3`, `Z2xZ2`, ...
inline FiniteAbelianGroup parse_group(std::string_view text) {
  detail::Cursor c(text);
  std::vector<long> orders;
  do {
    c.expect('Z');
    std::size_t at = c.position();
    Integer n = c.unsigned_integer();
    if (n < 2 || n > 1000000) throw ParseError("cyclic order must be between 2 and 1000000", at);
    orders.push_back(n.get_si());
  } while (c.accept('x'));
  c.expect_end();
  return FiniteAbelianGroup(std::move(orders));
}

/// A sequence over G as multiplicities indexed by element code.
class ZeroSumSequence {
 public:
  ZeroSumSequence(FiniteAbelianGroup group, std::vector<std::size_t> counts)
      : group_(std::move(group)), counts_(std::move(counts)) {
    if (counts_.size() != group_.size()) throw std::invalid_argument("ZeroSumSequence: counts must cover the group");
  }
  static ZeroSumSequence from_elements(const FiniteAbelianGroup& G, const std::vector<FiniteAbelianGroup::Element>& elems) {
    std::vector<std::size_t> counts(G.size(), 0);
    for (const auto& g : elems) ++counts[G.code(g)];
    return ZeroSumSequence(G, std::move(counts));
  }

  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<std::size_t>& counts() const { return counts_; }
  std::size_t multiplicity(const FiniteAbelianGroup::Element& g) const { return counts_[group_.code(g)]; }

  std::size_t length() const {
    std::size_t n = 0;
    for (auto c : counts_) n += c;
    return n;
  }
  /// Element code of the sum.
  std::size_t sigma_code() const {
    std::size_t s = 0;
    for (std::size_t g = 0; g < counts_.size(); ++g)
      if (counts_[g]) s = group_.add(s, group_.scale(g, counts_[g]));
    return s;
  }
  FiniteAbelianGroup::Element sigma() const { return group_.element(sigma_code()); }
  bool is_zero_sum() const { return sigma_code() == 0; }
  bool empty() const { return length() == 0; }

  ZeroSumSequence negated() const {
    std::vector<std::size_t> out(counts_.size(), 0);
    for (std::size_t g = 0; g < counts_.size(); ++g) out[group_.negate(g)] += counts_[g];
    return ZeroSumSequence(group_, std::move(out));
  }
  friend ZeroSumSequence operator*(const ZeroSumSequence& a, const ZeroSumSequence& b) {
    if (!(a.group_ == b.group_)) throw std::invalid_argument("sequences over different groups");
    std::vector<std::size_t> out = a.counts_;
    for (std::size_t g = 0; g < out.size(); ++g) out[g] += b.counts_[g];
    return ZeroSumSequence(a.group_, std::move(out));
  }
  friend bool operator==(const ZeroSumSequence&, const ZeroSumSequence&) = default;
  friend auto operator<=>(const ZeroSumSequence& a, const ZeroSumSequence& b) { return a.counts_ <=> b.counts_; }

 private:
  FiniteAbelianGroup group_;
  std::vector<std::size_t> counts_;
};

inline std::string element_string(const FiniteAbelianGroup& G, const FiniteAbelianGroup::Element& g) {
  if (G.rank() == 1) return std::to_string(g[0]);
  std::string out = "(";
  for (std::size_t i = 0; i < g.size(); ++i) out += (i ? "," : "") + std::to_string(g[i]);
  return out + ")";
}

inline std::string to_string(const ZeroSumSequence& s) {
  std::string out = "[";
  bool first = true;
  for (std::size_t g = 0; g < s.counts().size(); ++g)
    for (std::size_t k = 0; k < s.counts()[g]; ++k) {
      out += (first ? "" : ", ") + element_string(s.group(), s.group().element(g));
      first = false;
    }
  return out + "]";
}

/// `[1,1,1]` for cyclic groups, `[(1,0),(0,1)]` in general.
inline ZeroSumSequence parse_sequence(const FiniteAbelianGroup& G, std::string_view text) {
  detail::Cursor c(text);
  std::vector<FiniteAbelianGroup::Element> elems;
  c.expect('[');
  if (!c.accept(']')) {
    do {
      FiniteAbelianGroup::Element g;
      if (c.accept('(')) {
        do g.push_back(c.signed_integer().get_si());
        while (c.accept(','));
        c.expect(')');
      } else {
        g.push_back(c.signed_integer().get_si());
      }
      if (g.size() != G.rank()) c.fail("element needs " + std::to_string(G.rank()) + " components");
      elems.push_back(G.reduce(g));
    } while (c.accept(','));
    c.expect(']');
  }
  c.expect_end();
  return ZeroSumSequence::from_elements(G, elems);
}

/// Nonempty zero-sum sequence with no nonempty proper zero-sum subsequence.
inline bool is_atom(const ZeroSumSequence& s) {
  if (s.empty()) throw std::invalid_argument("is_atom: empty sequence");
  if (!s.is_zero_sum()) throw std::invalid_argument("is_atom: sequence is not zero-sum");
  const auto& G = s.group();
  const auto& full = s.counts();
  std::vector<std::size_t> sub(full.size(), 0);
  // Odometer over sub-multisets; the running sum is recomputed per step.
  for (;;) {
    std::size_t i = 0;
    while (i < sub.size() && sub[i] == full[i]) sub[i++] = 0;
    if (i == sub.size()) return true;
    ++sub[i];
    if (sub == full) return true;
    if (ZeroSumSequence(G, sub).sigma_code() == 0) return false;
  }
}

using BlockFactorization = std::vector<ZeroSumSequence>;

/// All factorizations into atoms, each sorted, the list sorted by (length, atoms).
inline std::vector<BlockFactorization> block_factorizations(const ZeroSumSequence& s) {
  if (s.empty()) throw std::invalid_argument("block_factorizations: empty sequence");
  if (!s.is_zero_sum()) throw std::invalid_argument("block_factorizations: sequence is not zero-sum");
  const auto& G = s.group();
  std::map<detail::Counts, bool> atom_memo;
  std::vector<BlockFactorization> out;
  auto accept = [&](const detail::Counts& part) {
    auto it = atom_memo.find(part);
    if (it != atom_memo.end()) return it->second;
    ZeroSumSequence q(G, part);
    bool ok = q.is_zero_sum() && is_atom(q);
    atom_memo.emplace(part, ok);
    return ok;
  };
  auto visit = [&](const std::vector<detail::Counts>& parts) {
    BlockFactorization f;
    for (const auto& p : parts) f.emplace_back(G, p);
    std::sort(f.begin(), f.end());
    out.push_back(std::move(f));
  };
  detail::MultisetPartitions(accept, visit).run(s.counts());
  std::sort(out.begin(), out.end(), [](const BlockFactorization& a, const BlockFactorization& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

inline std::set<std::size_t> block_lengths(const ZeroSumSequence& s) {
  std::set<std::size_t> out;
  for (const auto& f : block_factorizations(s)) out.insert(f.size());
  return out;
}

inline std::size_t max_length(const ZeroSumSequence& s) { return *block_lengths(s).rbegin(); }

/// All atoms of B(G \ {0}); their length is at most |G|.
inline std::vector<ZeroSumSequence> nonzero_atoms(const FiniteAbelianGroup& G) {
  std::vector<ZeroSumSequence> out;
  std::vector<std::size_t> counts(G.size(), 0);
  const std::size_t cap = G.size();
  // Depth-first over multiplicity vectors supported on nonzero elements.
  auto rec = [&](auto&& self, std::size_t g, std::size_t len) -> void {
    if (g == G.size()) {
      if (len == 0) return;
      ZeroSumSequence s(G, counts);
      if (s.is_zero_sum() && is_atom(s)) out.push_back(std::move(s));
      return;
    }
    for (std::size_t k = 0; len + k <= cap; ++k) {
      counts[g] = k;
      self(self, g + 1, len + k);
    }
    counts[g] = 0;
  };
  rec(rec, 1, 0);
  std::sort(out.begin(), out.end(), [](const ZeroSumSequence& a, const ZeroSumSequence& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a < b;
  });
  return out;
}

struct Lemma24Report {
  std::size_t max_length = 0;      // max L(UV)
  std::size_t min_atom_length = 0; // min{|U|, |V|}
  std::size_t max_atom_length = 0; // max{|U|, |V|}
  bool v_is_negative_u = false;
  bool bound_holds = false;        // max L(UV) <= min{|U|, |V|}
  bool equality_law_holds = false; // max L(UV) = max{|U|, |V|}  iff  V = -U
  /// |U| = |V| = 2: max L(UV) = 2 for every V, so the "only if" half of the
  /// equality law cannot hold unless V = -U.
  bool both_length_two = false;
  bool holds() const { return bound_holds && equality_law_holds; }
  /// The equality law with its "only if" half required only when
  /// max{|U|, |V|} >= 3.
  bool restated_holds() const { return bound_holds && (equality_law_holds || both_length_two); }
};

/// Laws (1) and (2) for atoms U, V of B(G \ {0}).
inline Lemma24Report lemma24_check(const ZeroSumSequence& U, const ZeroSumSequence& V) {
  for (const auto* s : {&U, &V}) {
    if (s->empty() || !s->is_zero_sum() || !is_atom(*s)) throw std::invalid_argument("lemma24_check: inputs must be atoms");
    if (s->counts()[0] != 0) throw std::invalid_argument("lemma24_check: atoms must avoid the zero element");
  }
  Lemma24Report r;
  r.max_length = max_length(U * V);
  r.min_atom_length = std::min(U.length(), V.length());
  r.max_atom_length = std::max(U.length(), V.length());
  r.v_is_negative_u = V == U.negated();
  r.bound_holds = r.max_length <= r.min_atom_length;
  r.equality_law_holds = (r.max_length == r.max_atom_length) == r.v_is_negative_u;
  r.both_length_two = r.max_atom_length == 2;
  return r;
}

/// Law (3): |U| = max over atoms U' of max L(U U'), for every atom U of
/// B(G \ {0}). Returns the atoms where it fails.
inline std::vector<ZeroSumSequence> lemma24_third_law_failures(const FiniteAbelianGroup& G) {
  const auto atoms = nonzero_atoms(G);
  std::vector<ZeroSumSequence> bad;
  for (const auto& U : atoms) {
    std::size_t best = 0;
    for (const auto& W : atoms) best = std::max(best, max_length(U * W));
    if (best != U.length()) bad.push_back(U);
  }
  return bad;
}

}  // namespace intval
