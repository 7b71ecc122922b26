#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "intval/integer.hpp"
#include "intval/text.hpp"

namespace intval {

/// offset + step*Z with 0 <= offset < step.
struct Progression {
  Integer offset;
  Integer step;

  bool contains(const Integer& s) const { return mod(s - offset, step) == 0; }
  /// this ⊆ other
  bool within(const Progression& other) const {
    return divides(other.step, step) && other.contains(offset);
  }
  friend bool operator==(const Progression&, const Progression&) = default;
  friend auto operator<=>(const Progression& a, const Progression& b) {
    if (int c = cmp(a.step, b.step); c != 0) return c <=> 0;
    return cmp(a.offset, b.offset) <=> 0;
  }
};

/// A finite union of arithmetic progressions, kept canonical: offsets reduced,
/// progressions contained in another one dropped, sorted by (step, offset).
class SubsetSpec {
 public:
  explicit SubsetSpec(std::vector<Progression> progressions) {
    if (progressions.empty()) throw std::invalid_argument("SubsetSpec: at least one progression required");
    for (auto& p : progressions) {
      if (p.step < 1) throw std::invalid_argument("SubsetSpec: step must be >= 1");
      p.offset = mod(p.offset, p.step);
    }
    std::sort(progressions.begin(), progressions.end());
    progressions.erase(std::unique(progressions.begin(), progressions.end()), progressions.end());
    for (std::size_t i = 0; i < progressions.size(); ++i) {
      bool covered = false;
      for (std::size_t j = 0; j < progressions.size() && !covered; ++j)
        covered = j != i && progressions[i].within(progressions[j]);
      if (!covered) progs_.push_back(progressions[i]);
    }
    maximize();
  }

  static SubsetSpec integers() { return SubsetSpec({{Integer(0), Integer(1)}}); }
  static SubsetSpec multiples(const Integer& p) { return SubsetSpec({{Integer(0), p}}); }
  static SubsetSpec progression(const Integer& offset, const Integer& step) { return SubsetSpec({{offset, step}}); }

  const std::vector<Progression>& progressions() const { return progs_; }

  bool contains(const Integer& s) const {
    return std::any_of(progs_.begin(), progs_.end(), [&](const Progression& p) { return p.contains(s); });
  }

  /// lcm of the steps; membership is periodic with this period.
  Integer period() const {
    Integer l = 1;
    for (const auto& p : progs_) l = lcm(l, p.step);
    return l;
  }

  /// Does the class c mod `modulus` contain an element of S?
  bool meets_class(const Integer& c, const Integer& modulus) const {
    return std::any_of(progs_.begin(), progs_.end(), [&](const Progression& p) {
      return mod(c - p.offset, gcd(p.step, modulus)) == 0;
    });
  }

  friend bool operator==(const SubsetSpec&, const SubsetSpec&) = default;

 private:
  // Replace the progressions by the maximal progressions contained in S. Their
  // steps divide every period of S, so the result depends only on the set.
  // Skipped for very long periods, where the pruned input form is kept.
  void maximize() {
    const Integer L = period();
    if (L > 200000 || progs_.size() == 1) return;
    const unsigned long n = L.get_ui();
    std::vector<bool> in(n, false);
    for (unsigned long s = 0; s < n; ++s) in[s] = contains(Integer(s));
    std::vector<Progression> out;
    for (unsigned long d = 1; d <= n; ++d) {
      if (n % d) continue;
      for (unsigned long r = 0; r < d; ++r) {
        bool all = true;
        for (unsigned long s = r; s < n && all; s += d) all = in[s];
        if (!all) continue;
        Progression cand{Integer(r), Integer(d)};
        bool inside = std::any_of(out.begin(), out.end(), [&](const Progression& p) { return cand.within(p); });
        if (!inside) out.push_back(cand);
      }
    }
    progs_ = std::move(out);
  }

  std::vector<Progression> progs_;
};

/// `Z`, `pZ`, `r+mZ`, comma-separated unions (`1+4Z,3+8Z`).
inline SubsetSpec parse_subset(std::string_view text) {
  detail::Cursor c(text);
  std::vector<Progression> progs;
  do {
    if (c.accept('Z')) {
      progs.push_back({Integer(0), Integer(1)});
      continue;
    }
    std::size_t at = c.position();
    Integer first = c.signed_integer();
    Integer offset = 0, step;
    if (c.accept('Z')) {
      step = first;
    } else {
      if (!c.accept('+')) c.fail("expected 'Z' or '+'");
      offset = first;
      std::size_t step_at = c.position();
      if (c.peek() == 'Z') {
        step = 1;
      } else {
        step = c.unsigned_integer();
        if (step < 1) throw ParseError("progression step must be positive", step_at);
      }
      c.expect('Z');
    }
    if (step < 1) throw ParseError("progression step must be positive", at);
    progs.push_back({offset, step});
  } while (c.accept(','));
  c.expect_end();
  return SubsetSpec(std::move(progs));
}

inline std::string to_string(const SubsetSpec& S) {
  std::string out;
  for (const auto& p : S.progressions()) {
    if (!out.empty()) out += ",";
    if (p.step == 1)
      out += "Z";
    else if (p.offset == 0)
      out += p.step.get_str() + "Z";
    else
      out += p.offset.get_str() + "+" + p.step.get_str() + "Z";
  }
  return out;
}

/// The classes modulo q^k met by S.
struct ResidueData {
  Integer modulus;
  std::vector<Integer> residues;
};

inline ResidueData residues_mod(const SubsetSpec& S, const Integer& q, std::size_t k) {
  if (k < 1) throw std::invalid_argument("residues_mod: power must be >= 1");
  ResidueData rd;
  rd.modulus = pow(q, static_cast<unsigned long>(k));
  std::set<Integer> seen;
  for (const auto& p : S.progressions()) {
    Integer d = gcd(p.step, rd.modulus);
    for (Integer c = mod(p.offset, d); c < rd.modulus; c += d) seen.insert(c);
  }
  rd.residues.assign(seen.begin(), seen.end());
  return rd;
}

/// |R_S(q)|
inline std::size_t residue_count(const SubsetSpec& S, const Integer& q) { return residues_mod(S, q, 1).residues.size(); }

/// |R_S(q)| integers, pairwise incongruent mod q, each lying in S, covering all
/// of R_S(q). Element i additionally satisfies per_element[i] when given.
/// Constrained elements are chosen first, then the remaining classes are
/// filled by scanning 0, 1, 2, ...; each pick is the least admissible value.
inline std::vector<Integer> complete_residue_system(const SubsetSpec& S, const Integer& q,
                                                    const std::vector<CongruenceSystem>& per_element = {}) {
  const std::size_t t = residue_count(S, q);
  if (per_element.size() > t) throw std::invalid_argument("complete_residue_system: more constraints than classes");
  Integer period = lcm(S.period(), q);
  for (const auto& sys : per_element) {
    for (const auto& c : sys.congruences) period = lcm(period, c.modulus);
    for (const auto& c : sys.exclusions) period = lcm(period, c.modulus);
  }
  std::vector<Integer> out(t);
  std::vector<bool> assigned(t, false);
  std::set<Integer> used;
  auto pick = [&](const CongruenceSystem* sys) -> Integer {
    for (Integer s = 0; s < period; ++s) {
      if (!S.contains(s) || used.count(mod(s, q))) continue;
      if (sys && !sys->satisfied_by(s)) continue;
      used.insert(mod(s, q));
      return s;
    }
    throw CrtInfeasible("complete_residue_system: constraints cannot be met inside S");
  };
  for (std::size_t i = 0; i < per_element.size(); ++i) {
    out[i] = pick(&per_element[i]);
    assigned[i] = true;
  }
  for (std::size_t i = 0; i < t; ++i)
    if (!assigned[i]) out[i] = pick(nullptr);
  return out;
}

struct PrimeCount {
  Integer prime;
  std::size_t count;
  friend bool operator==(const PrimeCount&, const PrimeCount&) = default;
};

/// Every prime q with |R_S(q)| <= bound, increasing. Complete: a prime above
/// the bound that fails to divide some step has |R_S(q)| = q > bound, so only
/// primes up to the bound and primes dividing every step can qualify.
inline std::vector<PrimeCount> relevant_primes(const SubsetSpec& S, const Integer& bound) {
  if (bound < 1) throw std::invalid_argument("relevant_primes: bound must be positive");
  std::set<Integer> candidates;
  for (const auto& q : primes_up_to(bound)) candidates.insert(q);
  Integer steps_gcd = 0;
  for (const auto& p : S.progressions()) steps_gcd = gcd(steps_gcd, p.step);
  if (steps_gcd > 1)
    for (const auto& [q, e] : factor_integer(steps_gcd)) candidates.insert(q);
  std::vector<PrimeCount> out;
  for (const auto& q : candidates) {
    std::size_t n = residue_count(S, q);
    if (Integer(static_cast<unsigned long>(n)) <= bound) out.push_back({q, n});
  }
  return out;
}

}  // namespace intval
