// Acceptance suite: one PASS/FAIL line per criterion, with wall time.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "tamper.hpp"

using namespace intval;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

const SubsetSpec M2 = SubsetSpec::multiples(2);

std::string join(const std::set<std::size_t>& s) {
  return to_string(LengthMultiset{std::vector<std::size_t>(s.begin(), s.end())});
}

bool only_itself(const SubsetSpec& S, const IntValElement& e) {
  auto fs = factorizations(S, e);
  return fs.size() == 1 && fs[0].length() == 1 && fs[0].parts[0] == e.associate();
}

bool same_multiset(std::vector<Factorization> a, std::vector<Factorization> b) {
  if (a.size() != b.size()) return false;
  for (const auto& f : a)
    if (std::none_of(b.begin(), b.end(), [&](const Factorization& g) { return f.same_as(g); })) return false;
  return true;
}

Outcome prescribed_single() {
  auto c = construct_prescribed_lengths(2, {3});
  auto fs = factorizations(M2, c.H);
  bool ok = c.H == parse_element("x^4/16") && fs.size() == 1 && fs[0].length() == 4;
  return {ok, "H = " + to_string(c.H) + ", " + std::to_string(fs.size()) + " factorization(s), lengths " +
                  to_string(lengths_of(fs))};
}

Outcome prescribed(const std::vector<std::size_t>& m, std::size_t N, std::vector<long> primes, int degree,
                   std::vector<std::size_t> lengths) {
  auto c = construct_prescribed_lengths(2, m);
  auto fs = factorizations(M2, c.H);
  auto rep = verify_certificate(c);
  std::vector<long> got;
  for (const auto& r : c.primes) got.push_back(r.prime.get_si());
  bool ok = c.N == N && (primes.empty() || got == primes) && (degree < 0 || c.H.degree() == degree) &&
            lengths_of(fs).lengths == lengths && same_multiset(fs, c.predicted) && rep.passed();
  std::ostringstream out;
  out << "N = " << c.N << ", primes";
  for (long p : got) out << " " << p;
  out << ", deg H = " << c.H.degree() << ", " << fs.size() << " factorizations, lengths " << to_string(lengths_of(fs))
      << ", certificate " << (rep.passed() ? "verifies" : "FAILS") << " (" << rep.checks.size() << " checks)";
  return {ok, out.str()};
}

Outcome unbounded() {
  bool ok = true;
  std::ostringstream out;
  std::size_t prev = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    auto c = construct_unbounded(2, n);
    auto rep = verify_certificate(c);
    bool irr = is_irreducible(M2, c.H).irreducible && is_irreducible(M2, c.left).irreducible;
    for (const auto& l : c.linear_parts) irr = irr && is_irreducible(M2, l).irreducible;
    auto fs = factorizations(M2, parse_element("x/2") * c.H);
    std::set<std::size_t> ls;
    for (const auto& f : fs) ls.insert(f.length());
    std::size_t mx = *ls.rbegin();
    bool step = rep.passed() && irr && ls.count(n + 1) && mx >= n + 1 && mx > prev;
    ok = ok && step;
    prev = mx;
    out << (n > 1 ? "; " : "") << "n=" << n << ": " << (rep.passed() ? "verifies" : "FAILS") << ", L = " << join(ls)
        << ", max " << mx;
  }
  return {ok, out.str()};
}

Outcome fixdiv_oracle() {
  std::mt19937_64 rng(20240501);
  const SubsetSpec sets[] = {SubsetSpec::multiples(2), SubsetSpec::multiples(3), SubsetSpec::progression(1, 4),
                             SubsetSpec::integers()};
  std::size_t agree = 0, total = 500;
  std::string first_bad;
  for (std::size_t i = 0; i < total; ++i) {
    const auto& S = sets[rng() % 4];
    auto g = oracle::random_poly(rng, 6, 20);
    // s = r + m t for |t| <= 40 on each progression r + mZ of S
    Integer a = fixdiv(S, g), b = oracle::sampled_fixdiv(S, g, 40);
    if (a == b)
      ++agree;
    else if (first_bad.empty())
      first_bad = ", first mismatch " + to_string(S) + " " + to_string(g);
  }
  return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " agree" + first_bad};
}

Outcome irreducibility_cross_check() {
  std::size_t total = 0, agree = 0, oracle_agree = 0, irreducible = 0;
  std::vector<long> cur;
  std::function<void(long)> rec = [&](long from) {
    if (!cur.empty()) {
      auto g = oracle::from_roots(cur);
      Integer d = fixdiv(M2, g);
      auto e = IntValElement::from_fraction(g, d);
      bool irr = is_irreducible(M2, e).irreducible;
      ++total;
      irreducible += irr;
      agree += irr == only_itself(M2, e);
      oracle_agree += irr == oracle::roots_element_irreducible(M2, cur, 1, d);
    }
    if (cur.size() == 4) return;
    for (long r = from; r <= 6; ++r) {
      cur.push_back(r);
      rec(r);
      cur.pop_back();
    }
  };
  rec(-6);
  std::ostringstream out;
  out << agree << "/" << total << " agree with the enumeration (" << irreducible << " irreducible), " << oracle_agree
      << "/" << total << " with the brute-force split search";
  return {agree == total && oracle_agree == total, out.str()};
}

Outcome small_examples() {
  auto x = parse_element("x");
  auto f = parse_element("(x^3+2x^2+2x+2)/2");
  bool a = is_irreducible(SubsetSpec::integers(), x).irreducible;
  bool b = !is_irreducible(M2, x).irreducible && lengths(M2, x).as_set() == std::set<std::size_t>{2};
  bool c = is_member(M2, f) && !is_member(SubsetSpec::integers(), f) && !is_member(SubsetSpec::multiples(3), f);
  std::ostringstream out;
  out << "x irreducible over Z: " << (a ? "yes" : "no") << "; over 2Z reducible with L = "
      << to_string(lengths(M2, x)) << "; (x^3+2x^2+2x+2)/2 member of 2Z/Z/3Z: " << is_member(M2, f) << "/"
      << is_member(SubsetSpec::integers(), f) << "/" << is_member(SubsetSpec::multiples(3), f);
  return {a && b && c, out.str()};
}

Outcome block_laws() {
  std::vector<FiniteAbelianGroup> groups;
  for (long n = 2; n <= 6; ++n) groups.emplace_back(std::vector<long>{n});
  groups.emplace_back(std::vector<long>{2, 2});
  std::size_t pairs = 0, bound_fail = 0, literal_fail = 0, literal_short = 0, restated_fail = 0;
  std::ostringstream failing;
  for (const auto& G : groups) {
    std::size_t here = 0;
    auto atoms = nonzero_atoms(G);
    for (const auto& U : atoms)
      for (const auto& V : atoms) {
        auto r = lemma24_check(U, V);
        ++pairs;
        bound_fail += !r.bound_holds;
        restated_fail += !r.restated_holds();
        if (!r.holds()) {
          ++literal_fail;
          literal_short += r.both_length_two;
          if (here++ == 0) failing << " " << to_string(G) << ": U = " << to_string(U) << ", V = " << to_string(V) << ";";
        }
      }
  }
  std::size_t third = 0;
  for (long n = 2; n <= 5; ++n) third += lemma24_third_law_failures(FiniteAbelianGroup({n})).size();
  auto Z3 = FiniteAbelianGroup({3});
  auto U = parse_sequence(Z3, "[1, 1, 1]");
  auto ls = block_lengths(U * U.negated());
  bool example = ls == std::set<std::size_t>{2, 3};
  std::ostringstream out;
  out << pairs << " ordered atom pairs: bound fails " << bound_fail << ", equivalence fails " << literal_fail
      << " (" << literal_short << " of them with |U| = |V| = 2; first per group:" << failing.str()
      << " excluding |U| = |V| = 2 fails " << restated_fail << "); maximal partner law fails " << third << "; Z3 U(-U) L = " << join(ls);
  return {bound_fail == 0 && literal_fail == 0 && third == 0 && example, out.str()};
}

Outcome tamper_detection() {
  std::size_t total = 0, localized = 0;
  std::string first_bad;
  auto run = [&](const auto& cert) {
    for (const auto& m : tamper::mutants(cert)) {
      ++total;
      std::string why = tamper::check(m);
      if (why.empty())
        ++localized;
      else if (first_bad.empty())
        first_bad = "; " + why;
    }
  };
  run(construct_prescribed_lengths(2, {1, 1}));
  run(construct_prescribed_lengths(2, {1, 2}));
  for (std::size_t n = 1; n <= 3; ++n) run(construct_unbounded(2, n));
  // the same through the JSON form
  Json j = to_json(construct_prescribed_lengths(2, {1, 1}));
  j["e"] = Integer(Integer(j["e"].get<std::string>()) + 9).get_str();
  auto rep = verify_certificate(j);
  ++total;
  bool json_ok = !rep.passed() && std::any_of(rep.checks.begin(), rep.checks.end(), [](const Check& c) {
    return !c.passed && c.name.rfind("e cond(1)", 0) == 0;
  });
  localized += json_ok;
  return {localized == total, std::to_string(localized) + "/" + std::to_string(total) +
                                  " single-datum mutations rejected with a localized entry" + first_bad};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "prescribed lengths m=(3)", 1, prescribed_single},
      {2, "prescribed lengths m=(1,1)", 60, [] { return prescribed({1, 1}, 2, {3, 5}, 13, {2, 2}); }},
      {3, "prescribed lengths m=(1,2)", 600, [] { return prescribed({1, 2}, 4, {}, -1, {2, 3}); }},
      {4, "unbounded lengths n=1,2,3", 600, unbounded},
      {5, "fixdiv vs sampling oracle", 60, fixdiv_oracle},
      {6, "irreducibility vs factorizations", 300, irreducibility_cross_check},
      {7, "small membership/irreducibility examples", 1, small_examples},
      {8, "block monoid length laws", 120, block_laws},
      {9, "certificate tamper detection", 60, tamper_detection},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = secs < c.limit_seconds;
    bool pass = o.passed && in_time;
    failed += !pass;
    std::printf("%s %d %s: %s [%.3f s, limit %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(),
                secs, c.limit_seconds, in_time ? "" : ", TOO SLOW");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
