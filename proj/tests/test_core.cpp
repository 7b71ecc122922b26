#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace intval;

namespace {

IntPolynomial P(const char* s) { return parse_polynomial(s); }

}  // namespace

// integers, valuations, CRT

TEST(Integer, Valuation) {
  EXPECT_EQ(valuation(2, 144), 4u);
  EXPECT_EQ(valuation(3, 144), 2u);
  EXPECT_EQ(valuation(5, 1), 0u);
  EXPECT_FALSE(valuation(7, 0).has_value());
  EXPECT_THROW(valuation(1, 5), std::invalid_argument);
}

TEST(Integer, ValuationIsAdditive) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> d(1, 100000);
  for (int i = 0; i < 300; ++i) {
    Integer a = d(rng), b = d(rng);
    for (long q : {2, 3, 5, 7}) EXPECT_EQ(*valuation(q, a * b), *valuation(q, a) + *valuation(q, b));
  }
}

TEST(Integer, FactorInteger) {
  auto f = factor_integer(Integer("600851475143"));
  ASSERT_EQ(f.size(), 4u);
  EXPECT_EQ(f.back().first, 6857);
  Integer big = Integer("1000000007") * Integer("998244353");
  auto g = factor_integer(big);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0].first, Integer("998244353"));
}

TEST(Crt, SolvesAndReplays) {
  CongruenceSystem sys;
  sys.require(1, 3).require(2, 5);
  EXPECT_EQ(crt_solve(sys, 100), 7);
  sys.exclude(7, 30);
  EXPECT_EQ(crt_solve(sys, 100), 22);
  CongruenceSystem mixed;
  mixed.require(0, 3).require(3, 4);
  mixed.exclude(3, 9);
  EXPECT_EQ(crt_solve(mixed, 100), 15);
}

TEST(Crt, SkipGivesLaterSolutions) {
  CongruenceSystem sys;
  sys.require(2, 7);
  EXPECT_EQ(crt_solve(sys, 10, 0), 2);
  EXPECT_EQ(crt_solve(sys, 10, 3), 23);
}

TEST(Crt, Errors) {
  CongruenceSystem bad;
  bad.require(1, 4).require(3, 6);
  EXPECT_THROW(crt_solve(bad, 10), std::invalid_argument);
  CongruenceSystem infeasible;
  infeasible.require(0, 2).exclude(0, 2);
  EXPECT_THROW(crt_solve(infeasible, 50), CrtInfeasible);
  EXPECT_THROW(crt_solve(infeasible, 50), BudgetExhausted);
}

TEST(Crt, RandomReplay) {
  std::mt19937_64 rng(5);
  const long mods[] = {3, 4, 5, 7, 11, 13};
  for (int it = 0; it < 200; ++it) {
    CongruenceSystem sys;
    for (long m : mods)
      if (rng() % 2) sys.require(Integer(static_cast<long>(rng() % 1000)), m);
    sys.exclude(Integer(static_cast<long>(rng() % 9)), 9);
    Integer x = crt_solve(sys, 1000);
    EXPECT_TRUE(sys.satisfied_by(x));
    EXPECT_GE(x, 0);
    for (Integer y = 0; y < x; ++y) EXPECT_FALSE(sys.satisfied_by(y));
  }
}

// polynomials

TEST(Polynomial, EvalAndArithmetic) {
  EXPECT_EQ(P("x^2 - 1")(0), -1);
  EXPECT_EQ(P("x")(7), 7);
  EXPECT_EQ(P("x^3 + 2*x^2 + 2*x + 2")(2), 22);
  EXPECT_EQ(P("x - 1") * P("x + 1"), P("x^2 - 1"));
  EXPECT_EQ(P("(x+1)^3"), P("x^3 + 3x^2 + 3x + 1"));
  EXPECT_TRUE(P("0").is_zero());
  EXPECT_THROW(P("0").leading(), std::domain_error);
}

TEST(Polynomial, ContentSplit) {
  auto s = content_split(P("-2*x + 4"));
  EXPECT_EQ(s.unit, -1);
  EXPECT_EQ(s.content, 2);
  EXPECT_EQ(s.primitive, P("x - 2"));
  EXPECT_EQ(content(P("6x^2 + 9")), 3);
}

TEST(Polynomial, GaussLemma) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    auto g = oracle::random_poly(rng, 5, 30), h = oracle::random_poly(rng, 5, 30);
    EXPECT_EQ(content(g * h), content(g) * content(h));
    auto s = content_split(g);
    EXPECT_EQ(IntPolynomial::constant(s.content * s.unit) * s.primitive, g);
  }
}

TEST(Polynomial, DivideExact) {
  EXPECT_EQ(*divide_exact(P("x^3 - 1"), P("x - 1")), P("x^2 + x + 1"));
  EXPECT_FALSE(divide_exact(P("x^2 + 1"), P("x - 1")).has_value());
}

TEST(Polynomial, TextRoundTrip) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    auto g = oracle::random_poly(rng, 6, 50);
    EXPECT_EQ(parse_polynomial(to_string(g)), g);
  }
  EXPECT_EQ(to_string(P("x^3+2*x^2-x+2")), "x^3 + 2*x^2 - x + 2");
}

TEST(Polynomial, ParseErrorsCarryPosition) {
  try {
    parse_polynomial("x^^2");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 2u);
    EXPECT_NE(std::string(e.what()).find("position 2"), std::string::npos);
  }
  EXPECT_THROW(parse_polynomial(""), ParseError);
  EXPECT_THROW(parse_polynomial("x + "), ParseError);
  EXPECT_THROW(parse_polynomial("(x+1"), ParseError);
  EXPECT_THROW(parse_polynomial("y"), ParseError);
}

// factoring over Q

TEST(QxFactor, Examples) {
  auto f = factor_zx(P("x^2 - 1"));
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0].first, P("x - 1"));
  EXPECT_EQ(f.factors[1].first, P("x + 1"));

  auto g = factor_zx(P("6x"));
  EXPECT_EQ(g.unit, 1);
  EXPECT_EQ(g.constant, 6);
  ASSERT_EQ(g.factors.size(), 1u);
  EXPECT_EQ(g.factors[0].first, P("x"));

  auto h = factor_zx(P("x^4 + 4"));
  ASSERT_EQ(h.factors.size(), 2u);
  EXPECT_EQ(h.factors[0].first, P("x^2 - 2x + 2"));
  EXPECT_EQ(h.factors[1].first, P("x^2 + 2x + 2"));

  auto k = factor_zx(P("-3*(x-1)^3*(x^2+1)"));
  EXPECT_EQ(k.unit, -1);
  EXPECT_EQ(k.constant, 3);
  ASSERT_EQ(k.factors.size(), 2u);
  EXPECT_EQ(k.factors[0].second, 3u);
  EXPECT_EQ(k.expand(), P("-3*(x-1)^3*(x^2+1)"));
}

TEST(QxFactor, Irreducibility) {
  EXPECT_TRUE(is_irreducible_qx(P("x^2 + 1")));
  EXPECT_FALSE(is_irreducible_qx(P("x^2 - 1")));
  EXPECT_TRUE(is_irreducible_qx(P("x^3 + 2x^2 + 2x + 2")));
  EXPECT_FALSE(is_irreducible_qx(P("x^4 + 4")));
  EXPECT_FALSE(is_irreducible_qx(P("x^8 + x^7 + x^6 + x^5 + x^4 + x^3 + x^2 + x + 1")));
  EXPECT_TRUE(is_irreducible_qx(P("x^6 + x^5 + x^4 + x^3 + x^2 + x + 1")));
  EXPECT_THROW(is_irreducible_qx(P("5")), std::invalid_argument);
}

TEST(QxFactor, SwinnertonDyerStyle) {
  // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime.
  EXPECT_TRUE(is_irreducible_qx(P("x^4 - 10x^2 + 1")));
  auto f = factor_zx(P("(x^4 - 10x^2 + 1)*(x^2 - 2)*(x^3 - x - 1)"));
  EXPECT_EQ(f.factor_count(), 3u);
}

TEST(QxFactor, HigherDegreeProducts) {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 40; ++it) {
    std::vector<IntPolynomial> parts;
    IntPolynomial g{1};
    for (int j = 0; j < 4; ++j) {
      IntPolynomial f = IntPolynomial::monomial(1, 2 + rng() % 4);
      for (int i = 0; i < f.degree(); ++i) f += IntPolynomial::monomial(Integer(static_cast<long>(rng() % 41) - 20), i);
      g *= f;
    }
    auto qf = factor_zx(g);
    EXPECT_EQ(qf.expand(), g);
    for (const auto& [f, e] : qf.factors) {
      EXPECT_TRUE(is_irreducible_qx(f));
      EXPECT_TRUE(f.is_monic());
    }
    EXPECT_GE(qf.factor_count(), 4u);
  }
}

TEST(QxFactor, AgreesWithKronecker) {
  std::mt19937_64 rng(2024);
  int checked = 0;
  while (checked < 250) {
    auto g = oracle::random_poly(rng, 6, 20);
    if (g.degree() < 1) continue;
    // Random products so that reducible inputs are common.
    if (rng() % 2 && g.degree() <= 3) g *= oracle::random_poly(rng, 3, 6);
    if (g.degree() < 1 || g.degree() > 6) continue;
    auto qf = factor_zx(g);
    EXPECT_EQ(qf.expand(), g) << to_string(g);
    std::vector<int> degs;
    for (const auto& [f, e] : qf.factors)
      for (std::size_t i = 0; i < e; ++i) degs.push_back(f.degree());
    std::sort(degs.begin(), degs.end());
    EXPECT_EQ(degs, oracle::kronecker_degrees(primitive_part(g))) << to_string(g);
    ++checked;
  }
}

// subsets

TEST(Subset, ParseAndCanonicalize) {
  EXPECT_EQ(to_string(parse_subset("Z")), "Z");
  EXPECT_EQ(to_string(parse_subset("2Z")), "2Z");
  EXPECT_EQ(to_string(parse_subset("5+4Z")), "1+4Z");
  EXPECT_EQ(to_string(parse_subset("-3+4Z")), "1+4Z");
  EXPECT_EQ(parse_subset("0+2Z,1+2Z"), parse_subset("Z"));
  EXPECT_EQ(parse_subset("1+4Z,3+4Z"), parse_subset("1+2Z"));
  EXPECT_EQ(parse_subset("2Z,4Z"), parse_subset("2Z"));
  EXPECT_THROW(parse_subset("0Z"), ParseError);
  EXPECT_THROW(parse_subset("2Y"), ParseError);
  EXPECT_THROW(parse_subset(""), ParseError);
}

TEST(Subset, CanonicalizationIdempotentAndSetDetermined) {
  std::mt19937_64 rng(8);
  for (int it = 0; it < 200; ++it) {
    std::vector<Progression> ps;
    int n = 1 + rng() % 3;
    for (int i = 0; i < n; ++i) {
      Integer step = 1 + static_cast<long>(rng() % 12);
      ps.push_back({Integer(static_cast<long>(rng() % 50)), step});
    }
    SubsetSpec S(ps);
    EXPECT_EQ(SubsetSpec(S.progressions()), S);
    EXPECT_EQ(parse_subset(to_string(S)), S);
    for (long s = -60; s <= 60; ++s) {
      bool in = std::any_of(ps.begin(), ps.end(), [&](const Progression& p) { return p.contains(s); });
      EXPECT_EQ(S.contains(s), in);
    }
    // A respelling of the same set: split each progression into two.
    std::vector<Progression> split;
    for (const auto& p : S.progressions()) {
      split.push_back({p.offset, 2 * p.step});
      split.push_back({p.offset + p.step, 2 * p.step});
    }
    EXPECT_EQ(SubsetSpec(split), S);
  }
}

TEST(Subset, Residues) {
  auto S = SubsetSpec::multiples(2);
  EXPECT_EQ(residues_mod(S, 3, 1).residues, (std::vector<Integer>{0, 1, 2}));
  EXPECT_EQ(residues_mod(S, 2, 1).residues, (std::vector<Integer>{0}));
  EXPECT_EQ(residues_mod(S, 2, 2).residues, (std::vector<Integer>{0, 2}));
  EXPECT_EQ(residues_mod(S, 2, 2).modulus, 4);
}

TEST(Subset, ResiduesMatchSampling) {
  for (const char* text : {"Z", "2Z", "3Z", "1+4Z", "1+4Z,3+8Z", "6Z,2+9Z"}) {
    auto S = parse_subset(text);
    for (long q : {2, 3, 5})
      for (unsigned long k = 1; k <= 3; ++k) {
        auto rd = residues_mod(S, q, k);
        auto sampled = oracle::sampled_residues(S, q, k);
        EXPECT_EQ(std::set<Integer>(rd.residues.begin(), rd.residues.end()), sampled) << text << " " << q << "^" << k;
        if (k > 1) {
          std::set<Integer> projected;
          Integer prev = pow(Integer(q), k - 1);
          for (const auto& r : rd.residues) projected.insert(mod(r, prev));
          auto lower = residues_mod(S, q, k - 1).residues;
          EXPECT_EQ(projected, std::set<Integer>(lower.begin(), lower.end()));
        }
      }
  }
}

TEST(Subset, CompleteResidueSystem) {
  auto S = SubsetSpec::multiples(2);
  EXPECT_EQ(complete_residue_system(S, 3), (std::vector<Integer>{0, 2, 4}));
  EXPECT_EQ(complete_residue_system(S, 2), (std::vector<Integer>{0}));
  CongruenceSystem first, second;
  first.require(0, 3);
  second.require(2, 3);
  EXPECT_EQ(complete_residue_system(S, 3, {first, second}), (std::vector<Integer>{0, 2, 4}));
  CongruenceSystem impossible;
  impossible.require(1, 2);
  EXPECT_THROW(complete_residue_system(S, 3, {impossible}), CrtInfeasible);

  for (const char* text : {"Z", "2Z", "1+4Z", "3Z,1+5Z"}) {
    auto T = parse_subset(text);
    for (long q : {2, 3, 5, 7}) {
      auto sys = complete_residue_system(T, q);
      std::set<Integer> classes;
      for (const auto& s : sys) {
        EXPECT_TRUE(T.contains(s));
        classes.insert(mod(s, q));
      }
      EXPECT_EQ(classes.size(), sys.size());
      auto rd = residues_mod(T, q, 1).residues;
      EXPECT_EQ(classes, std::set<Integer>(rd.begin(), rd.end()));
    }
  }
}

TEST(Subset, RelevantPrimes) {
  using V = std::vector<PrimeCount>;
  EXPECT_EQ(relevant_primes(SubsetSpec::multiples(2), 5), (V{{2, 1}, {3, 3}, {5, 5}}));
  EXPECT_EQ(relevant_primes(SubsetSpec::integers(), 3), (V{{2, 2}, {3, 3}}));
  EXPECT_EQ(relevant_primes(parse_subset("1+4Z"), 5), (V{{2, 1}, {3, 3}, {5, 5}}));
  EXPECT_EQ(relevant_primes(SubsetSpec::multiples(101), 2), (V{{2, 2}, {101, 1}}));

  for (const char* text : {"2Z", "3Z", "1+4Z", "Z", "7Z,2+14Z"}) {
    auto S = parse_subset(text);
    for (long b = 1; b < 12; ++b) {
      auto small = relevant_primes(S, b), large = relevant_primes(S, b + 3);
      for (const auto& pc : small) EXPECT_NE(std::find(large.begin(), large.end(), pc), large.end());
      // completeness against a direct scan of primes below 200
      for (long q = 2; q < 200; ++q) {
        if (!oracle::trial_prime(q)) continue;
        bool listed = std::any_of(small.begin(), small.end(), [&](const PrimeCount& pc) { return pc.prime == q; });
        EXPECT_EQ(listed, oracle::sampled_residues(S, q, 1).size() <= static_cast<std::size_t>(b)) << text << " " << q;
      }
    }
  }
}
