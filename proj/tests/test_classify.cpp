#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "skewsf/classify.hpp"

using namespace skewsf;

namespace {

constexpr Elem w = 2;

CentralPoly Y(std::vector<Elem> c) { return CentralPoly(std::move(c)); }

/// Monic irreducibles of degree d over F_p by root-free / factor-free
/// exhaustion with the schoolbook oracle; only used for d <= 3.
std::uint64_t brute_count_I(std::uint32_t p, unsigned d) {
  oracle::NaiveField F;
  F.p = p;
  F.base_order = p;
  std::uint64_t total = 1, count = 0;
  for (unsigned i = 0; i < d; ++i) total *= p;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    oracle::Poly f(d + 1);
    std::uint64_t x = idx;
    for (unsigned i = 0; i < d; ++i, x /= p) f[i] = static_cast<std::uint32_t>(x % p);
    f[d] = 1;
    if (!oracle::has_root(F, f)) ++count;
  }
  return count;
}

}  // namespace

TEST(EnumerateI, Examples) {
  auto F2 = base_field(2), F3 = base_field(3), F4 = base_field(4);
  EXPECT_EQ(enumerate_I(*F2, 2), (std::vector<CentralPoly>{Y({1, 1, 1})}));
  EXPECT_EQ(enumerate_I(*F3, 2), (std::vector<CentralPoly>{Y({1, 0, 1}), Y({2, 1, 1}), Y({2, 2, 1})}));
  EXPECT_EQ(enumerate_I(*F4, 2).size(), 6u);
  EXPECT_THROW(enumerate_I(*F2, 30, 1 << 10), bound_error);
}

TEST(CountN, MoebiusMatchesEnumeration) {
  EXPECT_EQ(count_N(2, 2), 1u);
  EXPECT_EQ(count_N(3, 2), 3u);
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) EXPECT_EQ(count_N(q, 1), q);
  for (std::uint64_t q : {2, 3, 4, 5, 8, 9})
    for (unsigned d = 1; d <= 4; ++d) ASSERT_EQ(count_N(q, d), enumerate_I(*base_field(q), d).size()) << q << "," << d;
  for (std::uint32_t p : {2, 3, 5, 7})
    for (unsigned d = 2; d <= 3; ++d) ASSERT_EQ(count_N(p, d), brute_count_I(p, d));
}

TEST(Theta, TwoComputationsAgree) {
  EXPECT_EQ(theta(2, 2), 2u);
  EXPECT_EQ(theta(2, 3), 2u);
  EXPECT_EQ(theta(2, 4), 4u);  // F_4 inside F_16
  EXPECT_EQ(theta(2, 6), 10u);  // F_4 and F_8 share F_2
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9})
    for (unsigned d = 1; d <= 8; ++d) ASSERT_EQ(theta(q, d), theta_inclusion_exclusion(q, d)) << q << "," << d;
}

TEST(GroupAction, Examples) {
  auto F3 = base_field(3);
  const CentralPoly f = Y({2, 1, 1});
  EXPECT_EQ(g_act(*F3, f, {1, 0}), f);
  EXPECT_EQ(g_act(*F3, f, {2, 0}), Y({2, 2, 1}));
  EXPECT_EQ(g_act(*F3, Y({1, 0, 1}), {2, 0}), Y({1, 0, 1}));
  EXPECT_THROW(g_act(*F3, f, {0, 0}), precondition_error);
  EXPECT_THROW(g_act(*F3, Y({2, 1, 2}), {1, 0}), precondition_error);
}

TEST(GroupAction, AxiomsAndClosureExhaustive) {
  for (std::uint64_t q : {2, 3, 4, 5, 8, 9}) {
    auto F = base_field(q);
    const auto G = group_elements(*F);
    EXPECT_EQ(G.size(), F->prime_degree() * (q - 1));
    for (unsigned d = 1; d <= 3; ++d) {
      const auto I = enumerate_I(*F, d);
      const std::set<CentralPoly> Iset(I.begin(), I.end());
      for (const auto& f : I) {
        ASSERT_EQ(g_act(*F, f, {1, 0}), f);
        for (const auto& a : G) {
          const CentralPoly fa = g_act(*F, f, a);
          ASSERT_TRUE(Iset.count(fa)) << q << "," << d;
          for (const auto& b : G) ASSERT_EQ(g_act(*F, fa, b), g_act(*F, f, then(*F, a, b)));
        }
      }
    }
  }
}

TEST(Orbits, PaperValues) {
  const std::uint64_t expect[] = {1, 2, 1, 3};
  const std::uint64_t qs[] = {2, 3, 4, 5};
  for (int i = 0; i < 4; ++i) EXPECT_EQ(orbit_decomposition(qs[i], 2).M, expect[i]) << qs[i];
  const auto r = orbit_decomposition(3, 3);
  EXPECT_EQ(r.N, 8u);
  EXPECT_EQ(r.M, 4u);
}

TEST(Orbits, PrimeQCoprimeDGivesFreeAction) {
  for (std::uint64_t q : {2, 3, 5, 7})
    for (unsigned d = 2; d <= 5; ++d) {
      if (std::gcd<std::uint64_t>(q - 1, d) != 1 || std::pow(q, d) > 1e5) continue;
      const auto r = orbit_decomposition(q, d);
      EXPECT_EQ(r.M * (q - 1), r.N) << q << "," << d;
    }
}

TEST(Orbits, SizesDivideGroupOrderAndSumToN) {
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9})
    for (unsigned d = 1; d <= 3; ++d) {
      const auto r = orbit_decomposition(q, d);
      std::uint64_t sum = 0;
      for (const auto& o : r.orbits) {
        ASSERT_EQ((r.h * (q - 1)) % o.size(), 0u);
        ASSERT_EQ(o.members.front(), o.representative);
        ASSERT_TRUE(std::is_sorted(o.members.begin(), o.members.end(), [&](const CentralPoly& a, const CentralPoly& b) {
          const auto& F = *base_field(q);
          return upoly::monic_index(F, a) < upoly::monic_index(F, b);
        }));
        sum += o.size();
      }
      ASSERT_EQ(sum, r.N);
      ASSERT_EQ(r.M, r.orbits.size());
      ASSERT_TRUE(r.lower.le(r.M));
      ASSERT_TRUE(r.upper.ge(r.M));
    }
}

TEST(Orbits, LinearCaseHoldsBounds) {
  const auto r = orbit_decomposition(4, 1);
  EXPECT_EQ(r.N, 4u);
  EXPECT_EQ(r.theta, 0u);
  EXPECT_TRUE(r.lower.le(r.M) && r.upper.ge(r.M));
}

TEST(IrreducibleDivisor, Examples) {
  const SkewRing R = default_ring(2, 2);
  const SkewPoly f = irreducible_divisor(Y({1, 1, 1}), R);
  EXPECT_EQ(f.degree(), 2);
  EXPECT_TRUE(R.mod_right(R.central(Y({1, 1, 1})), f).is_zero());
  EXPECT_TRUE(is_irreducible(R, f));
  // t^2 + w t + 1 is a divisor too
  EXPECT_TRUE(R.mod_right(R.central(Y({1, 1, 1})), SkewPoly({1, w, 1})).is_zero());
  EXPECT_THROW(irreducible_divisor(Y({0, 1}), R), precondition_error);
  EXPECT_THROW(irreducible_divisor(Y({1, 0, 1}), R), precondition_error);
}

TEST(IrreducibleDivisor, RoundTripsThroughMzlm) {
  for (auto [q, n, d] : {std::array<unsigned, 3>{3, 2, 2}, {2, 2, 3}, {4, 2, 2}, {2, 3, 2}, {5, 2, 2}, {2, 2, 4}}) {
    const SkewRing R = default_ring(q, n);
    for (const auto& hh : enumerate_I(R.tower().Fq(), d)) {
      const SkewPoly f = irreducible_divisor(hh, R);
      ASSERT_EQ(f.degree(), static_cast<int>(d));
      ASSERT_TRUE(is_irreducible(R, f));
      ASSERT_EQ(mzlm(R, f), hh);
    }
  }
}

TEST(ClassRepresentatives, CountsAndAxioms) {
  const std::pair<unsigned, std::size_t> cases[] = {{2, 1}, {3, 2}, {5, 3}};
  for (auto [q, M] : cases) {
    const SkewRing R = default_ring(q, 2);
    const auto reps = class_representatives(R, 2);
    ASSERT_EQ(reps.size(), M) << q;
    for (const auto& r : reps) {
      EXPECT_EQ(r.semifield.order(), std::uint64_t{q} * q * q * q);
      EXPECT_TRUE(check_axioms(r.semifield).all_pass());
      EXPECT_EQ(mzlm(R, r.f), r.hhat);
      EXPECT_EQ(r.semifield.element(r.f_index), SkewPoly(std::vector<Elem>(r.f.c.begin(), r.f.c.end() - 1)));
      for (Nucleus which : {Nucleus::left, Nucleus::middle, Nucleus::right, Nucleus::centre})
        EXPECT_EQ(nucleus(r.semifield, which).size(), nucleus_theory(r.semifield, which).size());
    }
  }
  EXPECT_THROW(class_representatives(default_ring(2, 2), 1), precondition_error);
}

TEST(Odoni, FormulaMatchesExhaustiveCount) {
  EXPECT_EQ(odoni_formula(2, 2, 2), 5u);
  EXPECT_EQ(odoni_formula(3, 2, 2), 30u);
  EXPECT_EQ(odoni_formula(2, 3, 2), 21u);
  for (auto [q, n, d] : {std::array<unsigned, 3>{2, 2, 2}, {3, 2, 2}, {2, 3, 2}, {2, 2, 3}, {4, 2, 2}, {2, 2, 4}}) {
    const auto c = odoni_count(default_ring(q, n), d);
    ASSERT_TRUE(c.exhaustive.has_value());
    EXPECT_TRUE(c.matches()) << q << "," << n << "," << d << ": " << c.formula << " vs " << *c.exhaustive;
  }
  const auto big = odoni_count(default_ring(5, 2), 4);
  EXPECT_FALSE(big.exhaustive.has_value());
  EXPECT_EQ(big.formula, odoni_formula(5, 2, 4));
}

TEST(Odoni, ExhaustiveCountAgreesWithBruteDivisorOracle) {
  const SkewRing R = default_ring(2, 2);
  oracle::NaiveTower N(R.tower().desc());
  std::uint64_t count = 0;
  for (std::uint64_t idx = 0; idx < 16; ++idx) {
    oracle::Poly f = oracle::from_index(idx, 2, 4);
    f.resize(3, 0);
    f[2] = 1;
    count += !oracle::brute_right_divisor(N, 1, f).has_value();
  }
  EXPECT_EQ(count, 5u);
}

TEST(Isotopy, SameOrbitSemifieldsAreConnected) {
  for (unsigned q : {3u, 4u}) {
    const SkewRing R = default_ring(q, 2);
    const Field& Fq = R.tower().Fq();
    const auto irr = skew_irreducibles(R, 2);
    for (std::size_t i = 0; i < irr.size(); i += 13) {
      const Semifield Sf(R, irr[i]);
      const CentralPoly hf = mzlm(R, irr[i]);
      for (const auto& g : group_elements(Fq)) {
        const CentralPoly target = g_act(Fq, hf, g);
        auto it = std::find_if(irr.begin(), irr.end(), [&](const SkewPoly& x) { return mzlm(R, x) == target; });
        ASSERT_NE(it, irr.end());
        const Semifield Sg(R, *it);
        const auto chk = verify_triple(Sf, Sg, isotopism_from_orbit(Sf, Sg, g));
        ASSERT_TRUE(chk.ok);
      }
    }
  }
}

TEST(Spreadset, ReflexiveAndFieldIsNotEquivalent) {
  const SkewRing R = default_ring(2, 2);
  const auto irr = skew_irreducibles(R, 2);
  const Semifield S(R, irr.front());
  const auto self = spreadset_equivalence(S, S);
  ASSERT_EQ(self.status, Equivalence::equivalent);
  EXPECT_EQ(*self.H, Matrix::identity(4));
  EXPECT_EQ(*self.G, Matrix::identity(4));

  const SkewRing F16 = default_ring(2, 4);
  const Semifield field(F16, SkewPoly({0, 1}));
  const auto r = spreadset_equivalence(S, field);
  EXPECT_EQ(r.status, Equivalence::not_equivalent);
  EXPECT_EQ(r.candidates, 0u);
}

TEST(Spreadset, AllOrder16SemifieldsAreEquivalentWithVerifiedWitnesses) {
  const SkewRing R = default_ring(2, 2);
  const auto irr = skew_irreducibles(R, 2);
  ASSERT_EQ(irr.size(), 5u);
  const Semifield S0(R, irr.front());
  for (const auto& g : irr) {
    const Semifield Sg(R, g);
    const auto fwd = spreadset_equivalence(S0, Sg);
    ASSERT_EQ(fwd.status, Equivalence::equivalent);
    const auto chk = verify_triple(S0, Sg, triple_from_spreadset(S0, Sg, *fwd.H, *fwd.G));
    ASSERT_TRUE(chk.ok);
    const auto back = spreadset_equivalence(Sg, S0);
    ASSERT_EQ(back.status, Equivalence::equivalent);
  }
}

TEST(Spreadset, SizeBound) {
  const SkewRing R = default_ring(3, 2);
  const Semifield S(R, skew_irreducibles(R, 2).front());
  EXPECT_THROW(spreadset_equivalence(S, S), bound_error);
  SpreadsetOptions opt;
  opt.long_mode = true;
  opt.budget_ms = 50;
  const Semifield S2(R, skew_irreducibles(R, 2).back());
  const auto r = spreadset_equivalence(S, S2, opt);
  EXPECT_NE(r.status, Equivalence::not_equivalent);
}

TEST(Bounds, Examples) {
  const auto a = bounds_report(2, 2, 2);
  EXPECT_EQ(a.M, 1u);
  EXPECT_EQ(a.dempwolff, 1u);
  EXPECT_EQ(a.kantor_liebler, 3u);
  EXPECT_TRUE(a.chain_ok);
  const auto b = bounds_report(3, 2, 2);
  EXPECT_EQ(b.M, 2u);
  EXPECT_EQ(b.dempwolff, 3u);
  EXPECT_EQ(b.kantor_liebler, 8u);
  EXPECT_TRUE(b.chain_ok);
  const auto c = bounds_report(2, 2, 3);
  EXPECT_EQ(c.dempwolff, 2u);
  EXPECT_TRUE(c.chain_ok);
  EXPECT_EQ(b.lower, Fraction::make(6, 2 * 2 * 1 * 3 * 2));
  EXPECT_DOUBLE_EQ(a.total, 2 * 2 * 4.0 * 1.0);
  EXPECT_EQ(bounds_report(2, 3, 2).phi_n_half_M, Fraction::make(1, 1));
}

TEST(Bounds, ChainHoldsOnAGrid) {
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9})
    for (unsigned n : {2u, 3u})
      for (unsigned d = 1; d <= 4; ++d) ASSERT_TRUE(bounds_report(q, n, d).chain_ok) << q << "," << n << "," << d;
}
