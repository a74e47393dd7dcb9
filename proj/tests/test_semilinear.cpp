#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "skewsf/classify.hpp"
#include "skewsf/semilinear.hpp"

using namespace skewsf;

namespace {

constexpr Elem w = 2, w2 = 3;

SkewPoly P(std::vector<Elem> c) { return SkewPoly(std::move(c)); }

const SkewRing& F4() {
  static const SkewRing R = default_ring(2, 2);
  return R;
}

Vec coords(const SkewPoly& a, unsigned d) {
  Vec v(d, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) v[i] = a.c[i];
  return v;
}

Vec vec_from_index(const Tower& T, unsigned d, std::uint64_t idx) {
  Vec v(d);
  for (unsigned i = 0; i < d; ++i, idx /= T.Q()) v[i] = static_cast<Elem>(idx % T.Q());
  return v;
}

std::vector<SkewPoly> monic_quadratics(const SkewRing& R) {
  std::vector<SkewPoly> out;
  const Elem Q = R.tower().Q();
  for (Elem a = 0; a < Q; ++a)
    for (Elem b = 0; b < Q; ++b) out.push_back(P({a, b, 1}));
  return out;
}

}  // namespace

TEST(Companion, ExampleOverF4) {
  const auto T = companion_of(F4(), P({1, w, 1}));
  Matrix A(2, 2);
  A(0, 1) = 1;
  A(1, 0) = 1;
  A(1, 1) = w;
  EXPECT_EQ(T.A, A);
  EXPECT_EQ(T.sigma, AutoPower{1});
}

TEST(Companion, TdIsSingular) {
  const auto T = companion_of(F4(), P({0, 0, 1}));
  EXPECT_FALSE(is_invertible(T));
  EXPECT_THROW(is_irreducible_semilinear(T), precondition_error);
  EXPECT_THROW(companion_of(F4(), P({1, 1, 2})), precondition_error);
}

TEST(Companion, ActsAsLeftMultiplicationByT) {
  for (auto [q, n, d] : {std::array<unsigned, 3>{2, 2, 2}, {3, 2, 2}, {2, 2, 3}, {2, 3, 2}}) {
    const SkewRing R = default_ring(q, n);
    for (const auto& f : skew_irreducibles(R, d)) {
      const Semifield S(R, f);
      const auto T = companion_of(R, f);
      for (std::uint64_t b = 0; b < S.order(); ++b)
        ASSERT_EQ(skewsf::apply(T, coords(S.element(b), d)), coords(S.mul(P({0, 1}), S.element(b)), d));
    }
  }
}

TEST(Apply, ZeroShiftAndSemilinearity) {
  const SkewRing R = default_ring(3, 2);
  const Tower& Tw = R.tower();
  const auto T = companion_of(R, skew_irreducibles(R, 3).front());
  EXPECT_EQ(skewsf::apply(T, Vec(3, 0)), Vec(3, 0));
  EXPECT_EQ(skewsf::apply(T, Vec{1, 0, 0}), (Vec{0, 1, 0}));
  EXPECT_EQ(skewsf::apply(T, Vec{0, 1, 0}), (Vec{0, 0, 1}));
  EXPECT_THROW(skewsf::apply(T, Vec{1, 0}), precondition_error);
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    const Vec u = vec_from_index(Tw, 3, rng() % 729), v = vec_from_index(Tw, 3, rng() % 729);
    const Elem alpha = static_cast<Elem>(rng() % Tw.Q());
    Vec sum(3), av(3);
    for (unsigned i = 0; i < 3; ++i) {
      sum[i] = Tw.K().add(u[i], v[i]);
      av[i] = Tw.K().mul(alpha, u[i]);
    }
    Vec tu = skewsf::apply(T, u), tv = skewsf::apply(T, v), tsum = skewsf::apply(T, sum), tav = skewsf::apply(T, av);
    for (unsigned i = 0; i < 3; ++i) {
      ASSERT_EQ(tsum[i], Tw.K().add(tu[i], tv[i]));
      ASSERT_EQ(tav[i], Tw.K().mul(Tw.frobenius(alpha, AutoPower{1}), tu[i]));
    }
  }
}

TEST(Inverse, UndoesTheMap) {
  const SkewRing R = default_ring(2, 3);
  const auto T = companion_of(R, skew_irreducibles(R, 2).back());
  const auto Ti = inverse(T);
  for (std::uint64_t i = 0; i < 64 * 64; i += 7) {
    const Vec v = vec_from_index(R.tower(), 2, i);
    ASSERT_EQ(skewsf::apply(Ti, apply(T, v)), v);
    ASSERT_EQ(skewsf::apply(T, apply(Ti, v)), v);
  }
}

TEST(IrreducibleSemilinear, Examples) {
  EXPECT_TRUE(is_irreducible_semilinear(companion_of(F4(), P({1, w, 1}))));
  // (t + w + 1)(t + w) expanded in F_4[t; sigma]
  const SkewPoly red = F4().mul(P({w2, 1}), P({w, 1}));
  EXPECT_FALSE(is_irreducible(F4(), red));
  EXPECT_FALSE(is_irreducible_semilinear(companion_of(F4(), red)));
  const SemilinearMap one{F4().tower_ptr(), Matrix::identity(1), AutoPower{1}};
  EXPECT_TRUE(is_irreducible_semilinear(one));
}

TEST(IrreducibleSemilinear, AgreesWithSkewIrreducibility) {
  for (auto [q, n] : {std::array<unsigned, 2>{2, 2}, {3, 2}, {2, 3}}) {
    const SkewRing R = default_ring(q, n);
    for (const auto& f : monic_quadratics(R)) {
      if (f.c[0] == 0) continue;  // singular companion
      ASSERT_EQ(is_irreducible_semilinear(companion_of(R, f)), is_irreducible(R, f)) << q << "," << n;
    }
  }
}

TEST(CyclicMul, UnitActsAsIdentityAndMatchesSf) {
  for (const auto& f : skew_irreducibles(F4(), 2)) {
    const Semifield S(F4(), f);
    const auto T = companion_of(F4(), f);
    for (std::uint64_t a = 0; a < 16; ++a)
      for (std::uint64_t b = 0; b < 16; ++b) {
        const Vec av = coords(S.element(a), 2), bv = coords(S.element(b), 2);
        if (a == 1) ASSERT_EQ(cyclic_mul(T, av, bv), bv);
        ASSERT_EQ(cyclic_mul(T, av, bv), coords(S.mul(S.element(a), S.element(b)), 2));
      }
  }
}

TEST(CyclicMul, LeftMultiplicationIsAPolynomialInLt) {
  const SkewRing R = default_ring(2, 2);
  for (const auto& f : skew_irreducibles(R, 3)) {
    const Semifield S(R, f);
    const auto T = companion_of(R, f);
    for (std::uint64_t a = 0; a < S.order(); ++a)
      ASSERT_EQ(cyclic_left_mult_fp(S, T, S.element(a)), S.left_mult_fp(S.element(a)));
  }
}

TEST(ConjugateToCompanion, CompanionIsAFixedPoint) {
  for (const auto& f : skew_irreducibles(F4(), 2)) {
    const auto cf = conjugate_to_companion(F4(), companion_of(F4(), f));
    EXPECT_EQ(cf.phi, Matrix::identity(2));
    EXPECT_EQ(cf.f, f);
  }
}

TEST(ConjugateToCompanion, RandomConjugatesRoundTrip) {
  for (auto [q, n, d] : {std::array<unsigned, 3>{2, 2, 2}, {3, 2, 2}, {2, 2, 3}}) {
    const SkewRing R = default_ring(q, n);
    std::mt19937_64 rng(q + 10 * d);
    const auto irr = skew_irreducibles(R, d);
    for (int k = 0; k < 20; ++k) {
      const SkewPoly& f = irr[rng() % irr.size()];
      const auto T = conjugate(companion_of(R, f), random_invertible(R.tower(), d, rng));
      ASSERT_TRUE(is_irreducible_semilinear(T));
      const auto cf = conjugate_to_companion(R, T);
      ASSERT_TRUE(intertwines(T, cf.phi, companion_of(R, cf.f)));
      ASSERT_TRUE(is_irreducible(R, cf.f));
      ASSERT_EQ(mzlm(R, cf.f), mzlm(R, f));
      ASSERT_TRUE(similar_witness(R, cf.f, f).has_value());
    }
  }
}

TEST(ConjugateToCompanion, RejectsReducibleMaps) {
  const SemilinearMap T{F4().tower_ptr(), Matrix::identity(2), AutoPower{1}};
  EXPECT_THROW(conjugate_to_companion(F4(), T), precondition_error);
}

TEST(MinPoly, ExampleAndMzlm) {
  EXPECT_EQ(min_poly_T_pow_n(companion_of(F4(), P({1, w, 1}))), CentralPoly(std::vector<Elem>{1, 1, 1}));
  for (auto [q, n, d] : {std::array<unsigned, 3>{2, 2, 2}, {3, 2, 2}, {2, 3, 2}, {2, 2, 3}}) {
    const SkewRing R = default_ring(q, n);
    for (const auto& f : skew_irreducibles(R, d)) ASSERT_EQ(min_poly_T_pow_n(companion_of(R, f)), mzlm(R, f));
  }
}

TEST(MinPoly, InvariantUnderConjugation) {
  const SkewRing R = default_ring(3, 2);
  std::mt19937_64 rng(3);
  for (const auto& f : skew_irreducibles(R, 2)) {
    const auto T = companion_of(R, f);
    const auto U = conjugate(T, random_invertible(R.tower(), 2, rng));
    ASSERT_EQ(min_poly_T_pow_n(U), min_poly_T_pow_n(T));
  }
}

TEST(MinPoly, NeedsAGenerator) {
  const SkewRing R = default_ring(2, 4);
  const SemilinearMap T{R.tower_ptr(), Matrix::identity(2), AutoPower{2}};
  EXPECT_THROW(min_poly_T_pow_n(T), precondition_error);
}

TEST(Conjugacy, Examples) {
  const auto T = companion_of(F4(), P({1, w, 1})), U = companion_of(F4(), P({1, w2, 1}));
  EXPECT_TRUE(conjugacy_test(T, U, ConjugacyGroup::GL));
  std::mt19937_64 rng(11);
  EXPECT_TRUE(conjugacy_test(T, conjugate(T, random_invertible(F4().tower(), 2, rng)), ConjugacyGroup::GL));

  const SkewRing R = default_ring(3, 2);
  const auto irr = skew_irreducibles(R, 2);
  const SkewPoly& f = irr.front();
  auto g = std::find_if(irr.begin(), irr.end(), [&](const SkewPoly& x) { return mzlm(R, x) != mzlm(R, f); });
  ASSERT_NE(g, irr.end());
  EXPECT_FALSE(conjugacy_test(companion_of(R, f), companion_of(R, *g), ConjugacyGroup::GL));
}

TEST(Conjugacy, AgreesWithExhaustiveConjugatorSearch) {
  const auto irr = skew_irreducibles(F4(), 2);
  for (const auto& f : irr)
    for (const auto& g : irr) {
      const auto T = companion_of(F4(), f), U = companion_of(F4(), g);
      for (auto grp : {ConjugacyGroup::GL, ConjugacyGroup::GammaL}) {
        const auto P0 = find_conjugator(T, U, grp);
        ASSERT_EQ(conjugacy_test(T, U, grp), P0.has_value());
        if (P0 && grp == ConjugacyGroup::GL) ASSERT_TRUE(intertwines(T, *P0, U));
      }
      // similar polynomials, conjugate companions
      ASSERT_EQ(conjugacy_test(T, U, ConjugacyGroup::GL), similar_witness(F4(), f, g).has_value());
    }
}

TEST(Conjugacy, EquivalenceRelationAndGammaLCoarser) {
  const SkewRing R = default_ring(4, 2);
  const auto irr = skew_irreducibles(R, 2);
  std::vector<SemilinearMap> maps;
  for (std::size_t i = 0; i < irr.size(); i += 9) maps.push_back(companion_of(R, irr[i]));
  const std::size_t m = maps.size();
  std::vector<std::vector<bool>> gl(m, std::vector<bool>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      gl[i][j] = conjugacy_test(maps[i], maps[j], ConjugacyGroup::GL);
      if (gl[i][j]) ASSERT_TRUE(conjugacy_test(maps[i], maps[j], ConjugacyGroup::GammaL));
    }
  for (std::size_t i = 0; i < m; ++i) {
    ASSERT_TRUE(gl[i][i]);
    for (std::size_t j = 0; j < m; ++j) {
      ASSERT_EQ(gl[i][j], gl[j][i]);
      for (std::size_t k = 0; k < m; ++k)
        if (gl[i][j] && gl[j][k]) ASSERT_TRUE(gl[i][k]);
    }
  }
}

TEST(Conjugation, IsAnIsotopyOfCyclicSemifields) {
  // U = phi T phi^-1 gives phi(a o_T b) = a o_U phi(b)
  std::mt19937_64 rng(5);
  for (const auto& f : skew_irreducibles(F4(), 2)) {
    const auto T = companion_of(F4(), f);
    const Matrix phi = random_invertible(F4().tower(), 2, rng);
    const Matrix phi_inv = *linalg::inverse(F4().K(), phi);
    const auto U = conjugate(T, phi_inv);
    for (std::uint64_t a = 0; a < 16; ++a)
      for (std::uint64_t b = 0; b < 16; ++b) {
        const Vec av = vec_from_index(F4().tower(), 2, a), bv = vec_from_index(F4().tower(), 2, b);
        ASSERT_EQ(linalg::apply(F4().K(), phi, cyclic_mul(T, av, bv)), cyclic_mul(U, av, linalg::apply(F4().K(), phi, bv)));
      }
  }
}
