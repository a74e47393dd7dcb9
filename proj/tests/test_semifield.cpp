#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "skewsf/classify.hpp"
#include "skewsf/semifield.hpp"

using namespace skewsf;

namespace {

constexpr Elem w = 2, w2 = 3;

SkewPoly P(std::vector<Elem> c) { return SkewPoly(std::move(c)); }

const SkewRing& F4() {
  static const SkewRing R = default_ring(2, 2);
  return R;
}

/// Full triple loop over all elements, no multilinearity shortcut.
std::vector<SkewPoly> brute_nucleus(const Semifield& S, Nucleus which) {
  std::vector<SkewPoly> out;
  const std::uint64_t N = S.order();
  std::vector<std::vector<std::uint64_t>> table(N, std::vector<std::uint64_t>(N));
  for (std::uint64_t a = 0; a < N; ++a)
    for (std::uint64_t b = 0; b < N; ++b) table[a][b] = S.mul_index(a, b);
  auto assoc = [&](std::uint64_t x, std::uint64_t y, std::uint64_t z) { return table[table[x][y]][z] == table[x][table[y][z]]; };
  for (std::uint64_t c = 0; c < N; ++c) {
    bool in = true;
    for (std::uint64_t x = 0; x < N && in; ++x)
      for (std::uint64_t y = 0; y < N && in; ++y) {
        switch (which) {
          case Nucleus::left: in = assoc(c, x, y); break;
          case Nucleus::middle: in = assoc(x, c, y); break;
          case Nucleus::right: in = assoc(x, y, c); break;
          case Nucleus::centre: in = assoc(c, x, y) && assoc(x, c, y) && assoc(x, y, c) && table[c][x] == table[x][c]; break;
        }
      }
    if (in) out.push_back(S.element(c));
  }
  return out;
}

}  // namespace

TEST(Multiply, Examples) {
  const Semifield S(F4(), P({1, w, 1}));
  EXPECT_EQ(S.order(), 16u);
  for (std::uint64_t b = 0; b < 16; ++b) EXPECT_EQ(S.mul(SkewPoly::constant(1), S.element(b)), S.element(b));
  EXPECT_EQ(S.mul(P({0, 1}), P({0, 1})), P({1, w}));
  for (std::uint64_t a = 1; a < 16; ++a)
    for (std::uint64_t b = 1; b < 16; ++b) EXPECT_NE(S.mul_index(a, b), 0u);
  EXPECT_THROW(S.mul(P({0, 0, 1}), P({1})), precondition_error);
}

TEST(Multiply, MatchesNaiveRemainder) {
  for (auto [q, n, d] : {std::array<unsigned, 3>{2, 2, 2}, {3, 2, 2}, {2, 3, 2}, {2, 2, 3}, {4, 2, 2}}) {
    const SkewRing R = default_ring(q, n);
    oracle::NaiveTower N(R.tower().desc());
    const auto irr = skew_irreducibles(R, d);
    const Semifield S(R, irr[irr.size() / 2]);
    const oracle::Poly f(S.f().c.begin(), S.f().c.end());
    std::mt19937_64 rng(q * n * d);
    for (int k = 0; k < 300; ++k) {
      const std::uint64_t a = rng() % S.order(), b = rng() % S.order();
      const auto ea = S.element(a).c, eb = S.element(b).c, ab = S.mul(S.element(a), S.element(b)).c;
      const auto expect = oracle::skew_mod_right(N, 1, oracle::skew_mul(N, 1, {ea.begin(), ea.end()}, {eb.begin(), eb.end()}), f);
      ASSERT_EQ(oracle::Poly(ab.begin(), ab.end()), expect);
    }
  }
}

TEST(Multiply, ScalarMultipleOfFGivesSameSemifield) {
  const SkewRing R = default_ring(3, 2);
  const SkewPoly f = skew_irreducibles(R, 2).front();
  const Semifield S(R, f);
  for (Elem alpha = 1; alpha < R.tower().Q(); ++alpha) {
    const SkewPoly af = R.scale(alpha, f);
    const Semifield S2(R, af);
    for (std::uint64_t a = 0; a < S.order(); a += 7)
      for (std::uint64_t b = 0; b < S.order(); b += 5) {
        ASSERT_EQ(S.mul_index(a, b), S2.mul_index(a, b));
        ASSERT_EQ(S.mul(S.element(a), S.element(b)), R.mod_right(R.mul(S.element(a), S.element(b)), af));
      }
  }
}

TEST(Multiply, IndexAndCoordinateRoundTrips) {
  const SkewRing R = default_ring(4, 2);
  const Semifield S(R, skew_irreducibles(R, 2).front());
  EXPECT_EQ(S.fp_dim(), 8u);
  EXPECT_EQ(S.fq_dim(), 4u);
  for (std::uint64_t i = 0; i < S.order(); ++i) {
    const SkewPoly a = S.element(i);
    ASSERT_EQ(S.index(a), i);
    ASSERT_EQ(S.from_fp_coords(S.fp_coords(a)), a);
  }
}

TEST(CheckAxioms, IrreducibleModuliPass) {
  for (auto [q, n, d] : {std::array<unsigned, 3>{2, 2, 2}, {3, 2, 2}, {2, 3, 2}, {2, 2, 3}}) {
    const SkewRing R = default_ring(q, n);
    for (const auto& f : skew_irreducibles(R, d)) {
      const auto rep = check_axioms(Semifield(R, f));
      ASSERT_TRUE(rep.all_pass()) << q << n << d;
      ASSERT_FALSE(rep.sampled);
    }
  }
}

TEST(CheckAxioms, ReducibleModulusFailsS3WithWitness) {
  const SkewRing& R = F4();
  const SkewPoly a = P({w2, 1}), b = P({w, 1});
  const Semifield S(R, R.mul(a, b));
  const auto rep = check_axioms(S);
  EXPECT_FALSE(rep.all_pass());
  EXPECT_TRUE(rep.get("S1").pass);
  EXPECT_TRUE(rep.get("S2").pass);
  EXPECT_TRUE(rep.get("S4").pass);
  EXPECT_FALSE(rep.get("S3").pass);
  EXPECT_NE(rep.get("S3").witness.find("zero divisor"), std::string::npos);
  EXPECT_TRUE(S.mul(a, b).is_zero());
  EXPECT_THROW(Semifield::checked(R, R.mul(a, b)), precondition_error);
}

TEST(CheckAxioms, FieldAsSemifieldIsAssociative) {
  // n = 1: K = F_q, sigma = id, and S_f = F_{q^d}
  const SkewRing R = default_ring(2, 1);
  const SkewPoly f = P({1, 1, 0, 0, 1});  // t^4 + t + 1
  ASSERT_TRUE(is_irreducible(R, f));
  const Semifield S(R, f);
  EXPECT_EQ(S.order(), 16u);
  EXPECT_TRUE(check_axioms(S).all_pass());
  EXPECT_FALSE(non_associative_witness(S));
  EXPECT_EQ(nucleus(S, Nucleus::centre).size(), 16u);
}

TEST(CheckAxioms, SamplesAboveTheBound) {
  const SkewRing R = default_ring(2, 2);
  const auto reps = class_representatives(R, 7);
  ASSERT_EQ(reps.front().semifield.order(), 16384u);
  const auto rep = check_axioms(reps.front().semifield, CheckOptions{kExhaustiveBound, 2000, 7});
  EXPECT_TRUE(rep.sampled);
  EXPECT_TRUE(rep.all_pass());
}

TEST(CheckAxioms, Order4096IsExhaustive) {
  for (auto [q, n, d] : {std::array<unsigned, 3>{2, 2, 6}, {4, 2, 3}, {8, 2, 2}}) {
    const SkewRing R = default_ring(q, n);
    const auto f = class_representatives(R, d).front().f;
    const Semifield S(R, f);
    ASSERT_EQ(S.order(), 4096u);
    const auto rep = check_axioms(S);
    EXPECT_FALSE(rep.sampled);
    EXPECT_TRUE(rep.all_pass());
  }
}

TEST(Nuclei, ExampleOrder16) {
  const Semifield S(F4(), P({1, w, 1}));
  EXPECT_EQ(nucleus(S, Nucleus::right), (std::vector<SkewPoly>{SkewPoly(), P({1}), P({0, w}), P({1, w})}));
  const std::vector<SkewPoly> K = {SkewPoly(), P({1}), P({w}), P({w2})};
  EXPECT_EQ(nucleus(S, Nucleus::left), K);
  EXPECT_EQ(nucleus(S, Nucleus::middle), K);
  EXPECT_EQ(nucleus(S, Nucleus::centre), (std::vector<SkewPoly>{SkewPoly(), P({1})}));
  EXPECT_EQ(nucleus(S, Nucleus::right), eigenring(F4(), S.f()).elements(F4().tower()));
}

TEST(Nuclei, BasisReductionAgreesWithFullTripleLoop) {
  for (auto [q, n, d] : {std::array<unsigned, 3>{2, 2, 2}, {3, 2, 2}, {2, 2, 1}}) {
    const SkewRing R = default_ring(q, n);
    const auto irr = skew_irreducibles(R, d);
    for (std::size_t i = 0; i < irr.size(); i += (q == 3 ? 7 : 1)) {
      for (Side side : {Side::right, Side::left}) {
        const Semifield Sr(R, irr[i]);
        const Semifield S = side == Side::right ? Sr : left_division_variant(Sr);
        for (Nucleus which : {Nucleus::left, Nucleus::middle, Nucleus::right, Nucleus::centre}) {
          const auto brute = brute_nucleus(S, which);
          ASSERT_EQ(nucleus(S, which), brute) << to_string(which);
          ASSERT_EQ(nucleus_theory(S, which), brute) << to_string(which);
        }
      }
    }
  }
}

TEST(Nuclei, SizeTuple) {
  for (auto [q, n, d] : {std::array<unsigned, 3>{2, 2, 2}, {3, 2, 2}, {2, 3, 2}, {2, 2, 3}}) {
    const SkewRing R = default_ring(q, n);
    for (const auto& f : skew_irreducibles(R, d)) {
      const Semifield S(R, f);
      ASSERT_EQ(nucleus(S, Nucleus::centre).size(), q);
      ASSERT_EQ(nucleus(S, Nucleus::left).size(), checked_pow(q, n));
      ASSERT_EQ(nucleus(S, Nucleus::middle).size(), checked_pow(q, n));
      ASSERT_EQ(nucleus(S, Nucleus::right).size(), checked_pow(q, d));
      ASSERT_TRUE(non_associative_witness(S));
    }
  }
}

TEST(Nuclei, BoundEnforced) {
  const SkewRing R = default_ring(2, 2);
  const Semifield S(R, class_representatives(R, 7).front().f);
  EXPECT_THROW(nucleus(S, Nucleus::left), bound_error);
}

TEST(Isotopism, FromSimilarity) {
  const SkewRing& R = F4();
  const Semifield Sf(R, P({1, w, 1})), Sg(R, P({1, w2, 1}));
  const LinearTriple id = isotopism_from_similarity(Sf, Sf, SkewPoly::constant(1));
  EXPECT_EQ(id, identity_triple(Sf));
  const auto u = similar_witness(R, Sf.f(), Sg.f());
  ASSERT_TRUE(u);
  const LinearTriple T = isotopism_from_similarity(Sf, Sg, *u);
  const auto check = verify_triple(Sg, Sf, T);
  EXPECT_TRUE(check.ok);
  EXPECT_TRUE(check.exhaustive);
  EXPECT_THROW(isotopism_from_similarity(Sf, Sg, SkewPoly()), precondition_error);
  EXPECT_THROW(isotopism_from_similarity(Sf, Sg, SkewPoly::constant(1)), precondition_error);
  EXPECT_THROW(isotopism_from_similarity(Sf, Sg, P({0, 0, 1})), precondition_error);
}

TEST(Isotopism, FromSimilarityAllPairs) {
  const SkewRing R = default_ring(3, 2);
  const auto irr = skew_irreducibles(R, 2);
  int verified = 0;
  for (std::size_t i = 0; i < irr.size(); i += 3)
    for (std::size_t j = 0; j < irr.size(); j += 4) {
      const auto u = similar_witness(R, irr[i], irr[j]);
      ASSERT_EQ(u.has_value(), mzlm(R, irr[i]) == mzlm(R, irr[j]));
      if (!u) continue;
      const Semifield Sf(R, irr[i]), Sg(R, irr[j]);
      ASSERT_TRUE(verify_triple(Sg, Sf, isotopism_from_similarity(Sf, Sg, *u)).ok);
      ++verified;
    }
  EXPECT_GT(verified, 5);
}

TEST(Isotopism, FromRingAutomorphism) {
  const SkewRing& R = F4();
  const Semifield Sf(R, P({1, w, 1}));
  const auto id = isomorphism_from_ring_automorphism(Sf, 1, FieldAut{0});
  EXPECT_EQ(id.map, Matrix::identity(Sf.fp_dim()));
  EXPECT_EQ(id.target.f(), Sf.f());
  for (Elem alpha = 1; alpha < 4; ++alpha)
    for (unsigned r = 0; r < 2; ++r) {
      const auto iso = isomorphism_from_ring_automorphism(Sf, alpha, FieldAut{r});
      EXPECT_TRUE(is_irreducible(R, iso.target.f()));
      EXPECT_TRUE(verify_triple(Sf, iso.target, iso.triple()).ok);
    }
  EXPECT_THROW(isomorphism_from_ring_automorphism(Sf, 0, FieldAut{0}), precondition_error);
}

TEST(Isotopism, ChainThroughRingAutomorphismAndSimilarity) {
  const SkewRing R = default_ring(3, 2);
  const auto irr = skew_irreducibles(R, 2);
  const Field& Fq = R.tower().Fq();
  int chains = 0;
  for (std::size_t i = 0; i < irr.size(); i += 5)
    for (std::size_t j = 0; j < irr.size(); j += 3)
      for (const GroupElem g : group_elements(Fq)) {
        if (!(mzlm(R, irr[j]) == g_act(Fq, mzlm(R, irr[i]), g))) continue;
        const Semifield Sf(R, irr[i]), Sg(R, irr[j]);
        ASSERT_TRUE(verify_triple(Sf, Sg, isotopism_from_orbit(Sf, Sg, g)).ok);
        ++chains;
        break;
      }
  EXPECT_GT(chains, 5);
}

TEST(VerifyTriple, DetectsPerturbation) {
  const Semifield S(F4(), P({1, w, 1}));
  EXPECT_TRUE(verify_triple(S, S, identity_triple(S)).ok);
  LinearTriple bad = identity_triple(S);
  bad.H = Matrix::identity(S.fp_dim());
  // flip one entry while keeping H invertible
  Matrix H(S.fp_dim(), S.fp_dim());
  for (unsigned i = 0; i < S.fp_dim(); ++i) H(i, i) = 1;
  H(0, 1) = 1;
  bad.H = H;
  const auto r = verify_triple(S, S, bad);
  EXPECT_FALSE(r.ok);
  EXPECT_TRUE(r.witness.has_value());
  const Semifield S81(default_ring(3, 2), skew_irreducibles(default_ring(3, 2), 2).front());
  EXPECT_THROW(verify_triple(S, S81, identity_triple(S)), precondition_error);
}

TEST(VerifyTriple, CompositionAndInverse) {
  const SkewRing R = default_ring(2, 2);
  const auto irr = skew_irreducibles(R, 2);
  const Field& Fp = R.tower().Fp();
  const Semifield A(R, irr[0]), B(R, irr[1]), C(R, irr[2]);
  const LinearTriple ab = isotopism_from_similarity(B, A, *similar_witness(R, B.f(), A.f()));
  const LinearTriple bc = isotopism_from_similarity(C, B, *similar_witness(R, C.f(), B.f()));
  ASSERT_TRUE(verify_triple(A, B, ab).ok);
  ASSERT_TRUE(verify_triple(B, C, bc).ok);
  EXPECT_TRUE(verify_triple(A, C, compose(Fp, bc, ab)).ok);
  EXPECT_TRUE(verify_triple(B, A, inverse(Fp, ab)).ok);
}

TEST(LeftDivision, AntiIsomorphismExhaustive) {
  for (auto [q, n] : {std::array<unsigned, 2>{2, 2}, {3, 2}}) {
    const SkewRing R = default_ring(q, n);
    for (const auto& f : skew_irreducibles(R, 2)) {
      const Semifield Sf(R, f);
      const Semifield Sl = left_division_variant(Sf);
      EXPECT_EQ(Sl.side(), Side::left);
      EXPECT_EQ(Sl.f(), anti_involution(R, f));
      for (std::uint64_t a = 0; a < Sf.order(); ++a)
        for (std::uint64_t b = 0; b < Sf.order(); ++b) {
          const SkewPoly x = Sf.element(a), y = Sf.element(b);
          ASSERT_EQ(anti_involution(R, Sf.mul(x, y)), Sl.mul(anti_involution(R, y), anti_involution(R, x)));
        }
      EXPECT_TRUE(check_axioms(Sl).all_pass());
      if (q == 3) break;
    }
  }
}

TEST(LeftDivision, OppositeOfSfMatchesViaPsi) {
  const Semifield Sf(F4(), P({1, w, 1}));
  const Semifield Sl = left_division_variant(Sf);
  const SkewRing& R = F4();
  // opposite multiplication x *op y = y o x, carried by psi onto Sl
  for (std::uint64_t a = 0; a < 16; ++a) {
    const SkewPoly x = Sf.element(a);
    EXPECT_EQ(anti_involution(R, Sf.mul(SkewPoly::constant(1), x)), Sl.mul(anti_involution(R, x), SkewPoly::constant(1)));
    for (std::uint64_t b = 0; b < 16; ++b) {
      const SkewPoly y = Sf.element(b);
      EXPECT_EQ(anti_involution(R, Sf.mul(y, x)), Sl.mul(anti_involution(R, x), anti_involution(R, y)));
    }
  }
  EXPECT_THROW(left_division_variant(Sl), precondition_error);
}
