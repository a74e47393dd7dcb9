#ifndef SKEWSF_VERIFY_HPP
#define SKEWSF_VERIFY_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "skewsf/classify.hpp"
#include "skewsf/semifield.hpp"
#include "skewsf/semilinear.hpp"
#include "skewsf/skewpoly.hpp"

// The reproduction battery: one check per acceptance criterion, shared by
// the CLI `verify` command and the acceptance test binary.

namespace skewsf::verify {

struct Outcome {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double time_limit = 0;  // 0: none
};

struct Options {
  std::uint64_t seed = 20240;
  bool long_mode = false;
  std::uint64_t budget_ms = 0;  // per spread set search; 0: unlimited
};

namespace detail {

template <class Fn>
Outcome timed(int id, std::string name, double limit, Fn&& fn) {
  Outcome o;
  o.id = id;
  o.name = std::move(name);
  o.time_limit = limit;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    std::ostringstream msg;
    o.pass = fn(msg);
    o.detail = msg.str();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit > 0 && o.seconds >= limit) {
    o.pass = false;
    o.detail += " [time limit " + std::to_string(limit) + " s exceeded]";
  }
  return o;
}

struct Config {
  unsigned q, n, d;
};

inline std::string cfg(const Config& c) {
  return "(" + std::to_string(c.q) + "," + std::to_string(c.n) + "," + std::to_string(c.d) + ")";
}

/// Irreducibles used by the nuclei/eigenring/non-associativity checks: every
/// irreducible at the small configurations plus seeded samples at orders 256
/// and 4096.
struct Sample {
  SkewRing R;
  SkewPoly f;
  std::string where;
};

inline std::vector<Sample> nuclei_sample(std::uint64_t seed) {
  std::vector<Sample> out;
  for (Config c : {Config{2, 2, 2}, Config{3, 2, 2}, Config{2, 3, 2}, Config{2, 2, 3}}) {
    const SkewRing R = default_ring(c.q, c.n);
    for (const auto& f : skew_irreducibles(R, c.d)) out.push_back({R, f, cfg(c)});
  }
  std::mt19937_64 rng(seed);
  auto sample = [&](Config c, std::size_t count) {
    const SkewRing R = default_ring(c.q, c.n);
    const Tower& T = R.tower();
    std::uniform_int_distribution<std::uint64_t> pick(0, checked_pow(T.Q(), c.d) - 1);
    std::size_t found = 0;
    while (found < count) {
      std::vector<Elem> co = poly_from_index(T, c.d, pick(rng)).c;
      co.resize(c.d + 1, 0);
      co[c.d] = 1;
      SkewPoly f(std::move(co));
      if (!is_irreducible(R, f)) continue;
      out.push_back({R, f, cfg(c)});
      ++found;
    }
  };
  sample({4, 2, 2}, 8);
  sample({2, 2, 4}, 4);
  sample({2, 2, 6}, 1);
  sample({4, 2, 3}, 1);
  return out;
}

inline std::string poly_str(const std::vector<Elem>& c) {
  std::string s = "[";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + "]";
}

inline SkewPoly random_poly(const Tower& T, unsigned max_deg, std::mt19937_64& rng) {
  std::uniform_int_distribution<Elem> pick(0, T.Q() - 1);
  std::vector<Elem> c(max_deg + 1);
  for (auto& x : c) x = pick(rng);
  return SkewPoly(std::move(c));
}

inline SemilinearMap random_irreducible_map(const SkewRing& R, unsigned d, std::mt19937_64& rng) {
  for (;;) {
    SemilinearMap T{R.tower_ptr(), random_invertible(R.tower(), d, rng), R.sigma()};
    if (is_irreducible_semilinear(T)) return T;
  }
}

}  // namespace detail

inline Outcome paper_table(const Options& = {}) {
  return detail::timed(1, "paper-table M(q,2) = 1,2,1,3", 1.0, [](std::ostringstream& msg) {
    const std::uint64_t expect[] = {1, 2, 1, 3};
    bool ok = true;
    for (unsigned q = 2; q <= 5; ++q) {
      const auto M = orbit_decomposition(q, 2).M;
      msg << "M(" << q << ",2)=" << M << (q < 5 ? " " : "");
      ok = ok && M == expect[q - 2];
    }
    return ok;
  });
}

inline Outcome isotopy16(const Options& opt = {}) {
  return detail::timed(2, "tightness at q=2: one isotopy class of order 16", 60.0, [&](std::ostringstream& msg) {
    SpreadsetOptions so;
    so.budget_ms = opt.budget_ms;
    const SkewRing R = default_ring(2, 2);
    const auto irr = skew_irreducibles(R, 2);
    std::vector<Semifield> S;
    for (const auto& f : irr) S.emplace_back(R, f);
    std::vector<std::size_t> parent(S.size());
    for (std::size_t i = 0; i < S.size(); ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    std::size_t witnesses = 0;
    for (std::size_t i = 0; i < S.size(); ++i)
      for (std::size_t j = i + 1; j < S.size(); ++j) {
        const auto r = spreadset_equivalence(S[i], S[j], so);
        if (r.status == Equivalence::inconclusive) {
          msg << "pair (" << i << "," << j << "): " << r.reason;
          return false;
        }
        if (r.status != Equivalence::equivalent) continue;
        const auto T = triple_from_spreadset(S[i], S[j], *r.H, *r.G);
        if (!verify_triple(S[i], S[j], T).ok) {
          msg << "witness for pair (" << i << "," << j << ") fails verification";
          return false;
        }
        ++witnesses;
        parent[find(i)] = find(j);
      }
    std::set<std::size_t> classes;
    for (std::size_t i = 0; i < S.size(); ++i) classes.insert(find(i));
    msg << irr.size() << " irreducibles, " << witnesses << "/10 pairs with verified witnesses, " << classes.size()
        << " class(es)";
    return irr.size() == 5 && classes.size() == 1 && witnesses == 10 && orbit_decomposition(2, 2).M == 1;
  });
}

inline Outcome counting(const Options& = {}) {
  return detail::timed(3, "counting: N(q,d) and Odoni counts", 0, [](std::ostringstream& msg) {
    bool ok = true;
    unsigned cases = 0;
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
      const auto F = base_field(q);
      for (unsigned d = 1; d <= 6; ++d) {
        const auto I = enumerate_I(*F, d);
        const bool good = I.size() == count_N(q, d) && theta(q, d) == theta_inclusion_exclusion(q, d);
        if (!good) msg << "mismatch at (q,d)=(" << q << "," << d << ") ";
        ok = ok && good;
        ++cases;
      }
    }
    msg << cases << " (q,d) pairs; odoni";
    for (detail::Config c : {detail::Config{2, 2, 2}, {3, 2, 2}, {2, 3, 2}, {2, 2, 3}}) {
      const auto oc = odoni_count(default_ring(c.q, c.n), c.d);
      msg << " " << detail::cfg(c) << "=" << oc.formula << "/" << (oc.exhaustive ? std::to_string(*oc.exhaustive) : "-");
      ok = ok && oc.matches();
    }
    return ok;
  });
}

/// Odoni counts against exhaustive enumeration; not one of the numbered criteria.
inline Outcome odoni(const Options& = {}) {
  return detail::timed(0, "odoni counts", 0, [](std::ostringstream& msg) {
    bool ok = true;
    for (detail::Config c : {detail::Config{2, 2, 2}, {3, 2, 2}, {2, 3, 2}, {2, 2, 3}}) {
      const auto oc = odoni_count(default_ring(c.q, c.n), c.d);
      msg << (c.q == 2 && c.n == 2 && c.d == 2 ? "" : " ") << detail::cfg(c) << "=" << oc.formula << "/"
          << (oc.exhaustive ? std::to_string(*oc.exhaustive) : "-");
      ok = ok && oc.matches();
    }
    return ok;
  });
}

inline Outcome bounds_chain(const Options& = {}) {
  return detail::timed(4, "bounds chain and prime-q exactness", 0, [](std::ostringstream& msg) {
    bool ok = true;
    unsigned chains = 0, exact = 0;
    for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
      const auto F = base_field(q);
      for (unsigned d = 1; d <= 6; ++d) {
        const auto r = orbit_decomposition(*F, d);
        const bool chain = r.lower.le(r.M) && r.upper.ge(r.M);
        ok = ok && chain;
        ++chains;
        if (!chain) msg << "chain fails at (" << q << "," << d << ") ";
        // Exactness needs d >= 2: at d = 1 the polynomial y is a fixed point.
        if (is_prime(q) && d >= 2 && std::gcd(q - 1, d) == 1) {
          const bool e = r.M * (q - 1) == r.N;
          ok = ok && e;
          ++exact;
          if (!e) msg << "M != N/(q-1) at (" << q << "," << d << ") ";
        }
      }
    }
    msg << chains << " chains, " << exact << " exactness cases";
    return ok;
  });
}

inline Outcome nuclei(const Options& opt = {}) {
  return detail::timed(5, "nuclei: brute force = theory, sizes (q,q^n,q^n,q^d)", 0, [&](std::ostringstream& msg) {
    const auto sample = detail::nuclei_sample(opt.seed);
    std::size_t good = 0;
    for (const auto& s : sample) {
      const Semifield S(s.R, s.f);
      const Tower& T = s.R.tower();
      const std::uint64_t qd = checked_pow(T.q(), S.d());
      const std::uint64_t sizes[] = {T.q(), T.Q(), T.Q(), qd};
      const Nucleus kinds[] = {Nucleus::centre, Nucleus::left, Nucleus::middle, Nucleus::right};
      bool ok = true;
      for (int k = 0; k < 4; ++k) {
        const auto brute = nucleus(S, kinds[k]);
        ok = ok && brute == nucleus_theory(S, kinds[k]) && brute.size() == sizes[k];
      }
      if (ok)
        ++good;
      else
        msg << "mismatch for f=" << detail::poly_str(s.f.c) << " at " << s.where << "; ";
    }
    msg << good << "/" << sample.size() << " semifields";
    return good == sample.size() && sample.size() >= 50;
  });
}

inline Outcome eigenring_check(const Options& opt = {}) {
  return detail::timed(6, "eigenring: |E(f)| = q^d and central residues", 0, [&](std::ostringstream& msg) {
    const auto sample = detail::nuclei_sample(opt.seed);
    std::size_t good = 0;
    for (const auto& s : sample) {
      const Tower& T = s.R.tower();
      const unsigned d = static_cast<unsigned>(s.f.degree());
      const auto E = eigenring(s.R, s.f).elements(T);
      std::set<std::uint64_t> eig, central;
      for (const auto& e : E) eig.insert(poly_index(T, e));
      const std::uint64_t total = checked_pow(T.q(), d);
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::vector<Elem> c(d);
        std::uint64_t x = idx;
        for (auto& v : c) {
          v = static_cast<Elem>(x % T.q());
          x /= T.q();
        }
        central.insert(poly_index(T, s.R.mod_right(s.R.central(CentralPoly(c)), s.f)));
      }
      if (E.size() == total && eig == central)
        ++good;
      else
        msg << "mismatch for f=" << detail::poly_str(s.f.c) << "; ";
    }
    msg << good << "/" << sample.size() << " eigenrings";
    return good == sample.size();
  });
}

inline Outcome similarity(const Options& = {}) {
  return detail::timed(7, "similarity <=> equal mzlm", 0, [](std::ostringstream& msg) {
    bool ok = true;
    std::size_t pairs = 0;
    for (detail::Config c : {detail::Config{2, 2, 2}, {3, 2, 2}}) {
      const SkewRing R = default_ring(c.q, c.n);
      const auto irr = skew_irreducibles(R, c.d);
      std::vector<CentralPoly> hats;
      for (const auto& f : irr) hats.push_back(mzlm(R, f));
      for (std::size_t i = 0; i < irr.size(); ++i)
        for (std::size_t j = 0; j < irr.size(); ++j) {
          const auto u = similar_witness(R, irr[i], irr[j]);
          bool agree = u.has_value() == (hats[i] == hats[j]);
          if (u) agree = agree && R.mod_right(R.mul(irr[j], *u), irr[i]).is_zero();
          ok = ok && agree;
          ++pairs;
        }
    }
    msg << pairs << " ordered pairs";
    return ok;
  });
}

inline Outcome isotopisms(const Options& = {}) {
  return detail::timed(8, "constructed isotopisms verify exhaustively", 0, [](std::ostringstream& msg) {
    std::size_t sim = 0, iso = 0, chain = 0;
    bool ok = true;
    for (detail::Config c : {detail::Config{2, 2, 2}, {3, 2, 2}, {2, 3, 2}, {2, 2, 3}}) {
      const SkewRing R = default_ring(c.q, c.n);
      const Tower& T = R.tower();
      const auto irr = skew_irreducibles(R, c.d);
      const bool full = c.q == 2 && c.n == 2 && c.d == 2;
      std::vector<CentralPoly> hats;
      for (const auto& f : irr) hats.push_back(mzlm(R, f));
      // Similarity: every similar pair at order 16, the least similar partner elsewhere.
      for (std::size_t i = 0; i < irr.size(); ++i) {
        const Semifield Sf(R, irr[i]);
        for (std::size_t j = 0; j < irr.size(); ++j) {
          if (hats[i] != hats[j] || (!full && j == i)) continue;
          const Semifield Sg(R, irr[j]);
          const auto u = similar_witness(R, irr[i], irr[j]);
          ok = ok && u && verify_triple(Sg, Sf, isotopism_from_similarity(Sf, Sg, *u)).ok;
          ++sim;
          if (!full) break;
        }
      }
      // Ring automorphisms: all alpha at order 16, a few elsewhere; every rho on K.
      const Elem alphas = full ? T.Q() : 4;
      for (std::size_t i = 0; i < irr.size(); i += full ? 1 : 7)
        for (Elem a = 1; a < alphas; ++a)
          for (unsigned r = 0; r < T.h() * T.n(); ++r) {
            const Semifield Sf(R, irr[i]);
            const auto m = isomorphism_from_ring_automorphism(Sf, a, FieldAut{r});
            ok = ok && verify_triple(Sf, m.target, m.triple()).ok;
            ++iso;
          }
      // Orbit chains: every orbit member against the orbit representative.
      const auto orb = orbit_decomposition(T.Fq(), c.d, c.n);
      for (const auto& o : orb.orbits)
        for (const auto& g : group_elements(T.Fq())) {
          const Semifield Sf(R, irreducible_divisor(o.representative, R));
          const Semifield Sg(R, irreducible_divisor(g_act(T.Fq(), o.representative, g), R));
          ok = ok && verify_triple(Sf, Sg, isotopism_from_orbit(Sf, Sg, g)).ok;
          ++chain;
        }
    }
    msg << sim << " similarity, " << iso << " ring-automorphism, " << chain << " orbit-chain triples";
    return ok;
  });
}

inline Outcome correspondence(const Options& opt = {}) {
  return detail::timed(9, "S_f = S_(L_t), L_a = a(L_t), companion round trips", 0, [&](std::ostringstream& msg) {
    bool ok = true;
    std::size_t tables = 0;
    for (detail::Config c : {detail::Config{2, 2, 2}, {3, 2, 2}, {2, 3, 2}, {2, 2, 3}, {4, 2, 2}}) {
      const SkewRing R = default_ring(c.q, c.n);
      const auto irr = skew_irreducibles(R, c.d);
      const std::size_t step = c.q == 4 ? 17 : 1;
      for (std::size_t i = 0; i < irr.size(); i += step) {
        const Semifield S(R, irr[i]);
        const auto L = companion_of(R, S.f());
        for (std::uint64_t a = 0; a < S.order() && ok; ++a) {
          const SkewPoly pa = S.element(a);
          Vec av(S.d(), 0);
          for (std::size_t k = 0; k < pa.c.size(); ++k) av[k] = pa.c[k];
          for (std::uint64_t b = 0; b < S.order(); ++b) {
            const SkewPoly pb = S.element(b);
            Vec bv(S.d(), 0);
            for (std::size_t k = 0; k < pb.c.size(); ++k) bv[k] = pb.c[k];
            if (!(SkewPoly(cyclic_mul(L, av, bv)) == S.mul(pa, pb))) {
              ok = false;
              msg << "table mismatch at " << detail::cfg(c) << "; ";
              break;
            }
          }
          ok = ok && cyclic_left_mult_fp(S, L, pa) == S.left_mult_fp(pa);
        }
        ++tables;
      }
    }
    const SkewRing R = default_ring(2, 2);
    std::mt19937_64 rng(opt.seed);
    std::size_t trips = 0;
    for (int k = 0; k < 100; ++k) {
      const auto T = detail::random_irreducible_map(R, 2, rng);
      const auto cf = conjugate_to_companion(R, T);
      const bool good = intertwines(T, cf.phi, companion_of(R, cf.f)) && is_irreducible(R, cf.f) &&
                        mzlm(R, cf.f) == min_poly_T_pow_n(T);
      ok = ok && good;
      trips += good;
    }
    msg << tables << " tables, " << trips << "/100 round trips";
    return ok;
  });
}

inline Outcome conjugacy(const Options& opt = {}) {
  return detail::timed(10, "conjugacy criterion vs exhaustive ground truth", 0, [&](std::ostringstream& msg) {
    bool ok = true;
    std::mt19937_64 rng(opt.seed + 10);
    std::size_t agree = 0, total = 0, positives = 0;
    for (detail::Config c : {detail::Config{2, 2, 2}, {3, 2, 2}}) {
      const SkewRing R = default_ring(c.q, c.n);
      for (int k = 0; k < 100; ++k) {
        const auto T = detail::random_irreducible_map(R, c.d, rng);
        const auto U = (k % 2 == 0) ? conjugate(T, random_invertible(R.tower(), c.d, rng))
                                    : detail::random_irreducible_map(R, c.d, rng);
        for (auto grp : {ConjugacyGroup::GL, ConjugacyGroup::GammaL}) {
          const bool truth = find_conjugator(T, U, grp).has_value();
          const bool test = conjugacy_test(T, U, grp);
          agree += truth == test;
          positives += truth;
          ++total;
          ok = ok && truth == test;
        }
      }
    }
    msg << agree << "/" << total << " agree (" << positives << " conjugate)";
    return ok;
  });
}

inline Outcome structural_maps(const Options& opt = {}) {
  return detail::timed(11, "psi, Jacobson isomorphism, matrix representation", 0, [&](std::ostringstream& msg) {
    bool ok = true;
    const SkewRing R = default_ring(2, 2);
    const SkewRing Rop = R.opposite();
    const Tower& T = R.tower();
    std::vector<SkewPoly> all;
    for (std::uint64_t idx = 0; idx < checked_pow(T.Q(), 4); ++idx) all.push_back(poly_from_index(T, 4, idx));
    std::vector<SkewPoly> psi;
    for (const auto& a : all) psi.push_back(anti_involution(R, a));
    for (std::size_t i = 0; i < all.size() && ok; ++i)
      for (std::size_t j = 0; j < all.size(); ++j)
        if (!(anti_involution(R, R.mul(all[i], all[j])) == Rop.mul(psi[j], psi[i]))) {
          ok = false;
          msg << "psi fails; ";
          break;
        }
    msg << all.size() * all.size() << " psi pairs; ";

    std::mt19937_64 rng(opt.seed + 11);
    for (Elem x = 0; x < T.Q(); ++x) {
      const SkewRing D = R.with_derivation(x);
      for (int k = 0; k < 1000; ++k) {
        const SkewPoly a = detail::random_poly(T, 3, rng), b = detail::random_poly(T, 3, rng);
        if (!(derivation_ring_iso(R, D, R.mul(a, b)) ==
              D.mul(derivation_ring_iso(R, D, a), derivation_ring_iso(R, D, b)))) {
          ok = false;
          msg << "Jacobson fails for x=" << x << "; ";
          break;
        }
      }
    }
    msg << 1000 * T.Q() << " Jacobson pairs; ";

    std::size_t reps = 0;
    for (const auto& f : skew_irreducibles(R, 2)) {
      const MatrixRep A(R, f);
      const SkewPoly h = A.h();
      const unsigned hd = static_cast<unsigned>(h.degree());
      std::vector<SkewPoly> us;
      std::vector<Matrix> Au;
      for (std::uint64_t idx = 0; idx < checked_pow(T.Q(), hd); ++idx) {
        us.push_back(poly_from_index(T, hd, idx));
        Au.push_back(A(us.back()));
      }
      bool good = A(SkewPoly::constant(1)) == Matrix::identity(T.n()) && linalg::rank(A.E(), A(f)) == T.n() - 1;
      for (std::size_t i = 0; i < us.size() && good; ++i)
        for (std::size_t j = 0; j < us.size(); ++j)
          if (!(A(R.mod_right(R.mul(us[i], us[j]), h)) == linalg::mul(A.E(), Au[i], Au[j]))) {
            good = false;
            break;
          }
      ok = ok && good;
      reps += good;
    }
    msg << reps << "/5 matrix representations";
    return ok;
  });
}

inline Outcome non_associativity(const Options& opt = {}) {
  return detail::timed(12, "non-associativity and reducibility of central elements", 0, [&](std::ostringstream& msg) {
    bool ok = true;
    std::size_t nonassoc = 0;
    const auto sample = detail::nuclei_sample(opt.seed);
    for (const auto& s : sample) {
      const Semifield S(s.R, s.f);
      const auto w = non_associative_witness(S);
      const bool good = w && !(S.mul(S.mul((*w)[0], (*w)[1]), (*w)[2]) == S.mul((*w)[0], S.mul((*w)[1], (*w)[2]))) &&
                        !s.R.is_central(s.f);
      ok = ok && good;
      nonassoc += good;
    }
    std::size_t factored = 0, centrals = 0;
    for (detail::Config c : {detail::Config{2, 2, 0}, {3, 2, 0}, {2, 3, 0}, {4, 2, 0}}) {
      const SkewRing R = default_ring(c.q, c.n);
      const Tower& T = R.tower();
      for (unsigned e = 1; e <= 2; ++e)
        for (std::uint64_t idx = 0; idx < checked_pow(T.q(), e); ++idx) {
          const auto hhat = upoly::monic_from_index(T.Fq(), e, idx);
          const SkewPoly z = R.central(hhat);
          const auto fac = find_right_factor(R, z);
          const bool good = fac && fac->first.degree() >= 1 && fac->second.degree() >= 1 &&
                            R.mul(fac->first, fac->second) == z;
          ok = ok && good;
          factored += good;
          ++centrals;
        }
    }
    msg << nonassoc << "/" << sample.size() << " non-associative, " << factored << "/" << centrals
        << " central elements factored";
    return ok;
  });
}

inline std::vector<Outcome> run_all(const Options& opt = {}) {
  return {paper_table(opt), isotopy16(opt),       counting(opt),   bounds_chain(opt),
          nuclei(opt),      eigenring_check(opt), similarity(opt), isotopisms(opt),
          correspondence(opt), conjugacy(opt),    structural_maps(opt), non_associativity(opt)};
}

}  // namespace skewsf::verify

#endif  // SKEWSF_VERIFY_HPP
