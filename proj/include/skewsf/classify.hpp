#ifndef SKEWSF_CLASSIFY_HPP
#define SKEWSF_CLASSIFY_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "skewsf/error.hpp"
#include "skewsf/gf.hpp"
#include "skewsf/linalg.hpp"
#include "skewsf/semifield.hpp"
#include "skewsf/skewpoly.hpp"
#include "skewsf/upoly.hpp"

namespace skewsf {

/// (lambda, rho) in F_q^x semidirect Aut(F_q); rho is x -> x^(p^rho).
struct GroupElem {
  Elem lambda = 1;
  unsigned rho = 0;
  friend bool operator==(GroupElem, GroupElem) = default;
};

/// f^(lambda, rho) = lambda^-d f^rho(lambda y).
inline CentralPoly g_act(const Field& Fq, const CentralPoly& f, GroupElem g) {
  if (g.lambda == 0 || g.lambda >= Fq.order()) throw precondition_error("g_act: lambda must be a nonzero element of F_q");
  if (!f.is_monic()) throw precondition_error("g_act: polynomial must be monic");
  const int d = f.degree();
  const Elem inv_ld = Fq.inv(Fq.pow(g.lambda, static_cast<std::uint64_t>(d)));
  std::vector<Elem> c(f.c.size());
  for (int i = 0; i <= d; ++i)
    c[i] = Fq.mul(Fq.frob(f.c[i], g.rho), Fq.mul(Fq.pow(g.lambda, static_cast<std::uint64_t>(i)), inv_ld));
  return CentralPoly(std::move(c));
}

/// The element acting as "first a, then b".
inline GroupElem then(const Field& Fq, GroupElem a, GroupElem b) {
  const unsigned h = Fq.prime_degree();
  return {Fq.mul(Fq.frob(a.lambda, b.rho), b.lambda), (a.rho + b.rho) % h};
}

inline std::vector<GroupElem> group_elements(const Field& Fq) {
  std::vector<GroupElem> out;
  for (unsigned r = 0; r < Fq.prime_degree(); ++r)
    for (Elem l = 1; l < Fq.order(); ++l) out.push_back({l, r});
  return out;
}

/// The F_q of a standalone prime power q, with the least modulus.
inline std::shared_ptr<const Field> base_field(std::uint64_t q) {
  const auto [p, h] = prime_power(q);
  return build_tower(p, h, 1, std::uint64_t{1} << 24)->Fq_ptr();
}

inline std::vector<CentralPoly> enumerate_I(const Field& Fq, unsigned d,
                                            std::uint64_t bound = upoly::kEnumerationBound) {
  return upoly::enumerate_irreducible(Fq, d, bound);
}

namespace detail {

inline int moebius(std::uint64_t n) {
  int mu = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

inline std::vector<unsigned> prime_divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::uint64_t pow_checked(std::uint64_t b, unsigned e) {
  const auto r = checked_pow(b, e);
  if (r == 0) throw bound_error("integer overflow in counting formula");
  return r;
}

}  // namespace detail

/// (1/d) sum_{s | d} mu(s) q^(d/s).
inline std::uint64_t count_N(std::uint64_t q, unsigned d) {
  if (d == 0) throw precondition_error("degree must be >= 1");
  __int128 sum = 0;
  for (unsigned s = 1; s <= d; ++s)
    if (d % s == 0) sum += static_cast<__int128>(detail::moebius(s)) * detail::pow_checked(q, d / s);
  return static_cast<std::uint64_t>(sum / d);
}

/// Elements of F_(q^d) lying in a proper subfield: q^d - d N(q,d).
inline std::uint64_t theta(std::uint64_t q, unsigned d) { return detail::pow_checked(q, d) - d * count_N(q, d); }

/// The same count by inclusion-exclusion over the maximal subfields
/// F_(q^(d/r)), r a prime divisor of d.
inline std::uint64_t theta_inclusion_exclusion(std::uint64_t q, unsigned d) {
  const auto primes = detail::prime_divisors(d);
  __int128 total = 0;
  for (std::uint32_t mask = 1; mask < (1u << primes.size()); ++mask) {
    unsigned prod = 1, bits = 0;
    for (std::size_t i = 0; i < primes.size(); ++i)
      if (mask >> i & 1) {
        prod *= primes[i];
        ++bits;
      }
    const __int128 term = detail::pow_checked(q, d / prod);
    total += (bits % 2) ? term : -term;
  }
  return static_cast<std::uint64_t>(total);
}

/// Nonnegative rational, kept reduced.
struct Fraction {
  std::uint64_t num = 0, den = 1;
  static Fraction make(std::uint64_t n, std::uint64_t d) {
    const auto g = std::gcd(n, d);
    return {n / g, d / g};
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool le(std::uint64_t x) const { return static_cast<unsigned __int128>(num) <= static_cast<unsigned __int128>(x) * den; }
  bool ge(std::uint64_t x) const { return static_cast<unsigned __int128>(num) >= static_cast<unsigned __int128>(x) * den; }
  bool is_integer() const { return den == 1; }
  std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

struct Orbit {
  CentralPoly representative;
  std::vector<CentralPoly> members;  // index order; the representative first
  std::size_t size() const { return members.size(); }
};

struct OrbitReport {
  std::uint64_t q = 0;
  unsigned h = 0, n = 0, d = 0;
  std::uint64_t N = 0;
  std::uint64_t theta = 0;
  std::uint64_t M = 0;
  Fraction lower, upper;
  std::vector<Orbit> orbits;
  std::uint64_t odoni = 0;
};

/// Odoni's count N(q,d)(q^(nd)-1)/(q^d-1) of monic irreducibles of degree d
/// in K[t; sigma].
inline std::uint64_t odoni_formula(std::uint64_t q, unsigned n, unsigned d) {
  return count_N(q, d) * ((detail::pow_checked(q, n * d) - 1) / (detail::pow_checked(q, d) - 1));
}

/// Union-find over I(q,d) under all h(q-1) group elements.
inline OrbitReport orbit_decomposition(const Field& Fq, unsigned d, unsigned n = 2,
                                       std::uint64_t bound = upoly::kEnumerationBound) {
  OrbitReport rep;
  rep.q = Fq.order();
  rep.h = Fq.prime_degree();
  rep.n = n;
  rep.d = d;
  const auto I = enumerate_I(Fq, d, bound);
  rep.N = count_N(rep.q, d);
  if (rep.N != I.size()) throw structural_error("enumeration disagrees with the Moebius count");
  rep.theta = theta(rep.q, d);

  std::vector<std::uint64_t> pos(detail::pow_checked(rep.q, d), UINT64_MAX);
  for (std::size_t i = 0; i < I.size(); ++i) pos[upoly::monic_index(Fq, I[i])] = i;
  std::vector<std::size_t> parent(I.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const auto G = group_elements(Fq);
  for (std::size_t i = 0; i < I.size(); ++i)
    for (const auto& g : G) {
      const auto j = pos[upoly::monic_index(Fq, g_act(Fq, I[i], g))];
      if (j == UINT64_MAX) throw structural_error("group action left I(q,d)");
      const auto a = find(i), b = find(j);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::size_t> slot(I.size(), SIZE_MAX);
  for (std::size_t i = 0; i < I.size(); ++i) {
    const auto r = find(i);
    if (slot[r] == SIZE_MAX) {
      slot[r] = rep.orbits.size();
      rep.orbits.push_back({I[i], {}});
    }
    rep.orbits[slot[r]].members.push_back(I[i]);
  }
  rep.M = rep.orbits.size();
  const std::uint64_t top = detail::pow_checked(rep.q, d) - rep.theta;
  rep.lower = Fraction::make(top, std::uint64_t{rep.h} * d * (rep.q - 1));
  rep.upper = Fraction::make(top, d);
  if (!rep.lower.le(rep.M) || !rep.upper.ge(rep.M)) throw structural_error("orbit count violates its bounds");
  rep.odoni = odoni_formula(rep.q, n, d);
  return rep;
}

inline OrbitReport orbit_decomposition(std::uint64_t q, unsigned d, unsigned n = 2) {
  return orbit_decomposition(*base_field(q), d, n);
}

/// First monic degree-d candidate in index order that right-divides
/// hhat(t^n) and has mzlm hhat.
inline SkewPoly irreducible_divisor(const CentralPoly& hhat, const SkewRing& R,
                                    std::uint64_t bound = std::uint64_t{1} << 24) {
  const Tower& T = R.tower();
  if (!hhat.is_monic() || hhat.degree() < 1) throw precondition_error("irreducible_divisor: hhat must be monic");
  if (hhat == CentralPoly(std::vector<Elem>{0, 1})) throw precondition_error("irreducible_divisor: hhat = y");
  for (Elem c : hhat.c)
    if (!T.in_Fq(c)) throw precondition_error("irreducible_divisor: hhat must have coefficients in F_q");
  if (!upoly::is_irreducible(T.Fq(), hhat)) throw precondition_error("irreducible_divisor: hhat is reducible");
  const unsigned d = static_cast<unsigned>(hhat.degree());
  const std::uint64_t total = checked_pow(T.Q(), d);
  if (total == 0 || total > bound) throw bound_error("irreducible_divisor search exceeds bound");
  const SkewPoly h = R.central(hhat);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<Elem> c = poly_from_index(T, d, idx).c;
    c.resize(d + 1, 0);
    c[d] = 1;
    SkewPoly f(std::move(c));
    if (f.c[0] == 0) continue;
    if (!R.mod_right(h, f).is_zero()) continue;
    if (mzlm(R, f) == hhat) return f;
  }
  throw structural_error("no irreducible divisor found");
}

struct Representative {
  CentralPoly hhat;
  std::size_t orbit_size = 0;
  SkewPoly f;
  std::uint64_t f_index = 0;  // coefficients below the leading 1, base |K|
  Semifield semifield;
};

/// One S_f per G-orbit on I(q,d), f the first irreducible divisor of the
/// orbit representative.
inline std::vector<Representative> class_representatives(const SkewRing& R, unsigned d) {
  if (d < 2) throw precondition_error("class_representatives needs d >= 2");
  const auto rep = orbit_decomposition(R.tower().Fq(), d, R.n());
  std::vector<Representative> out;
  for (const auto& o : rep.orbits) {
    SkewPoly f = irreducible_divisor(o.representative, R);
    const std::uint64_t idx = poly_index(R.tower(), SkewPoly(std::vector<Elem>(f.c.begin(), f.c.end() - 1)));
    out.push_back({o.representative, o.size(), f, idx, Semifield(R, f)});
  }
  return out;
}

inline SkewRing default_ring(std::uint64_t q, unsigned n, unsigned s = 1) {
  const auto [p, h] = prime_power(q);
  return SkewRing(build_tower(p, h, n), AutoPower{s});
}

struct OdoniCount {
  std::uint64_t formula = 0;
  std::optional<std::uint64_t> exhaustive;  // absent when over the bound
  bool matches() const { return exhaustive && *exhaustive == formula; }
};

/// Formula value plus, when (q^n)^d <= bound, the exhaustive count of monic
/// irreducibles of degree d.
inline OdoniCount odoni_count(const SkewRing& R, unsigned d, std::uint64_t bound = std::uint64_t{1} << 16) {
  const Tower& T = R.tower();
  OdoniCount out;
  out.formula = odoni_formula(T.q(), T.n(), d);
  const std::uint64_t total = checked_pow(T.Q(), d);
  if (total == 0 || total > bound) return out;
  std::uint64_t count = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<Elem> c = poly_from_index(T, d, idx).c;
    c.resize(d + 1, 0);
    c[d] = 1;
    if (is_irreducible(R, SkewPoly(std::move(c)))) ++count;
  }
  out.exhaustive = count;
  return out;
}

/// Every monic irreducible of degree d in index order.
inline std::vector<SkewPoly> skew_irreducibles(const SkewRing& R, unsigned d,
                                               std::uint64_t bound = std::uint64_t{1} << 16) {
  const Tower& T = R.tower();
  const std::uint64_t total = checked_pow(T.Q(), d);
  if (total == 0 || total > bound) throw bound_error("skew enumeration exceeds bound");
  std::vector<SkewPoly> out;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<Elem> c = poly_from_index(T, d, idx).c;
    c.resize(d + 1, 0);
    c[d] = 1;
    SkewPoly f(std::move(c));
    if (is_irreducible(R, f)) out.push_back(std::move(f));
  }
  return out;
}

/// The chain S_f -> S_h -> S_g: phi(f) = f^rho(alpha t) with N(alpha) =
/// lambda and rho extended to K, h = phi(f) similar to g. Requires
/// mzlm(g) = mzlm(f)^(lambda, rho).
inline LinearTriple isotopism_from_orbit(const Semifield& Sf, const Semifield& Sg, GroupElem g) {
  const SkewRing& R = Sf.ring();
  const Tower& T = R.tower();
  if (!R.same_as(Sg.ring()) || Sf.d() != Sg.d()) throw precondition_error("isotopism_from_orbit: incompatible semifields");
  if (mzlm(R, Sg.f()) != g_act(T.Fq(), mzlm(R, Sf.f()), g))
    throw precondition_error("isotopism_from_orbit: mzlm(g) is not in the image of mzlm(f)");
  const Elem alpha = T.norm_preimage(g.lambda);
  const RingIsomorphism iso = isomorphism_from_ring_automorphism(Sf, alpha, FieldAut{g.rho});
  const auto u = similar_witness(R, iso.target.f(), Sg.f());
  if (!u) throw structural_error("isotopism_from_orbit: no similarity witness");
  const LinearTriple to_h = isotopism_from_similarity(iso.target, Sg, *u);
  return compose(T.Fp(), inverse(T.Fp(), to_h), iso.triple());
}

// ---------------------------------------------------------------------------
// Spread sets

enum class Equivalence { equivalent, not_equivalent, inconclusive };

inline const char* to_string(Equivalence e) {
  switch (e) {
    case Equivalence::equivalent: return "equivalent";
    case Equivalence::not_equivalent: return "not_equivalent";
    case Equivalence::inconclusive: return "inconclusive";
  }
  return "?";
}

struct SpreadsetOptions {
  std::uint64_t exhaustive_order = 16;
  bool long_mode = false;
  std::uint64_t budget_ms = 0;  // 0: unlimited
};

struct SpreadsetResult {
  Equivalence status = Equivalence::inconclusive;
  std::optional<Matrix> H, G;
  std::string reason;
  std::uint64_t candidates = 0;  // H matrices examined
};

namespace detail {

/// Calls fn on each invertible m x m matrix over F_p, column by column,
/// columns in increasing index order; stops when fn returns false.
template <class Fn>
bool for_each_invertible(const Field& Fp, unsigned m, Fn&& fn) {
  const std::uint64_t vecs = checked_pow(Fp.order(), m);
  std::vector<Vec> cols;
  std::function<bool()> rec = [&]() -> bool {
    if (cols.size() == m) return fn(Matrix::from_columns(cols));
    linalg::IncrementalSpan span(Fp, m);
    for (const auto& c : cols) span.insert(c);
    for (std::uint64_t idx = 1; idx < vecs; ++idx) {
      Vec v(m);
      std::uint64_t x = idx;
      for (unsigned i = 0; i < m; ++i) {
        v[i] = static_cast<Elem>(x % Fp.order());
        x /= Fp.order();
      }
      if (span.contains(v)) continue;
      cols.push_back(std::move(v));
      const bool go = rec();
      cols.pop_back();
      if (!go) return false;
    }
    return true;
  };
  return rec();
}

}  // namespace detail

/// Searches F_p-linear H, G with {H L_a G^-1} = {L'_b}. With L_1 = I the
/// product H G^-1 lies in the target set, so G = (L'_c)^-1 H; the image of
/// a -> H L_a G^-1 is additive, so checking an F_p-basis of a suffices.
/// The witness is the first (H, c) in canonical order.
inline SpreadsetResult spreadset_equivalence(const Semifield& S, const Semifield& S2, const SpreadsetOptions& opt = {}) {
  SpreadsetResult out;
  const Field& Fp = S.tower().Fp();
  if (S.order() != S2.order() || S.tower().p() != S2.tower().p())
    throw precondition_error("spreadset_equivalence: semifields of different order");
  if (S.order() > opt.exhaustive_order && !opt.long_mode)
    throw bound_error("spreadset_equivalence: order exceeds the exhaustive limit (long mode required)");
  const unsigned m = S.fp_dim();

  // Isotopy invariants first.
  const std::uint64_t small = std::uint64_t{1} << 12;
  if (S.order() <= small) {
    for (Nucleus w : {Nucleus::left, Nucleus::middle, Nucleus::right, Nucleus::centre})
      if (nucleus(S, w).size() != nucleus(S2, w).size()) {
        out.status = Equivalence::not_equivalent;
        out.reason = std::string("nucleus sizes differ (") + to_string(w) + ")";
        return out;
      }
  }
  if (non_associative_witness(S).has_value() != non_associative_witness(S2).has_value()) {
    out.status = Equivalence::not_equivalent;
    out.reason = "exactly one of the two is associative";
    return out;
  }

  std::vector<Matrix> La, Lb;
  for (unsigned k = 0; k < m; ++k) La.push_back(S.left_mult_fp(S.fp_basis(k)));
  for (unsigned k = 0; k < m; ++k) Lb.push_back(S2.left_mult_fp(S2.fp_basis(k)));
  const Vec one = S2.fp_coords(SkewPoly::constant(1));
  auto Lprime = [&](const Vec& b) {
    Matrix r(m, m);
    for (unsigned k = 0; k < m; ++k)
      if (b[k] != 0) r = linalg::add(Fp, r, linalg::scale(Fp, b[k], Lb[k]));
    return r;
  };
  auto in_target = [&](const Matrix& X) { return X == Lprime(linalg::apply(Fp, X, one)); };
  std::vector<Matrix> Lc;  // L'_c for c != 0 in index order
  for (std::uint64_t c = 1; c < S2.order(); ++c) Lc.push_back(Lprime(S2.fp_coords(S2.element(c))));

  const auto start = std::chrono::steady_clock::now();
  bool expired = false;
  detail::for_each_invertible(Fp, m, [&](const Matrix& H) {
    ++out.candidates;
    if (opt.budget_ms && (out.candidates & 255) == 0) {
      const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
      if (static_cast<std::uint64_t>(ms) > opt.budget_ms) {
        expired = true;
        return false;
      }
    }
    const Matrix Hi = *linalg::inverse(Fp, H);
    std::vector<Matrix> HLH;
    for (const auto& L : La) HLH.push_back(linalg::mul(Fp, H, linalg::mul(Fp, L, Hi)));
    for (const auto& C : Lc) {
      bool ok = true;
      for (const auto& X : HLH)
        if (!in_target(linalg::mul(Fp, X, C))) {
          ok = false;
          break;
        }
      if (ok) {
        out.H = H;
        out.G = linalg::mul(Fp, *linalg::inverse(Fp, C), H);
        return false;
      }
    }
    return true;
  });
  if (out.H) {
    out.status = Equivalence::equivalent;
    out.reason = "witness found";
  } else if (expired) {
    out.status = Equivalence::inconclusive;
    out.reason = "time budget expired";
  } else {
    out.status = Equivalence::not_equivalent;
    out.reason = "exhaustive search found no witness";
  }
  return out;
}

/// The isotopism (F, G, H) from S to S2 carried by a spread set witness:
/// F(x) = b where L'_b = H L_x G^-1, i.e. F(x) = H L_x G^-1 (1).
inline LinearTriple triple_from_spreadset(const Semifield& S, const Semifield& S2, const Matrix& H, const Matrix& G) {
  const Field& Fp = S.tower().Fp();
  const Matrix Gi = *linalg::inverse(Fp, G);
  const Vec one = S2.fp_coords(SkewPoly::constant(1));
  std::vector<Vec> cols;
  for (unsigned k = 0; k < S.fp_dim(); ++k)
    cols.push_back(linalg::apply(Fp, linalg::mul(Fp, H, linalg::mul(Fp, S.left_mult_fp(S.fp_basis(k)), Gi)), one));
  return {Matrix::from_columns(cols), G, H};
}

struct BoundsReport {
  std::uint64_t q = 0;
  unsigned n = 0, d = 0;
  std::uint64_t kantor_liebler = 0;  // q^d - 1
  std::uint64_t dempwolff = 0;       // N(q,d)
  std::uint64_t M = 0;
  Fraction lower;         // (q^d - theta) / (2 d h q (q-1))
  Fraction phi_n_half_M;  // phi(n)/2 * M
  double total = 0;       // n d q^(nd/2) log2 q
  bool chain_ok = false;  // lower <= M <= N <= q^d - 1, last step only for d >= 2
};

inline BoundsReport bounds_report(std::uint64_t q, unsigned n, unsigned d) {
  BoundsReport b;
  b.q = q;
  b.n = n;
  b.d = d;
  const auto [p, h] = prime_power(q);
  (void)p;
  const auto orb = orbit_decomposition(q, d, n);
  b.kantor_liebler = detail::pow_checked(q, d) - 1;
  b.dempwolff = orb.N;
  b.M = orb.M;
  b.lower = Fraction::make(detail::pow_checked(q, d) - orb.theta, std::uint64_t{2} * d * h * q * (q - 1));
  unsigned phi = 0;
  for (unsigned k = 1; k <= n; ++k) phi += std::gcd(k, n) == 1;
  b.phi_n_half_M = Fraction::make(std::uint64_t{phi} * b.M, 2);
  b.total = static_cast<double>(n) * d * std::pow(static_cast<double>(q), n * d / 2.0) * std::log2(static_cast<double>(q));
  // at d = 1 S_f is K itself and N(q,1) = q exceeds q - 1
  b.chain_ok = b.lower.le(b.M) && b.M <= b.dempwolff && (d == 1 || b.dempwolff <= b.kantor_liebler);
  return b;
}

}  // namespace skewsf

#endif  // SKEWSF_CLASSIFY_HPP
