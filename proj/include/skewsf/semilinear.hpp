#ifndef SKEWSF_SEMILINEAR_HPP
#define SKEWSF_SEMILINEAR_HPP

#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "skewsf/error.hpp"
#include "skewsf/gf.hpp"
#include "skewsf/linalg.hpp"
#include "skewsf/semifield.hpp"
#include "skewsf/skewpoly.hpp"

namespace skewsf {

/// v -> A(v^sigma) on K^d, sigma acting coordinatewise.
struct SemilinearMap {
  std::shared_ptr<const Tower> tower;
  Matrix A;
  AutoPower sigma;

  unsigned dim() const { return static_cast<unsigned>(A.rows()); }
};

namespace semilinear {

inline Vec sigma_vec(const Tower& T, AutoPower s, const Vec& v) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = T.frobenius(v[i], s);
  return r;
}

inline Matrix sigma_mat(const Tower& T, AutoPower s, const Matrix& M) {
  Matrix r(M.rows(), M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) r(i, j) = T.frobenius(M(i, j), s);
  return r;
}

inline AutoPower inverse_power(const Tower& T, AutoPower s) { return AutoPower{(T.n() - s.s % T.n()) % T.n()}; }

}  // namespace semilinear

inline Vec apply(const SemilinearMap& T, const Vec& v) {
  if (v.size() != T.dim()) throw precondition_error("semilinear apply: dimension mismatch");
  return linalg::apply(T.tower->K(), T.A, semilinear::sigma_vec(*T.tower, T.sigma, v));
}

/// v, T v, ..., T^(k-1) v.
inline std::vector<Vec> powers(const SemilinearMap& T, const Vec& v, unsigned k) {
  std::vector<Vec> out;
  Vec cur = v;
  for (unsigned i = 0; i < k; ++i) {
    out.push_back(cur);
    cur = skewsf::apply(T, cur);
  }
  return out;
}

/// The map L_t of S_f in the coefficient basis 1, t, ..., t^(d-1): A_f has
/// subdiagonal ones and last column (g_0, ..., g_(d-1)) for f = t^d - sum g_i t^i.
inline SemilinearMap companion_of(const SkewRing& R, const SkewPoly& f) {
  if (!f.is_monic() || f.degree() < 1) throw precondition_error("companion_of needs a monic polynomial of degree >= 1");
  if (R.has_derivation()) throw precondition_error("companion_of needs a ring without derivation");
  const unsigned d = static_cast<unsigned>(f.degree());
  Matrix A(d, d);
  for (unsigned i = 1; i < d; ++i) A(i, i - 1) = 1;
  for (unsigned i = 0; i < d; ++i) A(i, d - 1) = R.K().neg(f.c[i]);
  return {R.tower_ptr(), A, R.sigma()};
}

/// T^(-1)(v) = sigma^-1(A^-1 v), a sigma^-1-semilinear map.
inline SemilinearMap inverse(const SemilinearMap& T) {
  auto inv = linalg::inverse(T.tower->K(), T.A);
  if (!inv) throw precondition_error("semilinear map is singular");
  const AutoPower si = semilinear::inverse_power(*T.tower, T.sigma);
  return {T.tower, semilinear::sigma_mat(*T.tower, si, *inv), si};
}

inline bool is_invertible(const SemilinearMap& T) { return linalg::rank(T.tower->K(), T.A) == T.dim(); }

namespace detail {

/// Calls fn on one representative of every line of K^d (first nonzero
/// coordinate 1), in index order; stops early when fn returns false.
template <class Fn>
bool for_each_line(const Tower& T, unsigned d, std::uint64_t bound, Fn&& fn) {
  const std::uint64_t total = checked_pow(T.Q(), d);
  if (total == 0 || total > bound) throw bound_error("vector scan exceeds bound");
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    Vec v(d);
    std::uint64_t x = idx;
    for (unsigned i = 0; i < d; ++i) {
      v[i] = static_cast<Elem>(x % T.Q());
      x /= T.Q();
    }
    unsigned lead = 0;
    while (v[lead] == 0) ++lead;
    if (v[lead] != 1) continue;
    if (!fn(v)) return false;
  }
  return true;
}

}  // namespace detail

/// True iff every nonzero v generates K^d under T; lines suffice because the
/// K-span of the T-orbit of av equals that of v.
inline bool is_irreducible_semilinear(const SemilinearMap& T, std::uint64_t bound = std::uint64_t{1} << 24) {
  if (!is_invertible(T)) throw precondition_error("semilinear map is singular");
  const unsigned d = T.dim();
  const Field& K = T.tower->K();
  return detail::for_each_line(*T.tower, d, bound, [&](const Vec& v) {
    return linalg::rank(K, Matrix::from_columns(powers(T, v, d))) == d;
  });
}

/// a o b = sum_i a_i T^i(b) in the standard basis of K^d.
inline Vec cyclic_mul(const SemilinearMap& T, const Vec& a, const Vec& b) {
  const Field& K = T.tower->K();
  if (a.size() != T.dim() || b.size() != T.dim()) throw precondition_error("cyclic_mul: dimension mismatch");
  Vec out(T.dim(), 0), cur = b;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0)
      for (std::size_t j = 0; j < out.size(); ++j) out[j] = K.add(out[j], K.mul(a[i], cur[j]));
    if (i + 1 < a.size()) cur = skewsf::apply(T, cur);
  }
  return out;
}

/// phi with T phi = phi L_(t,f): phi(t^i) = T^i v for the first nonzero v in
/// index order; f = t^d - sum g_i t^i where T^d v = sum g_i T^i v.
struct CompanionForm {
  Matrix phi;  // columns T^i v
  SkewPoly f;
};

inline CompanionForm conjugate_to_companion(const SkewRing& R, const SemilinearMap& T) {
  if (!(R.sigma() == T.sigma) || R.tower().Q() != T.tower->Q())
    throw precondition_error("conjugate_to_companion: ring does not match the map");
  const unsigned d = T.dim();
  const Field& K = T.tower->K();
  Vec v(d, 0);
  v[0] = 1;
  auto cols = powers(T, v, d + 1);
  const Vec last = cols.back();
  cols.pop_back();
  const Matrix P = Matrix::from_columns(cols);
  auto g = linalg::solve(K, P, last);
  if (!g || linalg::rank(K, P) != d) throw precondition_error("semilinear map is reducible");
  std::vector<Elem> c(d + 1);
  for (unsigned i = 0; i < d; ++i) c[i] = K.neg((*g)[i]);
  c[d] = 1;
  return {P, SkewPoly(std::move(c))};
}

/// True iff T P = P U as maps, i.e. A_T sigma(P) = P A_U.
inline bool intertwines(const SemilinearMap& T, const Matrix& P, const SemilinearMap& U) {
  const Field& K = T.tower->K();
  return linalg::mul(K, T.A, semilinear::sigma_mat(*T.tower, T.sigma, P)) == linalg::mul(K, P, U.A);
}

/// U = P^-1 T P, i.e. A_U = P^-1 A_T sigma(P).
inline SemilinearMap conjugate(const SemilinearMap& T, const Matrix& P) {
  const Field& K = T.tower->K();
  auto inv = linalg::inverse(K, P);
  if (!inv) throw precondition_error("conjugating matrix is singular");
  return {T.tower, linalg::mul(K, *inv, linalg::mul(K, T.A, semilinear::sigma_mat(*T.tower, T.sigma, P))), T.sigma};
}

/// The K-matrix of T^n: A sigma(A) ... sigma^(n-1)(A).
inline Matrix power_n_matrix(const SemilinearMap& T) {
  const Tower& Tw = *T.tower;
  Matrix M = Matrix::identity(T.dim());
  Matrix cur = T.A;
  for (unsigned i = 0; i < Tw.n(); ++i) {
    M = linalg::mul(Tw.K(), M, cur);
    cur = semilinear::sigma_mat(Tw, T.sigma, cur);
  }
  return M;
}

/// Minimal polynomial over F_q of T^n acting on the nd-dimensional F_q-space:
/// lcm of the local Krylov minimal polynomials over an F_q-basis.
inline CentralPoly min_poly_T_pow_n(const SemilinearMap& T) {
  const Tower& Tw = *T.tower;
  if (std::gcd(T.sigma.s % Tw.n(), Tw.n()) != 1) throw precondition_error("sigma does not generate Gal(K/F_q)");
  const unsigned d = T.dim(), n = Tw.n();
  const Matrix M = power_n_matrix(T);
  auto flatten = [&](const Vec& v) {
    Vec out(std::size_t{n} * d);
    for (unsigned i = 0; i < d; ++i)
      for (unsigned j = 0; j < n; ++j) out[j * d + i] = Tw.coord(v[i], j);
    return out;
  };
  CentralPoly result(std::vector<Elem>{1});
  for (unsigned i = 0; i < d; ++i)
    for (unsigned j = 0; j < n; ++j) {
      Vec v(d, 0);
      v[i] = static_cast<Elem>(checked_pow(Tw.q(), j));  // code of x^j
      linalg::IncrementalSpan span(Tw.Fq(), std::size_t{n} * d);
      Vec cur = v;
      for (;;) {
        auto dep = span.insert(flatten(cur));
        if (dep) {
          std::vector<Elem> c(dep->size() + 1);
          for (std::size_t k = 0; k < dep->size(); ++k) c[k] = Tw.Fq().neg((*dep)[k]);
          c.back() = 1;
          result = upoly::lcm(Tw.Fq(), result, CentralPoly(std::move(c)));
          break;
        }
        cur = linalg::apply(Tw.K(), M, cur);
      }
    }
  return result;
}

enum class ConjugacyGroup { GL, GammaL };

/// Same minimal polynomial of T^n (GL), or the same up to an automorphism
/// of F_q acting on coefficients (GammaL).
inline bool conjugacy_test(const SemilinearMap& T, const SemilinearMap& U, ConjugacyGroup group) {
  if (T.dim() != U.dim() || !(T.sigma == U.sigma) || T.tower->Q() != U.tower->Q())
    throw precondition_error("conjugacy_test: incompatible maps");
  const CentralPoly a = min_poly_T_pow_n(T), b = min_poly_T_pow_n(U);
  if (group == ConjugacyGroup::GL) return a == b;
  const Tower& Tw = *T.tower;
  for (unsigned r = 0; r < Tw.h(); ++r) {
    std::vector<Elem> c(a.c.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = Tw.Fq().frob(a.c[i], r);
    if (CentralPoly(std::move(c)) == b) return true;
  }
  return false;
}

/// Exhaustive search for P with T P = P rho(U): rho = identity for GL, any
/// p-power automorphism of K for GammaL. First hit in (rho, index) order.
inline std::optional<Matrix> find_conjugator(const SemilinearMap& T, const SemilinearMap& U, ConjugacyGroup group,
                                             std::uint64_t bound = std::uint64_t{1} << 20) {
  const Tower& Tw = *T.tower;
  const Field& K = Tw.K();
  const unsigned d = T.dim();
  const std::uint64_t total = checked_pow(Tw.Q(), d * d);
  if (total == 0 || total > bound) throw bound_error("conjugator search exceeds bound");
  const Matrix sA = T.A;
  const unsigned auts = group == ConjugacyGroup::GL ? 1 : Tw.h() * Tw.n();
  for (unsigned r = 0; r < auts; ++r) {
    Matrix AU(d, d);
    for (unsigned i = 0; i < d; ++i)
      for (unsigned j = 0; j < d; ++j) AU(i, j) = K.frob(U.A(i, j), r);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      Matrix P(d, d);
      std::uint64_t x = idx;
      for (unsigned k = 0; k < d * d; ++k) {
        P(k / d, k % d) = static_cast<Elem>(x % Tw.Q());
        x /= Tw.Q();
      }
      if (linalg::mul(K, sA, semilinear::sigma_mat(Tw, T.sigma, P)) != linalg::mul(K, P, AU)) continue;
      if (linalg::rank(K, P) == d) return P;
    }
  }
  return std::nullopt;
}

/// Random invertible d x d matrix over K.
inline Matrix random_invertible(const Tower& Tw, unsigned d, std::mt19937_64& rng) {
  std::uniform_int_distribution<Elem> pick(0, Tw.Q() - 1);
  for (;;) {
    Matrix P(d, d);
    for (unsigned i = 0; i < d; ++i)
      for (unsigned j = 0; j < d; ++j) P(i, j) = pick(rng);
    if (linalg::rank(Tw.K(), P) == d) return P;
  }
}

/// F_p matrix (in the Semifield F_p convention) of b -> sum_i a_i T^i(b).
inline Matrix cyclic_left_mult_fp(const Semifield& S, const SemilinearMap& T, const SkewPoly& a) {
  Vec av(S.d(), 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) av[i] = a.c[i];
  std::vector<Vec> cols;
  for (unsigned k = 0; k < S.fp_dim(); ++k) {
    const SkewPoly b = S.fp_basis(k);
    Vec bv(S.d(), 0);
    for (std::size_t i = 0; i < b.c.size(); ++i) bv[i] = b.c[i];
    cols.push_back(S.fp_coords(SkewPoly(cyclic_mul(T, av, bv))));
  }
  return Matrix::from_columns(cols);
}

}  // namespace skewsf

#endif  // SKEWSF_SEMILINEAR_HPP
