#ifndef SKEWSF_SKEWPOLY_HPP
#define SKEWSF_SKEWPOLY_HPP

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "skewsf/error.hpp"
#include "skewsf/gf.hpp"
#include "skewsf/linalg.hpp"
#include "skewsf/upoly.hpp"

namespace skewsf {

/// Element of K[t; sigma(, delta)], coefficients constant term first and
/// written on the left of the powers of t.
struct SkewPoly {
  std::vector<Elem> c;

  SkewPoly() = default;
  explicit SkewPoly(std::vector<Elem> coeffs) : c(std::move(coeffs)) { trim(); }
  static SkewPoly constant(Elem a) { return SkewPoly(std::vector<Elem>{a}); }
  static SkewPoly monomial(Elem a, std::size_t k) {
    std::vector<Elem> v(k + 1, 0);
    v[k] = a;
    return SkewPoly(std::move(v));
  }

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  Elem lead() const { return c.empty() ? 0 : c.back(); }
  Elem coeff(std::size_t i) const { return i < c.size() ? c[i] : 0; }
  bool is_monic() const { return !c.empty() && c.back() == 1; }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  friend bool operator==(const SkewPoly&, const SkewPoly&) = default;
  friend auto operator<=>(const SkewPoly& a, const SkewPoly& b) {
    if (a.c.size() != b.c.size()) return a.c.size() <=> b.c.size();
    return std::lexicographical_compare_three_way(a.c.rbegin(), a.c.rend(), b.c.rbegin(), b.c.rend());
  }
};

/// The ring K[t; sigma] or, with a derivation parameter x, K[t; sigma, delta_x]
/// where t a = a^sigma t + x (a - a^sigma).
class SkewRing {
 public:
  SkewRing(std::shared_ptr<const Tower> tower, AutoPower sigma, std::optional<Elem> deriv_x = std::nullopt)
      : tower_(std::move(tower)), sigma_{sigma.s % tower_->n()}, deriv_(deriv_x) {
    const unsigned n = tower_->n();
    if (std::gcd(sigma_.s, n) != 1)
      throw precondition_error("sigma exponent must be coprime to n so that Fix(sigma) = F_q");
    if (deriv_ && !tower_->K().contains(*deriv_)) throw precondition_error("derivation parameter outside K");
    if (deriv_ && *deriv_ == 0) deriv_.reset();
    sig_exp_.resize(n);
    for (unsigned k = 0; k < n; ++k)
      sig_exp_[k] = tower_->K().pow_mod_group(tower_->q(), std::uint64_t{sigma_.s} * k % n);
  }

  const Tower& tower() const { return *tower_; }
  const std::shared_ptr<const Tower>& tower_ptr() const { return tower_; }
  const Field& K() const { return tower_->K(); }
  unsigned n() const { return tower_->n(); }
  AutoPower sigma() const { return sigma_; }
  bool has_derivation() const { return deriv_.has_value(); }
  Elem deriv_x() const { return deriv_.value_or(0); }

  /// K[t; sigma^-1] over the same tower.
  SkewRing opposite() const {
    if (deriv_) throw precondition_error("opposite ring requires zero derivation");
    return SkewRing(tower_, AutoPower{(n() - sigma_.s) % n()});
  }
  SkewRing with_derivation(Elem x) const { return SkewRing(tower_, sigma_, x); }
  SkewRing without_derivation() const { return SkewRing(tower_, sigma_); }

  bool same_as(const SkewRing& o) const {
    return tower_ == o.tower_ && sigma_ == o.sigma_ && deriv_ == o.deriv_;
  }

  /// sigma^i(a); negative i applies the inverse.
  Elem sig(Elem a, long i = 1) const {
    const long n = static_cast<long>(this->n());
    const long k = ((i % n) + n) % n;
    return K().pow(a, sig_exp_[static_cast<std::size_t>(k)]);
  }
  Elem delta(Elem a) const {
    if (!deriv_) return 0;
    return K().mul(*deriv_, K().sub(a, sig(a)));
  }

  SkewPoly add(const SkewPoly& a, const SkewPoly& b) const {
    std::vector<Elem> r(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = K().add(a.coeff(i), b.coeff(i));
    return SkewPoly(std::move(r));
  }
  SkewPoly sub(const SkewPoly& a, const SkewPoly& b) const {
    std::vector<Elem> r(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = K().sub(a.coeff(i), b.coeff(i));
    return SkewPoly(std::move(r));
  }
  SkewPoly neg(const SkewPoly& a) const {
    std::vector<Elem> r(a.c.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = K().neg(a.c[i]);
    return SkewPoly(std::move(r));
  }
  /// Left multiplication by the constant s.
  SkewPoly scale(Elem s, const SkewPoly& a) const {
    std::vector<Elem> r(a.c.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = K().mul(s, a.c[i]);
    return SkewPoly(std::move(r));
  }
  SkewPoly monic(const SkewPoly& a) const {
    if (a.is_zero()) return a;
    return scale(K().inv(a.lead()), a);
  }

  SkewPoly mul(const SkewPoly& a, const SkewPoly& b) const {
    if (a.is_zero() || b.is_zero()) return {};
    const Field& F = K();
    std::vector<Elem> r(a.c.size() + b.c.size() - 1, 0);
    if (!deriv_) {
      for (std::size_t i = 0; i < a.c.size(); ++i) {
        const Elem ai = a.c[i];
        if (ai == 0) continue;
        const std::uint64_t e = sig_exp_[i % n()];
        for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(ai, F.pow(b.c[j], e)));
      }
      return SkewPoly(std::move(r));
    }
    // a b = sum_i a_i (t^i b), with t^i b built one factor of t at a time.
    std::vector<Elem> cur = b.c;
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      if (a.c[i] != 0)
        for (std::size_t j = 0; j < cur.size(); ++j) r[j] = F.add(r[j], F.mul(a.c[i], cur[j]));
      if (i + 1 < a.c.size()) cur = t_times(cur);
    }
    return SkewPoly(std::move(r));
  }

  SkewPoly pow(const SkewPoly& a, unsigned e) const {
    SkewPoly r = SkewPoly::constant(1);
    for (unsigned i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }

  /// a = quotient * f + remainder with deg(remainder) < deg(f).
  std::pair<SkewPoly, SkewPoly> divmod_right(const SkewPoly& a, const SkewPoly& f) const {
    if (f.is_zero()) throw precondition_error("right division by zero");
    const Field& F = K();
    const std::size_t d = f.c.size() - 1;
    if (a.c.size() <= d) return {SkewPoly{}, a};
    std::vector<Elem> r = a.c;
    std::vector<Elem> q(a.c.size() - d, 0);
    for (std::size_t top = r.size(); top-- > d;) {
      if (r[top] == 0) continue;
      const std::size_t k = top - d;
      const Elem c = F.div(r[top], sig(f.c[d], static_cast<long>(k)));
      q[k] = F.add(q[k], c);
      if (!deriv_) {
        const std::uint64_t e = sig_exp_[k % n()];
        for (std::size_t j = 0; j <= d; ++j) r[j + k] = F.sub(r[j + k], F.mul(c, F.pow(f.c[j], e)));
      } else {
        const SkewPoly s = mul(SkewPoly::monomial(c, k), f);
        for (std::size_t j = 0; j < s.c.size(); ++j) r[j] = F.sub(r[j], s.c[j]);
      }
    }
    return {SkewPoly(std::move(q)), SkewPoly(std::move(r))};
  }

  /// a = f * quotient + remainder with deg(remainder) < deg(f).
  std::pair<SkewPoly, SkewPoly> divmod_left(const SkewPoly& a, const SkewPoly& f) const {
    if (f.is_zero()) throw precondition_error("left division by zero");
    const Field& F = K();
    const std::size_t d = f.c.size() - 1;
    if (a.c.size() <= d) return {SkewPoly{}, a};
    std::vector<Elem> r = a.c;
    std::vector<Elem> q(a.c.size() - d, 0);
    for (std::size_t top = r.size(); top-- > d;) {
      if (r[top] == 0) continue;
      const std::size_t k = top - d;
      const Elem c = sig(F.div(r[top], f.c[d]), -static_cast<long>(d));
      q[k] = F.add(q[k], c);
      const SkewPoly s = mul(f, SkewPoly::monomial(c, k));
      for (std::size_t j = 0; j < s.c.size(); ++j) r[j] = F.sub(r[j], s.c[j]);
    }
    return {SkewPoly(std::move(q)), SkewPoly(std::move(r))};
  }

  SkewPoly mod_right(const SkewPoly& a, const SkewPoly& f) const { return divmod_right(a, f).second; }
  SkewPoly mod_left(const SkewPoly& a, const SkewPoly& f) const { return divmod_left(a, f).second; }

  /// Monic greatest common right divisor.
  SkewPoly gcrd(SkewPoly a, SkewPoly b) const {
    if (a.is_zero() && b.is_zero()) throw precondition_error("gcrd of two zero polynomials");
    while (!b.is_zero()) {
      SkewPoly r = mod_right(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }

  /// h(t^n) for h in F_q[y].
  SkewPoly central(const CentralPoly& h) const {
    if (h.is_zero()) return {};
    std::vector<Elem> r(static_cast<std::size_t>(h.degree()) * n() + 1, 0);
    for (std::size_t i = 0; i < h.c.size(); ++i) {
      if (!tower_->in_Fq(h.c[i])) throw precondition_error("central polynomial coefficient outside F_q");
      r[i * n()] = h.c[i];
    }
    return SkewPoly(std::move(r));
  }

  /// Membership in F_q[t^n] (the centre when there is no derivation).
  bool is_central(const SkewPoly& a) const {
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      if (a.c[i] == 0) continue;
      if (i % n() != 0 || !tower_->in_Fq(a.c[i])) return false;
    }
    return true;
  }

 private:
  std::vector<Elem> t_times(const std::vector<Elem>& p) const {
    std::vector<Elem> out(p.size() + 1, 0);
    for (std::size_t j = 0; j < p.size(); ++j) {
      out[j + 1] = K().add(out[j + 1], sig(p[j]));
      out[j] = K().add(out[j], delta(p[j]));
    }
    return out;
  }

  std::shared_ptr<const Tower> tower_;
  AutoPower sigma_;
  std::optional<Elem> deriv_;
  std::vector<std::uint64_t> sig_exp_;
};

// ---------------------------------------------------------------------------
// F_q coordinates. A polynomial of degree < d is flattened to n*d F_q
// coordinates; coordinate j*d + i is the x^j component of the coefficient
// of t^i.

inline Vec fq_coords(const Tower& T, const SkewPoly& a, unsigned d) {
  if (a.degree() >= static_cast<int>(d)) throw precondition_error("polynomial degree out of range for coordinates");
  Vec v(std::size_t{T.n()} * d, 0);
  for (unsigned i = 0; i < a.c.size(); ++i)
    for (unsigned j = 0; j < T.n(); ++j) v[j * d + i] = T.coord(a.c[i], j);
  return v;
}

inline SkewPoly from_fq_coords(const Tower& T, const Vec& v, unsigned d) {
  std::vector<Elem> c(d, 0);
  for (unsigned i = 0; i < d; ++i) {
    Elem code = 0;
    for (unsigned j = T.n(); j-- > 0;) code = code * T.q() + v[j * d + i];
    c[i] = code;
  }
  return SkewPoly(std::move(c));
}

/// F_q-basis element x^j t^i of the residue space.
inline SkewPoly fq_basis_element(const Tower& T, unsigned d, std::size_t index) {
  const unsigned i = static_cast<unsigned>(index % d);
  const unsigned j = static_cast<unsigned>(index / d);
  Elem code = 1;
  for (unsigned k = 0; k < j; ++k) code *= T.q();
  return SkewPoly::monomial(code, i);
}

/// Polynomials of degree < d are enumerated by sum code(a_i) * Q^i.
inline SkewPoly poly_from_index(const Tower& T, unsigned d, std::uint64_t index) {
  std::vector<Elem> c(d, 0);
  for (unsigned i = 0; i < d; ++i) {
    c[i] = static_cast<Elem>(index % T.Q());
    index /= T.Q();
  }
  return SkewPoly(std::move(c));
}

inline std::uint64_t poly_index(const Tower& T, const SkewPoly& a) {
  std::uint64_t idx = 0;
  for (std::size_t i = a.c.size(); i-- > 0;) idx = idx * T.Q() + a.c[i];
  return idx;
}

/// Matrix over F_q of the F_q-linear map u -> (g u) mod_r f on residues of
/// degree < deg(f).
inline Matrix fq_left_mult_mod(const SkewRing& R, const SkewPoly& g, const SkewPoly& f) {
  const unsigned d = static_cast<unsigned>(f.degree());
  const std::size_t dim = std::size_t{R.n()} * d;
  std::vector<Vec> cols;
  cols.reserve(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const SkewPoly e = fq_basis_element(R.tower(), d, k);
    cols.push_back(fq_coords(R.tower(), R.mod_right(R.mul(g, e), f), d));
  }
  return Matrix::from_columns(cols);
}

// ---------------------------------------------------------------------------

/// Minimal central left multiple: the least-degree monic h in F_q[y] with f
/// right-dividing h(t^n). Found as the first F_q-linear dependency among the
/// residues t^(n i) mod_r f.
inline CentralPoly mzlm(const SkewRing& R, const SkewPoly& f) {
  if (f.is_zero()) throw precondition_error("mzlm of zero");
  if (R.has_derivation()) throw precondition_error("mzlm requires a ring without derivation");
  const Tower& T = R.tower();
  if (f.degree() == 0) return CentralPoly(std::vector<Elem>{1});
  const unsigned d = static_cast<unsigned>(f.degree());
  const SkewPoly fm = R.monic(f);
  const SkewPoly tn = SkewPoly::monomial(1, R.n());
  linalg::IncrementalSpan span(T.Fq(), std::size_t{R.n()} * d);
  SkewPoly r = SkewPoly::constant(1);
  for (unsigned i = 0; i <= R.n() * d; ++i) {
    if (auto dep = span.insert(fq_coords(T, r, d))) {
      std::vector<Elem> h(i + 1, 0);
      for (unsigned k = 0; k < i; ++k) h[k] = T.Fq().neg((*dep)[k]);
      h[i] = 1;
      return CentralPoly(std::move(h));
    }
    r = R.mod_right(R.mul(tn, r), fm);
  }
  throw structural_error("mzlm: no dependency among central residues");
}

/// Irreducibility in R via the mzlm criterion: f (deg d, f_0 != 0) is
/// irreducible iff mzlm(f) is irreducible of degree d in F_q[y].
inline bool is_irreducible(const SkewRing& R, const SkewPoly& f) {
  if (f.degree() < 1) throw precondition_error("irreducibility of a constant");
  if (R.has_derivation()) throw precondition_error("is_irreducible requires a ring without derivation");
  if (f.degree() == 1) return true;
  if (f.c[0] == 0) return false;
  const CentralPoly h = mzlm(R, f);
  return h.degree() == f.degree() && upoly::is_irreducible(R.tower().Fq(), h);
}

/// Some f = left * right with 1 <= deg(right) < deg(f), found by scanning
/// monic right divisors in index order. Gives up past `budget` candidates.
inline std::optional<std::pair<SkewPoly, SkewPoly>> find_right_factor(const SkewRing& R, const SkewPoly& f,
                                                                       std::uint64_t budget = 1u << 20) {
  const Tower& T = R.tower();
  std::uint64_t tried = 0;
  for (int e = 1; e < f.degree(); ++e) {
    const std::uint64_t count = checked_pow(T.Q(), static_cast<unsigned>(e));
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      if (++tried > budget) return std::nullopt;
      SkewPoly g = poly_from_index(T, static_cast<unsigned>(e), idx);
      g.c.resize(static_cast<std::size_t>(e) + 1, 0);
      g.c[static_cast<std::size_t>(e)] = 1;
      auto [quot, rem] = R.divmod_right(f, g);
      if (rem.is_zero()) return std::make_pair(quot, g);
    }
  }
  return std::nullopt;
}

/// E(f) = {u : deg u < d, f u = 0 mod_r f}, stored as an F_q-basis.
struct Eigenring {
  SkewPoly f;
  std::vector<SkewPoly> basis;

  /// All q^d elements, in index order.
  std::vector<SkewPoly> elements(const Tower& T) const {
    const unsigned d = static_cast<unsigned>(f.degree());
    std::vector<Vec> vecs;
    for (const auto& b : basis) vecs.push_back(fq_coords(T, b, d));
    const std::uint64_t total = checked_pow(T.q(), static_cast<unsigned>(basis.size()));
    std::vector<SkewPoly> out;
    out.reserve(total);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      Vec v(std::size_t{T.n()} * d, 0);
      std::uint64_t rest = idx;
      for (const auto& b : vecs) {
        const Elem c = static_cast<Elem>(rest % T.q());
        rest /= T.q();
        if (c == 0) continue;
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = T.Fq().add(v[k], T.Fq().mul(c, b[k]));
      }
      out.push_back(from_fq_coords(T, v, d));
    }
    std::sort(out.begin(), out.end(),
              [&](const SkewPoly& a, const SkewPoly& b) { return poly_index(T, a) < poly_index(T, b); });
    return out;
  }
};

inline Eigenring eigenring(const SkewRing& R, const SkewPoly& f) {
  if (R.has_derivation()) throw precondition_error("eigenring requires a ring without derivation");
  if (f.degree() < 1) throw precondition_error("eigenring of a constant");
  const SkewPoly fm = R.monic(f);
  const unsigned d = static_cast<unsigned>(fm.degree());
  if (!is_irreducible(R, fm)) throw structural_error("eigenring: f is reducible");
  const auto ker = linalg::kernel(R.tower().Fq(), fq_left_mult_mod(R, fm, fm));
  // f = t is the one irreducible with f_0 = 0; it commutes with all of K
  if (ker.size() != d && !(d == 1 && fm.c[0] == 0))
    throw structural_error("eigenring has F_q-dimension " + std::to_string(ker.size()) + ", expected " +
                           std::to_string(d) + " (is f reducible?)");
  Eigenring E{fm, {}};
  for (const auto& v : ker) E.basis.push_back(from_fq_coords(R.tower(), v, d));
  return E;
}

/// Nonzero u of degree < d with g u = 0 mod_r f, if f and g are similar.
inline std::optional<SkewPoly> similar_witness(const SkewRing& R, const SkewPoly& f, const SkewPoly& g) {
  if (f.degree() != g.degree()) throw precondition_error("similar_witness: degree mismatch");
  if (f.degree() < 1) throw precondition_error("similar_witness: constant input");
  const SkewPoly fm = R.monic(f);
  const auto ker = linalg::kernel(R.tower().Fq(), fq_left_mult_mod(R, R.monic(g), fm));
  if (ker.empty()) return std::nullopt;
  return from_fq_coords(R.tower(), ker.front(), static_cast<unsigned>(fm.degree()));
}

/// Image of f under the ring automorphism t -> alpha t, a -> a^rho:
/// sum rho(f_i) (alpha t)^i.
inline SkewPoly apply_ring_automorphism(const SkewRing& R, const SkewPoly& f, Elem alpha, FieldAut rho) {
  if (alpha == 0) throw precondition_error("ring automorphism needs alpha != 0");
  if (R.has_derivation()) throw precondition_error("t -> alpha t is an automorphism only without derivation");
  const Field& F = R.K();
  std::vector<Elem> r(f.c.size());
  Elem twisted = 1;  // alpha alpha^sigma ... alpha^(sigma^(i-1))
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    r[i] = F.mul(R.tower().apply(rho, f.c[i]), twisted);
    twisted = F.mul(twisted, R.sig(alpha, static_cast<long>(i)));
  }
  return SkewPoly(std::move(r));
}

/// psi(sum a_i t^i) = sum a_i^(sigma^-i) t^i, an anti-isomorphism
/// K[t; sigma] -> K[t; sigma^-1]. The result lives in R.opposite().
inline SkewPoly anti_involution(const SkewRing& R, const SkewPoly& f) {
  if (R.has_derivation()) throw precondition_error("anti_involution requires zero derivation");
  std::vector<Elem> r(f.c.size());
  for (std::size_t i = 0; i < f.c.size(); ++i) r[i] = R.sig(f.c[i], -static_cast<long>(i));
  return SkewPoly(std::move(r));
}

/// a(t) -> a(t - x), from K[t; sigma] into K[t; sigma, delta_x], evaluated
/// in the target ring.
inline SkewPoly derivation_ring_iso(const SkewRing& R, const SkewRing& target, const SkewPoly& a) {
  if (R.has_derivation()) throw precondition_error("source ring must have zero derivation");
  if (R.tower_ptr() != target.tower_ptr() || !(R.sigma() == target.sigma()))
    throw precondition_error("derivation_ring_iso: rings over different data");
  const Field& F = R.K();
  const SkewPoly t_minus_x(std::vector<Elem>{F.neg(target.deriv_x()), 1});
  SkewPoly power = SkewPoly::constant(1);
  SkewPoly out;
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] != 0) out = target.add(out, target.scale(a.c[i], power));
    if (i + 1 < a.c.size()) power = target.mul(power, t_minus_x);
  }
  return out;
}

/// Concrete realization of R/Rh = M_n(F_{q^d}) for h = mzlm(f)(t^n): R acts
/// on V = R/Rf by left multiplication, V is an n-dimensional right vector
/// space over E(f) = F_{q^d}, and A(u) is the matrix of u over E(f).
class MatrixRep {
 public:
  MatrixRep(const SkewRing& R, const SkewPoly& f) : R_(R), f_(R.monic(f)) {
    if (R.has_derivation()) throw precondition_error("matrix_rep requires zero derivation");
    if (f_.degree() < 1) throw precondition_error("matrix_rep of a constant");
    const Tower& T = R.tower();
    d_ = static_cast<unsigned>(f_.degree());
    hhat_ = mzlm(R, f_);
    if (hhat_.degree() != static_cast<int>(d_) || !upoly::is_irreducible(T.Fq(), hhat_))
      throw precondition_error("matrix_rep: f is not irreducible");
    if (hhat_ == CentralPoly(std::vector<Elem>{0, 1})) throw precondition_error("matrix_rep: mzlm(f) = y");

    // Generator of E(f)^x: least element (index order) of multiplicative order q^d - 1.
    const auto eig = eigenring(R, f_).elements(T);
    const std::uint64_t group = checked_pow(T.q(), d_) - 1;
    bool found = false;
    for (const auto& e : eig) {
      if (e.is_zero()) continue;
      if (mult_order(e) == group) {
        gamma_ = e;
        found = true;
        break;
      }
    }
    if (!found) throw structural_error("eigenring has no multiplicative generator");

    // Minimal polynomial of gamma over F_q defines E = F_q[z]/(minpoly).
    powers_.push_back(SkewPoly::constant(1));
    linalg::IncrementalSpan span(T.Fq(), std::size_t{T.n()} * d_);
    for (unsigned k = 0;; ++k) {
      if (auto dep = span.insert(fq_coords(T, powers_[k], d_))) {
        std::vector<Elem> m(k + 1, 0);
        for (unsigned i = 0; i < k; ++i) m[i] = T.Fq().neg((*dep)[i]);
        m[k] = 1;
        minpoly_ = CentralPoly(std::move(m));
        powers_.pop_back();
        break;
      }
      powers_.push_back(circ(powers_[k], gamma_));
    }
    if (minpoly_.degree() != static_cast<int>(d_)) throw structural_error("generator minimal polynomial degree");
    E_ = Field::extension(T.Fq_ptr(), minpoly_.c);

    // E-basis of V: scan V in index order, keep vectors outside the current E-span.
    linalg::IncrementalSpan espan(T.Fq(), std::size_t{T.n()} * d_);
    std::vector<Vec> cols;
    const std::uint64_t total = checked_pow(T.Q(), d_);
    for (std::uint64_t idx = 1; idx < total && basis_.size() < T.n(); ++idx) {
      const SkewPoly v = poly_from_index(T, d_, idx);
      if (espan.contains(fq_coords(T, v, d_))) continue;
      basis_.push_back(v);
      for (unsigned m = 0; m < d_; ++m) {
        Vec c = fq_coords(T, circ(v, powers_[m]), d_);
        espan.insert(c);
        cols.push_back(std::move(c));
      }
    }
    if (basis_.size() != T.n()) throw structural_error("V is not n-dimensional over E(f)");
    auto inv = linalg::inverse(T.Fq(), Matrix::from_columns(cols));
    if (!inv) throw structural_error("E-basis is singular");
    coord_inv_ = std::move(*inv);
  }

  const Field& E() const { return *E_; }
  const CentralPoly& mzlm_hat() const { return hhat_; }
  SkewPoly h() const { return R_.central(hhat_); }
  const SkewPoly& generator() const { return gamma_; }
  const CentralPoly& generator_minpoly() const { return minpoly_; }
  const std::vector<SkewPoly>& basis() const { return basis_; }

  /// E-code -> eigenring element sum c_m gamma^m.
  SkewPoly to_eigen(Elem e) const {
    const Tower& T = R_.tower();
    Vec v(std::size_t{T.n()} * d_, 0);
    for (unsigned m = 0; m < d_; ++m) {
      const Elem c = E_->digit(e, m);
      if (c == 0) continue;
      const Vec pm = fq_coords(T, powers_[m], d_);
      for (std::size_t k = 0; k < v.size(); ++k) v[k] = T.Fq().add(v[k], T.Fq().mul(c, pm[k]));
    }
    return from_fq_coords(T, v, d_);
  }

  /// Coordinates of v over the E-basis.
  Vec coords(const SkewPoly& v) const {
    const Tower& T = R_.tower();
    const Vec c = linalg::apply(T.Fq(), coord_inv_, fq_coords(T, v, d_));
    Vec out(T.n());
    for (unsigned j = 0; j < T.n(); ++j) {
      std::vector<Elem> digits(c.begin() + j * d_, c.begin() + (j + 1) * d_);
      out[j] = E_->compose(digits);
    }
    return out;
  }

  /// A(u): column j holds the E-coordinates of (u b_j) mod_r f.
  Matrix operator()(const SkewPoly& u) const {
    std::vector<Vec> cols;
    for (const auto& b : basis_) cols.push_back(coords(R_.mod_right(R_.mul(u, b), f_)));
    return Matrix::from_columns(cols);
  }

 private:
  SkewPoly circ(const SkewPoly& a, const SkewPoly& b) const { return R_.mod_right(R_.mul(a, b), f_); }

  std::uint64_t mult_order(const SkewPoly& e) const {
    const SkewPoly one = SkewPoly::constant(1);
    SkewPoly cur = e;
    std::uint64_t k = 1;
    while (!(cur == one)) {
      cur = circ(cur, e);
      ++k;
    }
    return k;
  }

  SkewRing R_;
  SkewPoly f_;
  unsigned d_ = 0;
  CentralPoly hhat_;
  SkewPoly gamma_;
  CentralPoly minpoly_;
  std::vector<SkewPoly> powers_;
  std::shared_ptr<const Field> E_;
  std::vector<SkewPoly> basis_;
  Matrix coord_inv_;
};

}  // namespace skewsf

#endif  // SKEWSF_SKEWPOLY_HPP
