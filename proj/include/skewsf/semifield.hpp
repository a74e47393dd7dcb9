#ifndef SKEWSF_SEMIFIELD_HPP
#define SKEWSF_SEMIFIELD_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "skewsf/error.hpp"
#include "skewsf/linalg.hpp"
#include "skewsf/skewpoly.hpp"

namespace skewsf {

enum class Side { right, left };

inline const char* to_string(Side s) { return s == Side::right ? "right" : "left"; }

inline constexpr std::uint64_t kExhaustiveBound = std::uint64_t{1} << 12;

/// S_f = (V, o_f): residues of degree < d = deg f with a o b = ab mod_r f
/// (Side::right) or a o b = ab mod_l f (Side::left, the left-division
/// variant, normally built in K[t; sigma^-1]).
///
/// The constructor does not insist on irreducibility so that reducible
/// moduli can be examined; use Semifield::checked for validated input.
class Semifield {
 public:
  static constexpr unsigned kMaxDegree = 64;

  Semifield(SkewRing R, const SkewPoly& f, Side side = Side::right)
      : R_(std::move(R)), f_(R_.monic(f)), side_(side) {
    if (R_.has_derivation()) throw precondition_error("semifields are built over rings without derivation");
    if (f_.degree() < 1) throw precondition_error("semifield modulus must have degree >= 1");
    if (f_.degree() > static_cast<int>(kMaxDegree)) throw bound_error("semifield modulus degree too large");
    d_ = static_cast<unsigned>(f_.degree());
    order_ = checked_pow(R_.tower().Q(), d_);
    if (order_ == 0) throw bound_error("semifield order overflows");
    fsig_.assign(std::size_t{d_} * (d_ + 1), 0);
    for (unsigned k = 0; k < d_; ++k)
      for (unsigned j = 0; j <= d_; ++j) fsig_[k * (d_ + 1) + j] = R_.sig(f_.c[j], static_cast<long>(k));
    const unsigned n = R_.n();
    const std::uint32_t Q = R_.tower().Q();
    sigtab_.resize(std::size_t{n} * Q);
    for (unsigned k = 0; k < n; ++k)
      for (Elem a = 0; a < Q; ++a) sigtab_[std::size_t{k} * Q + a] = R_.sig(a, static_cast<long>(k));
  }

  static Semifield checked(SkewRing R, const SkewPoly& f, Side side = Side::right) {
    if (f.degree() < 1 || !is_irreducible(R, f)) throw precondition_error("semifield modulus is not irreducible");
    return Semifield(std::move(R), f, side);
  }

  const SkewRing& ring() const { return R_; }
  const Tower& tower() const { return R_.tower(); }
  const SkewPoly& f() const { return f_; }
  Side side() const { return side_; }
  unsigned d() const { return d_; }
  /// q^(nd).
  std::uint64_t order() const { return order_; }
  /// Dimension over F_p: h n d.
  unsigned fp_dim() const { return tower().h() * tower().n() * d_; }
  /// Dimension over F_q: n d.
  unsigned fq_dim() const { return tower().n() * d_; }

  SkewPoly element(std::uint64_t index) const { return poly_from_index(tower(), d_, index); }
  std::uint64_t index(const SkewPoly& a) const { return poly_index(tower(), a); }

  SkewPoly add(const SkewPoly& a, const SkewPoly& b) const { return R_.add(a, b); }

  SkewPoly mul(const SkewPoly& a, const SkewPoly& b) const {
    if (a.degree() >= static_cast<int>(d_) || b.degree() >= static_cast<int>(d_))
      throw precondition_error("semifield operand degree out of range");
    Elem A[kMaxDegree] = {}, B[kMaxDegree] = {}, C[kMaxDegree];
    std::copy(a.c.begin(), a.c.end(), A);
    std::copy(b.c.begin(), b.c.end(), B);
    mul_raw(A, B, C);
    return SkewPoly(std::vector<Elem>(C, C + d_));
  }

  std::uint64_t mul_index(std::uint64_t a, std::uint64_t b) const {
    Elem A[kMaxDegree], B[kMaxDegree], C[kMaxDegree];
    decode(a, A);
    decode(b, B);
    mul_raw(A, B, C);
    return encode(C);
  }

  /// Coefficient arrays of length d().
  void mul_raw(const Elem* a, const Elem* b, Elem* out) const {
    const Field& F = R_.K();
    Elem buf[2 * kMaxDegree] = {};
    const std::uint32_t Q = R_.tower().Q();
    for (unsigned i = 0; i < d_; ++i) {
      if (a[i] == 0) continue;
      const Elem* sg = &sigtab_[std::size_t{i % R_.n()} * Q];
      for (unsigned j = 0; j < d_; ++j)
        if (b[j] != 0) buf[i + j] = F.add(buf[i + j], F.mul(a[i], sg[b[j]]));
    }
    if (side_ == Side::right) {
      for (unsigned top = 2 * d_ - 1; top-- > d_;) {
        const Elem c = buf[top];
        if (c == 0) continue;
        const unsigned k = top - d_;
        const Elem* fs = &fsig_[k * (d_ + 1)];
        for (unsigned j = 0; j < d_; ++j) buf[j + k] = F.sub(buf[j + k], F.mul(c, fs[j]));
        buf[top] = 0;
      }
    } else {
      for (unsigned top = 2 * d_ - 1; top-- > d_;) {
        if (buf[top] == 0) continue;
        const unsigned k = top - d_;
        const Elem c = R_.sig(buf[top], -static_cast<long>(d_));
        for (unsigned j = 0; j < d_; ++j)
          buf[j + k] = F.sub(buf[j + k], F.mul(f_.c[j], R_.sig(c, static_cast<long>(j))));
        buf[top] = 0;
      }
    }
    std::copy(buf, buf + d_, out);
  }

  void decode(std::uint64_t index, Elem* out) const {
    for (unsigned i = 0; i < d_; ++i) {
      out[i] = static_cast<Elem>(index % tower().Q());
      index /= tower().Q();
    }
  }
  std::uint64_t encode(const Elem* a) const {
    std::uint64_t idx = 0;
    for (unsigned i = d_; i-- > 0;) idx = idx * tower().Q() + a[i];
    return idx;
  }

  // F_p coordinates: index m*d + i is the m-th base-p digit of the code of
  // the coefficient of t^i (i inner, matching the x^j t^i F_q convention).
  Vec fp_coords(const SkewPoly& a) const {
    Vec v(fp_dim(), 0);
    const unsigned levels = tower().h() * tower().n();
    for (unsigned i = 0; i < a.c.size(); ++i) {
      Elem code = a.c[i];
      for (unsigned m = 0; m < levels; ++m) {
        v[m * d_ + i] = code % tower().p();
        code /= tower().p();
      }
    }
    return v;
  }
  SkewPoly from_fp_coords(const Vec& v) const {
    const unsigned levels = tower().h() * tower().n();
    std::vector<Elem> c(d_, 0);
    for (unsigned i = 0; i < d_; ++i) {
      Elem code = 0;
      for (unsigned m = levels; m-- > 0;) code = code * tower().p() + v[m * d_ + i];
      c[i] = code;
    }
    return SkewPoly(std::move(c));
  }
  SkewPoly fp_basis(unsigned k) const {
    Vec v(fp_dim(), 0);
    v[k] = 1;
    return from_fp_coords(v);
  }

  /// F_p matrix of b -> a o b.
  Matrix left_mult_fp(const SkewPoly& a) const {
    std::vector<Vec> cols;
    for (unsigned k = 0; k < fp_dim(); ++k) cols.push_back(fp_coords(mul(a, fp_basis(k))));
    return Matrix::from_columns(cols);
  }
  /// F_p matrix of b -> b o u.
  Matrix right_mult_fp(const SkewPoly& u) const {
    std::vector<Vec> cols;
    for (unsigned k = 0; k < fp_dim(); ++k) cols.push_back(fp_coords(mul(fp_basis(k), u)));
    return Matrix::from_columns(cols);
  }

 private:
  SkewRing R_;
  SkewPoly f_;
  Side side_;
  unsigned d_ = 0;
  std::uint64_t order_ = 0;
  std::vector<Elem> fsig_;    // sigma^k(f_j)
  std::vector<Elem> sigtab_;  // sigma^k(a) at k * Q + a, k < n
};

// ---------------------------------------------------------------------------
// Axioms

struct AxiomResult {
  std::string axiom;
  bool pass = true;
  std::string witness;
};

struct AxiomReport {
  std::vector<AxiomResult> results;
  bool sampled = false;
  bool all_pass() const {
    return std::all_of(results.begin(), results.end(), [](const AxiomResult& r) { return r.pass; });
  }
  const AxiomResult& get(const std::string& name) const {
    for (const auto& r : results)
      if (r.axiom == name) return r;
    throw precondition_error("no axiom " + name);
  }
};

struct CheckOptions {
  std::uint64_t exhaustive_bound = kExhaustiveBound;
  std::uint64_t samples = 20000;
  std::uint64_t seed = 1;
};

namespace detail {

inline std::string show_pair(std::uint64_t a, std::uint64_t b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

/// Either every index below `order` or a seeded sample of them.
inline std::vector<std::uint64_t> scan_set(std::uint64_t order, bool exhaustive, std::uint64_t samples,
                                           std::mt19937_64& rng) {
  std::vector<std::uint64_t> out;
  if (exhaustive) {
    out.resize(order);
    for (std::uint64_t i = 0; i < order; ++i) out[i] = i;
  } else {
    std::uniform_int_distribution<std::uint64_t> pick(0, order - 1);
    out.resize(samples);
    for (auto& x : out) x = pick(rng);
  }
  return out;
}

}  // namespace detail

/// Checks S1-S4. Distributivity is verified as additivity of x -> a o x and
/// x -> x o a against the F_p-coordinate expansion; with S2 established, S3
/// reduces to invertibility of every left multiplication matrix.
inline AxiomReport check_axioms(const Semifield& S, const CheckOptions& opt = {}) {
  AxiomReport rep;
  const bool exhaustive = S.order() <= opt.exhaustive_bound;
  rep.sampled = !exhaustive;
  std::mt19937_64 rng(opt.seed);
  const auto xs = detail::scan_set(S.order(), exhaustive, opt.samples, rng);
  const unsigned dim = S.fp_dim();
  const Field& Fp = S.tower().Fp();
  std::vector<SkewPoly> basis;
  for (unsigned k = 0; k < dim; ++k) basis.push_back(S.fp_basis(k));

  {
    AxiomResult r{"S1", true, {}};
    const SkewPoly zero;
    for (auto xi : xs) {
      const SkewPoly x = S.element(xi);
      if (!(S.add(x, zero) == x) || !S.add(x, S.ring().neg(x)).is_zero()) {
        r = {"S1", false, "x = " + std::to_string(xi)};
        break;
      }
      for (const auto& b : basis)
        if (!(S.add(x, b) == S.add(b, x))) {
          r = {"S1", false, "x = " + std::to_string(xi)};
          break;
        }
      if (!r.pass) break;
    }
    rep.results.push_back(r);
  }

  {
    // x o y against the expansion of y over the base-p digits of its index:
    // index digit j is digit (j mod hn) of the code of coefficient j / hn.
    AxiomResult r{"S2", true, {}};
    const Field& K = S.tower().K();
    const unsigned d = S.d(), L = S.tower().h() * S.tower().n(), digits = L * d;
    const Elem p = S.tower().p();
    std::vector<Elem> lcol(std::size_t{digits} * d), rcol(std::size_t{digits} * d);
    std::vector<Elem> pw(L);
    for (unsigned m = 0; m < L; ++m) pw[m] = static_cast<Elem>(checked_pow(p, m));
    Elem X[Semifield::kMaxDegree], Y[Semifield::kMaxDegree], E[Semifield::kMaxDegree], C[Semifield::kMaxDegree];
    auto columns = [&] {
      for (unsigned j = 0; j < digits; ++j) {
        std::fill(E, E + d, 0);
        E[j / L] = pw[j % L];
        S.mul_raw(X, E, &lcol[std::size_t{j} * d]);
        S.mul_raw(E, X, &rcol[std::size_t{j} * d]);
      }
    };
    auto fail = [&](bool left, std::uint64_t xi, std::uint64_t yi) {
      r = {"S2", false,
           left ? "left distributivity fails at " + detail::show_pair(xi, yi)
                : "right distributivity fails at " + detail::show_pair(yi, xi)};
    };
    if (exhaustive) {
      const std::uint64_t N = S.order();
      std::vector<Elem> linL(N * d), linR(N * d);
      for (std::uint64_t xi = 0; xi < N && r.pass; ++xi) {
        S.decode(xi, X);
        columns();
        std::fill(linL.begin(), linL.begin() + d, 0);
        std::fill(linR.begin(), linR.begin() + d, 0);
        for (std::uint64_t yi = 1; yi < N; ++yi) {
          // lowest nonzero base-p digit of yi
          unsigned j = 0;
          std::uint64_t step = 1;
          while ((yi / step) % p == 0) step *= p, ++j;
          const std::uint64_t prev = yi - step;
          for (unsigned i = 0; i < d; ++i) {
            linL[yi * d + i] = K.add(linL[prev * d + i], lcol[std::size_t{j} * d + i]);
            linR[yi * d + i] = K.add(linR[prev * d + i], rcol[std::size_t{j} * d + i]);
          }
        }
        for (std::uint64_t yi = 0; yi < N; ++yi) {
          S.decode(yi, Y);
          S.mul_raw(X, Y, C);
          if (!std::equal(C, C + d, &linL[yi * d])) {
            fail(true, xi, yi);
            break;
          }
          S.mul_raw(Y, X, C);
          if (!std::equal(C, C + d, &linR[yi * d])) {
            fail(false, xi, yi);
            break;
          }
        }
      }
    } else {
      const auto ys = detail::scan_set(S.order(), false, opt.samples, rng);
      std::vector<Elem> el(d), er(d);
      for (std::size_t k = 0; k < xs.size(); ++k) {
        S.decode(xs[k], X);
        S.decode(ys[k], Y);
        columns();
        std::fill(el.begin(), el.end(), 0);
        std::fill(er.begin(), er.end(), 0);
        for (unsigned j = 0; j < digits; ++j) {
          const Elem digit = (Y[j / L] / pw[j % L]) % p;
          if (digit == 0) continue;
          for (unsigned i = 0; i < d; ++i) {
            el[i] = K.add(el[i], K.mul(digit, lcol[std::size_t{j} * d + i]));
            er[i] = K.add(er[i], K.mul(digit, rcol[std::size_t{j} * d + i]));
          }
        }
        S.mul_raw(X, Y, C);
        if (!std::equal(C, C + d, el.begin())) {
          fail(true, xs[k], ys[k]);
          break;
        }
        S.mul_raw(Y, X, C);
        if (!std::equal(C, C + d, er.begin())) {
          fail(false, xs[k], ys[k]);
          break;
        }
      }
    }
    rep.results.push_back(r);
  }

  {
    AxiomResult r{"S3", true, {}};
    for (auto ai : xs) {
      if (ai == 0) continue;
      const SkewPoly a = S.element(ai);
      const auto ker = linalg::kernel(Fp, S.left_mult_fp(a));
      if (!ker.empty()) {
        const auto b = S.from_fp_coords(ker.front());
        r = {"S3", false, "zero divisor " + detail::show_pair(ai, S.index(b))};
        break;
      }
    }
    rep.results.push_back(r);
  }

  {
    AxiomResult r{"S4", true, {}};
    const SkewPoly one = SkewPoly::constant(1);
    for (auto xi : xs) {
      const SkewPoly x = S.element(xi);
      if (!(S.mul(one, x) == x) || !(S.mul(x, one) == x)) {
        r = {"S4", false, "identity fails at x = " + std::to_string(xi)};
        break;
      }
    }
    rep.results.push_back(r);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Nuclei

enum class Nucleus { left, middle, right, centre };

inline const char* to_string(Nucleus w) {
  switch (w) {
    case Nucleus::left: return "left";
    case Nucleus::middle: return "middle";
    case Nucleus::right: return "right";
    case Nucleus::centre: return "centre";
  }
  return "?";
}

namespace detail {

inline bool associates(const Semifield& S, const SkewPoly& x, const SkewPoly& y, const SkewPoly& z) {
  return S.mul(S.mul(x, y), z) == S.mul(x, S.mul(y, z));
}

inline bool in_nucleus(const Semifield& S, Nucleus which, const SkewPoly& c, const std::vector<SkewPoly>& basis) {
  for (const auto& u : basis)
    for (const auto& v : basis) {
      bool ok = true;
      switch (which) {
        case Nucleus::left: ok = associates(S, c, u, v); break;
        case Nucleus::middle: ok = associates(S, u, c, v); break;
        case Nucleus::right: ok = associates(S, u, v, c); break;
        case Nucleus::centre:
          ok = associates(S, c, u, v) && associates(S, u, c, v) && associates(S, u, v, c);
          break;
      }
      if (!ok) return false;
    }
  if (which == Nucleus::centre)
    for (const auto& u : basis)
      if (!(S.mul(c, u) == S.mul(u, c))) return false;
  return true;
}

}  // namespace detail

/// Brute-force nucleus: every element is tested; the associator is
/// trilinear over F_p, so the two remaining slots range over an F_p-basis.
/// Result in index order.
inline std::vector<SkewPoly> nucleus(const Semifield& S, Nucleus which,
                                     std::uint64_t bound = kExhaustiveBound) {
  if (S.order() > bound) throw bound_error("nucleus scan exceeds exhaustive bound");
  std::vector<SkewPoly> basis;
  for (unsigned k = 0; k < S.fp_dim(); ++k) basis.push_back(S.fp_basis(k));
  std::vector<SkewPoly> out;
  for (std::uint64_t i = 0; i < S.order(); ++i) {
    SkewPoly c = S.element(i);
    if (detail::in_nucleus(S, which, c, basis)) out.push_back(std::move(c));
  }
  return out;
}

/// The nuclei predicted by theory: N_r = E(f), N_l = N_m = K, Z = F_q for
/// right-division semifields; a left-division semifield is the image of a
/// right-division one under the anti-isomorphism psi, which swaps N_l and N_r.
inline std::vector<SkewPoly> nucleus_theory(const Semifield& S, Nucleus which) {
  const Tower& T = S.tower();
  auto sorted = [&](std::vector<SkewPoly> v) {
    std::sort(v.begin(), v.end(), [&](const SkewPoly& a, const SkewPoly& b) { return S.index(a) < S.index(b); });
    return v;
  };
  auto constants = [&](std::uint32_t count) {
    std::vector<SkewPoly> v;
    for (Elem a = 0; a < count; ++a) v.push_back(SkewPoly::constant(a));
    return v;
  };
  // Central irreducible f forces n = 1 or d = 1, and S_f is then a field.
  if (S.ring().is_central(S.f()) || S.d() == 1) {
    std::vector<SkewPoly> all;
    for (std::uint64_t i = 0; i < S.order(); ++i) all.push_back(S.element(i));
    return all;
  }
  if (which == Nucleus::centre) return constants(T.q());
  const bool eigen_slot = (S.side() == Side::right) ? which == Nucleus::right : which == Nucleus::left;
  if (!eigen_slot) return constants(T.Q());
  if (S.side() == Side::right) return eigenring(S.ring(), S.f()).elements(T);
  const SkewRing R = S.ring().opposite();
  const SkewPoly f = anti_involution(S.ring(), S.f());
  std::vector<SkewPoly> out;
  for (const auto& e : eigenring(R, f).elements(T)) out.push_back(anti_involution(R, e));
  return sorted(std::move(out));
}

/// Some (x, y, z) with (x o y) o z != x o (y o z), searched over F_p-basis
/// triples (the associator is trilinear, so one exists there if anywhere).
inline std::optional<std::array<SkewPoly, 3>> non_associative_witness(const Semifield& S) {
  std::vector<SkewPoly> basis;
  for (unsigned k = 0; k < S.fp_dim(); ++k) basis.push_back(S.fp_basis(k));
  for (const auto& x : basis)
    for (const auto& y : basis)
      for (const auto& z : basis)
        if (!detail::associates(S, x, y, z)) return std::array<SkewPoly, 3>{x, y, z};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Isotopisms

/// (F, G, H) over F_p with x^F o' y^G = (x o y)^H; maps act on F_p
/// coordinate columns.
struct LinearTriple {
  Matrix F, G, H;
  friend bool operator==(const LinearTriple&, const LinearTriple&) = default;
};

inline LinearTriple identity_triple(const Semifield& S) {
  const Matrix I = Matrix::identity(S.fp_dim());
  return {I, I, I};
}

/// second o first.
inline LinearTriple compose(const Field& Fp, const LinearTriple& second, const LinearTriple& first) {
  return {linalg::mul(Fp, second.F, first.F), linalg::mul(Fp, second.G, first.G),
          linalg::mul(Fp, second.H, first.H)};
}

inline LinearTriple inverse(const Field& Fp, const LinearTriple& t) {
  auto fi = linalg::inverse(Fp, t.F), gi = linalg::inverse(Fp, t.G), hi = linalg::inverse(Fp, t.H);
  if (!fi || !gi || !hi) throw precondition_error("triple component is singular");
  return {*fi, *gi, *hi};
}

struct TripleCheck {
  bool ok = true;
  bool exhaustive = true;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> witness;
};

/// Checks x^F o' y^G == (x o y)^H over all pairs (or a seeded sample above
/// the exhaustive bound).
inline TripleCheck verify_triple(const Semifield& S, const Semifield& S2, const LinearTriple& T,
                                 const CheckOptions& opt = {}) {
  const std::size_t dim = S.fp_dim();
  if (S2.fp_dim() != dim || S.tower().p() != S2.tower().p()) throw precondition_error("verify_triple: dimension mismatch");
  for (const Matrix* m : {&T.F, &T.G, &T.H})
    if (m->rows() != dim || m->cols() != dim) throw precondition_error("verify_triple: matrix size mismatch");
  const Field& Fp = S.tower().Fp();
  for (const Matrix* m : {&T.F, &T.G, &T.H})
    if (linalg::rank(Fp, *m) != dim) return {false, true, std::nullopt};

  TripleCheck out;
  out.exhaustive = S.order() <= opt.exhaustive_bound;
  std::mt19937_64 rng(opt.seed);
  std::vector<std::uint64_t> xs, ys;
  if (out.exhaustive) {
    xs = detail::scan_set(S.order(), true, 0, rng);
    ys = xs;
  } else {
    xs = detail::scan_set(S.order(), false, opt.samples, rng);
    ys = detail::scan_set(S.order(), false, opt.samples, rng);
  }
  std::vector<Vec> Fx(xs.size());
  for (std::size_t a = 0; a < xs.size(); ++a) Fx[a] = linalg::apply(Fp, T.F, S.fp_coords(S.element(xs[a])));
  std::vector<SkewPoly> Gy(ys.size());
  for (std::size_t b = 0; b < ys.size(); ++b)
    Gy[b] = S2.from_fp_coords(linalg::apply(Fp, T.G, S.fp_coords(S.element(ys[b]))));
  auto check = [&](std::size_t a, std::size_t b) {
    const SkewPoly lhs = S2.mul(S2.from_fp_coords(Fx[a]), Gy[b]);
    const Vec rhs = linalg::apply(Fp, T.H, S.fp_coords(S.mul(S.element(xs[a]), S.element(ys[b]))));
    return S2.fp_coords(lhs) == rhs;
  };
  if (out.exhaustive) {
    for (std::size_t a = 0; a < xs.size(); ++a)
      for (std::size_t b = 0; b < ys.size(); ++b)
        if (!check(a, b)) return {false, true, std::make_pair(xs[a], ys[b])};
  } else {
    for (std::size_t k = 0; k < xs.size(); ++k)
      if (!check(k, k)) return {false, false, std::make_pair(xs[k], ys[k])};
  }
  return out;
}

/// Isotopism S_g -> S_f from g u = 0 mod_r f: F = id, G = H = (b -> b o_f u).
inline LinearTriple isotopism_from_similarity(const Semifield& Sf, const Semifield& Sg, const SkewPoly& u) {
  if (!Sf.ring().same_as(Sg.ring()) || Sf.d() != Sg.d() || Sf.side() != Side::right || Sg.side() != Side::right)
    throw precondition_error("isotopism_from_similarity: incompatible semifields");
  if (u.is_zero() || u.degree() >= static_cast<int>(Sf.d())) throw precondition_error("invalid similarity witness");
  const SkewRing& R = Sf.ring();
  if (!R.mod_right(R.mul(Sg.f(), u), Sf.f()).is_zero())
    throw precondition_error("witness does not satisfy g u = 0 mod f");
  const Matrix H = Sf.right_mult_fp(u);
  return {Matrix::identity(Sf.fp_dim()), H, H};
}

/// The isomorphism a -> phi(a) = a^rho(alpha t) from S_f onto S_phi(f).
struct RingIsomorphism {
  Semifield target;
  Matrix map;  // over F_p
  LinearTriple triple() const { return {map, map, map}; }
};

inline RingIsomorphism isomorphism_from_ring_automorphism(const Semifield& Sf, Elem alpha, FieldAut rho) {
  if (Sf.side() != Side::right) throw precondition_error("ring automorphism isomorphism needs a right semifield");
  const SkewRing& R = Sf.ring();
  Semifield target(R, apply_ring_automorphism(R, Sf.f(), alpha, rho));
  std::vector<Vec> cols;
  for (unsigned k = 0; k < Sf.fp_dim(); ++k)
    cols.push_back(target.fp_coords(apply_ring_automorphism(R, Sf.fp_basis(k), alpha, rho)));
  return {std::move(target), Matrix::from_columns(cols)};
}

/// The left-division semifield of psi(f) in K[t; sigma^-1]; psi is an
/// anti-isomorphism psi(a o_f b) = psi(b) o' psi(a).
inline Semifield left_division_variant(const Semifield& Sf) {
  if (Sf.side() != Side::right) throw precondition_error("left_division_variant expects a right semifield");
  return Semifield(Sf.ring().opposite(), anti_involution(Sf.ring(), Sf.f()), Side::left);
}

}  // namespace skewsf

#endif  // SKEWSF_SEMIFIELD_HPP
