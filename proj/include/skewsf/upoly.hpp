#ifndef SKEWSF_UPOLY_HPP
#define SKEWSF_UPOLY_HPP

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "skewsf/error.hpp"
#include "skewsf/field.hpp"

namespace skewsf {

/// Commutative polynomial over a Field, constant term first, no trailing
/// zeros. The zero polynomial has an empty coefficient list.
struct UPoly {
  std::vector<Elem> c;

  UPoly() = default;
  explicit UPoly(std::vector<Elem> coeffs) : c(std::move(coeffs)) { trim(); }

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  Elem lead() const { return c.empty() ? 0 : c.back(); }
  Elem coeff(std::size_t i) const { return i < c.size() ? c[i] : 0; }
  bool is_monic() const { return !c.empty() && c.back() == 1; }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  friend bool operator==(const UPoly&, const UPoly&) = default;
  friend auto operator<=>(const UPoly& a, const UPoly& b) {
    if (a.c.size() != b.c.size()) return a.c.size() <=> b.c.size();
    return std::lexicographical_compare_three_way(a.c.rbegin(), a.c.rend(), b.c.rbegin(), b.c.rend());
  }
};

/// Polynomials over F_q in the central variable y.
using CentralPoly = UPoly;

namespace upoly {

inline UPoly add(const Field& F, const UPoly& a, const UPoly& b) {
  std::vector<Elem> r(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(a.coeff(i), b.coeff(i));
  return UPoly(std::move(r));
}

inline UPoly sub(const Field& F, const UPoly& a, const UPoly& b) {
  std::vector<Elem> r(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub(a.coeff(i), b.coeff(i));
  return UPoly(std::move(r));
}

inline UPoly scale(const Field& F, Elem s, const UPoly& a) {
  std::vector<Elem> r(a.c.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.mul(s, a.c[i]);
  return UPoly(std::move(r));
}

inline UPoly mul(const Field& F, const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Elem> r(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a.c[i], b.c[j]));
  }
  return UPoly(std::move(r));
}

inline std::pair<UPoly, UPoly> divmod(const Field& F, const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw precondition_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {UPoly{}, a};
  std::vector<Elem> r = a.c;
  std::vector<Elem> q(a.c.size() - b.c.size() + 1, 0);
  const Elem inv_lead = F.inv(b.lead());
  const std::size_t db = b.c.size() - 1;
  for (std::size_t k = r.size(); k-- > db;) {
    const Elem c = F.mul(r[k], inv_lead);
    if (c == 0) continue;
    q[k - db] = c;
    for (std::size_t j = 0; j <= db; ++j) r[k - db + j] = F.sub(r[k - db + j], F.mul(c, b.c[j]));
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

inline UPoly mod(const Field& F, const UPoly& a, const UPoly& b) { return divmod(F, a, b).second; }

inline UPoly monic(const Field& F, const UPoly& a) {
  if (a.is_zero()) return a;
  return scale(F, F.inv(a.lead()), a);
}

inline UPoly gcd(const Field& F, UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, a);
}

inline UPoly lcm(const Field& F, const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return monic(F, divmod(F, mul(F, a, b), gcd(F, a, b)).first);
}

/// Monic polynomial of degree d whose lower coefficients are the base-|F|
/// digits of `index`. Index order is lexicographic from the top coefficient.
inline UPoly monic_from_index(const Field& F, unsigned d, std::uint64_t index) {
  std::vector<Elem> c(d + 1);
  for (unsigned i = 0; i < d; ++i) {
    c[i] = static_cast<Elem>(index % F.order());
    index /= F.order();
  }
  c[d] = 1;
  return UPoly(std::move(c));
}

inline std::uint64_t monic_index(const Field& F, const UPoly& f) {
  std::uint64_t idx = 0;
  for (int i = f.degree() - 1; i >= 0; --i) idx = idx * F.order() + f.c[static_cast<std::size_t>(i)];
  return idx;
}

inline constexpr std::uint64_t kEnumerationBound = std::uint64_t{1} << 24;

/// All monic irreducible polynomials of degree d over F, in index order.
/// Reducibles are sieved out as products g*h with g irreducible of degree
/// at most d/2.
inline std::vector<UPoly> enumerate_irreducible(const Field& F, unsigned d,
                                                std::uint64_t bound = kEnumerationBound) {
  if (d == 0) return {};
  const std::uint64_t total = checked_pow(F.order(), d);
  if (total == 0 || total > bound) throw bound_error("enumeration of degree-" + std::to_string(d) + " polynomials exceeds bound");
  std::vector<char> reducible(total, 0);
  for (unsigned e = 1; e <= d / 2; ++e) {
    const std::uint64_t cofactors = checked_pow(F.order(), d - e);
    for (const UPoly& g : enumerate_irreducible(F, e, bound)) {
      for (std::uint64_t j = 0; j < cofactors; ++j)
        reducible[monic_index(F, mul(F, g, monic_from_index(F, d - e, j)))] = 1;
    }
  }
  std::vector<UPoly> out;
  for (std::uint64_t i = 0; i < total; ++i)
    if (!reducible[i]) out.push_back(monic_from_index(F, d, i));
  return out;
}

/// Trial division by every monic irreducible of degree at most deg(f)/2.
inline bool is_irreducible(const Field& F, const UPoly& f) {
  if (f.degree() < 1) return false;
  const UPoly m = monic(F, f);
  for (unsigned e = 1; e <= static_cast<unsigned>(m.degree()) / 2; ++e)
    for (const UPoly& g : enumerate_irreducible(F, e))
      if (mod(F, m, g).is_zero()) return false;
  return true;
}

/// The least monic irreducible of degree d in index order.
inline UPoly least_irreducible(const Field& F, unsigned d) {
  const std::uint64_t total = checked_pow(F.order(), d);
  if (total == 0) throw bound_error("modulus search space too large");
  for (std::uint64_t i = 0; i < total; ++i) {
    UPoly f = monic_from_index(F, d, i);
    if (is_irreducible(F, f)) return f;
  }
  throw structural_error("no irreducible polynomial found");
}

inline Elem eval(const Field& F, const UPoly& f, Elem x) {
  Elem r = 0;
  for (std::size_t i = f.c.size(); i-- > 0;) r = F.add(F.mul(r, x), f.c[i]);
  return r;
}

}  // namespace upoly
}  // namespace skewsf

#endif  // SKEWSF_UPOLY_HPP
