#ifndef SKEWSF_FIELD_HPP
#define SKEWSF_FIELD_HPP

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "skewsf/error.hpp"

namespace skewsf {

/// Field elements are stored as their canonical integer code: the base-p
/// digits of the code are the coordinates over the prime field, grouped
/// level by level along the tower (innermost level least significant).
using Elem = std::uint32_t;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// b^e, or 0 when the result does not fit in 64 bits.
inline std::uint64_t checked_pow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (b != 0 && r > std::numeric_limits<std::uint64_t>::max() / b) return 0;
    r *= b;
  }
  return r;
}

/// Finite field with full log / antilog / Zech tables.
///
/// A field is either a prime field F_p or a simple extension base[x]/(m(x))
/// of another Field. Element codes of an extension are sum c_i * |base|^i
/// where c_i is the code of the coefficient of x^i; subfield elements are
/// therefore exactly the codes below |base|.
class Field {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 24;

  static std::shared_ptr<const Field> prime(std::uint32_t p) {
    if (!is_prime(p)) throw precondition_error("characteristic " + std::to_string(p) + " is not prime");
    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = p;
    f->order_ = p;
    f->pdeg_ = 1;
    f->degree_ = 1;
    f->base_order_ = p;
    f->build_tables([p](Elem a, Elem b) { return static_cast<Elem>((std::uint64_t{a} * b) % p); });
    return f;
  }

  /// `modulus` is monic of degree k >= 1 over `base`, constant term first,
  /// and must be irreducible (callers check this; a reducible modulus
  /// surfaces as a structural_error).
  static std::shared_ptr<const Field> extension(std::shared_ptr<const Field> base, std::vector<Elem> modulus) {
    const std::size_t k = modulus.size() - 1;
    if (modulus.size() < 2 || modulus.back() != 1)
      throw precondition_error("extension modulus must be monic of degree >= 1");
    const std::uint64_t order = checked_pow(base->order(), static_cast<unsigned>(k));
    if (order == 0 || order > kMaxOrder) throw bound_error("extension field too large");

    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = base->characteristic();
    f->order_ = static_cast<std::uint32_t>(order);
    f->pdeg_ = base->prime_degree() * static_cast<unsigned>(k);
    f->degree_ = static_cast<unsigned>(k);
    f->base_order_ = base->order();
    f->modulus_ = modulus;
    f->base_ = base;

    const Field& B = *base;
    const std::uint32_t b = B.order();
    auto mulmod = [&B, &modulus, k, b](Elem x, Elem y) -> Elem {
      std::vector<Elem> xs(k), ys(k), prod(2 * k - 1, 0);
      for (std::size_t i = 0; i < k; ++i) {
        xs[i] = x % b;
        x /= b;
        ys[i] = y % b;
        y /= b;
      }
      for (std::size_t i = 0; i < k; ++i) {
        if (xs[i] == 0) continue;
        for (std::size_t j = 0; j < k; ++j) prod[i + j] = B.add(prod[i + j], B.mul(xs[i], ys[j]));
      }
      for (std::size_t i = prod.size(); i-- > k;) {
        const Elem c = prod[i];
        if (c == 0) continue;
        for (std::size_t j = 0; j < k; ++j) prod[i - k + j] = B.sub(prod[i - k + j], B.mul(c, modulus[j]));
        prod[i] = 0;
      }
      Elem r = 0;
      for (std::size_t i = k; i-- > 0;) r = r * b + prod[i];
      return r;
    };
    f->build_tables(mulmod);
    return f;
  }

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t order() const { return order_; }
  /// order() == characteristic()^prime_degree().
  unsigned prime_degree() const { return pdeg_; }
  /// Degree over base(); 1 for a prime field.
  unsigned degree() const { return degree_; }
  std::uint32_t base_order() const { return base_order_; }
  const std::shared_ptr<const Field>& base() const { return base_; }
  const std::vector<Elem>& modulus() const { return modulus_; }
  Elem primitive() const { return exp_[order_ > 2 ? 1 : 0]; }
  bool contains(Elem a) const { return a < order_; }

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    if (a == 0) return b;
    if (b == 0) return a;
    const std::uint32_t la = log_[a];
    std::uint32_t diff = log_[b] + group_ - la;
    if (diff >= group_) diff -= group_;
    const std::uint32_t z = zech_[diff];
    if (z == kNone) return 0;
    return exp_[la + z];
  }
  Elem neg(Elem a) const {
    if (p_ == 2 || a == 0) return a;
    return exp_[log_[a] + neg_one_log_];
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const {
    if (a == 0) throw precondition_error("inverse of zero");
    return exp_[(group_ - log_[a]) % group_];
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    return exp_[static_cast<std::uint32_t>((std::uint64_t{log_[a]} * (e % group_)) % group_)];
  }
  /// a^(p^r), the r-th power of the absolute Frobenius.
  Elem frob(Elem a, unsigned r) const { return pow(a, pow_mod_group(p_, r)); }

  /// Discrete log base primitive(); a must be nonzero.
  std::uint32_t log(Elem a) const { return log_[a]; }
  Elem exp(std::uint64_t i) const { return exp_[i % group_]; }
  std::uint32_t group_order() const { return group_; }
  /// base^r reduced into [1, group order], so that 0 still maps to 0 under
  /// pow(a, result).
  std::uint64_t pow_mod_group(std::uint64_t base, std::uint64_t r) const {
    std::uint64_t res = 1 % group_, b = base % group_;
    for (; r; r >>= 1, b = b * b % group_)
      if (r & 1) res = res * b % group_;
    return res == 0 ? group_ : res;
  }

  /// Coordinate of x^i when `a` is viewed over base().
  Elem digit(Elem a, unsigned i) const {
    for (unsigned j = 0; j < i; ++j) a /= base_order_;
    return a % base_order_;
  }
  Elem compose(std::span<const Elem> digits) const {
    Elem r = 0;
    for (std::size_t i = digits.size(); i-- > 0;) r = r * base_order_ + digits[i];
    return r;
  }

  /// Coordinate in [0, p) of the prime-field basis vector number i.
  Elem prime_digit(Elem a, unsigned i) const {
    for (unsigned j = 0; j < i; ++j) a /= p_;
    return a % p_;
  }

 private:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  Field() = default;

  template <class MulFn>
  void build_tables(MulFn mul) {
    group_ = order_ - 1;
    exp_.assign(2 * static_cast<std::size_t>(group_), 0);
    log_.assign(order_, 0);
    bool found = false;
    for (Elem g = (order_ == 2 ? 1 : 2); g < order_ && !found; ++g) {
      Elem cur = 1;
      std::uint32_t i = 0;
      for (; i < group_; ++i) {
        if (i > 0 && cur == 1) break;
        exp_[i] = cur;
        cur = mul(cur, g);
      }
      found = (i == group_ && cur == 1);
    }
    if (!found) throw structural_error("no primitive element: modulus is not irreducible");
    for (std::uint32_t i = 0; i < group_; ++i) {
      exp_[i + group_] = exp_[i];
      log_[exp_[i]] = i;
    }
    // 1 + a only changes the lowest base-p digit of a's code.
    zech_.assign(group_, kNone);
    for (std::uint32_t i = 0; i < group_; ++i) {
      const Elem c = exp_[i];
      const Elem d0 = c % p_;
      const Elem s = c - d0 + (d0 + 1) % p_;
      if (s != 0) zech_[i] = log_[s];
    }
    neg_one_log_ = (p_ == 2) ? 0 : group_ / 2;
  }

  std::uint32_t p_ = 0;
  std::uint32_t order_ = 0;
  std::uint32_t group_ = 0;
  unsigned pdeg_ = 0;
  unsigned degree_ = 0;
  std::uint32_t base_order_ = 0;
  std::vector<Elem> modulus_;
  std::shared_ptr<const Field> base_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> zech_;
  std::uint32_t neg_one_log_ = 0;
};

}  // namespace skewsf

#endif  // SKEWSF_FIELD_HPP
