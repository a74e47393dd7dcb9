#ifndef SKEWSF_GF_HPP
#define SKEWSF_GF_HPP

#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "skewsf/error.hpp"
#include "skewsf/field.hpp"
#include "skewsf/upoly.hpp"

namespace skewsf {

/// Parameters of the tower F_p < F_q = F_{p^h} < K = F_{q^n}. Moduli are
/// listed constant term first; modulus_K coefficients are F_q codes.
struct FieldDesc {
  std::uint32_t p = 0;
  unsigned h = 0;
  unsigned n = 0;
  std::vector<Elem> modulus_q;
  std::vector<Elem> modulus_K;

  friend bool operator==(const FieldDesc&, const FieldDesc&) = default;
};

/// The automorphism x -> x^(q^s) of K over F_q.
struct AutoPower {
  unsigned s = 0;
  friend bool operator==(AutoPower, AutoPower) = default;
};

/// The automorphism x -> x^(p^r) of K (any field automorphism).
struct FieldAut {
  unsigned r = 0;
  friend bool operator==(FieldAut, FieldAut) = default;
};

inline constexpr std::uint64_t kDefaultFieldBound = std::uint64_t{1} << 16;

/// The field tower with arithmetic for K. F_q sits inside K as the codes
/// below q, so subfield membership is a range check.
class Tower {
 public:
  Tower(FieldDesc desc, std::shared_ptr<const Field> fp, std::shared_ptr<const Field> fq,
        std::shared_ptr<const Field> k)
      : desc_(std::move(desc)), fp_(std::move(fp)), fq_(std::move(fq)), k_(std::move(k)) {}

  const FieldDesc& desc() const { return desc_; }
  std::uint32_t p() const { return desc_.p; }
  unsigned h() const { return desc_.h; }
  unsigned n() const { return desc_.n; }
  std::uint32_t q() const { return fq_->order(); }
  /// |K| = q^n.
  std::uint32_t Q() const { return k_->order(); }

  const Field& Fp() const { return *fp_; }
  const Field& Fq() const { return *fq_; }
  const Field& K() const { return *k_; }
  const std::shared_ptr<const Field>& Fq_ptr() const { return fq_; }
  const std::shared_ptr<const Field>& K_ptr() const { return k_; }

  bool in_Fq(Elem a) const { return a < q(); }

  /// F_q-coordinate j of a in the basis 1, x, ..., x^(n-1) of K.
  Elem coord(Elem a, unsigned j) const {
    for (unsigned i = 0; i < j; ++i) a /= q();
    return a % q();
  }

  /// a^(q^s).
  Elem frobenius(Elem a, AutoPower s) const {
    return k_->pow(a, k_->pow_mod_group(q(), s.s % n()));
  }
  /// a^(p^r).
  Elem apply(FieldAut rho, Elem a) const { return k_->frob(a, rho.r); }

  /// N_{K/F_q}(a) = a * a^q * ... * a^(q^(n-1)) = a^((q^n-1)/(q-1)).
  Elem norm(Elem a) const {
    if (a == 0) return 0;
    return k_->pow(a, (std::uint64_t{Q()} - 1) / (q() - 1));
  }

  /// First alpha in code order with norm(alpha) == lambda.
  Elem norm_preimage(Elem lambda) const {
    if (lambda == 0) throw precondition_error("norm_preimage: lambda must be nonzero");
    if (!in_Fq(lambda)) throw precondition_error("norm_preimage: lambda must lie in F_q");
    for (Elem a = 1; a < Q(); ++a)
      if (norm(a) == lambda) return a;
    throw structural_error("norm is not surjective");
  }

 private:
  FieldDesc desc_;
  std::shared_ptr<const Field> fp_, fq_, k_;
};

/// Splits q = p^h; throws if q is not a prime power.
inline std::pair<std::uint32_t, unsigned> prime_power(std::uint64_t q) {
  if (q < 2) throw precondition_error("q must be a prime power");
  std::uint32_t p = 0;
  for (std::uint32_t d = 2; std::uint64_t{d} * d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  if (p == 0) return {static_cast<std::uint32_t>(q), 1};
  unsigned h = 0;
  while (q % p == 0) {
    q /= p;
    ++h;
  }
  if (q != 1) throw precondition_error("q is not a prime power");
  return {p, h};
}

/// Builds the tower with lexicographically least moduli.
inline std::shared_ptr<const Tower> build_tower(std::uint32_t p, unsigned h, unsigned n,
                                                std::uint64_t size_bound = kDefaultFieldBound) {
  if (!is_prime(p)) throw precondition_error("p = " + std::to_string(p) + " is not prime");
  if (h < 1 || n < 1) throw precondition_error("extension degrees must be >= 1");
  const std::uint64_t size = checked_pow(p, h * n);
  if (size == 0 || size > size_bound)
    throw bound_error("field of order " + std::to_string(p) + "^" + std::to_string(h * n) + " exceeds size bound");

  FieldDesc desc{p, h, n, {}, {}};
  auto fp = Field::prime(p);
  std::shared_ptr<const Field> fq = fp;
  if (h > 1) {
    desc.modulus_q = upoly::least_irreducible(*fp, h).c;
    fq = Field::extension(fp, desc.modulus_q);
  } else {
    desc.modulus_q = {0, 1};
  }
  std::shared_ptr<const Field> k = fq;
  if (n > 1) {
    desc.modulus_K = upoly::least_irreducible(*fq, n).c;
    k = Field::extension(fq, desc.modulus_K);
  } else {
    desc.modulus_K = {0, 1};
  }
  return std::make_shared<const Tower>(std::move(desc), fp, fq, k);
}

/// Rebuilds a tower from an explicit descriptor, validating the moduli.
inline std::shared_ptr<const Tower> build_tower(const FieldDesc& desc,
                                                std::uint64_t size_bound = kDefaultFieldBound) {
  auto reference = build_tower(desc.p, desc.h, desc.n, size_bound);
  if (reference->desc() == desc) return reference;
  auto fp = Field::prime(desc.p);
  auto check = [](const Field& F, const std::vector<Elem>& m, unsigned deg, const char* what) {
    UPoly u(m);
    if (u.degree() != static_cast<int>(deg) || !u.is_monic() ||
        !std::all_of(m.begin(), m.end(), [&](Elem c) { return c < F.order(); }))
      throw precondition_error(std::string(what) + " must be monic of the stated degree");
    if (deg > 1 && !upoly::is_irreducible(F, u)) throw precondition_error(std::string(what) + " is reducible");
  };
  std::shared_ptr<const Field> fq = fp;
  if (desc.h > 1) {
    check(*fp, desc.modulus_q, desc.h, "modulus_q");
    fq = Field::extension(fp, desc.modulus_q);
  }
  std::shared_ptr<const Field> k = fq;
  if (desc.n > 1) {
    check(*fq, desc.modulus_K, desc.n, "modulus_K");
    k = Field::extension(fq, desc.modulus_K);
  }
  return std::make_shared<const Tower>(desc, fp, fq, k);
}

}  // namespace skewsf

#endif  // SKEWSF_GF_HPP
