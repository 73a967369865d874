#pragma once
#include <cstdint>
#include <vector>

#include "prosmooth/errors.hpp"

namespace prosmooth {

// Prime p together with a working precision n; values live in Z/p^n.
// p^n must fit in 63 bits so that products can be reduced through
// unsigned 128-bit intermediates without ever overflowing.
struct PrimeCtx {
  std::uint64_t p = 2;
  unsigned n = 1;
  std::uint64_t q = 2;  // p^n, cached

  PrimeCtx(std::uint64_t prime, unsigned precision);

  bool operator==(const PrimeCtx& o) const { return p == o.p && n == o.n; }
  bool operator!=(const PrimeCtx& o) const { return !(*this == o); }

  // Same prime at precision m (m >= 1).
  PrimeCtx with_precision(unsigned m) const { return PrimeCtx(p, m); }
};

void require_same_ctx(const PrimeCtx& a, const PrimeCtx& b);

// Raw helpers on canonical residues in [0, ctx.q); used by the linear
// algebra kernels which keep matrices as plain residue arrays.
std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, const PrimeCtx& ctx);
std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, const PrimeCtx& ctx);
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, const PrimeCtx& ctx);
std::uint64_t neg_mod(std::uint64_t a, const PrimeCtx& ctx);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, const PrimeCtx& ctx);
std::uint64_t reduce_mod(long long k, const PrimeCtx& ctx);
// Largest v <= n with p^v | a; returns n exactly when a == 0.
unsigned valuation_mod(std::uint64_t a, const PrimeCtx& ctx);
bool is_unit_mod(std::uint64_t a, const PrimeCtx& ctx);
// Inverse of a unit (extended Euclid); throws error on non-units.
std::uint64_t inv_mod(std::uint64_t a, const PrimeCtx& ctx);
// 1 + u + ... + u^(e-1) mod p^n, by binary splitting (u-1 need not be a
// unit, so the closed form (u^e-1)/(u-1) is not available).
std::uint64_t geom_mod(std::uint64_t u, std::uint64_t e, const PrimeCtx& ctx);

// An element of Z/p^n carrying its context; arithmetic between different
// contexts is a hard error, never an implicit coercion.
class TruncatedInt {
 public:
  TruncatedInt(long long k, const PrimeCtx& ctx)
      : v_(reduce_mod(k, ctx)), ctx_(ctx) {}

  std::uint64_t value() const { return v_; }
  const PrimeCtx& ctx() const { return ctx_; }

  TruncatedInt operator+(const TruncatedInt& o) const;
  TruncatedInt operator-(const TruncatedInt& o) const;
  TruncatedInt operator*(const TruncatedInt& o) const;
  TruncatedInt operator-() const;
  bool operator==(const TruncatedInt& o) const;
  bool operator!=(const TruncatedInt& o) const { return !(*this == o); }

  unsigned valuation() const { return valuation_mod(v_, ctx_); }
  bool is_unit() const { return is_unit_mod(v_, ctx_); }
  bool is_zero() const { return v_ == 0; }

  // Reduction to a lower precision m <= n (extension would invent digits).
  TruncatedInt reduce_to(unsigned m) const;

 private:
  std::uint64_t v_;
  PrimeCtx ctx_;
};

TruncatedInt reduce(long long k, const PrimeCtx& ctx);

// A unit congruent to 1 mod p (mod 4 when p = 2): an admissible
// orientation value, i.e. an element of the torsion-free part of the units.
class TruncatedUnit {
 public:
  explicit TruncatedUnit(const TruncatedInt& v);
  TruncatedUnit(long long k, const PrimeCtx& ctx)
      : TruncatedUnit(TruncatedInt(k, ctx)) {}

  const TruncatedInt& as_int() const { return v_; }
  std::uint64_t value() const { return v_.value(); }
  const PrimeCtx& ctx() const { return v_.ctx(); }

  TruncatedUnit inverse() const;
  TruncatedUnit operator*(const TruncatedUnit& o) const;
  // Signed power; negative exponents go through the inverse.
  TruncatedUnit pow(long long e) const;
  bool operator==(const TruncatedUnit& o) const { return v_ == o.v_; }
  bool operator!=(const TruncatedUnit& o) const { return !(*this == o); }

  TruncatedUnit reduce_to(unsigned m) const;

  // Whether k is admissible as an orientation value in this context.
  static bool admissible(std::uint64_t canonical, const PrimeCtx& ctx);
  // All admissible values at the context's precision, ascending.
  static std::vector<std::uint64_t> enumerate(const PrimeCtx& ctx);

 private:
  TruncatedInt v_;
};

TruncatedUnit unit_inverse(const TruncatedUnit& u);

}  // namespace prosmooth
