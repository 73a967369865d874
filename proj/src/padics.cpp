#include "prosmooth/padics.hpp"

namespace prosmooth {

namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

PrimeCtx::PrimeCtx(std::uint64_t prime, unsigned precision)
    : p(prime), n(precision) {
  if (!is_prime(p)) throw bad_parameters("p = " + std::to_string(p) + " is not prime");
  if (n < 1) throw bad_parameters("precision must be >= 1");
  q = 1;
  const std::uint64_t limit = std::uint64_t(1) << 63;
  for (unsigned i = 0; i < n; ++i) {
    if (q > limit / p) throw bad_parameters("p^n does not fit in 63 bits");
    q *= p;
  }
}

void require_same_ctx(const PrimeCtx& a, const PrimeCtx& b) {
  if (a != b)
    throw ctx_mismatch("mixed contexts: Z/" + std::to_string(a.p) + "^" +
                       std::to_string(a.n) + " vs Z/" + std::to_string(b.p) +
                       "^" + std::to_string(b.n));
}

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, const PrimeCtx& ctx) {
  std::uint64_t s = a + b;  // < 2^64 since both < 2^63
  return s >= ctx.q ? s - ctx.q : s;
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, const PrimeCtx& ctx) {
  return a >= b ? a - b : a + ctx.q - b;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, const PrimeCtx& ctx) {
  return std::uint64_t((unsigned __int128)a * b % ctx.q);
}

std::uint64_t neg_mod(std::uint64_t a, const PrimeCtx& ctx) {
  return a == 0 ? 0 : ctx.q - a;
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, const PrimeCtx& ctx) {
  std::uint64_t r = 1 % ctx.q;
  while (e) {
    if (e & 1) r = mul_mod(r, a, ctx);
    a = mul_mod(a, a, ctx);
    e >>= 1;
  }
  return r;
}

std::uint64_t reduce_mod(long long k, const PrimeCtx& ctx) {
  long long m = (long long)ctx.q;
  long long r = k % m;
  if (r < 0) r += m;
  return (std::uint64_t)r;
}

unsigned valuation_mod(std::uint64_t a, const PrimeCtx& ctx) {
  if (a == 0) return ctx.n;  // precision-relative convention
  unsigned v = 0;
  while (a % ctx.p == 0) {
    a /= ctx.p;
    ++v;
  }
  return v;
}

bool is_unit_mod(std::uint64_t a, const PrimeCtx& ctx) {
  return a % ctx.p != 0;
}

std::uint64_t inv_mod(std::uint64_t a, const PrimeCtx& ctx) {
  if (!is_unit_mod(a, ctx)) throw error("attempt to invert a non-unit");
  // extended Euclid on (a, q); q < 2^63 so the signed arithmetic is safe
  long long r0 = (long long)ctx.q, r1 = (long long)a;
  long long t0 = 0, t1 = 1;
  while (r1 != 0) {
    long long qq = r0 / r1;
    long long r2 = r0 - qq * r1;
    long long t2 = t0 - qq * t1;
    r0 = r1; r1 = r2;
    t0 = t1; t1 = t2;
  }
  return reduce_mod(t0, ctx);
}

std::uint64_t geom_mod(std::uint64_t u, std::uint64_t e, const PrimeCtx& ctx) {
  // geom(u, e) = 1 + u + ... + u^(e-1), with
  // geom(u, 2k) = geom(u, k) * (1 + u^k), geom(u, 2k+1) = geom(u, 2k) + u^2k.
  if (e == 0) return 0;
  std::uint64_t half = geom_mod(u, e / 2, ctx);
  std::uint64_t uh = pow_mod(u, e / 2, ctx);
  std::uint64_t r = mul_mod(half, add_mod(1 % ctx.q, uh, ctx), ctx);
  if (e & 1) r = add_mod(r, mul_mod(uh, uh, ctx), ctx);
  return r;
}

TruncatedInt TruncatedInt::operator+(const TruncatedInt& o) const {
  require_same_ctx(ctx_, o.ctx_);
  TruncatedInt r(0, ctx_);
  r.v_ = add_mod(v_, o.v_, ctx_);
  return r;
}

TruncatedInt TruncatedInt::operator-(const TruncatedInt& o) const {
  require_same_ctx(ctx_, o.ctx_);
  TruncatedInt r(0, ctx_);
  r.v_ = sub_mod(v_, o.v_, ctx_);
  return r;
}

TruncatedInt TruncatedInt::operator*(const TruncatedInt& o) const {
  require_same_ctx(ctx_, o.ctx_);
  TruncatedInt r(0, ctx_);
  r.v_ = mul_mod(v_, o.v_, ctx_);
  return r;
}

TruncatedInt TruncatedInt::operator-() const {
  TruncatedInt r(0, ctx_);
  r.v_ = neg_mod(v_, ctx_);
  return r;
}

bool TruncatedInt::operator==(const TruncatedInt& o) const {
  require_same_ctx(ctx_, o.ctx_);
  return v_ == o.v_;
}

TruncatedInt TruncatedInt::reduce_to(unsigned m) const {
  if (m > ctx_.n) throw error("cannot extend precision from " +
                              std::to_string(ctx_.n) + " to " + std::to_string(m));
  PrimeCtx low = ctx_.with_precision(m);
  return TruncatedInt((long long)(v_ % low.q), low);
}

TruncatedInt reduce(long long k, const PrimeCtx& ctx) {
  return TruncatedInt(k, ctx);
}

TruncatedUnit::TruncatedUnit(const TruncatedInt& v) : v_(v) {
  if (!admissible(v.value(), v.ctx()))
    throw error("value " + std::to_string(v.value()) +
                " is not an admissible orientation unit mod " +
                std::to_string(v.ctx().p) + "^" + std::to_string(v.ctx().n));
}

bool TruncatedUnit::admissible(std::uint64_t canonical, const PrimeCtx& ctx) {
  if (ctx.p == 2) {
    // torsion-freeness: image inside 1 + 4 Z_2 (vacuous below precision 2)
    std::uint64_t m = ctx.n >= 2 ? 4 : 2;
    return canonical % m == 1 % m;
  }
  return canonical % ctx.p == 1;
}

std::vector<std::uint64_t> TruncatedUnit::enumerate(const PrimeCtx& ctx) {
  std::vector<std::uint64_t> out;
  std::uint64_t step = ctx.p == 2 ? (ctx.n >= 2 ? 4 : 2) : ctx.p;
  if (step >= ctx.q) return {1 % ctx.q};
  for (std::uint64_t v = 1; v < ctx.q; v += step) out.push_back(v);
  return out;
}

TruncatedUnit TruncatedUnit::inverse() const {
  return TruncatedUnit(TruncatedInt((long long)inv_mod(value(), ctx()), ctx()));
}

TruncatedUnit TruncatedUnit::operator*(const TruncatedUnit& o) const {
  return TruncatedUnit(v_ * o.v_);
}

TruncatedUnit TruncatedUnit::pow(long long e) const {
  std::uint64_t base = value();
  const PrimeCtx& c = ctx();
  if (e < 0) {
    base = inv_mod(base, c);
    // -e as unsigned, careful with LLONG_MIN
    std::uint64_t mag = (std::uint64_t)(-(e + 1)) + 1;
    return TruncatedUnit(TruncatedInt((long long)pow_mod(base, mag, c), c));
  }
  return TruncatedUnit(TruncatedInt((long long)pow_mod(base, (std::uint64_t)e, c), c));
}

TruncatedUnit TruncatedUnit::reduce_to(unsigned m) const {
  return TruncatedUnit(v_.reduce_to(m));
}

TruncatedUnit unit_inverse(const TruncatedUnit& u) { return u.inverse(); }

}  // namespace prosmooth
