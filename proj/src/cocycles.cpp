#include "prosmooth/cocycles.hpp"

#include <climits>
#include <string>
#include <utility>

namespace prosmooth {

namespace {

std::uint64_t magnitude(long long e) {
  if (e >= 0) return (std::uint64_t)e;
  return (std::uint64_t)(-(e + 1)) + 1;  // safe for LLONG_MIN
}

void require_compatible(const Presentation& pres, const Orientation& theta) {
  if (pres.gens != theta.table())
    throw ctx_mismatch("orientation generator table does not match the presentation");
  if (pres.p != theta.ctx().p)
    throw ctx_mismatch("orientation prime " + std::to_string(theta.ctx().p) +
                       " does not match presentation prime " +
                       std::to_string(pres.p));
}

// Common entry point: reduce theta to the working precision (never extend)
// and check that it kills every relator there.
Orientation working_theta(const Presentation& pres, const Orientation& theta,
                          unsigned n) {
  require_compatible(pres, theta);
  if (n < 1) throw bad_parameters("precision must be at least 1");
  if (n > theta.ctx().n)
    throw bad_parameters(
        "requested precision " + std::to_string(n) +
        " exceeds the orientation's precision " + std::to_string(theta.ctx().n));
  Orientation th = theta.reduce_to(n);
  validate_orientation(pres, th);
  return th;
}

std::vector<std::uint64_t> reduce_vector(const std::vector<std::uint64_t>& v,
                                         const PrimeCtx& ctx) {
  std::vector<std::uint64_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] % ctx.q;
  return out;
}

}  // namespace

Orientation::Orientation(GenTable gens, const PrimeCtx& ctx,
                         std::vector<TruncatedUnit> values)
    : gens_(std::move(gens)), ctx_(ctx), values_(std::move(values)) {
  if (values_.size() != gens_.size())
    throw bad_parameters("orientation needs exactly one value per generator");
  for (const TruncatedUnit& u : values_) require_same_ctx(u.ctx(), ctx_);
}

Orientation Orientation::trivial(GenTable gens, const PrimeCtx& ctx) {
  std::vector<TruncatedUnit> vals(gens.size(), TruncatedUnit(1, ctx));
  return Orientation(std::move(gens), ctx, std::move(vals));
}

Orientation Orientation::from_values(GenTable gens,
                                     const std::vector<std::uint64_t>& values,
                                     const PrimeCtx& ctx) {
  std::vector<TruncatedUnit> vals;
  vals.reserve(values.size());
  for (std::uint64_t v : values)
    vals.emplace_back(TruncatedInt((long long)(v % ctx.q), ctx));
  return Orientation(std::move(gens), ctx, std::move(vals));
}

const TruncatedUnit& Orientation::value(std::size_t i) const {
  if (i >= values_.size()) throw bad_parameters("generator index out of range");
  return values_[i];
}

Orientation Orientation::reduce_to(unsigned m) const {
  if (m > ctx_.n)
    throw bad_parameters("cannot extend an orientation to higher precision");
  if (m == ctx_.n) return *this;
  std::vector<TruncatedUnit> vals;
  vals.reserve(values_.size());
  for (const TruncatedUnit& u : values_) vals.push_back(u.reduce_to(m));
  return Orientation(gens_, ctx_.with_precision(m), std::move(vals));
}

bool Orientation::is_trivial() const {
  for (const TruncatedUnit& u : values_)
    if (u.value() != 1 % ctx_.q) return false;
  return true;
}

bool Orientation::operator==(const Orientation& o) const {
  return gens_ == o.gens_ && ctx_ == o.ctx_ && values_ == o.values_;
}

TruncatedUnit theta_eval(const Orientation& theta, const Word& w) {
  if (w.table() != theta.table())
    throw ctx_mismatch("word and orientation use different generator tables");
  TruncatedUnit out(1, theta.ctx());
  std::vector<long long> ev = exponent_vector(w);
  for (std::size_t i = 0; i < ev.size(); ++i)
    if (ev[i] != 0) out = out * theta.value(i).pow(ev[i]);
  return out;
}

FoxRow fox_row(const Orientation& theta, const Word& w) {
  if (w.table() != theta.table())
    throw ctx_mismatch("word and orientation use different generator tables");
  const PrimeCtx& ctx = theta.ctx();
  std::vector<std::uint64_t> row(theta.size(), 0);
  std::uint64_t prefix = 1 % ctx.q;  // theta of the prefix read so far
  for (const Syllable& s : w.syllables()) {
    const TruncatedUnit& u = theta.value(s.gen);
    std::uint64_t contrib;
    if (s.exp > 0) {
      // D(x^e) = 1 + u + ... + u^(e-1)
      contrib = geom_mod(u.value(), (std::uint64_t)s.exp, ctx);
    } else {
      // D(x^-e') = -u^(-e') (1 + u + ... + u^(e'-1)), e' = |e|
      std::uint64_t mag = magnitude(s.exp);
      contrib = neg_mod(
          mul_mod(u.pow(s.exp).value(), geom_mod(u.value(), mag, ctx), ctx),
          ctx);
    }
    row[s.gen] = add_mod(row[s.gen], mul_mod(prefix, contrib, ctx), ctx);
    prefix = mul_mod(prefix, u.pow(s.exp).value(), ctx);
  }
  FoxRow out;
  out.reserve(row.size());
  for (std::uint64_t v : row) out.emplace_back((long long)v, ctx);
  return out;
}

MatrixZpn fox_matrix(const Presentation& pres, const Orientation& theta) {
  require_compatible(pres, theta);
  MatrixZpn M(pres.relators.size(), theta.size(), theta.ctx());
  for (std::size_t k = 0; k < pres.relators.size(); ++k) {
    FoxRow row = fox_row(theta, pres.relators[k]);
    for (std::size_t j = 0; j < row.size(); ++j)
      M.set(k, j, (long long)row[j].value());
  }
  return M;
}

void validate_orientation(const Presentation& pres, const Orientation& theta) {
  require_compatible(pres, theta);
  for (std::size_t k = 0; k < pres.relators.size(); ++k) {
    TruncatedUnit v = theta_eval(theta, pres.relators[k]);
    if (v.value() != 1 % theta.ctx().q)
      throw invalid_orientation(k, print_word(pres.relators[k]));
  }
}

CocycleSpaces cocycle_spaces(const Presentation& pres, const Orientation& theta,
                             unsigned n) {
  Orientation th = working_theta(pres, theta, n);
  const PrimeCtx& ctx = th.ctx();
  MatrixZpn M = fox_matrix(pres, th);
  MatrixZpn b(th.size() == 0 ? 0 : 1, th.size(), ctx);
  for (std::size_t j = 0; j < th.size(); ++j)
    b.set(0, j, (long long)sub_mod(th.value(j).value(), 1 % ctx.q, ctx));
  CocycleSpaces out{kernel(M), Submodule::span(b), n};
  // The fox identity D(r).(theta(x_i)-1) = theta(r)-1 = 0 makes coboundaries
  // cocycles; anything else is an implementation defect.
  if (!out.Z1.contains(out.B1))
    throw internal_defect("coboundaries escaped the cocycle space");
  return out;
}

KummerCheck kummerian_check(const Presentation& pres, const Orientation& theta,
                            unsigned n) {
  Orientation th = working_theta(pres, theta, n);
  MatrixZpn M = fox_matrix(pres, th);

  KummerCheck out;
  out.level = n;
  out.profile = diagonal_invariants(M);
  bool by_profile = !out.profile.has_intermediate();

  // Independent route: compare the mod-p shadow of the level-n cocycles
  // with the full space of mod-p cocycles.
  Submodule image = mod_p_image(kernel(M));
  Submodule target = kernel(M.reduce_to(1));
  bool by_image = image == target;
  if (by_profile != by_image)
    throw internal_defect("surjectivity criteria disagree");

  out.passes = by_image;
  if (!out.passes) {
    for (std::size_t r = 0; r < target.basis().rows(); ++r) {
      std::vector<std::uint64_t> cand = target.basis().row(r);
      if (!image.contains(cand)) {
        out.missed = std::move(cand);
        break;
      }
    }
    if (out.missed.empty())
      throw internal_defect("failing level without a missed class");
  }
  return out;
}

PrescribeResult prescribe_cocycle(const Presentation& pres,
                                  const Orientation& theta, unsigned n,
                                  const std::vector<std::uint64_t>& targets) {
  Orientation th = working_theta(pres, theta, n);
  const PrimeCtx& ctx = th.ctx();
  if (targets.size() != th.size())
    throw bad_parameters("need one target value per generator");
  PrimeCtx modp = ctx.with_precision(1);
  std::vector<std::uint64_t> t1 = reduce_vector(targets, modp);

  MatrixZpn M1 = fox_matrix(pres, th.reduce_to(1));
  if (!kernel(M1).contains(t1)) throw not_a_cocycle();

  // Express t1 in terms of the mod-p reductions of a level-n basis.
  Submodule Z1 = kernel(fox_matrix(pres, th));
  const MatrixZpn& basis = Z1.basis();
  MatrixZpn A(th.size(), basis.rows(), modp);
  for (std::size_t j = 0; j < basis.rows(); ++j)
    for (std::size_t i = 0; i < th.size(); ++i)
      A.set(i, j, (long long)(basis.at(j, i) % modp.q));

  PrescribeResult out;
  auto coeffs = solve(A, t1);
  if (!coeffs) {
    out.ok = false;
    out.witness = std::move(t1);
    return out;
  }
  std::vector<std::uint64_t> v(th.size(), 0);
  for (std::size_t j = 0; j < basis.rows(); ++j)
    for (std::size_t i = 0; i < th.size(); ++i)
      v[i] = add_mod(v[i], mul_mod((*coeffs)[j], basis.at(j, i), ctx), ctx);
  if (!Z1.contains(v) || reduce_vector(v, modp) != t1)
    throw internal_defect("prescribed cocycle failed verification");
  out.ok = true;
  out.value = std::move(v);
  return out;
}

Submodule cocycle_radical(const Presentation& pres, const Orientation& theta,
                          unsigned n) {
  return annihilator(cocycle_spaces(pres, theta, n).Z1);
}

}  // namespace prosmooth
