#include "prosmooth/catalog.hpp"

#include <climits>
#include <string>
#include <utility>
#include <vector>

namespace prosmooth {

namespace {

std::uint64_t pow_u64(std::uint64_t p, unsigned e) {
  unsigned __int128 v = 1;
  for (unsigned i = 0; i < e; ++i) {
    v *= p;
    if (v > (unsigned __int128)LLONG_MAX)
      throw too_large("power parameter overflows the exponent range");
  }
  return (std::uint64_t)v;
}

long long scaled_exponent(std::uint64_t power, long long coeff) {
  __int128 m = (__int128)power * coeff;
  if (m > LLONG_MAX || m < LLONG_MIN + 1)
    throw too_large("coupling exponent overflows");
  return (long long)m;
}

std::string power_factor(const std::string& gen, long long e) {
  if (e == 0) return "";
  return "*" + gen + "^" + std::to_string(-e);  // inverse factor of gen^e
}

Orientation family_theta(const GenTable& t, const PrimeCtx& ctx,
                         const CatalogParams& params,
                         const std::vector<std::uint64_t>& canonical) {
  if (!params.theta.empty()) {
    if (params.theta.size() != t.size())
      throw bad_parameters("theta override must give one value per generator");
    return Orientation::from_values(t, params.theta, ctx);
  }
  if (params.trivial_theta || canonical.empty())
    return Orientation::trivial(t, ctx);
  return Orientation::from_values(t, canonical, ctx);
}

void require_admissible_scalar(std::uint64_t v, const PrimeCtx& ctx,
                               const std::string& what) {
  if (!TruncatedUnit::admissible(v % ctx.q, ctx))
    throw bad_parameters(what + " is not an admissible orientation value");
}

CyclotomicPair build_free(const CatalogParams& params) {
  // `d` is accepted as an alias for `rank`
  std::size_t rank = params.rank;
  if (params.d != 0) {
    if (params.d < 0) throw bad_parameters("free rank must be positive");
    rank = (std::size_t)params.d;
  }
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= rank; ++i)
    names.push_back("x" + std::to_string(i));
  GenTable t(names);
  PrimeCtx ctx(params.p, params.n);
  return CyclotomicPair(Presentation(params.p, t, {}),
                        family_theta(t, ctx, params, {}));
}

CyclotomicPair build_demushkin2(const CatalogParams& params) {
  const unsigned min_s = params.p == 2 ? 2 : 1;
  if (params.s < min_s)
    throw bad_parameters("demushkin2 needs q = p^s with s >= " +
                         std::to_string(min_s));
  std::uint64_t q = pow_u64(params.p, params.s);
  GenTable t({"x", "y"});
  PrimeCtx ctx(params.p, params.n);
  Presentation pres(params.p, t,
                    {parse_word("x^" + std::to_string(q) + "*[x,y]", t)});
  std::uint64_t ty = inv_mod(reduce_mod(1 - (long long)q, ctx), ctx);
  require_admissible_scalar(ty, ctx, "(1-q)^-1");
  return CyclotomicPair(std::move(pres), family_theta(t, ctx, params, {1, ty}));
}

CyclotomicPair build_heisenberg(const CatalogParams& params) {
  GenTable t({"x", "y"});
  PrimeCtx ctx(params.p, params.n);
  Presentation pres(params.p, t,
                    {parse_word("[[x,y],x]", t), parse_word("[[x,y],y]", t)});
  return CyclotomicPair(std::move(pres), family_theta(t, ctx, params, {}));
}

CyclotomicPair build_heisenberg_U(const CatalogParams& params) {
  GenTable t({"t", "y", "z"});
  PrimeCtx ctx(params.p, params.n);
  Presentation pres(
      params.p, t,
      {parse_word("[t,z]", t), parse_word("[y,z]", t),
       parse_word("[t,y]*z^-" + std::to_string(params.p), t)});
  return CyclotomicPair(std::move(pres), family_theta(t, ctx, params, {}));
}

CyclotomicPair build_G0(const CatalogParams& params) {
  std::uint64_t ps = pow_u64(params.p, params.s);
  GenTable t({"x", "y", "z"});
  PrimeCtx ctx(params.p, params.n);
  Presentation pres(params.p, t,
                    {parse_word("[x,y]*z^-" + std::to_string(ps), t),
                     parse_word("[x,z]", t), parse_word("[y,z]", t)});
  return CyclotomicPair(std::move(pres), family_theta(t, ctx, params, {}));
}

std::vector<std::uint64_t> scalar_action_theta(const CatalogParams& params,
                                               const PrimeCtx& ctx) {
  // x acts on the kernel by the scalar 1 + p^s; theta(x) is its inverse
  std::uint64_t scale = reduce_mod(
      (long long)(1 + pow_u64(params.p, params.s) % ctx.q), ctx);
  if (!params.trivial_theta && params.theta.empty())
    require_admissible_scalar(scale, ctx, "1+p^s");
  return {inv_mod(scale, ctx), 1, 1};
}

CyclotomicPair build_G1(const CatalogParams& params) {
  if (params.s < 1) throw bad_parameters("G1 needs s >= 1");
  std::uint64_t ps = pow_u64(params.p, params.s);
  GenTable t({"x", "y1", "y2"});
  PrimeCtx ctx(params.p, params.n);
  std::string power = std::to_string(ps);
  Presentation pres(params.p, t,
                    {parse_word("[y1,y2]", t),
                     parse_word("[y1,x]*y1^-" + power, t),
                     parse_word("[y2,x]*y2^-" + power, t)});
  return CyclotomicPair(std::move(pres),
                        family_theta(t, ctx, params,
                                     scalar_action_theta(params, ctx)));
}

CyclotomicPair build_G2(const CatalogParams& params) {
  if (params.s < 1) throw bad_parameters("G2 needs s >= 1");
  std::uint64_t ps = pow_u64(params.p, params.s);
  std::uint64_t psr = pow_u64(params.p, params.s + params.r);
  GenTable t({"x", "y1", "y2"});
  PrimeCtx ctx(params.p, params.n);
  // d = 0 decouples the action entirely, degenerating to G1(s)
  long long couple = scaled_exponent(psr, params.d);
  std::string r2 = "[y1,x]" + power_factor("y2", couple) +
                   power_factor("y1", (long long)ps);
  std::string r3 = "[y2,x]" + power_factor("y2", (long long)ps) +
                   (params.d == 0 ? std::string()
                                  : power_factor("y1", (long long)psr));
  Presentation pres(params.p, t,
                    {parse_word("[y1,y2]", t), parse_word(r2, t),
                     parse_word(r3, t)});
  return CyclotomicPair(std::move(pres),
                        family_theta(t, ctx, params,
                                     scalar_action_theta(params, ctx)));
}

CyclotomicPair build_G2rho(const CatalogParams& params) {
  if (params.s + params.r < 1) throw bad_parameters("G2rho needs s + r >= 1");
  std::uint64_t ps = pow_u64(params.p, params.s);
  std::uint64_t psr = pow_u64(params.p, params.s + params.r);
  long long couple = scaled_exponent(psr, params.rho);
  if (couple == 0) throw bad_parameters("G2rho needs a nonzero rho");
  GenTable t({"x", "y1", "y2"});
  PrimeCtx ctx(params.p, params.n);
  std::string r2 = "[y1,x]" + power_factor("y2", couple);
  std::string r3 = "[y2,x]" + power_factor("y1", (long long)ps);
  Presentation pres(params.p, t,
                    {parse_word("[y1,y2]", t), parse_word(r2, t),
                     parse_word(r3, t)});
  return CyclotomicPair(std::move(pres), family_theta(t, ctx, params, {}));
}

CyclotomicPair build_G4(const CatalogParams& params) {
  if (params.s + params.r < 1) throw bad_parameters("G4 needs s + r >= 1");
  std::uint64_t ps = pow_u64(params.p, params.s);
  std::uint64_t psr = pow_u64(params.p, params.s + params.r);
  GenTable t({"x", "y1", "y2"});
  PrimeCtx ctx(params.p, params.n);
  std::string r2 = "[y1,x]" + power_factor("y2", (long long)psr);
  std::string r3 = "[y2,x]" + power_factor("y1", (long long)ps);
  Presentation pres(params.p, t,
                    {parse_word("[y1,y2]", t), parse_word(r2, t),
                     parse_word(r3, t)});
  return CyclotomicPair(std::move(pres), family_theta(t, ctx, params, {}));
}

CyclotomicPair build_theta_abelian(const CatalogParams& params) {
  if (params.rank < 1) throw bad_parameters("theta_abelian needs rank >= 1");
  PrimeCtx ctx(params.p, params.n);
  require_admissible_scalar(params.tval, ctx, "tval");
  GenTable t({"x"});
  CyclotomicPair base(
      Presentation(params.p, t, {}),
      Orientation::from_values(t, {params.tval % ctx.q}, ctx));
  return semidirect_pair(params.rank, base);
}

ExpectedVerdict yes(const std::string& certificate, unsigned level) {
  return ExpectedVerdict{Outcome::certified_yes, level, certificate};
}
ExpectedVerdict no_at(unsigned level) {
  return ExpectedVerdict{Outcome::certified_no, level, ""};
}
ExpectedVerdict open_at(unsigned level) {
  return ExpectedVerdict{Outcome::undecided, level, ""};
}

std::vector<CatalogEntry> make_regressions() {
  std::vector<CatalogEntry> out;
  auto add = [&](CatalogEntry e) { out.push_back(std::move(e)); };

  CatalogParams q;

  q = {};
  q.p = 3, q.n = 3, q.rank = 2;
  add({"free", q, "free pair on two generators, trivial orientation",
       yes("free pair", 3), std::nullopt, false});

  q = {};
  q.p = 3, q.n = 2, q.rank = 2, q.theta = {4, 1};
  add({"free", q, "free pair with a nontrivial orientation value",
       yes("free pair", 2), std::nullopt, false});

  q = {};
  q.p = 2, q.n = 3, q.rank = 3;
  add({"free", q, "free pair of rank three at p = 2", yes("free pair", 3),
       std::nullopt, false});

  q = {};
  q.p = 3, q.n = 4, q.s = 2;
  add({"demushkin2", q,
       "one-relator pair x^9 [x,y] with its canonical orientation",
       yes("theta-abelian normal form", 4), open_at(4), false});

  q = {};
  q.p = 2, q.n = 3, q.s = 2;
  add({"demushkin2", q,
       "one-relator pair x^4 [x,y] with its canonical orientation",
       yes("theta-abelian normal form", 3), std::nullopt, false});

  q = {};
  q.p = 3, q.n = 4;
  add({"heisenberg", q,
       "two-generator presentation with a central commutator; passes every "
       "level but a subgroup carries torsion",
       open_at(4), no_at(2), false});

  q = {};
  q.p = 3, q.n = 2;
  add({"heisenberg_U", q,
       "index-p subgroup presentation [t,z], [y,z], [t,y]z^-p; torsion is "
       "already visible at the top",
       no_at(2), no_at(2), false});

  q = {};
  q.p = 3, q.n = 3, q.s = 0;
  add({"G0", q,
       "central extension [x,y] = z with trivial orientation; only a "
       "subgroup refutes",
       open_at(3), no_at(2), false});

  q = {};
  q.p = 3, q.n = 3, q.s = 1;
  add({"G0", q, "central extension [x,y] = z^p; refuted at the top",
       no_at(2), no_at(2), false});

  q = {};
  q.p = 3, q.n = 3, q.s = 1;
  add({"G1", q, "scalar action 1+p with the matching inverse orientation",
       yes("theta-abelian normal form", 3), std::nullopt, false});

  q = {};
  q.p = 3, q.n = 3, q.s = 1, q.trivial_theta = true;
  add({"G1", q, "scalar action 1+p against the trivial orientation",
       no_at(2), std::nullopt, false});

  q = {};
  q.p = 5, q.n = 3, q.s = 2;
  add({"G1", q, "scalar action 1+p^2 at p = 5",
       yes("theta-abelian normal form", 3), std::nullopt, false});

  q = {};
  q.p = 3, q.n = 3, q.s = 1;
  add({"G2", q, "decoupled case d = 0, identical to G1(1)",
       yes("theta-abelian normal form", 3), std::nullopt, false});

  q = {};
  q.p = 3, q.n = 3, q.s = 1, q.r = 0, q.d = 1;
  add({"G2", q, "unit coupling at offset r = 0", no_at(2), std::nullopt,
       false});

  q = {};
  q.p = 3, q.n = 3, q.s = 1, q.r = 1, q.d = 1;
  add({"G2", q, "unit coupling at offset r = 1 fails one level later",
       no_at(3), std::nullopt, false});

  q = {};
  q.p = 3, q.n = 3, q.s = 1, q.r = 0, q.rho = 2;
  add({"G2rho", q, "swapped coupling with unit rho", no_at(2), std::nullopt,
       true});

  q = {};
  q.p = 3, q.n = 3, q.s = 1, q.r = 0;
  add({"G4", q, "swapped coupling, s = 1", no_at(2), std::nullopt, false});

  q = {};
  q.p = 3, q.n = 3, q.s = 0, q.r = 1;
  add({"G4", q, "swapped coupling, r = 1", no_at(2), std::nullopt, false});

  q = {};
  q.p = 2, q.n = 3, q.s = 1, q.r = 1;
  add({"G4", q, "swapped coupling at p = 2", no_at(2), std::nullopt, false});

  q = {};
  q.p = 3, q.n = 3, q.rank = 2, q.tval = 4;
  add({"theta_abelian", q, "split pair Z^2 x| Z with scalar 4",
       yes("theta-abelian normal form", 3), std::nullopt, false});

  q = {};
  q.p = 2, q.n = 3, q.rank = 3, q.tval = 1;
  add({"theta_abelian", q, "free abelian pair of rank four",
       yes("theta-abelian normal form", 3), std::nullopt, false});

  q = {};
  q.p = 2, q.n = 3, q.rank = 1, q.tval = 5;
  add({"theta_abelian", q, "split pair Z x| Z with scalar 5",
       yes("theta-abelian normal form", 3), std::nullopt, false});

  return out;
}

}  // namespace

std::vector<std::string> catalog_ids() {
  return {"free", "demushkin2", "heisenberg", "heisenberg_U", "G0",
          "G1",   "G2",         "G2rho",      "G4",           "theta_abelian"};
}

CyclotomicPair catalog_build(const std::string& id,
                             const CatalogParams& params) {
  if (id == "free") return build_free(params);
  if (id == "demushkin2") return build_demushkin2(params);
  if (id == "heisenberg") return build_heisenberg(params);
  if (id == "heisenberg_U") return build_heisenberg_U(params);
  if (id == "G0") return build_G0(params);
  if (id == "G1") return build_G1(params);
  if (id == "G2") return build_G2(params);
  if (id == "G2rho") return build_G2rho(params);
  if (id == "G4") return build_G4(params);
  if (id == "theta_abelian") return build_theta_abelian(params);
  throw bad_parameters("unknown catalog id '" + id + "'");
}

const std::vector<CatalogEntry>& catalog_regressions() {
  static const std::vector<CatalogEntry> entries = make_regressions();
  return entries;
}

}  // namespace prosmooth
