#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prosmooth/cocycles.hpp"
#include "prosmooth/words.hpp"
#include "prosmooth/zpn_linalg.hpp"

namespace prosmooth {

// A pro-p presentation together with an orientation that is valid on every
// relator at its own precision (checked at construction).
struct CyclotomicPair {
  Presentation presentation;
  Orientation orientation;

  CyclotomicPair(Presentation pres, Orientation theta);

  std::uint64_t p() const { return presentation.p; }
  unsigned precision() const { return orientation.ctx().n; }
  std::size_t rank() const { return presentation.gens.size(); }
};

// The relation module of the orientation-twisted abelianization at one
// precision: rows are the twisted derivative rows of the relators, and the
// diagonal profile of that matrix carries the torsion verdict.
struct ThetaAbModule {
  MatrixZpn matrix;
  DiagonalProfile profile;
  std::vector<bool> in_kernel;  // per generator: theta(x_i) = 1 at this level
  unsigned precision = 1;

  // An invariant p^a with 0 < a < n certifies torsion.
  bool has_torsion_certificate() const { return profile.has_intermediate(); }
};

ThetaAbModule theta_ab_module(const CyclotomicPair& pair, unsigned n);

enum class Outcome { certified_yes, certified_no, undecided };

// Refutation data at one level: a mod-p cocycle class that no level-n
// cocycle reduces to, and the torsion invariant that blocks it.
struct CocycleWitness {
  unsigned level = 0;
  std::vector<std::uint64_t> missed;
  unsigned torsion_exponent = 0;
};

// Refutation through an open subgroup: the chain of index-p defining
// functionals leading to the failing subgroup, then its cocycle witness.
struct SubgroupWitness {
  std::vector<std::vector<std::uint64_t>> phi_chain;
  CocycleWitness inner;
};

struct Verdict {
  Outcome outcome = Outcome::undecided;
  // Failing level for certified_no; highest level examined otherwise.
  unsigned level = 0;
  std::vector<unsigned> passed_levels;
  std::optional<CocycleWitness> cocycle_witness;
  std::optional<SubgroupWitness> subgroup_witness;
  // Structural reason, set exactly for certified_yes.
  std::string certificate;

  bool is_yes() const { return outcome == Outcome::certified_yes; }
  bool is_no() const { return outcome == Outcome::certified_no; }
  bool is_undecided() const { return outcome == Outcome::undecided; }
};

std::string outcome_name(Outcome o);

// Quotient by the normal closure of extra relators, which must lie in the
// kernel of theta (checked at theta's precision); same orientation.
CyclotomicPair quotient_pair(const CyclotomicPair& pair,
                             const std::vector<Word>& normal_gens);

// A free abelian group on r new generators a_1..a_r, acted on by the base
// through theta: relators [a_i,a_j] and g a_i g^-1 a_i^(-theta(g)) for
// every base generator g, with theta extended by theta(a_i) = 1.
CyclotomicPair semidirect_pair(std::size_t r, const CyclotomicPair& base);

// Pair-level entry points for the cocycle engine.
CocycleSpaces cocycle_spaces(const CyclotomicPair& pair, unsigned n);
KummerCheck kummerian_check(const CyclotomicPair& pair, unsigned n);
PrescribeResult prescribe_cocycle(const CyclotomicPair& pair, unsigned n,
                                  const std::vector<std::uint64_t>& targets);
Submodule cocycle_radical(const CyclotomicPair& pair, unsigned n);

// Single-level verdict: certified_no with a witness, or undecided marked
// as passing at n (evidence, not proof).
Verdict kummerian_at(const CyclotomicPair& pair, unsigned n);

// Kummerian test up to level n_max (n_max at most the pair's precision).
// certified_no carries a cocycle witness; certified_yes arises only from a
// structural certificate (trivial group, free pair, theta-abelian normal
// form); otherwise undecided with the list of passed levels.
Verdict kummerian_verdict(const CyclotomicPair& pair, unsigned n_max);

// Syntactic recognizer for the split normal form: commuting kernel
// generators, at most one non-kernel generator x, and conjugation relators
// x a x^-1 a^(-theta(x)) covering every kernel generator.  certified_no
// when the Kummerian test refutes; undecided otherwise.
Verdict theta_abelian_certify(const CyclotomicPair& pair);

// True iff the presentation is in the recognized normal form (the
// certified_yes branch of theta_abelian_certify, without running the
// Kummerian fallback).
bool theta_abelian_normal_form(const CyclotomicPair& pair);

}  // namespace prosmooth
