#pragma once
#include <cstdint>
#include <vector>

#include "prosmooth/padics.hpp"
#include "prosmooth/words.hpp"
#include "prosmooth/zpn_linalg.hpp"

namespace prosmooth {

// A homomorphism theta from the group to the units of Z/p^n, recorded by
// its values on the generators.  Every value must lie in the torsion-free
// coset 1 + pZ (1 + 4Z when p = 2), so that powers and inverses stay
// admissible and the associated module Z_p(1)/p^n is well defined.
class Orientation {
 public:
  // The context is explicit so that generator-free tables keep one too.
  Orientation(GenTable gens, const PrimeCtx& ctx,
              std::vector<TruncatedUnit> values);

  // theta == 1 on every generator.
  static Orientation trivial(GenTable gens, const PrimeCtx& ctx);
  // Values given as canonical residues; rejects inadmissible ones.
  static Orientation from_values(GenTable gens,
                                 const std::vector<std::uint64_t>& values,
                                 const PrimeCtx& ctx);

  const GenTable& table() const { return gens_; }
  const PrimeCtx& ctx() const { return ctx_; }
  std::size_t size() const { return values_.size(); }
  const TruncatedUnit& value(std::size_t i) const;

  // Reduction to a lower precision m <= n; extension would invent digits.
  Orientation reduce_to(unsigned m) const;
  bool is_trivial() const;

  bool operator==(const Orientation& o) const;
  bool operator!=(const Orientation& o) const { return !(*this == o); }

 private:
  GenTable gens_;
  PrimeCtx ctx_;
  std::vector<TruncatedUnit> values_;
};

// theta(w): the product of theta(x_i)^{e_i} over the exponent vector;
// order-independent because the target group is abelian.
TruncatedUnit theta_eval(const Orientation& theta, const Word& w);

// Row of twisted derivative coefficients (D_1(w), ..., D_d(w)), one per
// generator, satisfying D(uv) = D(u) + theta(u).D(v) and D(x_i) = e_i.
// For any value assignment c on the generators, the unique cocycle
// extension satisfies c(w) = D(w).c.
using FoxRow = std::vector<TruncatedInt>;

FoxRow fox_row(const Orientation& theta, const Word& w);

// Relator-by-generator matrix with rows fox_row(theta, r).
MatrixZpn fox_matrix(const Presentation& pres, const Orientation& theta);

// Checks theta(r) = 1 at theta's precision for every relator; otherwise
// theta does not descend to the presented group.  Throws
// invalid_orientation naming the first offending relator.
void validate_orientation(const Presentation& pres, const Orientation& theta);

// Cocycle and coboundary spaces at one precision: Z1 is the kernel of the
// fox matrix inside (Z/p^n)^d, B1 the span of (theta(x_i) - 1)_i.
struct CocycleSpaces {
  Submodule Z1;
  Submodule B1;
  unsigned precision = 1;
};

CocycleSpaces cocycle_spaces(const Presentation& pres, const Orientation& theta,
                             unsigned n);

// One level of the surjectivity test: do the level-n cocycles cover all
// mod-p cocycles?  `missed` holds a mod-p cocycle class outside the image
// when the answer is no (conclusive); an empty `missed` means the level
// passes, which is evidence, not a proof, for higher levels.
struct KummerCheck {
  bool passes = false;
  unsigned level = 1;
  DiagonalProfile profile;  // invariants of the fox matrix at this level
  std::vector<std::uint64_t> missed;
};

KummerCheck kummerian_check(const Presentation& pres, const Orientation& theta,
                            unsigned n);

// Lift prescribed mod-p generator values to a level-n cocycle when one
// exists; otherwise report the prescription itself as the obstruction.
struct PrescribeResult {
  bool ok = false;
  std::vector<std::uint64_t> value;    // in Z1 at level n, value = targets mod p
  std::vector<std::uint64_t> witness;  // unreachable mod-p class on failure
};

PrescribeResult prescribe_cocycle(const Presentation& pres,
                                  const Orientation& theta, unsigned n,
                                  const std::vector<std::uint64_t>& targets);

// Exponent vectors annihilated by every level-n cocycle: the annihilator
// of Z1 under the evaluation pairing.  Words killed by all cocycles have
// their exponent vector in here (the converse is out of scope).
Submodule cocycle_radical(const Presentation& pres, const Orientation& theta,
                          unsigned n);

}  // namespace prosmooth
