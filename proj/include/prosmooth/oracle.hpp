#pragma once
#include <cstdint>
#include <vector>

#include "prosmooth/padics.hpp"
#include "prosmooth/words.hpp"
#include "prosmooth/zpn_linalg.hpp"

namespace prosmooth {

// A finite p-group given by an explicit multiplication table, with a
// distinguished generating tuple.  Associativity, the identity laws,
// inverses and generation are verified exhaustively at construction, so a
// model can be trusted as an independent oracle.
class TinyGroupModel {
 public:
  // element 0 is the identity; table[a][b] = a.b; gens index into elements
  TinyGroupModel(std::uint64_t p, std::vector<std::vector<std::size_t>> table,
                 std::vector<std::size_t> gens);

  static TinyGroupModel trivial(std::uint64_t p);
  // Z/p^k (additive), generated by 1.
  static TinyGroupModel cyclic(std::uint64_t p, unsigned k);
  // (Z/p)^rank, generated by the standard basis.
  static TinyGroupModel elementary(std::uint64_t p, unsigned rank);
  // Extraspecial group of order p^3 and exponent p (p odd): upper
  // unitriangular 3x3 matrices over F_p, generated by the two elementary
  // transvections.
  static TinyGroupModel heisenberg_mod_p(std::uint64_t p);
  // Dihedral group of order 8, generated by the rotation and a reflection.
  static TinyGroupModel dihedral8();

  std::uint64_t prime() const { return p_; }
  std::size_t order() const { return table_.size(); }
  std::size_t num_generators() const { return gens_.size(); }
  std::size_t generator(std::size_t i) const { return gens_.at(i); }

  std::size_t mul(std::size_t a, std::size_t b) const;
  std::size_t inv(std::size_t a) const;
  std::size_t identity_element() const { return 0; }

  // Image of a word in the model under g_i -> generator(i); the word must
  // be over a table with num_generators() generators.
  std::size_t eval(const Word& w) const;

 private:
  std::uint64_t p_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> gens_;
  std::vector<std::size_t> inv_;
};

// All generator assignments c in (Z/p^n)^d whose extension by
// c(ab) = c(a) + theta(a) c(b) is well defined on the whole model; theta is
// given by its (unit) values on the generators and extended multiplicatively.
// Guard: |Z/p^n|^d <= 10^5, else too_large.  Every returned assignment has
// been re-verified on all |G|^2 element pairs.
std::vector<std::vector<std::uint64_t>> brute_cocycles(
    const TinyGroupModel& model, const std::vector<std::uint64_t>& theta_gens,
    const PrimeCtx& ctx);

// Exhaustive enumeration of the row module of `rows` in (Z/p^n)^d, sorted
// lexicographically.  Guard: p^(n d) <= 10^5, else too_large.
std::vector<std::vector<std::uint64_t>> brute_span(const MatrixZpn& rows);

}  // namespace prosmooth
