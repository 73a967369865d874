#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "prosmooth/padics.hpp"

namespace prosmooth {

// Dense matrix over Z/p^n with canonical residue entries.
class MatrixZpn {
 public:
  MatrixZpn(std::size_t rows, std::size_t cols, const PrimeCtx& ctx);
  static MatrixZpn identity(std::size_t d, const PrimeCtx& ctx);
  static MatrixZpn from_rows(const std::vector<std::vector<long long>>& rows,
                             std::size_t cols, const PrimeCtx& ctx);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const PrimeCtx& ctx() const { return ctx_; }

  std::uint64_t at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, long long v);
  std::vector<std::uint64_t> row(std::size_t i) const;

  MatrixZpn operator*(const MatrixZpn& o) const;
  // M . v for a column vector v of length cols().
  std::vector<std::uint64_t> apply(const std::vector<std::uint64_t>& v) const;
  MatrixZpn reduce_to(unsigned m) const;

  bool operator==(const MatrixZpn& o) const;
  bool operator!=(const MatrixZpn& o) const { return !(*this == o); }

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  // row_i += c . row_j  /  col_j += c . col_i style elementary operations
  void add_row_multiple(std::size_t dst, std::size_t src, std::uint64_t c);
  void add_col_multiple(std::size_t dst, std::size_t src, std::uint64_t c);
  void scale_row(std::size_t i, std::uint64_t unit);

 private:
  std::size_t rows_, cols_;
  PrimeCtx ctx_;
  std::vector<std::uint64_t> data_;
};

// A submodule of (Z/p^n)^d held by its canonical Howell-form basis: rows
// in echelon order with unit-normalized leading entries p^a, entries above
// a leading entry reduced mod p^a, closed under the leading-coefficient
// (Howell) property.  Two submodules are equal iff their bases coincide.
class Submodule {
 public:
  static Submodule span(const MatrixZpn& gens);
  static Submodule zero(std::size_t d, const PrimeCtx& ctx);
  static Submodule full(std::size_t d, const PrimeCtx& ctx);

  const MatrixZpn& basis() const { return basis_; }
  std::size_t ambient_dim() const { return basis_.cols(); }
  const PrimeCtx& ctx() const { return basis_.ctx(); }
  std::size_t rank() const { return basis_.rows(); }  // number of basis rows
  bool is_zero() const { return basis_.rows() == 0; }

  bool contains(const std::vector<std::uint64_t>& v) const;
  bool contains(const Submodule& other) const;
  bool operator==(const Submodule& o) const;
  bool operator!=(const Submodule& o) const { return !(*this == o); }

  // Module sum (span of the union of the bases).
  Submodule operator+(const Submodule& o) const;

  // Number of elements; throws too_large beyond 2^62.
  std::uint64_t element_count() const;

 private:
  explicit Submodule(MatrixZpn basis) : basis_(std::move(basis)) {}
  MatrixZpn basis_;
};

// Canonical form of the row module of M.
Submodule howell_form(const MatrixZpn& M);

// {v : M.v = 0} as a submodule of (Z/p^n)^cols.
Submodule kernel(const MatrixZpn& M);

// {v : r.v = 0 for every basis row r of S}; the dual annihilator in the
// same ambient module.
Submodule annihilator(const Submodule& S);

// Valuations of an equivalent diagonal matrix diag(p^a_1, ..., p^a_m),
// m = min(rows, cols), sorted nondecreasing.  a = n means the invariant is
// indistinguishable from zero at this precision.
struct DiagonalProfile {
  std::vector<unsigned> exps;
  unsigned precision = 1;

  std::size_t unit_count() const;       // entries with a = 0
  std::size_t zero_like_count() const;  // entries with a = n
  // Any entry with 0 < a < n (a genuine torsion certificate).
  bool has_intermediate() const;

  bool operator==(const DiagonalProfile& o) const {
    return exps == o.exps && precision == o.precision;
  }
};

DiagonalProfile diagonal_invariants(const MatrixZpn& M);

// U.M.C = D with D diagonal (valuations nondecreasing) and U, C invertible.
// Pivoting: global minimal valuation, ties broken by lowest (row, col).
struct Diagonalization {
  MatrixZpn D;
  MatrixZpn U;
  MatrixZpn C;
  MatrixZpn C_inv;
  std::vector<unsigned> invariants;  // = diagonal valuations, length min(r,c)
};

Diagonalization diagonalize(const MatrixZpn& M);

// One solution of M.v = b, or nothing when the system is inconsistent.
std::optional<std::vector<std::uint64_t>> solve(
    const MatrixZpn& M, const std::vector<std::uint64_t>& b);

// Inclusion-minimal T >= S with T \cap pM = pT at this precision: divide
// the p-part out of each diagonal invariant of a tracked diagonalization.
Submodule saturation(const Submodule& S);

// Coordinatewise reduction of S to precision 1, as a subspace of F_p^d.
Submodule mod_p_image(const Submodule& S);

}  // namespace prosmooth
