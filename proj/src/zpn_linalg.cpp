#include "prosmooth/zpn_linalg.hpp"

#include <algorithm>

namespace prosmooth {

namespace {

std::uint64_t p_pow(unsigned a, const PrimeCtx& ctx) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < a; ++i) r *= ctx.p;
  return r;
}

std::size_t leading_index(const std::vector<std::uint64_t>& r) {
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] != 0) return i;
  return r.size();
}

}  // namespace

MatrixZpn::MatrixZpn(std::size_t rows, std::size_t cols, const PrimeCtx& ctx)
    : rows_(rows), cols_(cols), ctx_(ctx), data_(rows * cols, 0) {}

MatrixZpn MatrixZpn::identity(std::size_t d, const PrimeCtx& ctx) {
  MatrixZpn m(d, d, ctx);
  for (std::size_t i = 0; i < d; ++i) m.data_[i * d + i] = 1 % ctx.q;
  return m;
}

MatrixZpn MatrixZpn::from_rows(const std::vector<std::vector<long long>>& rows,
                               std::size_t cols, const PrimeCtx& ctx) {
  MatrixZpn m(rows.size(), cols, ctx);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols)
      throw bad_parameters("row length does not match the column count");
    for (std::size_t j = 0; j < cols; ++j)
      m.data_[i * cols + j] = reduce_mod(rows[i][j], ctx);
  }
  return m;
}

std::uint64_t MatrixZpn::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw error("matrix index out of range");
  return data_[i * cols_ + j];
}

void MatrixZpn::set(std::size_t i, std::size_t j, long long v) {
  if (i >= rows_ || j >= cols_) throw error("matrix index out of range");
  data_[i * cols_ + j] = reduce_mod(v, ctx_);
}

std::vector<std::uint64_t> MatrixZpn::row(std::size_t i) const {
  if (i >= rows_) throw error("matrix row out of range");
  return {data_.begin() + (long)(i * cols_),
          data_.begin() + (long)((i + 1) * cols_)};
}

MatrixZpn MatrixZpn::operator*(const MatrixZpn& o) const {
  require_same_ctx(ctx_, o.ctx_);
  if (cols_ != o.rows_) throw bad_parameters("matrix shape mismatch");
  MatrixZpn r(rows_, o.cols_, ctx_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      std::uint64_t a = data_[i * cols_ + k];
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        r.data_[i * o.cols_ + j] =
            add_mod(r.data_[i * o.cols_ + j],
                    mul_mod(a, o.data_[k * o.cols_ + j], ctx_), ctx_);
    }
  return r;
}

std::vector<std::uint64_t> MatrixZpn::apply(
    const std::vector<std::uint64_t>& v) const {
  if (v.size() != cols_) throw bad_parameters("vector length mismatch");
  std::vector<std::uint64_t> out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out[i] = add_mod(out[i],
                       mul_mod(data_[i * cols_ + j], v[j] % ctx_.q, ctx_),
                       ctx_);
  return out;
}

MatrixZpn MatrixZpn::reduce_to(unsigned m) const {
  MatrixZpn r(rows_, cols_, ctx_.with_precision(m));
  for (std::size_t i = 0; i < data_.size(); ++i)
    r.data_[i] = data_[i] % r.ctx_.q;
  return r;
}

bool MatrixZpn::operator==(const MatrixZpn& o) const {
  require_same_ctx(ctx_, o.ctx_);
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

void MatrixZpn::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < cols_; ++k)
    std::swap(data_[i * cols_ + k], data_[j * cols_ + k]);
}

void MatrixZpn::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < rows_; ++k)
    std::swap(data_[k * cols_ + i], data_[k * cols_ + j]);
}

void MatrixZpn::add_row_multiple(std::size_t dst, std::size_t src,
                                 std::uint64_t c) {
  for (std::size_t k = 0; k < cols_; ++k)
    data_[dst * cols_ + k] =
        add_mod(data_[dst * cols_ + k],
                mul_mod(c, data_[src * cols_ + k], ctx_), ctx_);
}

void MatrixZpn::add_col_multiple(std::size_t dst, std::size_t src,
                                 std::uint64_t c) {
  for (std::size_t k = 0; k < rows_; ++k)
    data_[k * cols_ + dst] =
        add_mod(data_[k * cols_ + dst],
                mul_mod(c, data_[k * cols_ + src], ctx_), ctx_);
}

void MatrixZpn::scale_row(std::size_t i, std::uint64_t unit) {
  for (std::size_t k = 0; k < cols_; ++k)
    data_[i * cols_ + k] = mul_mod(data_[i * cols_ + k], unit, ctx_);
}

// ---- Howell form --------------------------------------------------------

Submodule Submodule::span(const MatrixZpn& gens) {
  const PrimeCtx& ctx = gens.ctx();
  const std::size_t d = gens.cols();

  std::vector<std::vector<std::uint64_t>> work;
  for (std::size_t i = 0; i < gens.rows(); ++i) {
    auto r = gens.row(i);
    if (leading_index(r) < d) work.push_back(std::move(r));
  }

  struct PivotRow {
    std::vector<std::uint64_t> v;
    std::size_t col;
    unsigned a;
  };
  std::vector<PivotRow> H;

  for (std::size_t j = 0; j < d; ++j) {
    // minimal-valuation row leading at column j
    std::size_t best = work.size();
    unsigned best_a = ctx.n + 1;
    for (std::size_t idx = 0; idx < work.size(); ++idx)
      if (leading_index(work[idx]) == j) {
        unsigned a = valuation_mod(work[idx][j], ctx);
        if (a < best_a) {
          best = idx;
          best_a = a;
        }
      }
    if (best == work.size()) continue;

    std::vector<std::uint64_t> pivot = std::move(work[best]);
    work[best] = std::move(work.back());
    work.pop_back();

    const std::uint64_t pa = p_pow(best_a, ctx);
    const std::uint64_t uinv = inv_mod(pivot[j] / pa, ctx);
    for (auto& x : pivot) x = mul_mod(x, uinv, ctx);

    for (auto& r : work)
      if (leading_index(r) == j) {
        const std::uint64_t q = r[j] / pa;  // exact: valuation >= best_a
        for (std::size_t k = 0; k < d; ++k)
          r[k] = sub_mod(r[k], mul_mod(q, pivot[k], ctx), ctx);
      }
    work.erase(std::remove_if(work.begin(), work.end(),
                              [d](const std::vector<std::uint64_t>& r) {
                                return leading_index(r) == d;
                              }),
               work.end());

    if (best_a > 0) {
      // shadow row: p^(n-a) . pivot spans the torsion tail needed for the
      // Howell leading-coefficient property
      std::vector<std::uint64_t> shadow(d);
      const std::uint64_t s = p_pow(ctx.n - best_a, ctx);
      for (std::size_t k = 0; k < d; ++k)
        shadow[k] = mul_mod(s, pivot[k], ctx);
      if (leading_index(shadow) < d) work.push_back(std::move(shadow));
    }

    H.push_back({std::move(pivot), j, best_a});
  }

  // reduce entries above each pivot modulo the pivot value
  for (std::size_t r = 0; r < H.size(); ++r) {
    const std::uint64_t pa = p_pow(H[r].a, ctx);
    for (std::size_t h = 0; h < r; ++h) {
      const std::uint64_t q = H[h].v[H[r].col] / pa;
      if (q == 0) continue;
      for (std::size_t k = 0; k < d; ++k)
        H[h].v[k] = sub_mod(H[h].v[k], mul_mod(q, H[r].v[k], ctx), ctx);
    }
  }

  MatrixZpn basis(H.size(), d, ctx);
  for (std::size_t r = 0; r < H.size(); ++r)
    for (std::size_t k = 0; k < d; ++k)
      basis.set(r, k, (long long)H[r].v[k]);
  return Submodule(std::move(basis));
}

Submodule Submodule::zero(std::size_t d, const PrimeCtx& ctx) {
  return Submodule(MatrixZpn(0, d, ctx));
}

Submodule Submodule::full(std::size_t d, const PrimeCtx& ctx) {
  return span(MatrixZpn::identity(d, ctx));
}

bool Submodule::contains(const std::vector<std::uint64_t>& v) const {
  const PrimeCtx& ctx = basis_.ctx();
  if (v.size() != ambient_dim())
    throw bad_parameters("vector length does not match the ambient dimension");
  std::vector<std::uint64_t> w(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) w[k] = v[k] % ctx.q;

  for (std::size_t r = 0; r < basis_.rows(); ++r) {
    const auto row = basis_.row(r);
    const std::size_t j = leading_index(row);
    const std::uint64_t pa = p_pow(valuation_mod(row[j], ctx), ctx);
    const std::uint64_t c = w[j];
    if (c == 0) continue;
    if (c % pa != 0) return false;
    const std::uint64_t q = c / pa;
    for (std::size_t k = 0; k < w.size(); ++k)
      w[k] = sub_mod(w[k], mul_mod(q, row[k], ctx), ctx);
  }
  return leading_index(w) == w.size();
}

bool Submodule::contains(const Submodule& other) const {
  require_same_ctx(ctx(), other.ctx());
  if (ambient_dim() != other.ambient_dim())
    throw bad_parameters("submodules of different ambient dimension");
  for (std::size_t r = 0; r < other.basis_.rows(); ++r)
    if (!contains(other.basis_.row(r))) return false;
  return true;
}

bool Submodule::operator==(const Submodule& o) const {
  return basis_ == o.basis_;
}

Submodule Submodule::operator+(const Submodule& o) const {
  require_same_ctx(ctx(), o.ctx());
  if (ambient_dim() != o.ambient_dim())
    throw bad_parameters("submodules of different ambient dimension");
  MatrixZpn stacked(basis_.rows() + o.basis_.rows(), ambient_dim(), ctx());
  for (std::size_t i = 0; i < basis_.rows(); ++i)
    for (std::size_t j = 0; j < ambient_dim(); ++j)
      stacked.set(i, j, (long long)basis_.at(i, j));
  for (std::size_t i = 0; i < o.basis_.rows(); ++i)
    for (std::size_t j = 0; j < ambient_dim(); ++j)
      stacked.set(basis_.rows() + i, j, (long long)o.basis_.at(i, j));
  return span(stacked);
}

std::uint64_t Submodule::element_count() const {
  const PrimeCtx& c = ctx();
  unsigned __int128 total = 1;
  for (std::size_t r = 0; r < basis_.rows(); ++r) {
    const auto row = basis_.row(r);
    const unsigned a = valuation_mod(row[leading_index(row)], c);
    total *= p_pow(c.n - a, c);
    if (total > (std::uint64_t(1) << 62))
      throw too_large("submodule too large to count");
  }
  return (std::uint64_t)total;
}

Submodule howell_form(const MatrixZpn& M) { return Submodule::span(M); }

// ---- diagonalization ----------------------------------------------------

Diagonalization diagonalize(const MatrixZpn& M) {
  const PrimeCtx& ctx = M.ctx();
  const std::size_t rows = M.rows(), cols = M.cols();
  const std::size_t m = std::min(rows, cols);

  Diagonalization out{M, MatrixZpn::identity(rows, ctx),
                      MatrixZpn::identity(cols, ctx),
                      MatrixZpn::identity(cols, ctx),
                      std::vector<unsigned>(m, ctx.n)};
  MatrixZpn& D = out.D;
  MatrixZpn& U = out.U;
  MatrixZpn& C = out.C;
  MatrixZpn& Cinv = out.C_inv;

  for (std::size_t k = 0; k < m; ++k) {
    // global minimal-valuation pivot, ties to the lowest (row, col)
    std::size_t bi = rows, bj = cols;
    unsigned best_a = ctx.n;
    for (std::size_t i = k; i < rows; ++i)
      for (std::size_t j = k; j < cols; ++j) {
        unsigned a = valuation_mod(D.at(i, j), ctx);
        if (a < best_a) {
          best_a = a;
          bi = i;
          bj = j;
        }
      }
    if (bi == rows) break;  // all remaining entries are 0; invariants stay n

    D.swap_rows(k, bi);
    U.swap_rows(k, bi);
    D.swap_cols(k, bj);
    C.swap_cols(k, bj);
    Cinv.swap_rows(k, bj);

    const std::uint64_t pa = p_pow(best_a, ctx);
    const std::uint64_t uinv = inv_mod(D.at(k, k) / pa, ctx);
    D.scale_row(k, uinv);
    U.scale_row(k, uinv);

    for (std::size_t i = k + 1; i < rows; ++i) {
      const std::uint64_t c = D.at(i, k);
      if (c == 0) continue;
      D.add_row_multiple(i, k, neg_mod(c / pa, ctx));
      U.add_row_multiple(i, k, neg_mod(c / pa, ctx));
    }
    for (std::size_t j = k + 1; j < cols; ++j) {
      const std::uint64_t c = D.at(k, j);
      if (c == 0) continue;
      const std::uint64_t q = c / pa;
      D.add_col_multiple(j, k, neg_mod(q, ctx));
      C.add_col_multiple(j, k, neg_mod(q, ctx));
      Cinv.add_row_multiple(k, j, q);
    }
    out.invariants[k] = best_a;
  }
  return out;
}

std::optional<std::vector<std::uint64_t>> solve(
    const MatrixZpn& M, const std::vector<std::uint64_t>& b) {
  const PrimeCtx& ctx = M.ctx();
  if (b.size() != M.rows()) throw bad_parameters("rhs length mismatch");
  std::vector<std::uint64_t> target(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) target[i] = b[i] % ctx.q;
  Diagonalization dg = diagonalize(M);
  const std::size_t m = std::min(M.rows(), M.cols());

  // M v = b  <=>  D w = U b with v = C w
  std::vector<std::uint64_t> rhs = dg.U.apply(target);
  std::vector<std::uint64_t> w(M.cols(), 0);
  for (std::size_t i = 0; i < M.rows(); ++i) {
    if (i >= m || dg.invariants[i] == ctx.n) {
      if (rhs[i] != 0) return std::nullopt;
      continue;
    }
    const std::uint64_t pa = p_pow(dg.invariants[i], ctx);
    if (rhs[i] % pa != 0) return std::nullopt;
    w[i] = rhs[i] / pa;
  }
  std::vector<std::uint64_t> v = dg.C.apply(w);
  if (M.apply(v) != target)
    throw internal_defect("linear solve verification failed");
  return v;
}

std::size_t DiagonalProfile::unit_count() const {
  return (std::size_t)std::count(exps.begin(), exps.end(), 0u);
}

std::size_t DiagonalProfile::zero_like_count() const {
  return (std::size_t)std::count(exps.begin(), exps.end(), precision);
}

bool DiagonalProfile::has_intermediate() const {
  for (unsigned a : exps)
    if (a > 0 && a < precision) return true;
  return false;
}

DiagonalProfile diagonal_invariants(const MatrixZpn& M) {
  Diagonalization dg = diagonalize(M);
  return DiagonalProfile{std::move(dg.invariants), M.ctx().n};
}

Submodule kernel(const MatrixZpn& M) {
  const PrimeCtx& ctx = M.ctx();
  const std::size_t d = M.cols();
  Diagonalization dg = diagonalize(M);
  const std::size_t m = std::min(M.rows(), d);

  std::vector<std::vector<long long>> gens;
  for (std::size_t i = 0; i < m; ++i) {
    if (dg.invariants[i] == 0) continue;  // coordinate pinned to 0
    const std::uint64_t s = p_pow(ctx.n - dg.invariants[i], ctx);
    std::vector<long long> g(d);
    for (std::size_t k = 0; k < d; ++k)
      g[k] = (long long)mul_mod(s, dg.C.at(k, i), ctx);
    gens.push_back(std::move(g));
  }
  for (std::size_t i = m; i < d; ++i) {
    std::vector<long long> g(d);
    for (std::size_t k = 0; k < d; ++k) g[k] = (long long)dg.C.at(k, i);
    gens.push_back(std::move(g));
  }
  return Submodule::span(MatrixZpn::from_rows(gens, d, ctx));
}

Submodule annihilator(const Submodule& S) { return kernel(S.basis()); }

Submodule saturation(const Submodule& S) {
  const PrimeCtx& ctx = S.ctx();
  const std::size_t d = S.ambient_dim();
  if (S.rank() == 0) return S;
  Diagonalization dg = diagonalize(S.basis());
  const std::size_t m = std::min(S.rank(), d);

  // row module of the basis = span{ p^(a_i) . row_i(C^-1) : i < m }; divide
  // out the p-parts (entries with a_i = n contributed nothing and are dropped)
  std::vector<std::vector<long long>> gens;
  for (std::size_t i = 0; i < m; ++i) {
    if (dg.invariants[i] == ctx.n) continue;
    std::vector<long long> g(d);
    for (std::size_t k = 0; k < d; ++k)
      g[k] = (long long)dg.C_inv.at(i, k);
    gens.push_back(std::move(g));
  }
  return Submodule::span(MatrixZpn::from_rows(gens, d, ctx));
}

Submodule mod_p_image(const Submodule& S) {
  return Submodule::span(S.basis().reduce_to(1));
}

}  // namespace prosmooth
