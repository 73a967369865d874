#include "prosmooth/oracle.hpp"

#include <algorithm>

namespace prosmooth {

namespace {

constexpr std::uint64_t kBruteCap = 100'000;

// index of vector v in the mixed-radix encoding with digit base q
std::uint64_t encode(const std::vector<std::uint64_t>& v, std::uint64_t q) {
  std::uint64_t idx = 0;
  for (std::size_t i = v.size(); i-- > 0;) idx = idx * q + v[i];
  return idx;
}

std::vector<std::uint64_t> decode(std::uint64_t idx, std::uint64_t q,
                                  std::size_t d) {
  std::vector<std::uint64_t> v(d);
  for (std::size_t i = 0; i < d; ++i) {
    v[i] = idx % q;
    idx /= q;
  }
  return v;
}

}  // namespace

TinyGroupModel::TinyGroupModel(std::uint64_t p,
                               std::vector<std::vector<std::size_t>> table,
                               std::vector<std::size_t> gens)
    : p_(p), table_(std::move(table)), gens_(std::move(gens)) {
  const std::size_t N = table_.size();
  if (N == 0) throw bad_parameters("empty multiplication table");
  // order must be a power of the prime, at most p^4
  std::uint64_t m = N;
  unsigned e = 0;
  while (m % p_ == 0) {
    m /= p_;
    ++e;
  }
  if (m != 1 || e > 4)
    throw bad_parameters("model order is not a p-power at most p^4");

  for (const auto& row : table_) {
    if (row.size() != N) throw bad_parameters("ragged multiplication table");
    for (std::size_t v : row)
      if (v >= N) throw bad_parameters("table entry out of range");
  }
  for (std::size_t a = 0; a < N; ++a)
    if (table_[0][a] != a || table_[a][0] != a)
      throw bad_parameters("element 0 is not an identity");
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b)
      for (std::size_t c = 0; c < N; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw bad_parameters("multiplication table is not associative");

  inv_.assign(N, N);
  for (std::size_t a = 0; a < N; ++a) {
    for (std::size_t b = 0; b < N; ++b)
      if (table_[a][b] == 0 && table_[b][a] == 0) {
        inv_[a] = b;
        break;
      }
    if (inv_[a] == N) throw bad_parameters("element without inverse");
  }

  for (std::size_t g : gens_)
    if (g >= N) throw bad_parameters("generator index out of range");
  // generators must generate: closure under right multiplication
  std::vector<char> seen(N, 0);
  seen[0] = 1;
  std::vector<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t a = queue.back();
    queue.pop_back();
    for (std::size_t g : gens_) {
      std::size_t b = table_[a][g];
      if (!seen[b]) {
        seen[b] = 1;
        queue.push_back(b);
      }
    }
  }
  if (std::count(seen.begin(), seen.end(), 1) != (long)N)
    throw bad_parameters("generators do not generate the model");
}

std::size_t TinyGroupModel::mul(std::size_t a, std::size_t b) const {
  return table_.at(a).at(b);
}

std::size_t TinyGroupModel::inv(std::size_t a) const { return inv_.at(a); }

std::size_t TinyGroupModel::eval(const Word& w) const {
  if (w.table().size() != gens_.size())
    throw ctx_mismatch("word table does not match the model's generators");
  std::size_t acc = 0;
  for (const Syllable& s : w.syllables()) {
    std::size_t g = gens_[s.gen];
    // reduce the exponent modulo the element's order
    std::size_t ord = 1, x = g;
    while (x != 0) {
      x = mul(x, g);
      ++ord;
    }
    long long e = s.exp % (long long)ord;
    if (e < 0) e += (long long)ord;
    std::size_t pw = 0;
    for (long long i = 0; i < e; ++i) pw = mul(pw, g);
    acc = mul(acc, pw);
  }
  return acc;
}

TinyGroupModel TinyGroupModel::trivial(std::uint64_t p) {
  return TinyGroupModel(p, {{0}}, {});
}

TinyGroupModel TinyGroupModel::cyclic(std::uint64_t p, unsigned k) {
  PrimeCtx probe(p, k == 0 ? 1 : k);  // validates p prime and p^k range
  std::size_t N = 1;
  for (unsigned i = 0; i < k; ++i) N *= (std::size_t)p;
  std::vector<std::vector<std::size_t>> t(N, std::vector<std::size_t>(N));
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) t[a][b] = (a + b) % N;
  return TinyGroupModel(probe.p, std::move(t), N == 1
                                                   ? std::vector<std::size_t>{}
                                                   : std::vector<std::size_t>{1});
}

TinyGroupModel TinyGroupModel::elementary(std::uint64_t p, unsigned rank) {
  PrimeCtx probe(p, 1);
  std::size_t N = 1;
  for (unsigned i = 0; i < rank; ++i) N *= (std::size_t)p;
  std::vector<std::vector<std::size_t>> t(N, std::vector<std::size_t>(N));
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) {
      // digitwise addition mod p
      std::size_t x = a, y = b, pw = 1, r = 0;
      for (unsigned i = 0; i < rank; ++i) {
        r += ((x + y) % p) * pw;
        x /= p;
        y /= p;
        pw *= p;
      }
      t[a][b] = r;
    }
  std::vector<std::size_t> gens;
  std::size_t pw = 1;
  for (unsigned i = 0; i < rank; ++i) {
    gens.push_back(pw);
    pw *= p;
  }
  return TinyGroupModel(probe.p, std::move(t), std::move(gens));
}

TinyGroupModel TinyGroupModel::heisenberg_mod_p(std::uint64_t p) {
  PrimeCtx probe(p, 1);
  if (p == 2) throw bad_parameters("exponent-p Heisenberg model needs p odd");
  const std::size_t q = (std::size_t)p;
  const std::size_t N = q * q * q;
  auto pack = [q](std::size_t a, std::size_t b, std::size_t c) {
    return (a * q + b) * q + c;
  };
  std::vector<std::vector<std::size_t>> t(N, std::vector<std::size_t>(N));
  for (std::size_t a1 = 0; a1 < q; ++a1)
    for (std::size_t b1 = 0; b1 < q; ++b1)
      for (std::size_t c1 = 0; c1 < q; ++c1)
        for (std::size_t a2 = 0; a2 < q; ++a2)
          for (std::size_t b2 = 0; b2 < q; ++b2)
            for (std::size_t c2 = 0; c2 < q; ++c2)
              // [[1,a,c],[0,1,b],[0,0,1]] matrix product
              t[pack(a1, b1, c1)][pack(a2, b2, c2)] =
                  pack((a1 + a2) % q, (b1 + b2) % q,
                       (c1 + c2 + a1 * b2) % q);
  return TinyGroupModel(probe.p, std::move(t),
                        {pack(1, 0, 0), pack(0, 1, 0)});
}

TinyGroupModel TinyGroupModel::dihedral8() {
  // elements r^a s^b, a mod 4, b mod 2, with s r = r^-1 s
  auto pack = [](std::size_t a, std::size_t b) { return a + 4 * b; };
  std::vector<std::vector<std::size_t>> t(8, std::vector<std::size_t>(8));
  for (std::size_t a1 = 0; a1 < 4; ++a1)
    for (std::size_t b1 = 0; b1 < 2; ++b1)
      for (std::size_t a2 = 0; a2 < 4; ++a2)
        for (std::size_t b2 = 0; b2 < 2; ++b2) {
          std::size_t a = b1 ? (a1 + 4 - a2) % 4 : (a1 + a2) % 4;
          t[pack(a1, b1)][pack(a2, b2)] = pack(a, (b1 + b2) % 2);
        }
  return TinyGroupModel(2, std::move(t), {pack(1, 0), pack(0, 1)});
}

std::vector<std::vector<std::uint64_t>> brute_cocycles(
    const TinyGroupModel& model, const std::vector<std::uint64_t>& theta_gens,
    const PrimeCtx& ctx) {
  const std::size_t d = model.num_generators();
  const std::size_t N = model.order();
  if (theta_gens.size() != d)
    throw bad_parameters("one theta value per generator required");
  for (std::uint64_t t : theta_gens)
    if (!is_unit_mod(t % ctx.q, ctx))
      throw bad_parameters("theta value is not a unit");

  // candidate count q^d
  unsigned __int128 count = 1;
  for (std::size_t i = 0; i < d; ++i) {
    count *= ctx.q;
    if (count > kBruteCap)
      throw too_large("brute cocycle enumeration beyond the oracle cap");
  }

  // extend theta multiplicatively over the model, checking well-definedness
  constexpr std::uint64_t kUnset = ~std::uint64_t(0);
  std::vector<std::uint64_t> theta(N, kUnset);
  theta[0] = 1 % ctx.q;
  {
    std::vector<std::size_t> queue{0};
    while (!queue.empty()) {
      std::size_t a = queue.back();
      queue.pop_back();
      for (std::size_t i = 0; i < d; ++i) {
        std::size_t b = model.mul(a, model.generator(i));
        std::uint64_t v = mul_mod(theta[a], theta_gens[i] % ctx.q, ctx);
        if (theta[b] == kUnset) {
          theta[b] = v;
          queue.push_back(b);
        } else if (theta[b] != v) {
          throw bad_parameters("theta is not well defined on the model");
        }
      }
    }
    // conflicts on non-tree edges a -> a.g are detected by the full sweep
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t i = 0; i < d; ++i) {
        std::size_t b = model.mul(a, model.generator(i));
        if (theta[b] != mul_mod(theta[a], theta_gens[i] % ctx.q, ctx))
          throw bad_parameters("theta is not well defined on the model");
      }
  }

  std::vector<std::vector<std::uint64_t>> accepted;
  for (std::uint64_t idx = 0; idx < (std::uint64_t)count; ++idx) {
    std::vector<std::uint64_t> cg = decode(idx, ctx.q, d);

    // extend c over the model along Cayley edges; reject on conflict
    std::vector<std::uint64_t> c(N, kUnset);
    c[0] = 0;
    std::vector<std::size_t> queue{0};
    bool ok = true;
    while (ok && !queue.empty()) {
      std::size_t a = queue.back();
      queue.pop_back();
      for (std::size_t i = 0; i < d && ok; ++i) {
        std::size_t b = model.mul(a, model.generator(i));
        std::uint64_t v = add_mod(c[a], mul_mod(theta[a], cg[i], ctx), ctx);
        if (c[b] == kUnset) {
          c[b] = v;
          queue.push_back(b);
        } else if (c[b] != v) {
          ok = false;
        }
      }
    }
    if (!ok) continue;
    // full re-verification on every element pair
    for (std::size_t a = 0; a < N && ok; ++a)
      for (std::size_t b = 0; b < N && ok; ++b)
        if (c[model.mul(a, b)] !=
            add_mod(c[a], mul_mod(theta[a], c[b], ctx), ctx))
          ok = false;
    if (ok) accepted.push_back(std::move(cg));
  }
  return accepted;
}

std::vector<std::vector<std::uint64_t>> brute_span(const MatrixZpn& rows) {
  const PrimeCtx& ctx = rows.ctx();
  const std::size_t d = rows.cols();
  unsigned __int128 space = 1;
  for (std::size_t i = 0; i < d; ++i) {
    space *= ctx.q;
    if (space > kBruteCap)
      throw too_large("brute span enumeration beyond the oracle cap");
  }

  std::vector<char> seen((std::size_t)space, 0);
  seen[0] = 1;
  std::vector<std::uint64_t> queue{0};
  while (!queue.empty()) {
    std::uint64_t idx = queue.back();
    queue.pop_back();
    std::vector<std::uint64_t> v = decode(idx, ctx.q, d);
    for (std::size_t r = 0; r < rows.rows(); ++r) {
      std::vector<std::uint64_t> w = v;
      for (std::size_t j = 0; j < d; ++j)
        w[j] = add_mod(w[j], rows.at(r, j), ctx);
      std::uint64_t widx = encode(w, ctx.q);
      if (!seen[widx]) {
        seen[widx] = 1;
        queue.push_back(widx);
      }
    }
  }

  std::vector<std::vector<std::uint64_t>> out;
  for (std::uint64_t idx = 0; idx < (std::uint64_t)space; ++idx)
    if (seen[idx]) out.push_back(decode(idx, ctx.q, d));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace prosmooth
