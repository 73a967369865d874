#include "prosmooth/words.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "prosmooth/padics.hpp"

namespace prosmooth {

namespace {

// Cap on the syllable length of any reduced word produced by expansion
// (pow, substitute, parsing); keeps pathological inputs from exhausting
// memory while leaving one-syllable powers like y^(p^s) exact and O(1).
constexpr std::uint64_t kMaxSyllables = std::uint64_t(1) << 22;

bool valid_identifier(const std::string& s) {
  if (s.empty() || !std::isalpha((unsigned char)s[0])) return false;
  for (char c : s)
    if (!std::isalnum((unsigned char)c) && c != '_') return false;
  return true;
}

long long checked_exp_sum(long long a, long long b) {
  __int128 s = (__int128)a + b;
  if (s > std::numeric_limits<long long>::max() ||
      s < std::numeric_limits<long long>::min())
    throw too_large("syllable exponent overflow");
  return (long long)s;
}

// Append g^e to a freely reduced syllable stack, keeping it reduced.
void push_syllable(std::vector<Syllable>& stack, std::size_t g, long long e) {
  if (e == 0) return;
  if (!stack.empty() && stack.back().gen == g) {
    stack.back().exp = checked_exp_sum(stack.back().exp, e);
    if (stack.back().exp == 0) stack.pop_back();
    return;
  }
  stack.push_back({g, e});
}

std::vector<Syllable> reduce_syllables(std::vector<Syllable> in,
                                       std::size_t ngens) {
  std::vector<Syllable> out;
  out.reserve(in.size());
  for (const Syllable& s : in) {
    if (s.gen >= ngens)
      throw error("generator index " + std::to_string(s.gen) +
                  " out of range for a table of size " + std::to_string(ngens));
    push_syllable(out, s.gen, s.exp);
  }
  return out;
}

}  // namespace

GenTable::GenTable() : impl_(std::make_shared<Impl>()) {}

GenTable::GenTable(std::vector<std::string> names) {
  auto impl = std::make_shared<Impl>();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!valid_identifier(names[i]))
      throw bad_parameters("invalid generator name '" + names[i] + "'");
    if (!impl->index.emplace(names[i], i).second)
      throw bad_parameters("duplicate generator name '" + names[i] + "'");
  }
  impl->names = std::move(names);
  impl_ = std::move(impl);
}

const std::string& GenTable::name(std::size_t i) const {
  if (i >= impl_->names.size())
    throw error("generator index " + std::to_string(i) + " out of range");
  return impl_->names[i];
}

std::size_t GenTable::index_of(const std::string& name) const {
  auto it = impl_->index.find(name);
  if (it == impl_->index.end()) throw unknown_generator(name);
  return it->second;
}

bool GenTable::contains(const std::string& name) const {
  return impl_->index.count(name) != 0;
}

bool GenTable::operator==(const GenTable& o) const {
  return impl_ == o.impl_ || impl_->names == o.impl_->names;
}

Word::Word(GenTable t) : table_(std::move(t)) {}

Word::Word(GenTable t, std::vector<Syllable> syls) : table_(std::move(t)) {
  syls_ = reduce_syllables(std::move(syls), table_.size());
}

Word Word::generator(const GenTable& t, std::size_t i, long long e) {
  if (e == 0) throw zero_exponent();
  return Word(t, {{i, e}});
}

std::uint64_t Word::letter_count() const {
  unsigned __int128 total = 0;
  for (const Syllable& s : syls_) {
    total += s.exp < 0 ? -(unsigned __int128)s.exp : (unsigned __int128)s.exp;
  }
  if (total > std::numeric_limits<std::uint64_t>::max())
    return std::numeric_limits<std::uint64_t>::max();
  return (std::uint64_t)total;
}

void require_same_table(const Word& u, const Word& v) {
  if (u.table() != v.table())
    throw ctx_mismatch("words over different generator tables");
}

Word Word::operator*(const Word& o) const {
  require_same_table(*this, o);
  std::vector<Syllable> out = syls_;
  for (const Syllable& s : o.syls_) push_syllable(out, s.gen, s.exp);
  Word r(table_);
  r.syls_ = std::move(out);
  return r;
}

Word Word::inverse() const {
  Word r(table_);
  r.syls_.reserve(syls_.size());
  for (auto it = syls_.rbegin(); it != syls_.rend(); ++it)
    r.syls_.push_back({it->gen, -it->exp});
  return r;
}

bool Word::operator==(const Word& o) const {
  require_same_table(*this, o);
  return syls_ == o.syls_;
}

Word Word::cyclically_reduced() const {
  std::vector<Syllable> core = syls_;
  while (core.size() >= 2 && core.front().gen == core.back().gen) {
    long long s = checked_exp_sum(core.front().exp, core.back().exp);
    if (s == 0) {
      core.erase(core.begin());
      core.pop_back();
    } else {
      // x^a . M . x^b  ~  x^(a+b) . M  up to conjugation
      core.pop_back();
      core.front().exp = s;
      break;
    }
  }
  Word r(table_);
  r.syls_ = std::move(core);
  return r;
}

std::vector<Word> Word::cyclic_rotations() const {
  Word core = cyclically_reduced();
  const auto& cs = core.syls_;
  if (cs.size() <= 1) return {core};
  std::vector<Word> out;
  out.reserve(cs.size());
  for (std::size_t r = 0; r < cs.size(); ++r) {
    Word w(table_);
    w.syls_.insert(w.syls_.end(), cs.begin() + r, cs.end());
    w.syls_.insert(w.syls_.end(), cs.begin(), cs.begin() + r);
    out.push_back(std::move(w));
  }
  return out;
}

std::size_t Word::occurrences(std::size_t g) const {
  std::size_t c = 0;
  for (const Syllable& s : syls_)
    if (s.gen == g) ++c;
  return c;
}

Word Word::pow(long long k) const {
  if (k == 0) return Word(table_);
  if (k < 0) {
    std::uint64_t mag = (std::uint64_t)(-(k + 1)) + 1;
    if (mag <= (std::uint64_t)std::numeric_limits<long long>::max())
      return inverse().pow((long long)mag);
    throw too_large("exponent magnitude overflow");
  }
  if (syls_.empty()) return *this;

  // w = c . core . c^-1 with core cyclically normal, so w^k = c . core^k . c^-1.
  std::vector<Syllable> prefix;
  std::vector<Syllable> core = syls_;
  while (core.size() >= 2 && core.front().gen == core.back().gen) {
    long long s = checked_exp_sum(core.front().exp, core.back().exp);
    if (s == 0) {
      prefix.push_back(core.front());
      core.erase(core.begin());
      core.pop_back();
    } else {
      // x^a M x^b = x^-b . (x^(a+b) M) . x^b
      prefix.push_back({core.back().gen, -core.back().exp});
      core.pop_back();
      core.front().exp = s;
      break;
    }
  }

  std::vector<Syllable> powered;
  if (core.size() == 1) {
    __int128 e = (__int128)core[0].exp * k;
    if (e > std::numeric_limits<long long>::max() ||
        e < std::numeric_limits<long long>::min())
      throw too_large("syllable exponent overflow in pow");
    powered.push_back({core[0].gen, (long long)e});
  } else if (!core.empty()) {
    // cyclically normal with >= 2 syllables: concatenation never merges
    if ((unsigned __int128)core.size() * (std::uint64_t)k > kMaxSyllables)
      throw too_large("word power exceeds the expansion cap");
    powered.reserve(core.size() * (std::size_t)k);
    for (long long i = 0; i < k; ++i)
      powered.insert(powered.end(), core.begin(), core.end());
  }

  std::vector<Syllable> full;
  full.reserve(prefix.size() * 2 + powered.size());
  for (const Syllable& s : prefix) push_syllable(full, s.gen, s.exp);
  for (const Syllable& s : powered) push_syllable(full, s.gen, s.exp);
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
    push_syllable(full, it->gen, -it->exp);
  Word r(table_);
  r.syls_ = std::move(full);
  return r;
}

Word commutator(const Word& u, const Word& v) {
  require_same_table(u, v);
  return u.inverse() * v.inverse() * u * v;
}

std::vector<long long> exponent_vector(const Word& u) {
  std::vector<__int128> acc(u.table().size(), 0);
  for (const Syllable& s : u.syllables()) acc[s.gen] += s.exp;
  std::vector<long long> out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) {
    if (acc[i] > std::numeric_limits<long long>::max() ||
        acc[i] < std::numeric_limits<long long>::min())
      throw too_large("exponent vector overflow");
    out[i] = (long long)acc[i];
  }
  return out;
}

Word substitute(const Word& u, const std::vector<Word>& images,
                const GenTable& target) {
  if (images.size() != u.table().size())
    throw ctx_mismatch("substitution needs one image per generator");
  for (const Word& im : images)
    if (im.table() != target)
      throw ctx_mismatch("substitution image over the wrong table");
  Word out(target);
  for (const Syllable& s : u.syllables()) out = out * images[s.gen].pow(s.exp);
  return out;
}

// ---- text grammar -------------------------------------------------------

namespace {

struct Parser {
  const std::string& s;
  const GenTable& gens;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }

  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& what) {
    throw syntax_error(what, pos);
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  long long parse_exponent() {
    skip_ws();
    bool neg = false;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
      neg = s[pos] == '-';
      ++pos;
    }
    if (pos >= s.size() || !std::isdigit((unsigned char)s[pos]))
      fail("expected an integer exponent");
    unsigned long long mag = 0;
    const unsigned long long cap = std::numeric_limits<long long>::max();
    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
      unsigned d = (unsigned)(s[pos] - '0');
      if (mag > (cap - d) / 10) fail("exponent out of range");
      mag = mag * 10 + d;
      ++pos;
    }
    if (mag == 0) throw zero_exponent();
    return neg ? -(long long)mag : (long long)mag;
  }

  bool at_atom_start() {
    char c = peek();
    return c == '1' || c == '(' || c == '[' || std::isalpha((unsigned char)c);
  }

  Word parse_primary() {
    skip_ws();
    if (pos >= s.size()) fail("expected a word");
    char c = s[pos];
    if (c == '1') {
      ++pos;
      if (pos < s.size() && std::isdigit((unsigned char)s[pos]))
        fail("unexpected digit after identity '1'");
      return Word(gens);
    }
    if (c == '(') {
      ++pos;
      Word w = parse_word();
      expect(')');
      return w;
    }
    if (c == '[') {
      ++pos;
      Word u = parse_word();
      expect(',');
      Word v = parse_word();
      expect(']');
      return commutator(u, v);
    }
    if (std::isalpha((unsigned char)c)) {
      std::size_t start = pos;
      ++pos;
      while (pos < s.size() && (std::isalnum((unsigned char)s[pos]) ||
                                s[pos] == '_'))
        ++pos;
      return Word::generator(gens,
                             gens.index_of(s.substr(start, pos - start)));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  Word parse_atom() {
    Word w = parse_primary();
    skip_ws();
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      w = w.pow(parse_exponent());
    }
    return w;
  }

  Word parse_word() {
    Word w = parse_atom();
    for (;;) {
      skip_ws();
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        w = w * parse_atom();
        continue;
      }
      if (at_atom_start()) {
        w = w * parse_atom();
        continue;
      }
      return w;
    }
  }
};

}  // namespace

Word parse_word(const std::string& text, const GenTable& gens) {
  Parser p{text, gens};
  Word w = p.parse_word();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing characters after word");
  return w;
}

std::string print_word(const Word& w) {
  if (w.is_identity()) return "1";
  std::string out;
  bool first = true;
  for (const Syllable& s : w.syllables()) {
    if (!first) out += '*';
    first = false;
    out += w.table().name(s.gen);
    if (s.exp != 1) {
      out += '^';
      out += std::to_string(s.exp);
    }
  }
  return out;
}

Presentation::Presentation(std::uint64_t prime, GenTable g,
                           std::vector<Word> rels)
    : p(prime), gens(std::move(g)), relators(std::move(rels)) {
  [[maybe_unused]] PrimeCtx probe(p, 1);  // validates primality
  for (const Word& r : relators)
    if (r.table() != gens)
      throw ctx_mismatch("relator over a different generator table");
}

}  // namespace prosmooth
