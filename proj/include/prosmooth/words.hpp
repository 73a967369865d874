#pragma once
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "prosmooth/errors.hpp"

namespace prosmooth {

// Immutable ordered table of generator names.  Copies share storage; two
// tables compare equal iff they list the same names in the same order.
class GenTable {
 public:
  GenTable();
  explicit GenTable(std::vector<std::string> names);

  std::size_t size() const { return impl_->names.size(); }
  const std::string& name(std::size_t i) const;
  const std::vector<std::string>& names() const { return impl_->names; }
  // Index of `name`; throws unknown_generator if absent.
  std::size_t index_of(const std::string& name) const;
  bool contains(const std::string& name) const;

  bool operator==(const GenTable& o) const;
  bool operator!=(const GenTable& o) const { return !(*this == o); }

 private:
  struct Impl {
    std::vector<std::string> names;
    std::unordered_map<std::string, std::size_t> index;
  };
  std::shared_ptr<const Impl> impl_;
};

// One maximal run g^e in a freely reduced word; e is never 0.
struct Syllable {
  std::size_t gen;
  long long exp;
  bool operator==(const Syllable& o) const {
    return gen == o.gen && exp == o.exp;
  }
};

// A freely reduced word in the free group on a GenTable, stored in
// run-length form so relators like y^(p^s) stay O(1) in memory.
class Word {
 public:
  // The identity word over `t`.
  explicit Word(GenTable t);
  // Reduces `syls` freely (merges runs, drops zero sums).
  Word(GenTable t, std::vector<Syllable> syls);
  // The one-syllable word g_i^e (e != 0).
  static Word generator(const GenTable& t, std::size_t i, long long e = 1);

  const GenTable& table() const { return table_; }
  const std::vector<Syllable>& syllables() const { return syls_; }
  bool is_identity() const { return syls_.empty(); }
  // Number of letters, i.e. sum over syllables of |exp| (clamped to 2^64-1).
  std::uint64_t letter_count() const;

  Word operator*(const Word& o) const;
  Word inverse() const;
  // w^k as a free word; identity when k = 0.  Guarded: throws too_large
  // when the reduced result would exceed the letter-expansion cap.
  Word pow(long long k) const;

  bool operator==(const Word& o) const;
  bool operator!=(const Word& o) const { return !(*this == o); }

  // Cyclic normal form: freely reduced and first/last syllables have
  // distinct generators (so every cyclic rotation stays reduced).
  Word cyclically_reduced() const;
  // All whole-syllable rotations of the cyclic normal form.
  std::vector<Word> cyclic_rotations() const;
  // Number of syllables whose generator is g.
  std::size_t occurrences(std::size_t g) const;

 private:
  GenTable table_;
  std::vector<Syllable> syls_;
};

void require_same_table(const Word& u, const Word& v);

// [u, v] = u^-1 v^-1 u v.
Word commutator(const Word& u, const Word& v);

// Image of u in the free abelianization; component i is the total
// exponent of generator i.  Throws too_large on (unrealistic) overflow.
std::vector<long long> exponent_vector(const Word& u);

// Homomorphic image of u under g_i -> images[i]; the images must all live
// over `target` and there must be one per generator of u's table.
Word substitute(const Word& u, const std::vector<Word>& images,
                const GenTable& target);

// Text grammar: atoms are `g`, `g^k` (k a nonzero integer), `(w)^k`,
// commutators `[u,v]` = u^-1 v^-1 u v, and the identity `1`; atoms are
// concatenated by juxtaposition or `*`.  print_word emits `x*y^-1*x^2`
// style (identity prints as `1`); parse(print(w)) == w.
Word parse_word(const std::string& text, const GenTable& gens);
std::string print_word(const Word& w);

// A finite presentation over a prime p.  Relators may be empty (free
// group); minimality is not assumed.
struct Presentation {
  std::uint64_t p;
  GenTable gens;
  std::vector<Word> relators;

  Presentation(std::uint64_t prime, GenTable g, std::vector<Word> rels);
};

}  // namespace prosmooth
