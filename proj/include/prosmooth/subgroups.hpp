#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "prosmooth/pairs.hpp"

namespace prosmooth {

// An open subgroup of index p, named by its defining functional on the
// generators: a nonzero vector over F_p, normalized so that the first
// nonzero entry is 1, that vanishes on every relator's exponent vector.
struct IndexPSubgroup {
  std::vector<std::uint64_t> phi;
};

struct RewriteOptions {
  // transversal generator t: first phi-nonzero generator, or the last one
  bool use_last_generator = false;
  // coset representatives t^e with e in 0..p-1, or e-p for the upper half
  bool negative_exponents = false;
  // run the limited simplification pass after rewriting
  bool simplify = true;
};

// A presentation of the subgroup with its restricted orientation, plus the
// data needed to move words between the subgroup and its parent.
struct RewrittenPair {
  CyclotomicPair pair;
  IndexPSubgroup subgroup;
  std::size_t transversal_generator;
  // per subgroup generator: the word it stands for in the parent group
  std::vector<Word> embeddings;
  // per raw Schreier slot (parent generator i, coset j) at index i*p+j:
  // its image among the final generators (identity for tree edges and for
  // generators removed by simplification)
  std::vector<Word> slot_images;
};

// All index-p subgroups, in lexicographic order of their functionals.
std::vector<IndexPSubgroup> enumerate_index_p(const CyclotomicPair& pair);

// Reidemeister-Schreier rewriting along the chosen transversal.
RewrittenPair rewrite(const CyclotomicPair& pair, const IndexPSubgroup& U,
                      const RewriteOptions& options = {});

// Express a parent word lying in the subgroup in the subgroup's
// generators; nothing when the word is outside the subgroup.
std::optional<Word> rewrite_member(const RewrittenPair& rp, const Word& w);

// Kummerian test over every open subgroup of index at most p^k (towers of
// index-p subgroups, deduplicated as subsets of the parent group).
// certified_no reports the chain of functionals to the failing subgroup.
Verdict smooth_check(const CyclotomicPair& pair, unsigned k, unsigned n_max);

// One row of the subgroup report: the chain of index-p functionals from the
// whole group down to this subgroup (empty for the group itself), the rank
// of its rewritten presentation, and its own Kummerian verdict.
struct SurveyRow {
  std::vector<std::vector<std::uint64_t>> phi_chain;
  std::size_t rank = 0;
  Verdict verdict;
};

// Verdicts for the pair and for every open subgroup of index at most p^k,
// deduplicated and listed in the same scan order as smooth_check; unlike
// smooth_check this never stops at a failure.
std::vector<SurveyRow> smooth_survey(const CyclotomicPair& pair, unsigned k,
                                     unsigned n_max);

enum class SweepPredicate { kummerian, smooth };

struct SweepEntry {
  Orientation theta;
  Verdict verdict;
};

// Evaluate the predicate for every admissible orientation at precision n
// that is valid on the relators (invalid assignments are skipped).  The
// smooth predicate uses the given index bound.  Throws sweep_too_large
// when the raw candidate count exceeds the cap.
std::vector<SweepEntry> orientation_sweep(const Presentation& pres, unsigned n,
                                          SweepPredicate predicate,
                                          unsigned index_bound_k = 1,
                                          unsigned long long cap = 1'000'000);

}  // namespace prosmooth
