#include "prosmooth/subgroups.hpp"

#include <algorithm>
#include <memory>
#include <string>
#include <utility>

namespace prosmooth {

namespace {

constexpr std::uint64_t kLetterGuard = 10'000'000;

std::vector<long long> transversal_exponents(std::uint64_t p,
                                             std::uint64_t phi_t,
                                             bool negative) {
  PrimeCtx fp(p, 1);
  std::uint64_t it = inv_mod(phi_t % p, fp);
  std::vector<long long> e(p);
  for (std::uint64_t j = 0; j < p; ++j) {
    long long v = (long long)((j * it) % p);
    if (negative && j > 0) v -= (long long)p;
    e[j] = v;
  }
  return e;
}

// Coset walk of a parent word starting at `start`; emits one syllable per
// visited Schreier slot (index i*p + j) and reports the final coset.
struct TraceResult {
  std::vector<Syllable> slots;
  std::uint64_t end = 0;
};

TraceResult trace_word(const Word& w, const std::vector<std::uint64_t>& phi,
                       std::uint64_t p, std::uint64_t start) {
  if (w.letter_count() > kLetterGuard)
    throw too_large("word too long to rewrite");
  TraceResult out;
  std::uint64_t cur = start;
  auto emit = [&](std::size_t slot, long long e) {
    if (!out.slots.empty() && out.slots.back().gen == slot) {
      out.slots.back().exp += e;  // merge runs on the same slot
      if (out.slots.back().exp == 0) out.slots.pop_back();
    } else {
      out.slots.push_back({slot, e});
    }
  };
  for (const Syllable& s : w.syllables()) {
    std::uint64_t step = phi[s.gen] % p;
    if (step == 0) {
      // the coset never moves: one slot soaks up the whole run
      emit(s.gen * p + cur, s.exp);
      continue;
    }
    std::uint64_t count = s.exp > 0 ? (std::uint64_t)s.exp
                                    : (std::uint64_t)(-(s.exp + 1)) + 1;
    for (std::uint64_t i = 0; i < count; ++i) {
      if (s.exp > 0) {
        emit(s.gen * p + cur, 1);
        cur = (cur + step) % p;
      } else {
        cur = (cur + p - step) % p;
        emit(s.gen * p + cur, -1);
      }
    }
  }
  out.end = cur;
  return out;
}

void validate_functional(const CyclotomicPair& pair,
                         const IndexPSubgroup& U) {
  const std::size_t d = pair.rank();
  const std::uint64_t p = pair.p();
  if (U.phi.size() != d) throw bad_parameters("functional length mismatch");
  std::size_t lead = d;
  for (std::size_t i = 0; i < d; ++i) {
    if (U.phi[i] >= p) throw bad_parameters("functional entry out of range");
    if (U.phi[i] != 0 && lead == d) lead = i;
  }
  if (lead == d) throw bad_parameters("functional must be nonzero");
  if (U.phi[lead] != 1)
    throw bad_parameters("functional must lead with 1");
  for (const Word& r : pair.presentation.relators) {
    std::vector<long long> ev = exponent_vector(r);
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < d; ++i)
      acc = (acc + U.phi[i] * (std::uint64_t)(((ev[i] % (long long)p) +
                                              (long long)p) %
                                             (long long)p)) %
            p;
    if (acc != 0)
      throw bad_parameters("functional does not vanish on the relators");
  }
}

// One generator-elimination step of the limited simplification; true when
// something was eliminated.
struct SimplifyState {
  GenTable table;
  std::vector<Word> relators;
  std::vector<Word> embeddings;   // into the parent
  std::vector<TruncatedUnit> theta;
  std::vector<Word> slot_images;  // raw slot -> current generators
};

bool eliminate_once(SimplifyState& st) {
  for (const Word& r : st.relators) {
    Word cyc = r.cyclically_reduced();
    const auto& sy = cyc.syllables();
    for (std::size_t k = 0; k < sy.size(); ++k) {
      if (sy[k].exp != 1 && sy[k].exp != -1) continue;
      if (cyc.occurrences(sy[k].gen) != 1) continue;
      std::size_t g = sy[k].gen;
      // rotation starting at k reads g^e * v with v free of g
      std::vector<Syllable> rest;
      for (std::size_t m = 1; m < sy.size(); ++m)
        rest.push_back(sy[(k + m) % sy.size()]);
      Word v(st.table, rest);
      Word image = sy[k].exp == 1 ? v.inverse() : v;

      std::vector<std::string> names;
      for (std::size_t i = 0; i < st.table.size(); ++i)
        if (i != g) names.push_back(st.table.name(i));
      GenTable nt(names);
      auto shift = [&](const Word& w) {
        std::vector<Syllable> out;
        for (const Syllable& s : w.syllables())
          out.push_back({s.gen > g ? s.gen - 1 : s.gen, s.exp});
        return Word(nt, out);
      };
      std::vector<Word> images;
      for (std::size_t i = 0; i < st.table.size(); ++i)
        images.push_back(i == g ? shift(image)
                                : Word::generator(nt, i > g ? i - 1 : i));

      std::vector<Word> new_rel;
      for (const Word& w : st.relators) new_rel.push_back(substitute(w, images, nt));
      std::vector<Word> new_slots;
      for (const Word& w : st.slot_images)
        new_slots.push_back(substitute(w, images, nt));
      std::vector<Word> new_emb;
      std::vector<TruncatedUnit> new_theta;
      for (std::size_t i = 0; i < st.table.size(); ++i) {
        if (i == g) continue;
        new_emb.push_back(st.embeddings[i]);
        new_theta.push_back(st.theta[i]);
      }
      st.table = nt;
      st.relators = std::move(new_rel);
      st.slot_images = std::move(new_slots);
      st.embeddings = std::move(new_emb);
      st.theta = std::move(new_theta);
      return true;
    }
  }
  return false;
}

void drop_trivial_relators(std::vector<Word>& rels) {
  rels.erase(std::remove_if(rels.begin(), rels.end(),
                            [](const Word& w) { return w.is_identity(); }),
             rels.end());
}

std::optional<std::pair<unsigned, KummerCheck>> first_failing_level(
    const CyclotomicPair& pair, unsigned n_max) {
  for (unsigned n = 1; n <= n_max; ++n) {
    KummerCheck kc = kummerian_check(pair, n);
    if (!kc.passes) return std::make_pair(n, std::move(kc));
  }
  return std::nullopt;
}

unsigned profile_torsion(const DiagonalProfile& profile) {
  unsigned best = 0;
  for (unsigned a : profile.exps)
    if (a > 0 && a < profile.precision && (best == 0 || a < best)) best = a;
  if (best == 0)
    throw internal_defect("no intermediate invariant in a failing profile");
  return best;
}

}  // namespace

std::vector<IndexPSubgroup> enumerate_index_p(const CyclotomicPair& pair) {
  const std::size_t d = pair.rank();
  const std::uint64_t p = pair.p();
  if (d == 0) throw bad_parameters("no generators to enumerate over");
  double count = 1;
  for (std::size_t i = 0; i < d; ++i) count *= (double)p;
  if (count > 1e7) throw too_large("too many candidate functionals");

  std::vector<std::vector<std::uint64_t>> rel_vecs;
  for (const Word& r : pair.presentation.relators) {
    std::vector<long long> ev = exponent_vector(r);
    std::vector<std::uint64_t> row(d);
    for (std::size_t i = 0; i < d; ++i)
      row[i] = (std::uint64_t)(((ev[i] % (long long)p) + (long long)p) %
                               (long long)p);
    rel_vecs.push_back(std::move(row));
  }

  std::vector<IndexPSubgroup> out;
  std::vector<std::uint64_t> phi(d, 0);
  for (;;) {
    // next vector in lexicographic order (phi[0] most significant)
    std::size_t pos = d;
    while (pos > 0) {
      --pos;
      if (++phi[pos] < p) break;
      phi[pos] = 0;
      if (pos == 0) return out;
    }
    std::size_t lead = 0;
    while (lead < d && phi[lead] == 0) ++lead;
    if (phi[lead] != 1) continue;
    bool ok = true;
    for (const auto& row : rel_vecs) {
      std::uint64_t acc = 0;
      for (std::size_t i = 0; i < d; ++i) acc = (acc + phi[i] * row[i]) % p;
      if (acc != 0) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(IndexPSubgroup{phi});
  }
}

RewrittenPair rewrite(const CyclotomicPair& pair, const IndexPSubgroup& U,
                      const RewriteOptions& options) {
  validate_functional(pair, U);
  const std::size_t d = pair.rank();
  const std::uint64_t p = pair.p();
  const GenTable& pt = pair.presentation.gens;

  std::size_t t_idx = 0;
  if (options.use_last_generator) {
    for (std::size_t i = 0; i < d; ++i)
      if (U.phi[i] != 0) t_idx = i;
  } else {
    while (U.phi[t_idx] == 0) ++t_idx;
  }
  std::vector<long long> exps =
      transversal_exponents(p, U.phi[t_idx], options.negative_exponents);

  // slot (i, j): T(j) x_i T(j + phi_i)^-1
  auto sigma = [&](std::size_t i, std::uint64_t j) {
    return (j + U.phi[i]) % p;
  };
  std::vector<Word> slot_embed;
  std::vector<bool> trivial(d * p);
  for (std::size_t i = 0; i < d; ++i)
    for (std::uint64_t j = 0; j < p; ++j) {
      std::vector<Syllable> sy;
      if (exps[j] != 0) sy.push_back({t_idx, exps[j]});
      sy.push_back({i, 1});
      long long back = exps[sigma(i, j)];
      if (back != 0) sy.push_back({t_idx, -back});
      Word w(pt, sy);
      trivial[i * p + j] = w.is_identity();
      slot_embed.push_back(std::move(w));
    }

  std::vector<std::string> names;
  std::vector<Word> embeddings;
  std::vector<TruncatedUnit> theta;
  std::vector<std::size_t> slot_to_gen(d * p, SIZE_MAX);
  for (std::size_t i = 0; i < d; ++i)
    for (std::uint64_t j = 0; j < p; ++j) {
      std::size_t slot = i * p + j;
      if (trivial[slot]) continue;
      slot_to_gen[slot] = names.size();
      names.push_back("u_" + pt.name(i) + "_" + std::to_string(j));
      embeddings.push_back(slot_embed[slot]);
      theta.push_back(theta_eval(pair.orientation, slot_embed[slot]));
    }
  GenTable table(names);

  std::vector<Word> relators;
  for (const Word& r : pair.presentation.relators)
    for (std::uint64_t j = 0; j < p; ++j) {
      TraceResult tr = trace_word(r, U.phi, p, j);
      if (tr.end != j)
        throw internal_defect("relator trace left its starting coset");
      std::vector<Syllable> sy;
      for (const Syllable& s : tr.slots)
        if (!trivial[s.gen]) sy.push_back({slot_to_gen[s.gen], s.exp});
      relators.emplace_back(table, std::move(sy));
    }

  std::vector<Word> slot_images;
  for (std::size_t slot = 0; slot < d * p; ++slot)
    slot_images.push_back(trivial[slot]
                              ? Word(table)
                              : Word::generator(table, slot_to_gen[slot]));

  SimplifyState st{table, std::move(relators), std::move(embeddings),
                   std::move(theta), std::move(slot_images)};
  if (options.simplify) {
    drop_trivial_relators(st.relators);
    while (eliminate_once(st)) drop_trivial_relators(st.relators);
  }

  CyclotomicPair sub(
      Presentation{p, st.table, st.relators},
      Orientation(st.table, pair.orientation.ctx(), st.theta));
  return RewrittenPair{std::move(sub), U, t_idx, std::move(st.embeddings),
                       std::move(st.slot_images)};
}

std::optional<Word> rewrite_member(const RewrittenPair& rp, const Word& w) {
  const std::uint64_t p = rp.pair.p();
  TraceResult tr = trace_word(w, rp.subgroup.phi, p, 0);
  if (tr.end != 0) return std::nullopt;
  Word out(rp.pair.presentation.gens);
  for (const Syllable& s : tr.slots)
    out = out * rp.slot_images[s.gen].pow(s.exp);
  return out;
}

namespace {

struct TowerNode {
  CyclotomicPair pair;
  std::vector<std::vector<std::uint64_t>> chain;
  std::vector<std::shared_ptr<RewrittenPair>> links;  // top-down rewrites
  std::vector<Word> embeddings_in_top;                // generators as top words
};

// Membership of a top-level word after rewriting down the node's chain.
bool member_of(const TowerNode& node, const Word& w) {
  Word cur = w;
  for (const auto& link : node.links) {
    std::optional<Word> next = rewrite_member(*link, cur);
    if (!next) return false;
    cur = *next;
  }
  return true;
}

std::vector<Word> probe_family(const Presentation& top) {
  std::vector<Word> probes;
  const GenTable& t = top.gens;
  for (std::size_t i = 0; i < t.size(); ++i)
    probes.push_back(Word::generator(t, i));
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      probes.push_back(Word::generator(t, i) * Word::generator(t, j));
  for (std::size_t i = 0; i < t.size(); ++i)
    probes.push_back(Word::generator(t, i, (long long)top.p));
  return probes;
}

// Visits the root and every deduplicated tower node of index <= p^k in a
// deterministic scan order; the visitor returns false to stop the walk.
template <class Visit>
void walk_tower(const CyclotomicPair& pair, unsigned k, Visit visit) {
  if (!visit(std::vector<std::vector<std::uint64_t>>{}, pair)) return;

  std::vector<Word> probes = probe_family(pair.presentation);
  std::vector<Word> top_gens;
  for (std::size_t i = 0; i < pair.rank(); ++i)
    top_gens.push_back(Word::generator(pair.presentation.gens, i));

  std::vector<TowerNode> current;
  current.push_back(TowerNode{pair, {}, {}, top_gens});

  for (unsigned depth = 1; depth <= k; ++depth) {
    std::vector<TowerNode> next;
    std::vector<std::vector<bool>> next_sigs;
    for (const TowerNode& node : current) {
      if (node.pair.rank() == 0) continue;  // trivial subgroup: nothing below
      for (const IndexPSubgroup& U : enumerate_index_p(node.pair)) {
        auto rw = std::make_shared<RewrittenPair>(rewrite(node.pair, U));
        TowerNode child{rw->pair, node.chain, node.links, {}};
        child.chain.push_back(U.phi);
        child.links.push_back(rw);
        for (const Word& e : rw->embeddings)
          child.embeddings_in_top.push_back(substitute(
              e, node.embeddings_in_top, pair.presentation.gens));

        std::vector<bool> sig;
        for (const Word& probe : probes) sig.push_back(member_of(child, probe));
        bool dup = false;
        for (std::size_t i = 0; i < next.size() && !dup; ++i) {
          if (next_sigs[i] != sig) continue;
          bool included = true;
          for (const Word& e : child.embeddings_in_top)
            if (!member_of(next[i], e)) {
              included = false;
              break;
            }
          dup = included;  // equal finite index, so inclusion is equality
        }
        if (dup) continue;

        if (!visit(child.chain, child.pair)) return;
        next_sigs.push_back(std::move(sig));
        next.push_back(std::move(child));
      }
    }
    current = std::move(next);
  }
}

}  // namespace

Verdict smooth_check(const CyclotomicPair& pair, unsigned k, unsigned n_max) {
  if (n_max < 1 || n_max > pair.precision())
    throw bad_parameters("level bound outside the pair's precision range");

  std::optional<Verdict> refuted;
  walk_tower(pair, k,
             [&](const std::vector<std::vector<std::uint64_t>>& chain,
                 const CyclotomicPair& node) {
               auto fail = first_failing_level(node, n_max);
               if (!fail) return true;
               Verdict v;
               v.outcome = Outcome::certified_no;
               v.level = fail->first;
               for (unsigned m = 1; m < fail->first; ++m)
                 v.passed_levels.push_back(m);
               CocycleWitness inner{fail->first, fail->second.missed,
                                    profile_torsion(fail->second.profile)};
               if (chain.empty())
                 v.cocycle_witness = inner;
               else
                 v.subgroup_witness = SubgroupWitness{chain, inner};
               refuted = std::move(v);
               return false;
             });
  if (refuted) return *refuted;

  Verdict v;
  v.level = n_max;
  for (unsigned m = 1; m <= n_max; ++m) v.passed_levels.push_back(m);
  return v;
}

std::vector<SurveyRow> smooth_survey(const CyclotomicPair& pair, unsigned k,
                                     unsigned n_max) {
  if (n_max < 1 || n_max > pair.precision())
    throw bad_parameters("level bound outside the pair's precision range");

  std::vector<SurveyRow> rows;
  walk_tower(pair, k,
             [&](const std::vector<std::vector<std::uint64_t>>& chain,
                 const CyclotomicPair& node) {
               rows.push_back(SurveyRow{chain, node.rank(),
                                        kummerian_verdict(node, n_max)});
               return true;
             });
  return rows;
}

std::vector<SweepEntry> orientation_sweep(const Presentation& pres, unsigned n,
                                          SweepPredicate predicate,
                                          unsigned index_bound_k,
                                          unsigned long long cap) {
  PrimeCtx ctx(pres.p, n);
  std::vector<std::uint64_t> pool = TruncatedUnit::enumerate(ctx);
  const std::size_t d = pres.gens.size();
  unsigned __int128 wide = 1;
  for (std::size_t i = 0; i < d; ++i) {
    wide *= pool.size();
    if (wide > UINT64_MAX) {
      wide = UINT64_MAX;  // saturate; the exact count no longer matters
      break;
    }
  }
  unsigned long long total = (unsigned long long)wide;
  if (total > cap) throw sweep_too_large(total, cap);

  std::vector<SweepEntry> out;
  std::vector<std::size_t> idx(d, 0);
  for (;;) {
    std::vector<std::uint64_t> vals(d);
    for (std::size_t i = 0; i < d; ++i) vals[i] = pool[idx[i]];
    Orientation th = Orientation::from_values(pres.gens, vals, ctx);
    bool valid = true;
    try {
      validate_orientation(pres, th);
    } catch (const invalid_orientation&) {
      valid = false;
    }
    if (valid) {
      CyclotomicPair pair(pres, th);
      Verdict v = predicate == SweepPredicate::kummerian
                      ? kummerian_verdict(pair, n)
                      : smooth_check(pair, index_bound_k, n);
      out.push_back(SweepEntry{th, std::move(v)});
    }
    // odometer, last coordinate fastest (lex order on value vectors)
    std::size_t pos = d;
    for (;;) {
      if (pos == 0) return out;
      --pos;
      if (++idx[pos] < pool.size()) break;
      idx[pos] = 0;
    }
  }
}

}  // namespace prosmooth
