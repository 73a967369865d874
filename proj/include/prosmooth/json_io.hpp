#pragma once
#include <string>
#include <vector>

#include "json.hpp"
#include "prosmooth/pairs.hpp"
#include "prosmooth/subgroups.hpp"

namespace prosmooth {

using Json = nlohmann::json;

// Pair file format:
//   {
//     "p": 3,
//     "generators": ["x", "y"],
//     "relators": ["x^9*[x,y]"],
//     "theta": { "precision": 3, "values": { "y": 19 } }
//   }
// `theta.values` is keyed by generator name; unlisted generators get 1.  A
// missing `theta` block means the trivial orientation at
// `fallback_precision`.  Values are canonical residues mod p^precision and
// must be admissible.  All structural problems (missing keys, wrong types,
// duplicate generators, non-prime p, inadmissible values) raise
// bad_parameters with a message naming the offending key.
Json pair_to_json(const CyclotomicPair& pair);
CyclotomicPair pair_from_json(const Json& j, unsigned fallback_precision = 3);
CyclotomicPair load_pair_file(const std::string& path,
                              unsigned fallback_precision = 3);

// The orientation-free part of a pair file: { "p", "generators", "relators" }.
Json presentation_to_json(const Presentation& pres);

// { "precision": n, "values": { name: residue } }; emits every generator.
Json theta_to_json(const Orientation& theta);
Orientation theta_from_json(const Json& j, const GenTable& gens,
                            std::uint64_t p);

// {
//   "outcome": "certified_no", "level": 2, "passed_levels": [1],
//   "certificate": "...",                           (only when set)
//   "cocycle_witness": { "level", "missed", "torsion_exponent" },
//   "subgroup_witness": { "phi_chain", "inner" }    (both optional)
// }
Json verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const Json& j);

// [ { "phi_chain": [[...]], "index": p^depth, "rank": r, "verdict": {...} } ]
Json survey_to_json(const std::vector<SurveyRow>& rows, std::uint64_t p);

// { "entries": [ { "theta": {...}, "verdict": {...} } ],
//   "summary": { "total", "certified_yes", "certified_no", "undecided" } }
Json sweep_to_json(const std::vector<SweepEntry>& entries);

// Serialization with sorted keys and stable layout; parsing this text and
// re-dumping it reproduces the exact bytes.
std::string dump_report(const Json& report);

}  // namespace prosmooth
