#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prosmooth/pairs.hpp"

namespace prosmooth {

// Parameter bag for catalog_build; each family reads the fields it needs
// and ignores the rest.
struct CatalogParams {
  std::uint64_t p = 3;
  unsigned n = 3;     // orientation precision
  unsigned s = 1;     // main exponent parameter (power p^s)
  unsigned r = 0;     // secondary exponent offset (power p^(s+r))
  long long d = 0;    // coupling coefficient of the G2 family
  long long rho = 1;  // coupling unit of the G2rho family
  std::size_t rank = 2;    // free rank / abelian kernel rank
  std::uint64_t tval = 1;  // orientation value of the acting generator
  // Force theta = 1 on families that default to a canonical orientation.
  bool trivial_theta = false;
  // Explicit orientation values (one per generator); overrides everything.
  std::vector<std::uint64_t> theta;
};

struct ExpectedVerdict {
  Outcome outcome = Outcome::undecided;
  unsigned level = 0;  // failing level for certified_no, else levels examined
  std::string certificate;
};

// One frozen regression instance: parameters plus the verdicts the engine
// is expected to reproduce.
struct CatalogEntry {
  std::string id;
  CatalogParams params;
  std::string note;
  ExpectedVerdict kummerian;             // kummerian_verdict(pair, params.n)
  std::optional<ExpectedVerdict> smooth;  // smooth_check(pair, 1, params.n)
  bool editorially_normalized = false;
};

// Family names accepted by catalog_build, in display order.
std::vector<std::string> catalog_ids();

// Instantiate a family member; throws bad_parameters for unknown ids or
// out-of-range parameters.
CyclotomicPair catalog_build(const std::string& id,
                             const CatalogParams& params);

// The frozen regression corpus.
const std::vector<CatalogEntry>& catalog_regressions();

}  // namespace prosmooth
