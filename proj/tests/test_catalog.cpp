#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "prosmooth/catalog.hpp"
#include "prosmooth/subgroups.hpp"

using namespace prosmooth;

TEST_CASE("catalog: id list and unknown ids") {
  auto ids = catalog_ids();
  CHECK(ids.size() == 10);
  CHECK(std::find(ids.begin(), ids.end(), "G2rho") != ids.end());
  for (const auto& id : ids) CHECK(!id.empty());
  CHECK_THROWS_AS(catalog_build("nope", CatalogParams{}), bad_parameters);
}

TEST_CASE("catalog: structural shape of the families") {
  CatalogParams q;
  q.p = 3, q.n = 2;

  SUBCASE("heisenberg has two generators and two relators") {
    CyclotomicPair pair = catalog_build("heisenberg", q);
    CHECK(pair.rank() == 2);
    CHECK(pair.presentation.relators.size() == 2);
    CHECK(pair.orientation.is_trivial());
  }
  SUBCASE("free pair respects the rank parameter") {
    q.rank = 4;
    CyclotomicPair pair = catalog_build("free", q);
    CHECK(pair.rank() == 4);
    CHECK(pair.presentation.relators.empty());
    CHECK(pair.presentation.gens.name(0) == "x1");
  }
  SUBCASE("demushkin2 builds the one-relator pair with canonical theta") {
    q.s = 2, q.n = 3;
    CyclotomicPair pair = catalog_build("demushkin2", q);
    REQUIRE(pair.presentation.relators.size() == 1);
    // x^9 * [x,y] freely reduces into the stored form
    CHECK(print_word(pair.presentation.relators[0]) == "x^8*y^-1*x*y");
    CHECK(pair.orientation.value(0).value() == 1);
    CHECK(pair.orientation.value(1).value() == 10);  // (1-9)^-1 mod 27
  }
  SUBCASE("G1 canonical theta inverts the action scalar") {
    q.s = 1, q.n = 3;
    CyclotomicPair pair = catalog_build("G1", q);
    CHECK(pair.orientation.value(0).value() == inv_mod(4, PrimeCtx(3, 3)));
    CHECK(pair.orientation.value(1).value() == 1);
    CHECK(pair.orientation.value(2).value() == 1);
    q.trivial_theta = true;
    CHECK(catalog_build("G1", q).orientation.is_trivial());
  }
  SUBCASE("theta_abelian splits kernel and acting generator") {
    q.rank = 2, q.tval = 4;
    CyclotomicPair pair = catalog_build("theta_abelian", q);
    CHECK(pair.rank() == 3);
    CHECK(pair.presentation.gens.names() ==
          std::vector<std::string>{"a1", "a2", "x"});
    CHECK(pair.orientation.value(2).value() == 4);
    CHECK(pair.presentation.relators.size() == 3);  // one commutator, two conj
  }
  SUBCASE("theta override replaces the family default") {
    q.theta = {4, 1};
    CyclotomicPair pair = catalog_build("heisenberg", q);
    CHECK(pair.orientation.value(0).value() == 4);
    q.theta = {4};
    CHECK_THROWS_AS(catalog_build("heisenberg", q), bad_parameters);
  }
}

TEST_CASE("catalog: G2 degenerates to G1 when the coupling vanishes") {
  for (std::uint64_t p : {3ull, 5ull})
    for (unsigned s : {1u, 2u}) {
      CatalogParams q;
      q.p = p, q.n = 2, q.s = s, q.r = 0, q.d = 0;
      CyclotomicPair g2 = catalog_build("G2", q);
      CyclotomicPair g1 = catalog_build("G1", q);
      CHECK(g2.presentation.gens == g1.presentation.gens);
      REQUIRE(g2.presentation.relators.size() ==
              g1.presentation.relators.size());
      for (std::size_t i = 0; i < g2.presentation.relators.size(); ++i)
        CHECK(g2.presentation.relators[i] == g1.presentation.relators[i]);
      CHECK(g2.orientation == g1.orientation);
      // with r > 0 and d = 0 the convention still decouples
      q.r = 2;
      CyclotomicPair g2r = catalog_build("G2", q);
      for (std::size_t i = 0; i < g2r.presentation.relators.size(); ++i)
        CHECK(g2r.presentation.relators[i] == g1.presentation.relators[i]);
    }
}

TEST_CASE("catalog: heisenberg_U matches G0(1) up to renaming") {
  CatalogParams q;
  q.p = 3, q.n = 2, q.s = 1;
  CyclotomicPair u = catalog_build("heisenberg_U", q);
  CyclotomicPair g0 = catalog_build("G0", q);
  const GenTable& gt = g0.presentation.gens;
  // rename t -> x, y -> y, z -> z and compare the relator multisets
  std::vector<Word> images{Word::generator(gt, 0), Word::generator(gt, 1),
                           Word::generator(gt, 2)};
  std::vector<std::string> renamed, original;
  for (const Word& r : u.presentation.relators)
    renamed.push_back(print_word(substitute(r, images, gt)));
  for (const Word& r : g0.presentation.relators)
    original.push_back(print_word(r));
  std::sort(renamed.begin(), renamed.end());
  std::sort(original.begin(), original.end());
  CHECK(renamed == original);
}

TEST_CASE("catalog: parameter validation") {
  CatalogParams q;
  q.p = 3, q.n = 2;
  q.s = 0;
  CHECK_THROWS_AS(catalog_build("demushkin2", q), bad_parameters);
  CHECK_THROWS_AS(catalog_build("G1", q), bad_parameters);
  q.r = 0;
  CHECK_THROWS_AS(catalog_build("G4", q), bad_parameters);  // s + r = 0
  CHECK_THROWS_AS(catalog_build("G2rho", q), bad_parameters);
  q.p = 2, q.s = 1;
  CHECK_THROWS_AS(catalog_build("demushkin2", q), bad_parameters);
  CHECK_THROWS_AS(catalog_build("G1", q), bad_parameters);  // 3 not admissible
  q.trivial_theta = true;  // but the group itself is fine with trivial theta
  CHECK(catalog_build("G1", q).rank() == 3);
  q = {};
  q.rank = 0;
  CHECK_THROWS_AS(catalog_build("theta_abelian", q), bad_parameters);
  q.rank = 1, q.tval = 2;  // 2 is not 1 mod 3
  CHECK_THROWS_AS(catalog_build("theta_abelian", q), bad_parameters);
}

TEST_CASE("catalog: regression corpus reproduces the expected verdicts") {
  const auto& entries = catalog_regressions();
  REQUIRE(entries.size() >= 20);
  for (const CatalogEntry& e : entries) {
    CAPTURE(e.id);
    CAPTURE(e.note);
    CyclotomicPair pair = catalog_build(e.id, e.params);
    Verdict got = kummerian_verdict(pair, e.params.n);
    CHECK(got.outcome == e.kummerian.outcome);
    CHECK(got.level == e.kummerian.level);
    if (e.kummerian.outcome == Outcome::certified_yes)
      CHECK(got.certificate == e.kummerian.certificate);
    if (e.kummerian.outcome == Outcome::certified_no)
      CHECK(got.cocycle_witness.has_value());
    if (e.smooth) {
      Verdict sm = smooth_check(pair, 1, e.params.n);
      CHECK(sm.outcome == e.smooth->outcome);
      CHECK(sm.level == e.smooth->level);
    }
  }
}

TEST_CASE("catalog: every entry is covered by at least one regression") {
  const auto& entries = catalog_regressions();
  for (const std::string& id : catalog_ids()) {
    bool found = false;
    for (const CatalogEntry& e : entries) found = found || e.id == id;
    CHECK_MESSAGE(found, "no regression instance for ", id);
  }
}
