#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "prosmooth/catalog.hpp"
#include "prosmooth/json_io.hpp"
#include "prosmooth/report.hpp"

using namespace prosmooth;

namespace {

CyclotomicPair make_pair(std::uint64_t p, unsigned n,
                         std::vector<std::string> gens,
                         std::vector<std::string> rels,
                         std::vector<std::uint64_t> theta = {}) {
  GenTable t(std::move(gens));
  std::vector<Word> relators;
  for (const std::string& s : rels) relators.push_back(parse_word(s, t));
  PrimeCtx ctx(p, n);
  Orientation o = theta.empty() ? Orientation::trivial(t, ctx)
                                : Orientation::from_values(t, theta, ctx);
  return CyclotomicPair(Presentation(p, t, std::move(relators)), std::move(o));
}

std::string write_temp(const std::string& name, const std::string& body) {
  std::string path = std::string("/tmp/prosmooth_json_") + name;
  std::ofstream out(path);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("pair serialization round-trips") {
  std::vector<CyclotomicPair> pairs = {
      make_pair(3, 3, {"x", "y"}, {}),
      make_pair(3, 2, {"x", "y", "z"}, {"[x,z]", "[y,z]", "[x,y]*z^-3"}),
      make_pair(2, 4, {"a"}, {"a^4"}),
      make_pair(5, 3, {"x", "y"}, {"x^25*[x,y]"}, {1, 21}),
      catalog_build("G1", CatalogParams{}),
      catalog_build("demushkin2", CatalogParams{.s = 2}),
  };
  for (const CyclotomicPair& pair : pairs) {
    Json j = pair_to_json(pair);
    CyclotomicPair back = pair_from_json(j);
    CHECK(pair_to_json(back) == j);
    CHECK(back.presentation.gens == pair.presentation.gens);
    CHECK(back.presentation.relators == pair.presentation.relators);
    CHECK(back.orientation == pair.orientation);
    // dump -> parse -> dump is byte-identical
    std::string text = dump_report(j);
    CHECK(dump_report(Json::parse(text)) == text);
  }
}

TEST_CASE("pair files: named theta values, defaults, fallbacks") {
  // unlisted generators default to theta = 1
  Json j = Json::parse(R"({
    "p": 3,
    "generators": ["x", "y"],
    "relators": ["x^9*[x,y]"],
    "theta": { "precision": 2, "values": { "y": 4 } }
  })");
  CyclotomicPair pair = pair_from_json(j);
  CHECK(pair.p() == 3);
  CHECK(pair.precision() == 2);
  CHECK(pair.orientation.value(0).value() == 1);
  CHECK(pair.orientation.value(1).value() == 4);
  CHECK(print_word(pair.presentation.relators[0]) == "x^8*y^-1*x*y");

  // no theta block: trivial orientation at the fallback precision
  Json bare = Json::parse(
      R"({ "p": 2, "generators": ["a", "b"], "relators": [] })");
  CHECK(pair_from_json(bare).precision() == 3);
  CHECK(pair_from_json(bare, 4).precision() == 4);
  CHECK(pair_from_json(bare).orientation.is_trivial());

  // empty values object: trivial
  Json novals = Json::parse(
      R"({ "p": 3, "generators": ["x"], "relators": [],
           "theta": { "precision": 2 } })");
  CHECK(pair_from_json(novals).orientation.is_trivial());
}

TEST_CASE("pair files: structural errors carry usable diagnostics") {
  auto parse = [](const char* text) { return pair_from_json(Json::parse(text)); };

  CHECK_THROWS_WITH_AS(parse(R"({ "generators": [], "relators": [] })"),
                       doctest::Contains("missing key 'p'"), bad_parameters);
  CHECK_THROWS_WITH_AS(parse(R"({ "p": 3, "relators": [] })"),
                       doctest::Contains("generators"), bad_parameters);
  CHECK_THROWS_WITH_AS(parse(R"({ "p": 3, "generators": ["x"] })"),
                       doctest::Contains("relators"), bad_parameters);
  CHECK_THROWS_WITH_AS(parse(R"({ "p": -3, "generators": [], "relators": [] })"),
                       doctest::Contains("nonnegative"), bad_parameters);
  CHECK_THROWS_AS(parse(R"({ "p": 3, "generators": [1], "relators": [] })"),
                  bad_parameters);
  CHECK_THROWS_AS(parse(R"({ "p": 3, "generators": ["x"], "relators": [7] })"),
                  bad_parameters);
  CHECK_THROWS_AS(parse(R"({ "p": 3, "generators": ["x", "x"], "relators": [] })"),
                  bad_parameters);
  CHECK_THROWS_AS(parse(R"({ "p": 4, "generators": [], "relators": [] })"),
                  error);  // not a prime
  // words must parse over the declared generators
  CHECK_THROWS_AS(parse(R"({ "p": 3, "generators": ["x"], "relators": ["y"] })"),
                  unknown_generator);
  // theta errors
  CHECK_THROWS_WITH_AS(
      parse(R"({ "p": 3, "generators": ["x"], "relators": [],
                 "theta": { "values": { "x": 4 } } })"),
      doctest::Contains("precision"), bad_parameters);
  CHECK_THROWS_AS(
      parse(R"({ "p": 3, "generators": ["x"], "relators": [],
                 "theta": { "precision": 2, "values": { "z": 4 } } })"),
      unknown_generator);
  CHECK_THROWS_AS(
      parse(R"({ "p": 3, "generators": ["x"], "relators": [],
                 "theta": { "precision": 2, "values": { "x": 5 } } })"),
      error);  // 5 is not in 1 + 3Z mod 9
  // theta must be 1 on every relator
  CHECK_THROWS_AS(
      parse(R"({ "p": 3, "generators": ["x"], "relators": ["x"],
                 "theta": { "precision": 2, "values": { "x": 4 } } })"),
      invalid_orientation);
}

TEST_CASE("load_pair_file: missing and malformed files") {
  CHECK_THROWS_WITH_AS(load_pair_file("/tmp/prosmooth_json_does_not_exist"),
                       doctest::Contains("cannot open"), bad_parameters);
  std::string bad = write_temp("bad.pair", "{ not json !");
  CHECK_THROWS_WITH_AS(load_pair_file(bad), doctest::Contains("not valid JSON"),
                       bad_parameters);
  std::string good = write_temp("good.pair", dump_report(pair_to_json(
      make_pair(3, 2, {"x", "y"}, {"[x,y]"}, {4, 7}))));
  CyclotomicPair pair = load_pair_file(good);
  CHECK(pair.orientation.value(0).value() == 4);
  CHECK(pair.orientation.value(1).value() == 7);
  std::remove(bad.c_str());
  std::remove(good.c_str());
}

TEST_CASE("verdict serialization round-trips through the struct") {
  std::vector<Verdict> verdicts;
  verdicts.push_back(kummerian_verdict(make_pair(3, 3, {"x", "y"}, {}), 3));
  verdicts.push_back(kummerian_verdict(
      catalog_build("heisenberg_U", CatalogParams{.n = 2}), 2));
  verdicts.push_back(smooth_check(
      catalog_build("heisenberg", CatalogParams{.n = 2}), 1, 2));
  verdicts.push_back(kummerian_verdict(
      catalog_build("heisenberg", CatalogParams{.n = 4}), 4));
  verdicts.push_back(kummerian_verdict(catalog_build("G1", CatalogParams{}), 3));

  bool saw_cocycle = false, saw_subgroup = false, saw_yes = false;
  for (const Verdict& v : verdicts) {
    Json j = verdict_to_json(v);
    Verdict back = verdict_from_json(j);
    CHECK(verdict_to_json(back) == j);
    saw_cocycle |= v.cocycle_witness.has_value();
    saw_subgroup |= v.subgroup_witness.has_value();
    saw_yes |= v.is_yes();
    std::string text = dump_report(j);
    CHECK(dump_report(Json::parse(text)) == text);
  }
  CHECK(saw_cocycle);
  CHECK(saw_subgroup);
  CHECK(saw_yes);
}

TEST_CASE("frozen verdict payloads") {
  // refutation with a cocycle witness
  Verdict no = kummerian_verdict(
      catalog_build("heisenberg_U", CatalogParams{.n = 2}), 2);
  Json jno = verdict_to_json(no);
  CHECK(jno == Json::parse(R"({
    "outcome": "certified_no", "level": 2, "passed_levels": [1],
    "cocycle_witness": { "level": 2, "missed": [0, 0, 1],
                         "torsion_exponent": 1 }
  })"));

  // structural certificate
  Json jyes = verdict_to_json(
      kummerian_verdict(make_pair(5, 2, {"a", "b"}, {}), 2));
  CHECK(jyes == Json::parse(R"({
    "outcome": "certified_yes", "level": 2, "passed_levels": [1, 2],
    "certificate": "free pair"
  })"));

  // subgroup witness with a one-step chain
  Verdict sm = smooth_check(
      catalog_build("heisenberg", CatalogParams{.n = 2}), 1, 2);
  Json jsm = verdict_to_json(sm);
  CHECK(jsm.at("outcome") == "certified_no");
  CHECK(jsm.at("subgroup_witness").at("phi_chain") == Json::parse("[[0, 1]]"));
  CHECK(jsm.at("subgroup_witness").at("inner").at("torsion_exponent") == 1);
}

TEST_CASE("verdict parsing rejects malformed input") {
  CHECK_THROWS_WITH_AS(verdict_from_json(Json::parse(R"({"level": 1})")),
                       doctest::Contains("outcome"), bad_parameters);
  CHECK_THROWS_WITH_AS(
      verdict_from_json(Json::parse(
          R"({"outcome": "maybe", "level": 1, "passed_levels": []})")),
      doctest::Contains("not recognized"), bad_parameters);
  CHECK_THROWS_AS(
      verdict_from_json(Json::parse(
          R"({"outcome": "undecided", "level": 1, "passed_levels": [],
              "cocycle_witness": {"level": 1}})")),
      bad_parameters);
}

TEST_CASE("sweep and survey reports") {
  CyclotomicPair pair = catalog_build("heisenberg_U", CatalogParams{.n = 2});
  auto entries = orientation_sweep(pair.presentation, 2,
                                   SweepPredicate::kummerian);
  Json sweep = sweep_to_json(entries);
  CHECK(sweep.at("summary").at("total") == entries.size());
  CHECK(sweep.at("summary").at("certified_no") == entries.size());
  CHECK(sweep.at("entries").size() == entries.size());
  CHECK(sweep.at("entries")[0].at("theta").at("values").contains("t"));

  auto rows = smooth_survey(catalog_build("heisenberg", CatalogParams{.n = 2}),
                            1, 2);
  Json survey = survey_to_json(rows, 3);
  REQUIRE(rows.size() == 5);  // whole group + 4 index-3 subgroups
  CHECK(survey[0].at("phi_chain").empty());
  CHECK(survey[0].at("index") == 1);
  CHECK(survey[1].at("index") == 3);
  // the failing subgroup appears in the table with its own refutation
  bool found_failure = false;
  for (const auto& row : survey)
    if (row.at("verdict").at("outcome") == "certified_no") found_failure = true;
  CHECK(found_failure);
  std::string text = dump_report(survey);
  CHECK(dump_report(Json::parse(text)) == text);
}

TEST_CASE("text rendering carries the verdict payload") {
  Verdict no = kummerian_verdict(
      catalog_build("heisenberg_U", CatalogParams{.n = 2}), 2);
  std::string text = render_verdict(verdict_to_json(no));
  CHECK(text.find("CertifiedNo at n=2") != std::string::npos);
  CHECK(text.find("missed mod-p class: (0, 0, 1)") != std::string::npos);
  CHECK(text.find("torsion invariant: p^1") != std::string::npos);

  Verdict sm = smooth_check(
      catalog_build("heisenberg", CatalogParams{.n = 2}), 1, 2);
  std::string smtext = render_verdict(verdict_to_json(sm));
  CHECK(smtext.find("failing subgroup chain: (0, 1)") != std::string::npos);

  Verdict open = kummerian_verdict(
      catalog_build("heisenberg", CatalogParams{.n = 4}), 4);
  std::string opentext = render_verdict(verdict_to_json(open));
  CHECK(opentext.find("UndecidedUpTo n=4 (passes at n=1..4)") !=
        std::string::npos);

  Json report{{"command", "check kummerian"},
              {"input", Json{{"catalog", "heisenberg_U"}}},
              {"p", 3},
              {"n", 2},
              {"verdict", verdict_to_json(no)}};
  std::string full = render_text(report);
  CHECK(full.find("command: check kummerian") != std::string::npos);
  CHECK(full.find("CertifiedNo at n=2") != std::string::npos);
}

TEST_CASE("outcome display names") {
  CHECK(outcome_display(Outcome::certified_yes) == "CertifiedYes");
  CHECK(outcome_display(Outcome::certified_no) == "CertifiedNo");
  CHECK(outcome_display(Outcome::undecided) == "UndecidedUpTo");
}
