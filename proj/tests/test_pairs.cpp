#include <random>
#include <vector>

#include "doctest.h"
#include "prosmooth/pairs.hpp"

using namespace prosmooth;

namespace {

using Vec = std::vector<std::uint64_t>;

CyclotomicPair heisenberg_pair(std::uint64_t p, unsigned n) {
  GenTable t({"x", "y"});
  Presentation pres{p, t,
                    {parse_word("[[x,y],x]", t), parse_word("[[x,y],y]", t)}};
  return CyclotomicPair(pres, Orientation::trivial(t, PrimeCtx(p, n)));
}

CyclotomicPair g1_pair(std::uint64_t p, unsigned s, unsigned n, bool canonical) {
  GenTable t({"x", "y1", "y2"});
  std::uint64_t ps = 1;
  for (unsigned i = 0; i < s; ++i) ps *= p;
  std::string power = std::to_string(ps);
  Presentation pres{p, t,
                    {parse_word("[y1,y2]", t),
                     parse_word("[y1,x]*y1^-" + power, t),
                     parse_word("[y2,x]*y2^-" + power, t)}};
  PrimeCtx ctx(p, n);
  Orientation th = canonical
                       ? Orientation::from_values(
                             t, {inv_mod((1 + ps) % ctx.q, ctx), 1, 1}, ctx)
                       : Orientation::trivial(t, ctx);
  return CyclotomicPair(pres, th);
}

Word random_word(std::mt19937_64& rng, const GenTable& t, int max_syllables,
                 long long max_exp) {
  std::vector<Syllable> sy;
  int len = (int)(rng() % (max_syllables + 1));
  for (int i = 0; i < len; ++i) {
    std::size_t g = rng() % t.size();
    long long e = 1 + (long long)(rng() % max_exp);
    if (rng() & 1) e = -e;
    sy.push_back({g, e});
  }
  return Word(t, sy);
}

}  // namespace

TEST_CASE("cyclotomic pair construction enforces validity") {
  GenTable t({"x"});
  PrimeCtx c32(3, 2);
  Presentation self{3, t, {parse_word("x", t)}};
  CHECK_THROWS_AS(
      CyclotomicPair(self, Orientation::from_values(t, {4}, c32)),
      invalid_orientation);
  // x^3 dies at precision 2 under theta(x)=4 but not at precision 3
  Presentation cubed{3, t, {parse_word("x^3", t)}};
  CHECK_NOTHROW(CyclotomicPair(cubed, Orientation::from_values(t, {4}, c32)));
  CHECK_THROWS_AS(
      CyclotomicPair(cubed, Orientation::from_values(t, {4}, PrimeCtx(3, 3))),
      invalid_orientation);
}

TEST_CASE("theta_ab_module frozen profiles") {
  SUBCASE("G1 with the canonical orientation is torsion-free at n=4") {
    CyclotomicPair pair = g1_pair(3, 1, 4, true);
    // (1+3)^-1 mod 81 = 61
    CHECK(pair.orientation.value(0).value() == 61);
    ThetaAbModule tam = theta_ab_module(pair, 4);
    for (std::size_t r = 0; r < tam.matrix.rows(); ++r)
      CHECK(tam.matrix.row(r) == Vec{0, 0, 0});
    CHECK_FALSE(tam.has_torsion_certificate());
    CHECK(tam.in_kernel == std::vector<bool>{false, true, true});
  }

  SUBCASE("G1 with trivial orientation carries p^1 torsion") {
    CyclotomicPair pair = g1_pair(3, 1, 3, false);
    for (unsigned n = 2; n <= 3; ++n) {
      ThetaAbModule tam = theta_ab_module(pair, n);
      CHECK(tam.has_torsion_certificate());
      CHECK(std::count(tam.profile.exps.begin(), tam.profile.exps.end(), 1u) ==
            2);
    }
    CHECK_FALSE(theta_ab_module(pair, 1).has_torsion_certificate());
  }

  SUBCASE("free abelian rank 2") {
    GenTable t({"x", "y"});
    PrimeCtx c33(3, 3);
    CyclotomicPair pair(Presentation{3, t, {parse_word("[x,y]", t)}},
                        Orientation::trivial(t, c33));
    ThetaAbModule tam = theta_ab_module(pair, 3);
    CHECK_FALSE(tam.has_torsion_certificate());
    CHECK(tam.profile.exps == std::vector<unsigned>{3});  // single zero row
  }
}

TEST_CASE("quotient_pair construction and heredity examples") {
  SUBCASE("Heisenberg mod y stays passing at every level") {
    CyclotomicPair pair = heisenberg_pair(3, 4);
    CyclotomicPair q =
        quotient_pair(pair, {parse_word("y", pair.presentation.gens)});
    CHECK(q.presentation.relators.size() == 3);
    for (unsigned n = 1; n <= 4; ++n) CHECK(kummerian_check(q, n).passes);
  }

  SUBCASE("empty quotient is the identity") {
    CyclotomicPair pair = heisenberg_pair(3, 2);
    CyclotomicPair q = quotient_pair(pair, {});
    CHECK(q.presentation.relators.size() == 2);
    CHECK(kummerian_verdict(q, 2).outcome == kummerian_verdict(pair, 2).outcome);
  }

  SUBCASE("free pair mod x^p becomes refutable") {
    GenTable t({"x", "y"});
    PrimeCtx c32(3, 2);
    CyclotomicPair free2(Presentation{3, t, {}}, Orientation::trivial(t, c32));
    CyclotomicPair q = quotient_pair(free2, {parse_word("x^3", t)});
    Verdict v = kummerian_verdict(q, 2);
    CHECK(v.is_no());
    CHECK(v.level == 2);
    REQUIRE(v.cocycle_witness.has_value());
    CHECK(v.cocycle_witness->missed == Vec{1, 0});
    CHECK(v.cocycle_witness->torsion_exponent == 1);
    CHECK(v.passed_levels == std::vector<unsigned>{1});
  }

  SUBCASE("normal generators must die under theta") {
    GenTable t({"x", "y"});
    PrimeCtx c32(3, 2);
    CyclotomicPair free2(Presentation{3, t, {}},
                         Orientation::from_values(t, {4, 1}, c32));
    CHECK_THROWS_AS(quotient_pair(free2, {parse_word("x", t)}), not_in_kernel);
    CHECK_NOTHROW(quotient_pair(free2, {parse_word("y", t)}));
  }

  SUBCASE("killing the commutator certifies the Heisenberg quotient") {
    CyclotomicPair pair = heisenberg_pair(3, 3);
    CyclotomicPair q =
        quotient_pair(pair, {parse_word("[x,y]", pair.presentation.gens)});
    Verdict v = theta_abelian_certify(q);
    CHECK(v.is_yes());
    CHECK(v.certificate == "theta-abelian normal form");
  }
}

TEST_CASE("semidirect_pair construction") {
  SUBCASE("rank one base with nontrivial orientation") {
    GenTable bt({"x"});
    PrimeCtx c33(3, 3);
    CyclotomicPair base(Presentation{3, bt, {}},
                        Orientation::from_values(bt, {4}, c33));
    CyclotomicPair out = semidirect_pair(1, base);
    CHECK(out.rank() == 2);
    CHECK(out.presentation.gens.name(0) == "a1");
    CHECK(out.presentation.gens.name(1) == "x");
    REQUIRE(out.presentation.relators.size() == 1);
    CHECK(print_word(out.presentation.relators[0]) == "x*a1*x^-1*a1^-4");
    CHECK(out.orientation.value(0).value() == 1);
    CHECK(out.orientation.value(1).value() == 4);
    CHECK(theta_abelian_certify(out).is_yes());
  }

  SUBCASE("trivial base gives free abelian pairs") {
    GenTable none(std::vector<std::string>{});
    PrimeCtx c52(5, 2);
    CyclotomicPair base(Presentation{5, none, {}},
                        Orientation::trivial(none, c52));
    CyclotomicPair out = semidirect_pair(2, base);
    CHECK(out.rank() == 2);
    REQUIRE(out.presentation.relators.size() == 1);
    CHECK(print_word(out.presentation.relators[0]) == "a1^-1*a2^-1*a1*a2");
    Verdict v = kummerian_verdict(out, 2);
    CHECK(v.is_yes());
  }

  SUBCASE("generator names dodge collisions") {
    GenTable bt({"a1"});
    PrimeCtx c32(3, 2);
    CyclotomicPair base(Presentation{3, bt, {}}, Orientation::trivial(bt, c32));
    CyclotomicPair out = semidirect_pair(1, base);
    CHECK(out.presentation.gens.name(0) == "aa1");
    CHECK(out.presentation.gens.name(1) == "a1");
  }

  SUBCASE("outputs pass the Kummerian test at all levels up to 4") {
    for (std::uint64_t p : {2ull, 3ull, 5ull}) {
      PrimeCtx ctx(p, 4);
      GenTable bt({"x"});
      std::uint64_t tval = p == 2 ? 5 : 1 + p;
      for (std::uint64_t val : {std::uint64_t{1}, tval}) {
        CyclotomicPair base(Presentation{p, bt, {}},
                            Orientation::from_values(bt, {val}, ctx));
        for (std::size_t r = 1; r <= 2; ++r) {
          CyclotomicPair out = semidirect_pair(r, base);
          Verdict v = kummerian_verdict(out, 4);
          CHECK(v.is_yes());
          CHECK(v.certificate == "theta-abelian normal form");
          CHECK(v.passed_levels.size() == 4);
        }
      }
    }
  }
}

TEST_CASE("kummerian_verdict structural certificates and refutations") {
  SUBCASE("trivial group") {
    GenTable none(std::vector<std::string>{});
    PrimeCtx c32(3, 2);
    CyclotomicPair pair(Presentation{3, none, {}},
                        Orientation::trivial(none, c32));
    Verdict v = kummerian_verdict(pair, 2);
    CHECK(v.is_yes());
    CHECK(v.certificate == "trivial group");
  }

  SUBCASE("free pairs certify for any orientation") {
    GenTable t({"x", "y"});
    PrimeCtx c33(3, 3);
    CyclotomicPair pair(Presentation{3, t, {}},
                        Orientation::from_values(t, {4, 10}, c33));
    Verdict v = kummerian_verdict(pair, 3);
    CHECK(v.is_yes());
    CHECK(v.certificate == "free pair");
    CHECK(v.passed_levels == std::vector<unsigned>{1, 2, 3});
  }

  SUBCASE("the rank-2 one-relator pair with matching orientation certifies") {
    GenTable t({"x", "y"});
    PrimeCtx c34(3, 4);
    // theta(y) = (1-9)^-1 = 71 mod 81: 71*(-8) = -568 = -7*81 - 1... checked below
    std::uint64_t v = inv_mod(reduce_mod(1 - 9, c34), c34);
    Orientation th = Orientation::from_values(t, {1, v}, c34);
    CyclotomicPair pair(Presentation{3, t, {parse_word("x^9*[x,y]", t)}}, th);
    Verdict out = kummerian_verdict(pair, 4);
    CHECK(out.is_yes());
    CHECK(out.certificate == "theta-abelian normal form");
    CHECK(out.passed_levels.size() == 4);
  }

  SUBCASE("G1 refuted for trivial orientation, certified for canonical") {
    CyclotomicPair bad = g1_pair(3, 1, 3, false);
    Verdict vb = kummerian_verdict(bad, 3);
    CHECK(vb.is_no());
    CHECK(vb.level == 2);
    CHECK(vb.cocycle_witness->torsion_exponent == 1);

    CyclotomicPair good = g1_pair(3, 1, 4, true);
    Verdict vg = kummerian_verdict(good, 4);
    CHECK(vg.is_yes());
    CHECK(vg.certificate == "theta-abelian normal form");
  }

  SUBCASE("G4(1,0) refuted for every admissible orientation at n=3") {
    GenTable t({"x", "y1", "y2"});
    PrimeCtx c33(3, 3);
    Presentation pres{3, t,
                      {parse_word("[y1,x]*y2^-3", t),
                       parse_word("[y2,x]*y1^-3", t)}};
    std::size_t admissible = 0, refuted = 0;
    for (std::uint64_t u : TruncatedUnit::enumerate(c33))
      for (std::uint64_t v1 : TruncatedUnit::enumerate(c33))
        for (std::uint64_t v2 : TruncatedUnit::enumerate(c33)) {
          Orientation th = Orientation::from_values(t, {u, v1, v2}, c33);
          try {
            validate_orientation(pres, th);
          } catch (const invalid_orientation&) {
            continue;
          }
          ++admissible;
          Verdict v = kummerian_verdict(CyclotomicPair(pres, th), 3);
          refuted += v.is_no();
        }
    CHECK(admissible == 81);
    CHECK(refuted == 81);
  }

  SUBCASE("Heisenberg stays undecided with all levels passing") {
    CyclotomicPair pair = heisenberg_pair(3, 4);
    Verdict v = kummerian_verdict(pair, 4);
    CHECK(v.is_undecided());
    CHECK(v.certificate.empty());
    CHECK(v.passed_levels == std::vector<unsigned>{1, 2, 3, 4});
  }

  SUBCASE("level bound must respect precision") {
    CyclotomicPair pair = heisenberg_pair(3, 2);
    CHECK_THROWS_AS(kummerian_verdict(pair, 3), bad_parameters);
    CHECK_THROWS_AS(kummerian_verdict(pair, 0), bad_parameters);
  }
}

TEST_CASE("kummerian_at single level wrapper") {
  GenTable t({"x"});
  PrimeCtx c32(3, 2);
  CyclotomicPair pair(Presentation{3, t, {parse_word("x^3", t)}},
                      Orientation::trivial(t, c32));
  Verdict pass = kummerian_at(pair, 1);
  CHECK(pass.is_undecided());
  CHECK(pass.passed_levels == std::vector<unsigned>{1});
  Verdict fail = kummerian_at(pair, 2);
  CHECK(fail.is_no());
  CHECK(fail.cocycle_witness->missed == Vec{1});
}

TEST_CASE("theta_abelian_certify outcomes") {
  SUBCASE("trivial and rank-one free pairs") {
    GenTable none(std::vector<std::string>{});
    PrimeCtx c32(3, 2);
    CHECK(theta_abelian_certify(CyclotomicPair(Presentation{3, none, {}},
                                               Orientation::trivial(none, c32)))
              .certificate == "trivial group");
    GenTable one({"x"});
    CHECK(theta_abelian_certify(
              CyclotomicPair(Presentation{3, one, {}},
                             Orientation::from_values(one, {4}, c32)))
              .certificate == "free pair of rank one");
  }

  SUBCASE("free rank two is not certified") {
    GenTable t({"x", "y"});
    PrimeCtx c32(3, 2);
    Verdict v = theta_abelian_certify(CyclotomicPair(
        Presentation{3, t, {}}, Orientation::trivial(t, c32)));
    CHECK(v.is_undecided());
  }

  SUBCASE("Heisenberg is undecided, G1 trivial-theta is refuted") {
    CHECK(theta_abelian_certify(heisenberg_pair(3, 3)).is_undecided());
    Verdict v = theta_abelian_certify(g1_pair(3, 1, 3, false));
    CHECK(v.is_no());
    REQUIRE(v.cocycle_witness.has_value());
  }

  SUBCASE("abelian normal form with trivial orientation") {
    GenTable t({"x", "y", "z"});
    PrimeCtx c32(3, 2);
    Presentation pres{3, t,
                      {parse_word("[x,y]", t), parse_word("[x,z]", t),
                       parse_word("[y,z]", t)}};
    Verdict v = theta_abelian_certify(
        CyclotomicPair(pres, Orientation::trivial(t, c32)));
    CHECK(v.is_yes());
    // dropping one commutator loses the certificate
    Presentation partial{3, t,
                         {parse_word("[x,y]", t), parse_word("[x,z]", t)}};
    CHECK(theta_abelian_certify(
              CyclotomicPair(partial, Orientation::trivial(t, c32)))
              .is_undecided());
  }

  SUBCASE("conjugation exponents must agree exactly") {
    GenTable t({"a", "b", "x"});
    PrimeCtx c32(3, 2);
    Orientation th = Orientation::from_values(t, {1, 1, 4}, c32);
    // both relators encode theta(x) = 4 mod 9, but 13 = 4 + 9 differs as
    // an integer: the action is not one scalar
    Presentation mixed{3, t,
                       {parse_word("[a,b]", t), parse_word("x*a*x^-1*a^-4", t),
                        parse_word("x*b*x^-1*b^-13", t)}};
    CHECK_FALSE(theta_abelian_normal_form(CyclotomicPair(mixed, th)));
    Presentation uniform{3, t,
                         {parse_word("[a,b]", t), parse_word("x*a*x^-1*a^-4", t),
                          parse_word("x*b*x^-1*b^-4", t)}};
    CHECK(theta_abelian_normal_form(CyclotomicPair(uniform, th)));
  }

  SUBCASE("conjugation with the wrong scalar is rejected") {
    GenTable t({"a", "x"});
    PrimeCtx c32(3, 2);
    Orientation th = Orientation::from_values(t, {1, 7}, c32);
    // relator encodes action by 4, but theta(x) = 7
    Presentation pres{3, t, {parse_word("x*a*x^-1*a^-4", t)}};
    CHECK_FALSE(theta_abelian_normal_form(CyclotomicPair(pres, th)));
  }
}

TEST_CASE("criteria equivalence on random pairs") {
  std::mt19937_64 rng(161616);
  GenTable t({"x", "y", "z"});
  for (std::uint64_t p : {2ull, 3ull}) {
    PrimeCtx top(p, 3);
    for (int i = 0; i < 100; ++i) {
      std::vector<Word> rels;
      int nr = 1 + (int)(rng() % 2);
      for (int k = 0; k < nr; ++k) rels.push_back(random_word(rng, t, 5, 7));
      CyclotomicPair pair(Presentation{p, t, rels},
                          Orientation::trivial(t, top));
      for (unsigned n = 1; n <= 3; ++n) {
        CHECK(kummerian_check(pair, n).passes ==
              !theta_ab_module(pair, n).has_torsion_certificate());
      }
    }
  }
}
