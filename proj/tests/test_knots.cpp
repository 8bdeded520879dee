#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <set>

#include "kgt/error.hpp"
#include "kgt/knots.hpp"
#include "test_util.hpp"

using namespace kgt::knots;
using kgt::fpres::H1;
using kgt::words::Word;
using kgt_test::Rng;

namespace {

Word w(const kgt::words::AlphabetRef& a, std::string_view text) {
  return kgt::words::parse_word(a, text);
}

// evaluate a 2-generator word in S3 under a |-> (12), b |-> (123); the
// brute-force separator for the central quotient Z2 * Z3
std::array<int, 3> s3_image(const Word& u) {
  const std::array<int, 3> A{1, 0, 2};   // (12)
  const std::array<int, 3> B{1, 2, 0};   // (123)
  const std::array<int, 3> Ai = A;       // order 2
  const std::array<int, 3> Bi{2, 0, 1};  // (132)
  std::array<int, 3> acc{0, 1, 2};
  auto apply = [&](const std::array<int, 3>& g) {
    std::array<int, 3> r{};
    for (int i = 0; i < 3; ++i) r[i] = g[acc[i]];
    acc = r;
  };
  for (const auto& l : u.letters()) {
    std::int64_t reps = l.exp < 0 ? -l.exp : l.exp;
    for (std::int64_t i = 0; i < reps; ++i)
      apply(l.gen == 0 ? (l.exp > 0 ? A : Ai) : (l.exp > 0 ? B : Bi));
  }
  return acc;
}

}  // namespace

TEST_CASE("knot spec parsing") {
  auto t = KnotSpec::parse("torus(2,3)");
  CHECK(t.kind() == KnotSpec::Kind::Torus);
  CHECK(t.str() == "torus(2,3)");

  auto c = KnotSpec::parse(" cable( 3 , 2 ;  torus(2,3) ) ");
  CHECK(c.kind() == KnotSpec::Kind::Cable);
  CHECK(c.m() == 3);
  CHECK(c.n() == 2);
  CHECK(c.str() == "cable(3,2; torus(2,3))");

  auto s = KnotSpec::parse("sum(torus(2,3), cable(3,2; torus(2,3)))");
  CHECK(s.kind() == KnotSpec::Kind::Sum);
  CHECK(s.parts().size() == 2);
  CHECK(KnotSpec::parse(s.str()).str() == s.str());

  CHECK_THROWS_AS(KnotSpec::parse("torus(2,4)"), std::invalid_argument);
  CHECK_THROWS_AS(KnotSpec::parse("cable(4,6; torus(2,3))"), std::invalid_argument);
  CHECK_THROWS_AS(KnotSpec::parse("sum(torus(2,3))"), std::invalid_argument);
  CHECK_THROWS_AS(KnotSpec::parse("torus(2,3) junk"), kgt::ParseError);
  CHECK_THROWS_AS(KnotSpec::parse("wheel(2,3)"), kgt::ParseError);
  CHECK_THROWS_AS(KnotSpec::parse("torus(2"), kgt::ParseError);
}

TEST_CASE("torus knot presentation") {
  auto k = torus_presentation(2, 3);
  const auto& a = k.presentation.alphabet;
  CHECK(a->size() == 2);
  REQUIRE(k.presentation.relators.size() == 1);
  CHECK(k.presentation.relators[0] == w(a, "a^2 b^-3"));
  CHECK(k.peripheral.meridian == w(a, "a^-1 b^2"));
  CHECK(k.peripheral.longitude ==
        kgt::words::multiply(w(a, "a^2"), kgt::words::power(w(a, "a^-1 b^2"), -6)));
  CHECK(kgt::fpres::h1_invariants(k.presentation) == H1{1, {}});

  auto k32 = torus_presentation(3, 2);  // symmetric construction
  CHECK(k32.peripheral.meridian == w(k32.presentation.alphabet, "a^-1 b"));

  CHECK_THROWS_AS(torus_presentation(2, 4), std::invalid_argument);
  CHECK_THROWS_AS(torus_presentation(1, 3), std::invalid_argument);
}

TEST_CASE("torus normal form") {
  auto alpha = kgt::words::Alphabet::make({"a", "b"});

  CHECK(torus_normal_form(w(alpha, "a^2 b^-3"), 2, 3).is_identity());
  CHECK(torus_normal_form(Word(alpha), 2, 3).is_identity());

  // a*b vs b*a: distinct normal forms, confirmed by the S3 homomorphism
  auto ab = torus_normal_form(w(alpha, "a b"), 2, 3);
  auto ba = torus_normal_form(w(alpha, "b a"), 2, 3);
  CHECK_FALSE(ab == ba);
  CHECK(s3_image(w(alpha, "a b")) != s3_image(w(alpha, "b a")));

  // central syllable collection: a^3 = z a at p = 2
  auto a3 = torus_normal_form(w(alpha, "a^3"), 2, 3);
  CHECK(a3.center == 1);
  REQUIRE(a3.syllables.size() == 1);
  CHECK(a3.syllables[0] == TorusSyllable{0, 1});
  auto bm4 = torus_normal_form(w(alpha, "b^-4"), 2, 3);
  CHECK(bm4.center == -2);
  REQUIRE(bm4.syllables.size() == 1);
  CHECK(bm4.syllables[0] == TorusSyllable{1, 2});

  // the peripheral pair commutes
  auto k = torus_presentation(2, 3);
  Word commutator = kgt::words::multiply(
      kgt::words::multiply(k.peripheral.meridian, k.peripheral.longitude),
      kgt::words::invert(kgt::words::multiply(k.peripheral.longitude, k.peripheral.meridian)));
  CHECK(torus_normal_form(commutator, 2, 3).is_identity());

  // syllable invariants on random words, cross-checked against S3 at (2,3)
  Rng rng(kgt_test::kSeed);
  for (int t = 0; t < 2000; ++t) {
    Word u = kgt_test::random_word(alpha, rng, 6, 4);
    auto nf = torus_normal_form(u, 2, 3);
    for (std::size_t i = 0; i < nf.syllables.size(); ++i) {
      const auto& s = nf.syllables[i];
      CHECK(s.exp > 0);
      CHECK(s.exp < (s.gen == 0 ? 2 : 3));
      if (i > 0) CHECK(nf.syllables[i - 1].gen != s.gen);
    }
    // appending the relator never changes the normal form
    CHECK(torus_normal_form(kgt::words::multiply(u, w(alpha, "a^2 b^-3")), 2, 3) == nf);
    if (nf.is_identity()) CHECK(s3_image(u) == (std::array<int, 3>{0, 1, 2}));
  }
}

TEST_CASE("cable knot presentation") {
  auto trefoil = torus_presentation(2, 3);
  auto k = cable_presentation(3, 2, trefoil);
  const auto& a = k.presentation.alphabet;

  CHECK(a->size() == 5);  // x1 x2 t c.a c.b
  CHECK(k.presentation.relators.size() == 5);
  CHECK(k.peripheral.meridian == w(a, "x1"));
  CHECK(kgt::fpres::h1_invariants(k.presentation) == H1{1, {}});
  CHECK(k.presentation.named.count("killer.4") == 1);
  CHECK(k.presentation.named.at("c.meridian") == w(a, "c.a^-1 c.b^2"));

  // the longitude is null-homologous by construction
  CHECK(kgt::fpres::in_row_lattice(kgt::fpres::relation_matrix(k.presentation),
                                   kgt::words::ab_vector(k.peripheral.longitude)));

  // quotient by g_2 collapses (the full killer test)
  auto r = killer_test(k.presentation, k.presentation.named.at("killer.2"));
  CHECK(r.verdict == kgt::tc::Certainty::Certified);

  // meridian^2 is refuted through H1 = Z/2, without enumeration
  auto r2 = killer_test(k.presentation, kgt::words::power(k.peripheral.meridian, 2));
  CHECK(r2.verdict == kgt::tc::Certainty::Refuted);
  CHECK(r2.refuted_by_h1);
  CHECK(r2.h1_augmented == H1{0, {2}});
  CHECK_FALSE(r2.quotient.has_value());

  // x1^3 is refuted through H1 = Z/3
  auto r3 = killer_test(k.presentation, w(a, "x1^3"));
  CHECK(r3.verdict == kgt::tc::Certainty::Refuted);
  CHECK(r3.h1_augmented == H1{0, {3}});
}

TEST_CASE("connected sums") {
  auto trefoil = torus_presentation(2, 3);
  auto granny = sum_presentation({trefoil, trefoil});
  CHECK(granny.presentation.alphabet->size() == 4);
  CHECK(granny.presentation.relators.size() == 3);
  CHECK(kgt::fpres::h1_invariants(granny.presentation) == H1{1, {}});

  // composite longitude is null-homologous
  CHECK(kgt::fpres::in_row_lattice(kgt::fpres::relation_matrix(granny.presentation),
                                   kgt::words::ab_vector(granny.peripheral.longitude)));

  // summand order does not change H1 or the meridian verdict
  auto s1 = build(KnotSpec::parse("sum(torus(2,3), torus(2,5))"));
  auto s2 = build(KnotSpec::parse("sum(torus(2,5), torus(2,3))"));
  CHECK(kgt::fpres::h1_invariants(s1.presentation) == kgt::fpres::h1_invariants(s2.presentation));
  auto v1 = killer_test(s1.presentation, s1.peripheral.meridian);
  auto v2 = killer_test(s2.presentation, s2.peripheral.meridian);
  CHECK(v1.verdict == v2.verdict);
  CHECK(v1.verdict == kgt::tc::Certainty::Certified);

  CHECK_THROWS_AS(sum_presentation({trefoil}), std::invalid_argument);
}

TEST_CASE("killer transfer into a sum") {
  auto sum = build(KnotSpec::parse("sum(cable(3,2; torus(2,3)), torus(2,5))"));
  Word g2 = sum.presentation.named.at("p1.killer.2");
  CHECK(killer_test(sum.presentation, g2).verdict == kgt::tc::Certainty::Certified);
  CHECK(killer_test(sum.presentation, sum.peripheral.meridian).verdict ==
        kgt::tc::Certainty::Certified);

  // the factor killer also transfers into a sum with a trefoil
  auto sum2 = build(KnotSpec::parse("sum(cable(3,2; torus(2,3)), torus(2,3))"));
  CHECK(killer_test(sum2.presentation, sum2.presentation.named.at("p1.killer.2")).verdict ==
        kgt::tc::Certainty::Certified);
}

TEST_CASE("build composes and d only recalibrates") {
  auto viaBuild = build(KnotSpec::parse("torus(2,3)"));
  auto direct = torus_presentation(2, 3);
  CHECK(viaBuild.presentation == direct.presentation);

  for (std::int64_t d : {-1, 1}) {
    BuildOptions bo;
    bo.d = d;
    auto k = build(KnotSpec::parse("cable(2,3; torus(2,3))"), bo);
    CHECK(kgt::fpres::h1_invariants(k.presentation) == H1{1, {}});
    auto r = killer_test(k.presentation, k.presentation.named.at("killer.2"));
    CHECK(r.verdict == kgt::tc::Certainty::Certified);
  }
}

TEST_CASE("nested compositions rename hierarchically") {
  auto k = build(KnotSpec::parse("cable(2,3; cable(3,2; torus(2,3)))"));
  CHECK(k.presentation.alphabet->find("c.c.a").has_value());
  CHECK(k.presentation.named.count("c.killer.2") == 1);
  CHECK(kgt::fpres::h1_invariants(k.presentation) == H1{1, {}});
  CHECK(killer_test(k.presentation, k.presentation.named.at("killer.2")).verdict ==
        kgt::tc::Certainty::Certified);

  auto s = build(KnotSpec::parse("cable(2,3; sum(torus(2,3), torus(2,5)))"));
  CHECK(s.presentation.alphabet->find("c.p2.b").has_value());
  CHECK(kgt::fpres::h1_invariants(s.presentation) == H1{1, {}});
}

TEST_CASE("torus normal form input validation") {
  auto a3 = kgt::words::Alphabet::make({"a", "b", "c"});
  CHECK_THROWS_AS(torus_normal_form(Word(a3), 2, 3), std::invalid_argument);
  auto a2 = kgt::words::Alphabet::make({"a", "b"});
  CHECK_THROWS_AS(torus_normal_form(Word(a2), 1, 3), std::invalid_argument);
}

TEST_CASE("identity word is no killer") {
  auto trefoil = torus_presentation(2, 3);
  auto r = killer_test(trefoil.presentation, Word(trefoil.presentation.alphabet));
  CHECK(r.verdict == kgt::tc::Certainty::Refuted);
  CHECK(r.refuted_by_h1);
}
