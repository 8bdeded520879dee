#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "kgt/inequiv.hpp"
#include "test_util.hpp"

using namespace kgt::inequiv;
using kgt::cable::make_params;

TEST_CASE("abelian obstruction") {
  auto p = make_params(2, 3);

  for (std::int64_t k = 2; k <= 6; ++k) {
    auto sols = abelian_obstruction(k, k, p);
    REQUIRE(sols.size() == 1);
    CHECK(sols[0] == AbelianSolution{1, 2, false, +1});
  }

  for (std::int64_t k = 1; k <= 6; ++k)
    for (std::int64_t l = 1; l <= 6; ++l)
      if (k != l) CHECK(abelian_obstruction(k, l, p).empty());

  // l = 1 degenerates: the j coefficient vanishes
  auto sols11 = abelian_obstruction(1, 1, p);
  REQUIRE(sols11.size() == 1);
  CHECK(sols11[0].i == 1);
  CHECK(sols11[0].eps == +1);
  CHECK(sols11[0].j_vacuous);
}

TEST_CASE("conjugacy obstruction against the rotation oracle") {
  for (auto [m, n] : {std::pair<std::int64_t, int>{1, 2}, {2, 3}, {2, 5}}) {
    auto p = make_params(m, n);
    for (std::int64_t k = 1; k <= 6; ++k)
      for (std::int64_t l = 1; l <= 6; ++l) {
        auto rep = conjugacy_obstruction(k, l, p);
        CHECK(rep.cases.size() == static_cast<std::size_t>(4 * n));
        auto target = kgt::cable::killer_element(k, p).w;
        for (const auto& c : rep.cases) {
          auto im = kgt::cable::constrained_image(l, c.z2, c.eta, c.eps, p);
          CHECK(c.conjugate == kgt_test::conjugate_oracle(im.core, target));
        }
        CHECK(rep.no_solution() == (k != l));
        for (const auto& s : rep.solutions)
          CHECK(kgt::words::conjugate(s.core, s.witness) == target);
      }
  }
}

TEST_CASE("diagonal solutions are unique and canonical") {
  for (auto [m, n] : {std::pair<std::int64_t, int>{1, 2}, {2, 3}, {2, 5}}) {
    auto p = make_params(m, n);
    for (std::int64_t k = 2; k <= 6; ++k) {
      auto rep = conjugacy_obstruction(k, k, p);
      REQUIRE(rep.solutions.size() == 1);
      const auto& s = rep.solutions[0];
      CHECK(s.z2 == 0);
      CHECK(s.eta == +1);
      CHECK(s.eps == +1);
      CHECK(s.i == 1);
      CHECK(s.j == 2);
      CHECK(s.witness.is_identity());
    }
    auto rep1 = conjugacy_obstruction(1, 1, p);
    REQUIRE(rep1.solutions.size() == 1);
    CHECK(rep1.solutions[0].j_vacuous);
    CHECK(rep1.solutions[0].core == kgt::cable::cable_meridian(p).w);
  }
}

TEST_CASE("verdicts") {
  auto p = make_params(2, 3);
  CHECK(inequivalence_verdict(2, 3, p).verdict == Verdict::CertifiedInequivalent);
  CHECK(inequivalence_verdict(1, 2, p).verdict == Verdict::CertifiedInequivalent);
  CHECK(inequivalence_verdict(4, 4, p).verdict == Verdict::EquivalentCandidate);
}

TEST_CASE("report format golden") {
  auto p = make_params(1, 2);
  auto r = inequivalence_verdict(2, 2, p);
  CHECK(format_report(r) ==
        "case z2=0 eta=+1 eps=+1 i=1 j=2 -> conjugate\n"
        "case z2=0 eta=+1 eps=-1 i=1 j=2 -> not\n"
        "case z2=0 eta=-1 eps=+1 i=1 j=2 -> conjugate\n"
        "case z2=0 eta=-1 eps=-1 i=1 j=2 -> not\n"
        "case z2=1 eta=+1 eps=+1 i=2 j=1 -> not\n"
        "case z2=1 eta=+1 eps=-1 i=2 j=1 -> not\n"
        "case z2=1 eta=-1 eps=+1 i=2 j=1 -> not\n"
        "case z2=1 eta=-1 eps=-1 i=2 j=1 -> not\n"
        "verdict equivalent-candidate\n");

  // n = 2 realizes the diagonal case through two triples; the solution list
  // keeps the canonical first one only
  REQUIRE(r.report.solutions.size() == 1);
  CHECK(r.report.solutions[0].eta == +1);
}

TEST_CASE("peripheral abelian obstruction is conclusive on the grid") {
  for (int n = 2; n <= 6; ++n)
    for (std::int64_t m = -7; m <= 7; ++m) {
      if (std::gcd(((m % n) + n) % n, static_cast<std::int64_t>(n)) != 1) continue;
      auto p = make_params(m, n);
      for (std::int64_t k = 1; k <= 6; ++k) CHECK(peripheral_conjugacy_ab_obstruction(k, p));
    }
}
