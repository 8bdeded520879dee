#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <numeric>

#include "kgt/error.hpp"
#include "kgt/fpres.hpp"
#include "test_util.hpp"

using namespace kgt::fpres;
using kgt::words::Word;
using kgt_test::Rng;

namespace {

// fraction-free determinant, the independent oracle for SNF factor products
std::int64_t det_oracle(IntMatrix m) {
  const int n = m.rows;
  std::int64_t prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (m.at(i, k) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return 0;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(k, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

}  // namespace

TEST_CASE("presentation parsing") {
  auto p = parse_presentation("gens a b\nrel a^2 b^-3\n");
  CHECK(p.alphabet->size() == 2);
  REQUIRE(p.relators.size() == 1);
  CHECK(kgt::words::format_word(p.relators[0]) == "a^2 b^-3");

  auto q = parse_presentation("# trefoil with names\n\ngens a b\nrel a^2 b^-3 # relator\nname meridian a^-1 b^2\nname longitude a^2\n");
  CHECK(q.named.size() == 2);
  CHECK(kgt::words::format_word(q.named.at("meridian")) == "a^-1 b^2");

  CHECK_THROWS_AS(parse_presentation("gens a\nrel a^0\n"), kgt::ParseError);
  CHECK_THROWS_AS(parse_presentation("rel a\ngens a\n"), kgt::ParseError);
  CHECK_THROWS_AS(parse_presentation("gens a a\n"), kgt::ParseError);
  CHECK_THROWS_AS(parse_presentation("gens a\nrel a a^-1\n"), kgt::ParseError);
  CHECK_THROWS_AS(parse_presentation("gens a\nbogus a\n"), kgt::ParseError);
  CHECK_THROWS_AS(parse_presentation("gens a\nname m a\nname m a\n"), kgt::ParseError);
  CHECK_THROWS_AS(parse_presentation("gens a\nrel b\n"), kgt::ParseError);
  CHECK_THROWS_AS(parse_presentation(""), kgt::ParseError);

  // parse errors carry the line number
  try {
    parse_presentation("gens a\nrel a^0\n");
    CHECK(false);
  } catch (const kgt::ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("named identity words are allowed") {
  auto p = parse_presentation("gens a\nrel a^5\nname null 1\n");
  CHECK(p.named.at("null").is_identity());
  CHECK(parse_presentation(format_presentation(p)) == p);
}

TEST_CASE("format/parse round trip") {
  auto p = parse_presentation(
      "gens x1 x2 x3 t\nrel t x1 t^-1 x3^-1\nrel t x2 t^-1 x1^-1\nrel t x3 t^-1 x2^-1\n"
      "name meridian x1\nname killer.3 x1^3 x2^-2\n");
  CHECK(parse_presentation(format_presentation(p)) == p);
}

TEST_CASE("relation matrix") {
  auto trefoil = parse_presentation("gens a b\nrel a^2 b^-3\n");
  auto m = relation_matrix(trefoil);
  CHECK(m.rows == 1);
  CHECK(m.cols == 2);
  CHECK(m.at(0, 0) == 2);
  CHECK(m.at(0, 1) == -3);

  auto swap2 = parse_presentation("gens x1 x2 t\nrel t x1 t^-1 x2^-1\nrel t x2 t^-1 x1^-1\n");
  auto ms = relation_matrix(swap2);
  CHECK(ms.rows == 2);
  CHECK(ms.at(0, 0) == 1);
  CHECK(ms.at(0, 1) == -1);
  CHECK(ms.at(0, 2) == 0);
  CHECK(ms.at(1, 0) == -1);
  CHECK(ms.at(1, 1) == 1);
  CHECK(ms.at(1, 2) == 0);

  Presentation empty{trefoil.alphabet, {}, {}};
  auto me = relation_matrix(empty);
  CHECK(me.rows == 0);
  CHECK(me.cols == 2);
}

TEST_CASE("smith normal form examples") {
  IntMatrix m1(1, 2);
  m1.at(0, 0) = 2;
  m1.at(0, 1) = -3;
  auto s1 = smith_normal_form(m1);
  CHECK(s1.factors == std::vector<std::int64_t>{1});
  CHECK(s1.rank == 1);

  IntMatrix m2(1, 1);
  m2.at(0, 0) = 5;
  CHECK(smith_normal_form(m2).factors == std::vector<std::int64_t>{5});

  IntMatrix m3(2, 2);
  m3.at(0, 0) = 2;
  m3.at(1, 1) = 2;
  CHECK(smith_normal_form(m3).factors == std::vector<std::int64_t>{2, 2});

  // divisibility fix-up is required here: naive diagonal would be (2, 6)
  IntMatrix m4(2, 2);
  m4.at(0, 0) = 2;
  m4.at(1, 1) = 6;
  CHECK(smith_normal_form(m4).factors == std::vector<std::int64_t>{2, 6});
  IntMatrix m5(2, 2);
  m5.at(0, 0) = 4;
  m5.at(1, 1) = 6;
  CHECK(smith_normal_form(m5).factors == std::vector<std::int64_t>{2, 12});
}

TEST_CASE("smith normal form against the determinant oracle") {
  Rng rng(kgt_test::kSeed);
  for (int t = 0; t < 1500; ++t) {
    int n = static_cast<int>(rng.uniform(1, 4));
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = rng.uniform(-7, 7);
    auto s = smith_normal_form(m);
    for (std::size_t i = 0; i + 1 < s.factors.size(); ++i) {
      CHECK(s.factors[i] >= 1);
      CHECK(s.factors[i + 1] % s.factors[i] == 0);
    }
    std::int64_t det = det_oracle(m);
    if (det != 0) {
      REQUIRE(s.rank == n);
      std::int64_t prod = 1;
      for (auto f : s.factors) prod *= f;
      CHECK(prod == (det < 0 ? -det : det));
    } else {
      CHECK(s.rank < n);
    }
  }
}

namespace {

// gcd of all k x k minors; d_k = minor_gcd(k) / minor_gcd(k-1) is the
// classical characterization of the invariant factors
std::int64_t minor_gcd(const IntMatrix& m, int k) {
  std::vector<int> rows(static_cast<std::size_t>(k)), cols(static_cast<std::size_t>(k));
  std::int64_t g = 0;
  std::function<void(int, int)> pick_cols = [&](int from, int got) {
    if (got == k) {
      IntMatrix sub(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          sub.at(i, j) = m.at(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
      std::int64_t d = det_oracle(sub);
      g = std::gcd(g, d < 0 ? -d : d);
      return;
    }
    for (int c = from; c <= m.cols - (k - got); ++c) {
      cols[static_cast<std::size_t>(got)] = c;
      pick_cols(c + 1, got + 1);
    }
  };
  std::function<void(int, int)> pick_rows = [&](int from, int got) {
    if (got == k) {
      pick_cols(0, 0);
      return;
    }
    for (int r = from; r <= m.rows - (k - got); ++r) {
      rows[static_cast<std::size_t>(got)] = r;
      pick_rows(r + 1, got + 1);
    }
  };
  pick_rows(0, 0);
  return g;
}

}  // namespace

TEST_CASE("smith normal form against the minor-gcd oracle") {
  Rng rng(kgt_test::kSeed + 7);
  for (int t = 0; t < 800; ++t) {
    int rows = static_cast<int>(rng.uniform(1, 3));
    int cols = static_cast<int>(rng.uniform(1, 4));
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m.at(i, j) = rng.uniform(-6, 6);
    auto s = smith_normal_form(m);
    std::int64_t prev = 1;
    int k = 1;
    for (; k <= std::min(rows, cols); ++k) {
      std::int64_t g = minor_gcd(m, k);
      if (g == 0) break;  // rank reached
      CHECK(k <= s.rank);
      CHECK(s.factors[static_cast<std::size_t>(k - 1)] == g / prev);
      prev = g;
    }
    CHECK(s.rank == k - 1);
  }
}

TEST_CASE("h1 invariants") {
  auto trefoil = parse_presentation("gens a b\nrel a^2 b^-3\n");
  CHECK(h1_invariants(trefoil) == H1{1, {}});

  auto z5 = parse_presentation("gens a\nrel a^5\n");
  CHECK(h1_invariants(z5) == H1{0, {5}});

  auto free2 = Presentation{trefoil.alphabet, {}, {}};
  CHECK(h1_invariants(free2) == H1{2, {}});
}

TEST_CASE("quotient image and row lattice membership") {
  IntMatrix m(1, 2);
  m.at(0, 0) = 2;
  m.at(0, 1) = -3;
  CHECK(in_row_lattice(m, std::vector<std::int64_t>{2, -3}));
  CHECK(in_row_lattice(m, std::vector<std::int64_t>{8, -12}));
  CHECK_FALSE(in_row_lattice(m, std::vector<std::int64_t>{1, 0}));
  CHECK_FALSE(in_row_lattice(m, std::vector<std::int64_t>{2, 3}));

  // the quotient Z^2 / <(2,-3)> is Z; the image must be a homomorphism
  Rng rng(kgt_test::kSeed);
  for (int t = 0; t < 200; ++t) {
    std::vector<std::int64_t> u{rng.uniform(-9, 9), rng.uniform(-9, 9)};
    std::vector<std::int64_t> v{rng.uniform(-9, 9), rng.uniform(-9, 9)};
    auto qu = quotient_image(m, u);
    auto qv = quotient_image(m, v);
    std::vector<std::int64_t> sum{u[0] + v[0], u[1] + v[1]};
    auto qs = quotient_image(m, sum);
    REQUIRE(qu.free_coords.size() == 1);
    CHECK(qs.free_coords[0] == qu.free_coords[0] + qv.free_coords[0]);
  }
}

TEST_CASE("h1 ignores relator conjugation and inversion") {
  auto alpha = kgt::words::Alphabet::make({"a", "b", "c"});
  Rng rng(kgt_test::kSeed);
  for (int t = 0; t < 300; ++t) {
    Presentation p;
    p.alphabet = alpha;
    std::int64_t nrel = rng.uniform(1, 3);
    for (std::int64_t i = 0; i < nrel; ++i) {
      Word w = kgt_test::random_word(alpha, rng, 5, 2);
      if (w.is_identity()) w = Word::generator(alpha, 0);
      p.relators.push_back(w);
    }
    Presentation q = p;
    for (auto& w : q.relators) {
      w = kgt::words::conjugate(w, kgt_test::random_word(alpha, rng, 3, 2));
      if (rng.uniform(0, 1) == 1) w = kgt::words::invert(w);
    }
    CHECK(h1_invariants(p) == h1_invariants(q));
  }
}
