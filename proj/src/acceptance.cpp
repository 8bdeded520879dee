#include "kgt/acceptance.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "kgt/cable_space.hpp"
#include "kgt/coset_enum.hpp"
#include "kgt/error.hpp"
#include "kgt/fpres.hpp"
#include "kgt/inequiv.hpp"
#include "kgt/knots.hpp"
#include "kgt/words.hpp"

namespace kgt::accept {

using words::Letter;
using words::Word;

namespace {

struct Criterion {
  int id = 0;
  std::string label;
  bool pass = true;
  std::string detail;

  Criterion(int id_, std::string label_) : id(id_), label(std::move(label_)) {}

  void fail(const std::string& why) {
    pass = false;
    if (detail.empty()) detail = why;
  }
};

struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine);
  }
};

Word random_word(const words::AlphabetRef& a, Rng& rng, int max_blocks = 8, int max_exp = 3) {
  std::vector<Letter> raw;
  std::int64_t blocks = rng.uniform(0, max_blocks);
  for (std::int64_t i = 0; i < blocks; ++i)
    raw.push_back(
        {static_cast<int>(rng.uniform(0, a->size() - 1)), rng.uniform(-max_exp, max_exp)});
  return Word::reduce(a, raw);
}

// coprime (m, n) with 2 <= n <= 6, -7 <= m <= 7
std::vector<cable::CableParams> parameter_grid() {
  std::vector<cable::CableParams> grid;
  for (int n = 2; n <= 6; ++n)
    for (std::int64_t m = -7; m <= 7; ++m) {
      std::int64_t mbar = ((m % n) + n) % n;
      if (std::gcd(mbar, static_cast<std::int64_t>(n)) != 1) continue;
      grid.push_back(cable::make_params(m, n));
    }
  return grid;
}

// A = < x1..xn, t | t x_i t^-1 = x_sigma(i) > over the x/t alphabet
fpres::Presentation cable_space_presentation(const cable::CableParams& p) {
  fpres::Presentation pres;
  pres.alphabet = p.xt_alphabet;
  for (int i = 1; i <= p.n; ++i) {
    std::vector<Letter> rel{
        {p.t_index, 1}, {i - 1, 1}, {p.t_index, -1}, {cable::shift(i, 1, p) - 1, -1}};
    pres.relators.push_back(Word::reduce(p.xt_alphabet, rel));
  }
  return pres;
}

fpres::Presentation augment(const fpres::Presentation& p, const std::vector<Word>& extra) {
  fpres::Presentation out{p.alphabet, p.relators, {}};
  for (const auto& w : extra)
    if (!w.is_identity()) out.relators.push_back(w);
  return out;
}

// a Certified enumeration held back for the independent validator pass
struct CertifiedRun {
  fpres::Presentation augmented;
  tc::CosetTable table;
};

// ---------------------------------------------------------------------------

Criterion criterion1() {
  Criterion c{1, "killer-certificate grid (claim1)"};
  int cases = 0;
  for (const auto& p : parameter_grid())
    for (std::int64_t l = 1; l <= 5; ++l) {
      ++cases;
      auto check = cable::verify_certificate(cable::killer_certificate(l, p));
      if (!check.ok)
        c.fail("certificate failed at m=" + std::to_string(p.m) + " n=" + std::to_string(p.n) +
               " l=" + std::to_string(l));
    }
  if (c.pass) c.detail = std::to_string(cases) + " certificates verified exactly";
  return c;
}

Criterion criterion2(std::vector<CertifiedRun>& certified) {
  Criterion c{2, "cable-space quotient collapse"};
  int cases = 0;
  std::int64_t max_defined = 0;
  tc::Options opt;
  opt.max_cosets = 10'000;  // the stated bound; overflow fails the criterion
  for (const auto& p : parameter_grid())
    for (std::int64_t l = 1; l <= 5; ++l) {
      ++cases;
      fpres::Presentation pres = cable_space_presentation(p);
      std::vector<Word> extra{cable::to_word(cable::companion_meridian(p), p),
                              cable::to_word(cable::boundary_longitude(p), p),
                              cable::to_word(cable::killer_element(l, p), p)};
      auto r = tc::is_trivial_quotient(pres, extra, opt);
      if (r.verdict != tc::Certainty::Certified) {
        c.fail("not certified at m=" + std::to_string(p.m) + " n=" + std::to_string(p.n) +
               " l=" + std::to_string(l));
        continue;
      }
      max_defined = std::max(max_defined, r.enumeration.stats.cosets_defined);
      certified.push_back({augment(pres, extra), *r.enumeration.table});
    }
  if (c.pass)
    c.detail = std::to_string(cases) + " quotients certified trivial, max " +
               std::to_string(max_defined) + " cosets defined";
  return c;
}

// killer.1..4 then the meridian, in that order
std::vector<tc::Certainty> run_cable_killers(const knots::BuiltKnot& k, std::int64_t max_cosets,
                                             std::int64_t* max_defined,
                                             std::vector<CertifiedRun>* certified) {
  std::vector<tc::Certainty> verdicts;
  tc::Options opt;
  opt.max_cosets = max_cosets;
  std::vector<Word> targets;
  for (int l = 1; l <= 4; ++l)
    targets.push_back(k.presentation.named.at("killer." + std::to_string(l)));
  targets.push_back(k.presentation.named.at("meridian"));
  for (const auto& w : targets) {
    auto r = knots::killer_test(k.presentation, w, opt);
    verdicts.push_back(r.verdict);
    if (r.quotient && r.quotient->verdict == tc::Certainty::Certified) {
      if (max_defined)
        *max_defined = std::max(*max_defined, r.quotient->enumeration.stats.cosets_defined);
      if (certified)
        certified->push_back({augment(k.presentation, {w}), *r.quotient->enumeration.table});
    }
  }
  return verdicts;
}

Criterion criterion3(const knots::BuiltKnot& c32, const knots::BuiltKnot& c23,
                     std::vector<std::vector<tc::Certainty>>& baseline,
                     std::vector<CertifiedRun>& certified) {
  Criterion c{3, "cable-knot killer tests"};
  std::int64_t max_defined = 0;
  for (const auto* k : {&c32, &c23}) {
    auto v = run_cable_killers(*k, 100'000, &max_defined, &certified);
    for (auto verdict : v)
      if (verdict != tc::Certainty::Certified) c.fail("a killer test was not certified");
    baseline.push_back(std::move(v));
  }
  if (c.pass)
    c.detail = "g_1..g_4 and the meridian certified on both cables, max " +
               std::to_string(max_defined) + " cosets defined";
  return c;
}

Criterion criterion4(const std::vector<std::vector<tc::Certainty>>& baseline) {
  Criterion c{4, "d-robustness of killer verdicts"};
  int builds = 0;
  for (std::int64_t d : {-2, -1, 0, 1, 2}) {
    knots::BuildOptions bo;
    bo.d = d;
    knots::BuiltKnot c32 = knots::build(knots::KnotSpec::parse("cable(3,2; torus(2,3))"), bo);
    knots::BuiltKnot c23 = knots::build(knots::KnotSpec::parse("cable(2,3; torus(2,3))"), bo);
    std::vector<std::vector<tc::Certainty>> got;
    got.push_back(run_cable_killers(c32, 100'000, nullptr, nullptr));
    got.push_back(run_cable_killers(c23, 100'000, nullptr, nullptr));
    builds += 2;
    if (!(got == baseline)) c.fail("verdicts changed at d=" + std::to_string(d));
  }
  if (c.pass)
    c.detail = "verdicts identical across d in {-2..2} (" + std::to_string(builds) + " builds)";
  return c;
}

Criterion criterion5() {
  Criterion c{5, "inequivalence case analysis"};
  int cases = 0;
  const std::pair<std::int64_t, int> grid[] = {{1, 2}, {2, 3}, {2, 5}};
  for (auto [m, n] : grid) {
    auto p = cable::make_params(m, n);
    for (std::int64_t k = 1; k <= 6; ++k)
      for (std::int64_t l = k + 1; l <= 6; ++l) {
        ++cases;
        auto rep = inequiv::conjugacy_obstruction(k, l, p);
        auto ab = inequiv::abelian_obstruction(k, l, p);
        if (!rep.no_solution() || !ab.empty())
          c.fail("unexpected solution at n=" + std::to_string(n) + " k=" + std::to_string(k) +
                 " l=" + std::to_string(l));
        auto sym = inequiv::conjugacy_obstruction(l, k, p);
        if (!sym.no_solution()) c.fail("asymmetric verdict");
      }
    for (std::int64_t k = 2; k <= 6; ++k) {
      ++cases;
      auto rep = inequiv::conjugacy_obstruction(k, k, p);
      if (rep.solutions.size() != 1 || rep.solutions[0].z2 != 0 || rep.solutions[0].eta != 1 ||
          rep.solutions[0].eps != 1)
        c.fail("diagonal case not the single expected solution at n=" + std::to_string(n) +
               " k=" + std::to_string(k));
    }
  }
  if (c.pass) c.detail = std::to_string(cases) + " (k,l) cases over n in {2,3,5}";
  return c;
}

Criterion criterion6(const std::vector<const knots::BuiltKnot*>& built) {
  Criterion c{6, "non-killer certificate for the squared meridian"};
  for (const auto* k : built) {
    Word m2 = words::power(k->peripheral.meridian, 2);
    auto r = knots::killer_test(k->presentation, m2);
    if (r.verdict != tc::Certainty::Refuted || !r.refuted_by_h1 ||
        !(r.h1_augmented == fpres::H1{0, {2}}))
      c.fail("squared meridian not refuted via H1 = Z/2");
  }
  if (c.pass)
    c.detail =
        "meridian^2 refuted via H1 = Z/2 on all " + std::to_string(built.size()) + " built knots";
  return c;
}

Criterion criterion7(const knots::BuiltKnot& sum, std::vector<CertifiedRun>& certified) {
  Criterion c{7, "connected-sum killer transfer"};
  tc::Options opt;
  opt.max_cosets = 1'000'000;
  std::int64_t max_defined = 0;

  Word factor_killer = sum.presentation.named.at("p1.killer.2");
  auto rk = knots::killer_test(sum.presentation, factor_killer, opt);
  if (rk.verdict != tc::Certainty::Certified) c.fail("factor killer g_2 not certified on the sum");

  auto rm = knots::killer_test(sum.presentation, sum.peripheral.meridian, opt);
  if (rm.verdict != tc::Certainty::Certified) c.fail("meridian not certified on the sum");

  for (const auto* r : {&rk, &rm})
    if (r->quotient && r->quotient->verdict == tc::Certainty::Certified) {
      max_defined = std::max(max_defined, r->quotient->enumeration.stats.cosets_defined);
    }
  if (rk.quotient && rk.quotient->verdict == tc::Certainty::Certified)
    certified.push_back({augment(sum.presentation, {factor_killer}), *rk.quotient->enumeration.table});
  if (rm.quotient && rm.quotient->verdict == tc::Certainty::Certified)
    certified.push_back(
        {augment(sum.presentation, {sum.peripheral.meridian}), *rm.quotient->enumeration.table});

  if (!(fpres::h1_invariants(sum.presentation) == fpres::H1{1, {}})) c.fail("sum H1 is not Z");
  if (c.pass)
    c.detail = "g_2 transfer and meridian certified, max " + std::to_string(max_defined) +
               " cosets defined";
  return c;
}

Criterion criterion8(const std::vector<CertifiedRun>& certified) {
  Criterion c{8, "enumerator validation"};

  auto order_of = [](const char* text) -> std::int64_t {
    auto p = fpres::parse_presentation(text);
    auto r = tc::enumerate(p, {});
    if (!r.completed) return -1;
    auto v = tc::validate(*r.table, p, {});
    return v.ok ? r.index : -2;
  };
  if (order_of("gens a\nrel a^3\n") != 3) c.fail("cyclic group of order 3 not reproduced");
  if (order_of("gens a b\nrel a^2\nrel b^2\nrel a b a b a b\n") != 6)
    c.fail("symmetric group on 3 letters not reproduced");
  if (order_of("gens a b\nrel a^4\nrel a^2 b^-2\nrel b^-1 a b a\n") != 8)
    c.fail("quaternion group not reproduced");

  int validated = 0;
  for (const auto& run : certified) {
    auto v = tc::validate(run.table, run.augmented, {});
    if (!v.ok) c.fail("validator rejected a certified table: " + v.message);
    ++validated;
  }
  if (c.pass)
    c.detail = "orders 3/6/8 reproduced; " + std::to_string(validated) +
               " certified tables re-validated";
  return c;
}

Criterion criterion9(const std::vector<const knots::BuiltKnot*>& built) {
  Criterion c{9, "structural sanity of built presentations"};
  for (const auto* k : built) {
    const auto& p = k->presentation;
    if (!(fpres::h1_invariants(p) == fpres::H1{1, {}})) c.fail("H1 is not Z");
    if (!fpres::h1_invariants(augment(p, {k->peripheral.meridian})).trivial())
      c.fail("meridian does not generate H1");
    if (!fpres::in_row_lattice(fpres::relation_matrix(p), words::ab_vector(k->peripheral.longitude)))
      c.fail("longitude not null-homologous");
    auto q = tc::is_trivial_quotient(p, {{k->peripheral.meridian}});
    if (q.verdict != tc::Certainty::Certified) c.fail("meridian quotient not certified");
  }
  if (c.pass)
    c.detail = "H1 = Z and all three peripheral checks on " + std::to_string(built.size()) +
               " presentations";
  return c;
}

// ------------------------------------------------------------- property laws

constexpr int kCases = 1000;

bool words_properties(std::uint64_t seed, std::string& why, int& cases) {
  auto alpha = words::Alphabet::make({"x1", "x2", "x3"});
  Rng rng(seed);

  for (int t = 0; t < kCases; ++t) {  // reduce is idempotent on raw sequences
    std::vector<Letter> raw;
    std::int64_t blocks = rng.uniform(0, 12);
    for (std::int64_t i = 0; i < blocks; ++i)
      raw.push_back({static_cast<int>(rng.uniform(0, 2)), rng.uniform(-3, 3)});
    Word w = Word::reduce(alpha, raw);
    if (!(Word::reduce(alpha, w.letters()) == w)) {
      why = "reduce not idempotent";
      return false;
    }
    ++cases;
  }

  for (int t = 0; t < kCases; ++t) {  // associativity
    Word u = random_word(alpha, rng), v = random_word(alpha, rng), w = random_word(alpha, rng);
    if (!(multiply(multiply(u, v), w) == multiply(u, multiply(v, w)))) {
      why = "associativity failed";
      return false;
    }
    ++cases;
  }

  for (int t = 0; t < kCases; ++t) {  // inverse laws
    Word u = random_word(alpha, rng);
    if (!(words::invert(words::invert(u)) == u) ||
        !multiply(u, words::invert(u)).is_identity()) {
      why = "inverse laws failed";
      return false;
    }
    ++cases;
  }

  for (int t = 0; t < kCases; ++t) {  // cyclic_reduce contract
    Word u = random_word(alpha, rng);
    auto cr = words::cyclic_reduce(u);
    const auto& ls = cr.core.letters();
    bool reduced_cyclically =
        ls.size() < 2 || ls.front().gen != ls.back().gen ||
        (ls.front().exp > 0) == (ls.back().exp > 0);
    if (!reduced_cyclically || !(words::conjugate(cr.core, cr.conjugator) == u)) {
      why = "cyclic reduction contract failed";
      return false;
    }
    ++cases;
  }

  for (int t = 0; t < kCases; ++t) {  // conjugacy: reflexive, symmetric, witnesses verify
    Word u = random_word(alpha, rng);
    Word g = random_word(alpha, rng);
    Word v = words::conjugate(u, g);
    auto r1 = words::is_conjugate(u, v);
    auto r2 = words::is_conjugate(v, u);
    auto rr = words::is_conjugate(u, u);
    if (!r1.conjugate || !r2.conjugate || !rr.conjugate) {
      why = "conjugacy not detected";
      return false;
    }
    if (!(words::conjugate(u, *r1.witness) == v) || !(words::conjugate(v, *r2.witness) == u)) {
      why = "conjugacy witness failed";
      return false;
    }
    ++cases;
  }

  for (int t = 0; t < kCases; ++t) {  // transitivity on constructed triples
    Word u = random_word(alpha, rng);
    Word v = words::conjugate(u, random_word(alpha, rng));
    Word w = words::conjugate(v, random_word(alpha, rng));
    if (!words::is_conjugate(u, w).conjugate) {
      why = "conjugacy transitivity failed";
      return false;
    }
    ++cases;
  }

  for (int t = 0; t < kCases; ++t) {  // abelianization laws
    Word u = random_word(alpha, rng), v = random_word(alpha, rng), g = random_word(alpha, rng);
    auto au = words::ab_vector(u), av = words::ab_vector(v);
    auto am = words::ab_vector(multiply(u, v));
    for (std::size_t i = 0; i < au.size(); ++i)
      if (am[i] != au[i] + av[i]) {
        why = "ab_vector not additive";
        return false;
      }
    if (!(words::ab_vector(words::conjugate(u, g)) == au)) {
      why = "ab_vector not conjugation invariant";
      return false;
    }
    ++cases;
  }

  for (int t = 0; t < kCases; ++t) {  // necessary conditions when conjugate
    Word u = random_word(alpha, rng), v = random_word(alpha, rng);
    auto r = words::is_conjugate(u, v);
    if (r.conjugate) {
      if (words::cyclic_reduce(u).core.letter_length() !=
              words::cyclic_reduce(v).core.letter_length() ||
          !(words::ab_vector(u) == words::ab_vector(v))) {
        why = "conjugate words disagree on invariants";
        return false;
      }
    }
    ++cases;
  }
  return true;
}

bool cable_properties(std::uint64_t seed, std::string& why, int& cases) {
  Rng rng(seed);
  auto grid = parameter_grid();

  for (const auto& p : grid) {  // defining relation and sigma^s cycle, exhaustively
    for (int i = 1; i <= p.n; ++i) {
      cable::CableElement xi{Word::generator(p.x_alphabet, i - 1), 0};
      cable::CableElement lhs =
          cable::mul(cable::mul(cable::CableElement{Word(p.x_alphabet), 1}, xi, p),
                     cable::CableElement{Word(p.x_alphabet), -1}, p);
      cable::CableElement rhs{Word::generator(p.x_alphabet, cable::shift(i, 1, p) - 1), 0};
      if (!(lhs == rhs)) {
        why = "defining relation failed";
        return false;
      }
      if (cable::shift(i, p.s, p) != (i % p.n) + 1) {
        why = "sigma^s is not the standard cycle";
        return false;
      }
      if (cable::shift(i, p.n, p) != i) {
        why = "sigma^n is not the identity";
        return false;
      }
      ++cases;
    }
  }

  auto random_element = [&](const cable::CableParams& p) {
    return cable::CableElement{random_word(p.x_alphabet, rng, 6, 3), rng.uniform(-4, 4)};
  };

  for (int t = 0; t < kCases; ++t) {  // associativity, inverses, centrality of t^n
    const auto& p = grid[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(grid.size()) - 1))];
    auto a = random_element(p), b = random_element(p), cc = random_element(p);
    if (!(cable::mul(cable::mul(a, b, p), cc, p) == cable::mul(a, cable::mul(b, cc, p), p))) {
      why = "cable mul not associative";
      return false;
    }
    if (!(cable::inv(cable::inv(a, p), p) == a) || !cable::mul(a, cable::inv(a, p), p).is_identity()) {
      why = "cable inverse laws failed";
      return false;
    }
    cable::CableElement tn{Word(p.x_alphabet), p.n};
    if (!(cable::mul(tn, a, p) == cable::mul(a, tn, p))) {
      why = "t^n is not central";
      return false;
    }
    auto ia = cable::ab_image(a), ib = cable::ab_image(b);
    auto im = cable::ab_image(cable::mul(a, b, p));
    if (im.x_degree != ia.x_degree + ib.x_degree || im.t_degree != ia.t_degree + ib.t_degree) {
      why = "ab image not additive";
      return false;
    }
    ++cases;
  }

  for (const auto& p : grid) {  // peripheral commutativity and the fiber identity
    auto m1 = cable::companion_meridian(p);
    auto la = cable::boundary_longitude(p);
    if (!(cable::mul(la, m1, p) == cable::mul(m1, la, p))) {
      why = "boundary longitude does not commute with the companion meridian";
      return false;
    }
    auto lan = cable::power(la, p.n, p);
    auto rhs = cable::mul(cable::power(m1, p.sigma_shift, p),
                          cable::CableElement{Word(p.x_alphabet), p.n}, p);
    if (!(lan == rhs)) {
      why = "fiber identity lambda^n = m1^mbar t^n failed";
      return false;
    }
    ++cases;
  }

  {  // ab image of every killer is (1, 0)
    const auto& p = grid[0];
    for (std::int64_t l = 1; l <= 100; ++l) {
      if (!(cable::ab_image(cable::killer_element(l, p)) == cable::AbImage{1, 0})) {
        why = "killer ab image is not (1,0)";
        return false;
      }
      ++cases;
    }
  }
  return true;
}

// fraction-free determinant, used as the independent oracle for SNF
std::int64_t det_bareiss(fpres::IntMatrix m) {
  using words::checked_mul;
  using words::checked_sub;
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
        m.at(i, j) =
            checked_sub(checked_mul(m.at(i, j), m.at(k, k)), checked_mul(m.at(i, k), m.at(k, j))) /
            prev;
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

bool fpres_properties(std::uint64_t seed, std::string& why, int& cases) {
  Rng rng(seed);

  for (int t = 0; t < kCases; ++t) {  // SNF chain + determinant oracle
    int n = static_cast<int>(rng.uniform(1, 4));
    fpres::IntMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = rng.uniform(-6, 6);
    auto snf = fpres::smith_normal_form(m);
    for (std::size_t i = 0; i + 1 < snf.factors.size(); ++i)
      if (snf.factors[i] < 1 || snf.factors[i + 1] % snf.factors[i] != 0) {
        why = "SNF divisibility chain violated";
        return false;
      }
    std::int64_t det = det_bareiss(m);
    if (det != 0) {
      std::int64_t prod = 1;
      for (auto f : snf.factors) prod *= f;
      if (snf.rank != n || prod != (det < 0 ? -det : det)) {
        why = "SNF factors disagree with the determinant";
        return false;
      }
    } else if (snf.rank == n) {
      why = "SNF full rank on a singular matrix";
      return false;
    }
    ++cases;
  }

  for (int t = 0; t < kCases; ++t) {  // invariance under unimodular row/col operations
    int rows = static_cast<int>(rng.uniform(1, 3));
    int cols = static_cast<int>(rng.uniform(1, 4));
    fpres::IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m.at(i, j) = rng.uniform(-5, 5);
    fpres::IntMatrix m2 = m;
    for (int op = 0; op < 6; ++op) {
      std::int64_t f = rng.uniform(-2, 2);
      if (rows > 1 && rng.uniform(0, 1) == 0) {
        int a = static_cast<int>(rng.uniform(0, rows - 1));
        int b = static_cast<int>(rng.uniform(0, rows - 1));
        if (a != b)
          for (int j = 0; j < cols; ++j) m2.at(a, j) += f * m2.at(b, j);
      } else if (cols > 1) {
        int a = static_cast<int>(rng.uniform(0, cols - 1));
        int b = static_cast<int>(rng.uniform(0, cols - 1));
        if (a != b)
          for (int i = 0; i < rows; ++i) m2.at(i, a) += f * m2.at(i, b);
      }
    }
    auto s1 = fpres::smith_normal_form(m);
    auto s2 = fpres::smith_normal_form(m2);
    if (!(s1.factors == s2.factors) || s1.rank != s2.rank) {
      why = "SNF not invariant under unimodular operations";
      return false;
    }
    ++cases;
  }

  auto alpha = words::Alphabet::make({"a", "b", "c"});
  for (int t = 0; t < kCases; ++t) {  // H1 ignores relator conjugation and inversion
    Rng* r = &rng;
    fpres::Presentation p;
    p.alphabet = alpha;
    std::int64_t nrel = r->uniform(1, 3);
    for (std::int64_t i = 0; i < nrel; ++i) {
      Word w = random_word(alpha, *r, 5, 2);
      if (w.is_identity()) w = Word::generator(alpha, 0);
      p.relators.push_back(w);
    }
    fpres::Presentation q = p;
    for (auto& w : q.relators) {
      Word g = random_word(alpha, *r, 3, 2);
      w = words::conjugate(w, g);
      if (r->uniform(0, 1) == 1) w = words::invert(w);
      if (w.is_identity()) w = p.relators[0];
    }
    if (!(fpres::h1_invariants(p) == fpres::h1_invariants(q))) {
      why = "H1 not invariant under relator conjugation/inversion";
      return false;
    }
    ++cases;
  }
  return true;
}

bool tc_properties(std::uint64_t seed, std::string& why, int& cases) {
  Rng rng(seed);
  auto alpha = words::Alphabet::make({"a", "b"});

  for (int t = 0; t < kCases; ++t) {
    fpres::Presentation p;
    p.alphabet = alpha;
    std::int64_t nrel = rng.uniform(1, 3);
    for (std::int64_t i = 0; i < nrel; ++i) {
      Word w = random_word(alpha, rng, 5, 3);
      if (!w.is_identity()) p.relators.push_back(w);
    }
    std::vector<Word> sub;
    if (rng.uniform(0, 1) == 1) sub.push_back(random_word(alpha, rng, 4, 2));

    tc::Options opt;
    opt.max_cosets = 600;
    auto r1 = tc::enumerate(p, sub, opt);
    auto r2 = tc::enumerate(p, sub, opt);
    bool same = r1.completed == r2.completed && r1.stats == r2.stats;
    if (r1.completed) same = same && r1.index == r2.index && *r1.table == *r2.table;
    if (!same) {
      why = "enumeration is not deterministic";
      return false;
    }
    if (r1.completed) {
      auto v = tc::validate(*r1.table, p, sub);
      if (!v.ok) {
        why = "validator rejected a completed table: " + v.message;
        return false;
      }
      tc::Options wider = opt;
      wider.max_cosets = opt.max_cosets * 2;
      auto r3 = tc::enumerate(p, sub, wider);
      if (!r3.completed || r3.index != r1.index) {
        why = "raising max_cosets changed a completed index";
        return false;
      }
    }
    ++cases;
  }
  return true;
}

bool knots_properties(std::string& why, int& cases) {
  // torus peripheral pairs commute, decided by the exact word problem
  const std::pair<std::int64_t, std::int64_t> torus_grid[] = {{2, 3}, {3, 2}, {2, 5},
                                                              {3, 4}, {2, 7}, {4, 5}};
  for (auto [p, q] : torus_grid) {
    auto k = knots::torus_presentation(p, q);
    Word commutator = words::multiply(
        words::multiply(k.peripheral.meridian, k.peripheral.longitude),
        words::invert(words::multiply(k.peripheral.longitude, k.peripheral.meridian)));
    if (!knots::torus_normal_form(commutator, p, q).is_identity()) {
      why = "torus meridian and longitude do not commute";
      return false;
    }
    ++cases;
  }

  // summand order changes neither H1 nor the meridian verdict
  auto s1 = knots::build(knots::KnotSpec::parse("sum(torus(2,3), torus(2,5))"));
  auto s2 = knots::build(knots::KnotSpec::parse("sum(torus(2,5), torus(2,3))"));
  if (!(fpres::h1_invariants(s1.presentation) == fpres::h1_invariants(s2.presentation))) {
    why = "sum H1 depends on summand order";
    return false;
  }
  auto v1 = knots::killer_test(s1.presentation, s1.peripheral.meridian);
  auto v2 = knots::killer_test(s2.presentation, s2.peripheral.meridian);
  if (v1.verdict != v2.verdict || v1.verdict != tc::Certainty::Certified) {
    why = "sum meridian verdict depends on summand order";
    return false;
  }
  ++cases;
  return true;
}

bool inequiv_properties(std::string& why, int& cases) {
  const std::pair<std::int64_t, int> grid[] = {{1, 2}, {2, 3}, {2, 5}};
  for (auto [m, n] : grid) {
    auto p = cable::make_params(m, n);
    for (std::int64_t k = 1; k <= 6; ++k) {
      for (std::int64_t l = 1; l <= 6; ++l) {
        auto rep = inequiv::conjugacy_obstruction(k, l, p);
        auto ab = inequiv::abelian_obstruction(k, l, p);
        for (const auto& s : rep.solutions) {
          // abelianization is weaker: every conjugacy solution projects into it
          bool found = std::any_of(ab.begin(), ab.end(), [&](const inequiv::AbelianSolution& a) {
            return a.i == s.i && a.eps == s.eps && (a.j_vacuous ? s.j_vacuous : a.j == s.j);
          });
          if (!found) {
            why = "conjugacy solution missing from the abelian relaxation";
            return false;
          }
        }
        for (const auto& cs : rep.cases)
          if (cs.i == cs.j) {
            why = "enumerated case with i == j";
            return false;
          }
        ++cases;
      }
      if (inequiv::conjugacy_obstruction(k, k, p).solutions.empty()) {
        why = "diagonal case has no solution";
        return false;
      }
      if (!inequiv::peripheral_conjugacy_ab_obstruction(k, p)) {
        why = "peripheral abelian obstruction inconclusive";
        return false;
      }
      ++cases;
    }
  }
  return true;
}

Criterion criterion10(std::uint64_t seed) {
  Criterion c{10, "randomized property suites"};
  int cases = 0;
  std::string why;
  if (!words_properties(seed, why, cases)) c.fail("words: " + why);
  if (c.pass && !cable_properties(seed + 1, why, cases)) c.fail("cable: " + why);
  if (c.pass && !fpres_properties(seed + 2, why, cases)) c.fail("fpres: " + why);
  if (c.pass && !tc_properties(seed + 3, why, cases)) c.fail("coset enumeration: " + why);
  if (c.pass && !knots_properties(why, cases)) c.fail("knots: " + why);
  if (c.pass && !inequiv_properties(why, cases)) c.fail("inequivalence: " + why);
  if (c.pass) c.detail = std::to_string(cases) + " property cases";
  return c;
}

}  // namespace

int run_all(std::ostream& out, std::uint64_t seed) {
  std::vector<Criterion> results;
  std::vector<CertifiedRun> certified;

  results.push_back(criterion1());
  results.push_back(criterion2(certified));

  knots::BuiltKnot t23 = knots::build(knots::KnotSpec::parse("torus(2,3)"));
  knots::BuiltKnot t25 = knots::build(knots::KnotSpec::parse("torus(2,5)"));
  knots::BuiltKnot c32 = knots::build(knots::KnotSpec::parse("cable(3,2; torus(2,3))"));
  knots::BuiltKnot c23 = knots::build(knots::KnotSpec::parse("cable(2,3; torus(2,3))"));
  knots::BuiltKnot sum =
      knots::build(knots::KnotSpec::parse("sum(cable(3,2; torus(2,3)), torus(2,5))"));
  std::vector<const knots::BuiltKnot*> built{&t23, &t25, &c32, &c23, &sum};

  std::vector<std::vector<tc::Certainty>> baseline;
  results.push_back(criterion3(c32, c23, baseline, certified));
  results.push_back(criterion4(baseline));
  results.push_back(criterion5());
  results.push_back(criterion6(built));
  results.push_back(criterion7(sum, certified));
  results.push_back(criterion8(certified));
  results.push_back(criterion9(built));
  results.push_back(criterion10(seed));

  int failed = 0;
  for (const auto& c : results) {
    out << (c.pass ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.label;
    if (!c.detail.empty()) out << " - " << c.detail;
    out << '\n';
    if (!c.pass) ++failed;
  }
  out << "acceptance: " << (results.size() - static_cast<std::size_t>(failed)) << '/'
      << results.size() << " criteria passed\n";
  return failed;
}

}  // namespace kgt::accept
