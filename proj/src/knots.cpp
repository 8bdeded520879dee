#include "kgt/knots.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "kgt/error.hpp"

namespace kgt::knots {

using words::checked_add;
using words::checked_mul;
using words::checked_neg;
using words::Letter;
using words::Word;

namespace {

std::int64_t math_mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

// rebuild w over `target`, renaming every generator with `prefix`
Word transplant(const Word& w, const words::AlphabetRef& target, const std::string& prefix) {
  std::vector<Letter> ls;
  ls.reserve(w.letters().size());
  for (const auto& l : w.letters()) {
    auto idx = target->find(prefix + w.alphabet()->name(l.gen));
    if (!idx) throw std::invalid_argument("generator missing from target alphabet");
    ls.push_back({*idx, l.exp});
  }
  return Word::reduce(target, ls);
}

fpres::Presentation rename_into(const fpres::Presentation& p, const words::AlphabetRef& target,
                                const std::string& prefix) {
  fpres::Presentation out;
  out.alphabet = target;
  for (const auto& r : p.relators) out.relators.push_back(transplant(r, target, prefix));
  for (const auto& [label, w] : p.named) out.named.emplace(prefix + label, transplant(w, target, prefix));
  return out;
}

// the three peripheral-pair checks plus H1 = Z of the presentation itself
void check_built(const BuiltKnot& k, const BuildOptions& opt, const char* what) {
  const auto& p = k.presentation;
  if (!(fpres::h1_invariants(p) == fpres::H1{1, {}}))
    throw CheckError(std::string(what) + ": H1 is not Z");

  fpres::Presentation augmented{p.alphabet, p.relators, {}};
  augmented.relators.push_back(k.peripheral.meridian);
  if (!fpres::h1_invariants(augmented).trivial())
    throw CheckError(std::string(what) + ": meridian does not generate H1");

  if (!fpres::in_row_lattice(fpres::relation_matrix(p), words::ab_vector(k.peripheral.longitude)))
    throw CheckError(std::string(what) + ": longitude is not null-homologous");

  tc::Options tco;
  tco.max_cosets = opt.max_cosets;
  std::vector<Word> kill{k.peripheral.meridian};
  auto q = tc::is_trivial_quotient(p, kill, tco);
  if (q.verdict != tc::Certainty::Certified)
    throw CheckError(std::string(what) + ": meridian quotient is not certified trivial");
}

}  // namespace

KnotSpec KnotSpec::torus(std::int64_t p, std::int64_t q) {
  if (p < 2 || q < 2 || std::gcd(p, q) != 1)
    throw std::invalid_argument("torus knot needs coprime p, q >= 2");
  KnotSpec s;
  s.kind_ = Kind::Torus;
  s.p_ = p;
  s.q_ = q;
  return s;
}

KnotSpec KnotSpec::cable(std::int64_t m, int n, KnotSpec companion) {
  if (n < 2 || std::gcd(math_mod(m, n), static_cast<std::int64_t>(n)) != 1)
    throw std::invalid_argument("cable knot needs n >= 2 and gcd(m, n) = 1");
  KnotSpec s;
  s.kind_ = Kind::Cable;
  s.m_ = m;
  s.n_ = n;
  s.children_.push_back(std::move(companion));
  return s;
}

KnotSpec KnotSpec::sum(std::vector<KnotSpec> parts) {
  if (parts.size() < 2) throw std::invalid_argument("connected sum needs at least two parts");
  KnotSpec s;
  s.kind_ = Kind::Sum;
  s.children_ = std::move(parts);
  return s;
}

namespace {

struct SpecParser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, 0, static_cast<int>(pos) + 1);
  }
  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c) fail(std::string("expected `") + c + "`");
    ++pos;
  }
  bool peek(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }
  std::int64_t integer() {
    skip_ws();
    std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected an integer");
    try {
      return std::stoll(std::string(text.substr(start, pos - start)));
    } catch (const std::exception&) {
      fail("integer out of range");
    }
  }
  std::string word() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
    return std::string(text.substr(start, pos - start));
  }

  KnotSpec spec() {
    std::string head = word();
    if (head == "torus") {
      expect('(');
      std::int64_t p = integer();
      expect(',');
      std::int64_t q = integer();
      expect(')');
      return KnotSpec::torus(p, q);
    }
    if (head == "cable") {
      expect('(');
      std::int64_t m = integer();
      expect(',');
      std::int64_t n = integer();
      expect(';');
      KnotSpec companion = spec();
      expect(')');
      if (n < 2 || n > 1'000'000) fail("cable strand count out of range");
      return KnotSpec::cable(m, static_cast<int>(n), std::move(companion));
    }
    if (head == "sum") {
      expect('(');
      std::vector<KnotSpec> parts;
      parts.push_back(spec());
      while (peek(',')) {
        expect(',');
        parts.push_back(spec());
      }
      expect(')');
      return KnotSpec::sum(std::move(parts));
    }
    fail("expected `torus`, `cable` or `sum`");
  }
};

}  // namespace

KnotSpec KnotSpec::parse(std::string_view text) {
  SpecParser sp{text};
  KnotSpec s = sp.spec();
  sp.skip_ws();
  if (sp.pos != text.size()) sp.fail("trailing input after knot spec");
  return s;
}

std::string KnotSpec::str() const {
  switch (kind_) {
    case Kind::Torus:
      return "torus(" + std::to_string(p_) + "," + std::to_string(q_) + ")";
    case Kind::Cable:
      return "cable(" + std::to_string(m_) + "," + std::to_string(n_) + "; " +
             children_[0].str() + ")";
    case Kind::Sum: {
      std::string out = "sum(";
      for (std::size_t i = 0; i < children_.size(); ++i) {
        if (i > 0) out += ", ";
        out += children_[i].str();
      }
      return out + ")";
    }
  }
  return {};
}

BuiltKnot torus_presentation(std::int64_t p, std::int64_t q, const BuildOptions& opt) {
  if (p < 2 || q < 2 || std::gcd(p, q) != 1)
    throw std::invalid_argument("torus knot needs coprime p, q >= 2");
  if (checked_mul(p, q) > 100'000) throw std::invalid_argument("torus parameters too large");

  auto alpha = words::Alphabet::make({"a", "b"});
  BuiltKnot k;
  k.presentation.alphabet = alpha;
  std::vector<Letter> rel{{0, p}, {1, checked_neg(q)}};
  k.presentation.relators.push_back(Word::reduce(alpha, rel));

  // p*s - q*r = 1 with the unique 0 < s < q, 0 < r < p
  std::int64_t s = 0;
  for (std::int64_t c = 1; c < q; ++c)
    if (math_mod(p * c, q) == 1) {
      s = c;
      break;
    }
  std::int64_t r = (checked_mul(p, s) - 1) / q;

  std::vector<Letter> mer{{0, checked_neg(r)}, {1, s}};
  Word meridian = Word::reduce(alpha, mer);
  Word longitude = words::multiply(Word::generator(alpha, 0, p),
                                   words::power(meridian, checked_neg(checked_mul(p, q))));
  k.peripheral = {meridian, longitude};
  k.presentation.named.emplace("meridian", meridian);
  k.presentation.named.emplace("longitude", longitude);

  check_built(k, opt, "torus presentation");
  return k;
}

BuiltKnot cable_presentation(std::int64_t m, int n, const BuiltKnot& companion,
                             const BuildOptions& opt) {
  cable::CableParams params = cable::make_params(m, n);

  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  names.push_back("t");
  const auto& calpha = companion.presentation.alphabet;
  for (int g = 0; g < calpha->size(); ++g) names.push_back("c." + calpha->name(g));
  auto alpha = words::Alphabet::make(names);
  const int t = n;

  BuiltKnot k;
  k.presentation.alphabet = alpha;

  // t x_i t^-1 = x_sigma(i)
  for (int i = 1; i <= n; ++i) {
    std::vector<Letter> rel{{t, 1}, {i - 1, 1}, {t, -1}, {cable::shift(i, 1, params) - 1, -1}};
    k.presentation.relators.push_back(Word::reduce(alpha, rel));
  }

  fpres::Presentation comp = rename_into(companion.presentation, alpha, "c.");
  for (const auto& rel : comp.relators) k.presentation.relators.push_back(rel);

  Word mu_b = transplant(companion.peripheral.meridian, alpha, "c.");
  Word lambda_b = transplant(companion.peripheral.longitude, alpha, "c.");

  // meridian gluing: x1...xn = companion meridian
  std::vector<Letter> m1;
  for (int i = 0; i < n; ++i) m1.push_back({i, 1});
  Word m1_word = Word::reduce(alpha, m1);
  k.presentation.relators.push_back(words::multiply(m1_word, words::invert(mu_b)));

  // longitude gluing: (x1...x_mbar) t = lambda_B * mu_B^d
  std::vector<Letter> la;
  for (int i = 0; i < params.sigma_shift; ++i) la.push_back({i, 1});
  la.push_back({t, 1});
  Word lambda_a = Word::reduce(alpha, la);
  Word glue = words::multiply(lambda_b, words::power(mu_b, opt.d));
  k.presentation.relators.push_back(words::multiply(lambda_a, words::invert(glue)));

  Word meridian = Word::generator(alpha, 0);

  // longitude t^n x1^-c, with c fixed by null-homology: both images are read
  // off in the free part of H1 (= Z, verified by check_built below)
  fpres::IntMatrix rm = fpres::relation_matrix(k.presentation);
  std::vector<std::int64_t> e_t(static_cast<std::size_t>(alpha->size()), 0);
  e_t[static_cast<std::size_t>(t)] = 1;
  std::vector<std::int64_t> e_x1(static_cast<std::size_t>(alpha->size()), 0);
  e_x1[0] = 1;
  auto qi_t = fpres::quotient_image(rm, e_t);
  auto qi_x = fpres::quotient_image(rm, e_x1);
  if (qi_t.free_coords.size() != 1 || qi_x.free_coords.size() != 1 ||
      (qi_x.free_coords[0] != 1 && qi_x.free_coords[0] != -1))
    throw CheckError("cable presentation: meridian image does not generate the free part of H1");
  std::int64_t c = checked_mul(static_cast<std::int64_t>(n), qi_t.free_coords[0]) * qi_x.free_coords[0];
  std::vector<Letter> lo{{t, n}, {0, checked_neg(c)}};
  Word longitude = Word::reduce(alpha, lo);

  k.peripheral = {meridian, longitude};
  k.presentation.named.emplace("meridian", meridian);
  k.presentation.named.emplace("longitude", longitude);
  for (int l = 1; l <= opt.named_killers; ++l) {
    std::vector<Letter> g{{0, l}, {1, -(l - 1)}};
    k.presentation.named.emplace("killer." + std::to_string(l), Word::reduce(alpha, g));
  }
  for (const auto& [label, w] : comp.named) k.presentation.named.emplace(label, w);

  check_built(k, opt, "cable presentation");
  return k;
}

BuiltKnot sum_presentation(const std::vector<BuiltKnot>& parts, const BuildOptions& opt) {
  if (parts.size() < 2) throw std::invalid_argument("connected sum needs at least two parts");

  std::vector<std::string> names;
  std::vector<std::string> prefixes;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::string prefix = "p" + std::to_string(i + 1) + ".";
    prefixes.push_back(prefix);
    const auto& pa = parts[i].presentation.alphabet;
    for (int g = 0; g < pa->size(); ++g) names.push_back(prefix + pa->name(g));
  }
  auto alpha = words::Alphabet::make(names);

  BuiltKnot k;
  k.presentation.alphabet = alpha;

  std::vector<Word> meridians, longitudes;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    fpres::Presentation renamed = rename_into(parts[i].presentation, alpha, prefixes[i]);
    for (const auto& rel : renamed.relators) k.presentation.relators.push_back(rel);
    for (const auto& [label, w] : renamed.named) k.presentation.named.emplace(label, w);
    meridians.push_back(transplant(parts[i].peripheral.meridian, alpha, prefixes[i]));
    longitudes.push_back(transplant(parts[i].peripheral.longitude, alpha, prefixes[i]));
  }
  // all part meridians are identified
  for (std::size_t i = 1; i < parts.size(); ++i)
    k.presentation.relators.push_back(words::multiply(meridians[0], words::invert(meridians[i])));

  Word longitude(alpha);
  for (const auto& l : longitudes) longitude = words::multiply(longitude, l);
  k.peripheral = {meridians[0], longitude};
  k.presentation.named.emplace("meridian", meridians[0]);
  k.presentation.named.emplace("longitude", longitude);

  check_built(k, opt, "sum presentation");
  return k;
}

BuiltKnot build(const KnotSpec& spec, const BuildOptions& opt) {
  switch (spec.kind()) {
    case KnotSpec::Kind::Torus:
      return torus_presentation(spec.p(), spec.q(), opt);
    case KnotSpec::Kind::Cable:
      return cable_presentation(spec.m(), spec.n(), build(spec.companion(), opt), opt);
    case KnotSpec::Kind::Sum: {
      std::vector<BuiltKnot> parts;
      for (const auto& part : spec.parts()) parts.push_back(build(part, opt));
      return sum_presentation(parts, opt);
    }
  }
  throw std::logic_error("unreachable");
}

TorusNormalForm torus_normal_form(const words::Word& w, std::int64_t p, std::int64_t q) {
  if (p < 2 || q < 2) throw std::invalid_argument("torus normal form needs p, q >= 2");
  if (w.alphabet()->size() != 2) throw std::invalid_argument("word must be over a 2-letter alphabet");
  TorusNormalForm nf;
  auto& st = nf.syllables;
  for (const auto& l : w.letters()) {
    std::int64_t e = l.exp;
    if (!st.empty() && st.back().gen == l.gen) {
      e = checked_add(st.back().exp, e);
      st.pop_back();
    }
    std::int64_t mod = l.gen == 0 ? p : q;
    std::int64_t r = math_mod(e, mod);
    nf.center = checked_add(nf.center, (e - r) / mod);
    if (r != 0) st.push_back({l.gen, r});
    // a vanished syllable exposes the previous one; later letters merge with
    // it through the same branch, so the stack stays alternating
  }
  return nf;
}

KillerResult killer_test(const fpres::Presentation& p, const words::Word& w,
                         const tc::Options& options) {
  if (!(*w.alphabet() == *p.alphabet)) throw std::invalid_argument("word over wrong alphabet");
  KillerResult out;

  fpres::Presentation augmented{p.alphabet, p.relators, {}};
  if (!w.is_identity()) augmented.relators.push_back(w);
  out.h1_augmented = fpres::h1_invariants(augmented);
  if (!out.h1_augmented.trivial()) {
    // the quotient has nontrivial abelianization, hence is nontrivial
    out.verdict = tc::Certainty::Refuted;
    out.refuted_by_h1 = true;
    return out;
  }

  std::vector<Word> kill{w};
  out.quotient = tc::is_trivial_quotient(p, kill, options);
  out.verdict = out.quotient->verdict;
  return out;
}

}  // namespace kgt::knots
