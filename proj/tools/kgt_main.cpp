// kgt - compute with cable knot groups: normal forms, killer certificates,
// coset enumeration, presentation builders and the inequivalence analysis.
//
// Exit codes: 0 success / certified; 1 refuted or failed check;
//             2 usage or input error; 3 inconclusive (enumeration overflow).

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "kgt/acceptance.hpp"
#include "kgt/cable_space.hpp"
#include "kgt/coset_enum.hpp"
#include "kgt/error.hpp"
#include "kgt/fpres.hpp"
#include "kgt/inequiv.hpp"
#include "kgt/knots.hpp"
#include "kgt/words.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;

std::int64_t default_max_cosets() {
  if (const char* env = std::getenv("KGT_MAX_COSETS")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return v;
    std::cerr << "warning: ignoring invalid KGT_MAX_COSETS\n";
  }
  return 1'000'000;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

struct Args {
  std::int64_t m = 0, l = 1, k = 1, d = 0;
  int n = 2;
  std::int64_t max_cosets = default_max_cosets();
  std::uint64_t seed = kgt::accept::kDefaultSeed;
  std::string pres_file, out_file, cert_file, check_file, transcript_file, spec, l_range = "1..4";
  std::vector<std::string> kill_words;
  std::vector<std::string> element_tokens;
  std::string suite_name;
};

int run_nf(const Args& a) {
  auto params = kgt::cable::make_params(a.m, a.n);
  std::string text;
  for (const auto& t : a.element_tokens) {
    if (!text.empty()) text += ' ';
    text += t;
  }
  auto e = kgt::cable::parse_element(text, params);
  std::cout << kgt::cable::format_element(e, params) << '\n';
  return kExitOk;
}

int run_claim1(const Args& a, bool have_params) {
  if (!a.check_file.empty()) {
    auto cert = kgt::cable::parse_certificate(read_file(a.check_file));
    auto check = kgt::cable::verify_certificate(cert);
    auto m1 = kgt::cable::companion_meridian(cert.params);
    if (check.ok && cert.target == m1) {
      std::cout << "check ok\n";
      return kExitOk;
    }
    if (!(cert.target == m1))
      std::cout << "check FAILED: target is not the companion meridian\n";
    else
      std::cout << "check FAILED: residual "
                << kgt::cable::format_element(check.residual, cert.params) << '\n';
    return kExitRefuted;
  }

  if (!have_params)
    throw kgt::ParseError("claim1 requires --m, --n and --l unless checking a certificate");
  auto params = kgt::cable::make_params(a.m, a.n);
  auto cert = kgt::cable::killer_certificate(a.l, params);
  std::string text = kgt::cable::format_certificate(cert);
  if (!a.cert_file.empty())
    write_file(a.cert_file, text);
  else
    std::cout << text;
  auto check = kgt::cable::verify_certificate(cert);
  if (!check.ok) {
    std::cout << "check FAILED: residual " << kgt::cable::format_element(check.residual, params)
              << '\n';
    return kExitRefuted;
  }
  std::cout << "check ok\n";
  return kExitOk;
}

int run_quotient(const Args& a) {
  auto pres = kgt::fpres::parse_presentation(read_file(a.pres_file));
  std::vector<kgt::words::Word> kill;
  for (const auto& w : a.kill_words) kill.push_back(kgt::words::parse_word(pres.alphabet, w));

  kgt::tc::Options opt;
  opt.max_cosets = a.max_cosets;
  std::ofstream transcript;
  if (!a.transcript_file.empty()) {
    transcript.open(a.transcript_file, std::ios::binary);
    if (!transcript) throw std::runtime_error("cannot write file: " + a.transcript_file);
    opt.transcript = &transcript;
  }
  auto r = kgt::tc::is_trivial_quotient(pres, kill, opt);
  if (r.verdict == kgt::tc::Certainty::Inconclusive) {
    std::cout << "overflow " << a.max_cosets << '\n';
    return kExitInconclusive;
  }
  std::cout << "index " << r.index << '\n';
  return r.index == 1 ? kExitOk : kExitRefuted;
}

int run_make_pres(const Args& a) {
  auto spec = kgt::knots::KnotSpec::parse(a.spec);
  kgt::knots::BuildOptions bo;
  bo.d = a.d;
  bo.max_cosets = a.max_cosets;
  auto built = kgt::knots::build(spec, bo);
  std::string text = kgt::fpres::format_presentation(built.presentation);
  if (a.out_file.empty())
    std::cout << text;
  else
    write_file(a.out_file, text);
  return kExitOk;
}

int run_killers(const Args& a) {
  auto range_sep = a.l_range.find("..");
  if (range_sep == std::string::npos)
    throw kgt::ParseError("--l-range expects the form A..B");
  std::int64_t lo = std::stoll(a.l_range.substr(0, range_sep));
  std::int64_t hi = std::stoll(a.l_range.substr(range_sep + 2));
  if (lo < 1 || hi < lo) throw kgt::ParseError("--l-range expects 1 <= A <= B");

  auto companion_spec = kgt::knots::KnotSpec::parse(a.spec);
  auto spec = kgt::knots::KnotSpec::cable(a.m, a.n, companion_spec);
  kgt::knots::BuildOptions bo;
  bo.d = a.d;
  bo.max_cosets = a.max_cosets;
  bo.named_killers = static_cast<int>(hi);
  auto built = kgt::knots::build(spec, bo);

  kgt::tc::Options opt;
  opt.max_cosets = a.max_cosets;
  bool any_refuted = false, any_inconclusive = false;
  for (std::int64_t l = lo; l <= hi; ++l) {
    auto w = built.presentation.named.at("killer." + std::to_string(l));
    auto r = kgt::knots::killer_test(built.presentation, w, opt);
    std::cout << "l=" << l << ' ' << kgt::tc::to_string(r.verdict) << '\n';
    any_refuted |= r.verdict == kgt::tc::Certainty::Refuted;
    any_inconclusive |= r.verdict == kgt::tc::Certainty::Inconclusive;
  }
  if (any_inconclusive) return kExitInconclusive;
  return any_refuted ? kExitRefuted : kExitOk;
}

int run_inequiv(const Args& a) {
  auto params = kgt::cable::make_params(a.m, a.n);
  auto r = kgt::inequiv::inequivalence_verdict(a.k, a.l, params);
  std::cout << kgt::inequiv::format_report(r);
  return r.verdict == kgt::inequiv::Verdict::CertifiedInequivalent ? kExitOk : kExitRefuted;
}

int run_h1(const Args& a) {
  auto pres = kgt::fpres::parse_presentation(read_file(a.pres_file));
  auto h1 = kgt::fpres::h1_invariants(pres);
  std::cout << "betti " << h1.betti << '\n';
  std::cout << "torsion";
  for (auto d : h1.torsion) std::cout << ' ' << d;
  std::cout << '\n';
  return kExitOk;
}

int run_suite(const Args& a) {
  if (a.suite_name != "acceptance") throw kgt::ParseError("unknown suite: " + a.suite_name);
  int failed = kgt::accept::run_all(std::cout, a.seed);
  return failed == 0 ? kExitOk : kExitRefuted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kgt - cable knot group computations"};
  app.require_subcommand(1);
  Args a;

  auto* nf = app.add_subcommand("nf", "normal form w * t^z of a cable space element");
  nf->add_option("--m", a.m, "cable parameter m")->required();
  nf->add_option("--n", a.n, "cable parameter n (strand count)")->required();
  nf->add_option("element", a.element_tokens, "word over x1..xn,t or `<word> ; t^<z>`")
      ->required()
      ->expected(-1);

  auto* claim1 = app.add_subcommand(
      "claim1", "emit or check the conjugate-product certificate for the killer g_l");
  claim1->add_option("--m", a.m, "cable parameter m");
  claim1->add_option("--n", a.n, "cable parameter n");
  claim1->add_option("--l", a.l, "killer index l >= 1");
  claim1->add_option("--emit-cert", a.cert_file, "write the certificate to a file");
  claim1->add_option("--check-cert", a.check_file, "verify a certificate file");

  auto* quotient =
      app.add_subcommand("quotient", "coset enumeration of a presentation quotient");
  quotient->add_option("--pres", a.pres_file, "presentation file")->required();
  quotient->add_option("--kill", a.kill_words, "words to kill (normal closure)");
  quotient->add_option("--max-cosets", a.max_cosets, "definition budget");
  quotient->add_option("--transcript", a.transcript_file, "write the enumeration transcript");

  auto* makepres = app.add_subcommand("make-pres", "build a knot group presentation");
  makepres->add_option("--spec", a.spec, "knot spec, e.g. `cable(3,2; torus(2,3))`")->required();
  makepres->add_option("--d", a.d, "longitude calibration integer");
  makepres->add_option("--max-cosets", a.max_cosets, "budget for construction checks");
  makepres->add_option("-o,--out", a.out_file, "output file (stdout if omitted)");

  auto* killers = app.add_subcommand(
      "killers", "build the (m,n)-cable about a companion and test the killers g_l");
  killers->add_option("--spec", a.spec, "companion knot spec")->required();
  killers->add_option("--m", a.m, "cable parameter m")->required();
  killers->add_option("--n", a.n, "cable parameter n")->required();
  killers->add_option("--l-range", a.l_range, "killer indices A..B (default 1..4)");
  killers->add_option("--d", a.d, "longitude calibration integer");
  killers->add_option("--max-cosets", a.max_cosets, "definition budget");

  auto* ineq = app.add_subcommand("inequiv", "inequivalence case analysis for g_k vs g_l");
  ineq->add_option("--m", a.m, "cable parameter m")->required();
  ineq->add_option("--n", a.n, "cable parameter n")->required();
  ineq->add_option("--k", a.k, "killer index k")->required();
  ineq->add_option("--l", a.l, "killer index l")->required();

  auto* h1 = app.add_subcommand("h1", "H1 invariants of a presentation");
  h1->add_option("--pres", a.pres_file, "presentation file")->required();

  auto* suite = app.add_subcommand("suite", "run a named verification suite");
  suite->add_option("name", a.suite_name, "suite name (acceptance)")->required();
  suite->add_option("--seed", a.seed, "seed for the randomized property suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (nf->parsed()) return run_nf(a);
    if (claim1->parsed())
      return run_claim1(a, claim1->count("--m") && claim1->count("--n") && claim1->count("--l"));
    if (quotient->parsed()) return run_quotient(a);
    if (makepres->parsed()) return run_make_pres(a);
    if (killers->parsed()) return run_killers(a);
    if (ineq->parsed()) return run_inequiv(a);
    if (h1->parsed()) return run_h1(a);
    if (suite->parsed()) return run_suite(a);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
