#include "kgt/cable_space.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "kgt/error.hpp"

namespace kgt::cable {

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

// inverse of a mod n, a in {1,...,n-1} coprime to n; result in {1,...,n-1}
int mod_inverse(int a, int n) {
  std::int64_t t = 0, newt = 1, r = n, newr = a;
  while (newr != 0) {
    std::int64_t q = r / newr;
    std::int64_t tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) throw std::invalid_argument("not invertible");
  return static_cast<int>(math_mod(t, n));
}

void require_params(const CableElement& a, const CableParams& p) {
  if (!(*a.w.alphabet() == *p.x_alphabet)) throw std::invalid_argument("cable params mismatch");
}

Word sigma_word(const Word& w, std::int64_t z, const CableParams& p) {
  std::vector<Letter> ls;
  ls.reserve(w.letters().size());
  for (const auto& l : w.letters()) ls.push_back({shift(l.gen + 1, z, p) - 1, l.exp});
  // sigma is injective on indices, so the run-length form stays reduced
  return Word::reduce(w.alphabet(), ls);
}

}  // namespace

CableParams make_params(std::int64_t m, int n) {
  if (n < 2) throw std::invalid_argument("cable parameter n must be >= 2");
  int mbar = static_cast<int>(math_mod(m, n));
  if (std::gcd(static_cast<std::int64_t>(mbar), static_cast<std::int64_t>(n)) != 1)
    throw std::invalid_argument("cable parameters m, n must be coprime");
  CableParams p;
  p.m = m;
  p.n = n;
  p.sigma_shift = mbar;
  p.s = mod_inverse(mbar, n);
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  p.x_alphabet = words::Alphabet::make(names);
  names.push_back("t");
  p.xt_alphabet = words::Alphabet::make(names);
  p.t_index = n;
  return p;
}

int shift(int i, std::int64_t z, const CableParams& p) {
  if (i < 1 || i > p.n) throw std::invalid_argument("generator index out of range");
  std::int64_t zr = math_mod(z, p.n);
  return static_cast<int>((i - 1 + zr * p.sigma_shift) % p.n) + 1;
}

CableElement identity(const CableParams& p) { return {Word(p.x_alphabet), 0}; }

CableElement mul(const CableElement& a, const CableElement& b, const CableParams& p) {
  require_params(a, p);
  require_params(b, p);
  return {words::multiply(a.w, sigma_word(b.w, a.z, p)), checked_add(a.z, b.z)};
}

CableElement inv(const CableElement& a, const CableParams& p) {
  require_params(a, p);
  return {sigma_word(words::invert(a.w), checked_neg(a.z), p), checked_neg(a.z)};
}

CableElement power(const CableElement& a, std::int64_t k, const CableParams& p) {
  CableElement base = k < 0 ? inv(a, p) : a;
  std::int64_t reps = k < 0 ? checked_neg(k) : k;
  CableElement acc = identity(p);
  while (reps > 0) {
    if (reps & 1) acc = mul(acc, base, p);
    reps >>= 1;
    if (reps > 0) base = mul(base, base, p);
  }
  return acc;
}

CableElement from_word(const words::Word& xt_word, const CableParams& p) {
  if (!(*xt_word.alphabet() == *p.xt_alphabet))
    throw std::invalid_argument("word is not over the x/t alphabet");
  CableElement acc = identity(p);
  for (const auto& l : xt_word.letters()) {
    if (l.gen == p.t_index)
      acc = mul(acc, {Word(p.x_alphabet), l.exp}, p);
    else
      acc = mul(acc, {Word::generator(p.x_alphabet, l.gen, l.exp), 0}, p);
  }
  return acc;
}

words::Word to_word(const CableElement& a, const CableParams& p) {
  require_params(a, p);
  std::vector<Letter> ls(a.w.letters());
  if (a.z != 0) ls.push_back({p.t_index, a.z});
  return Word::reduce(p.xt_alphabet, ls);
}

CableElement killer_element(std::int64_t l, const CableParams& p) {
  if (l < 1) throw std::invalid_argument("killer index l must be >= 1");
  std::vector<Letter> ls{{0, l}};
  if (l > 1) ls.push_back({1, checked_neg(l - 1)});
  return {Word::reduce(p.x_alphabet, ls), 0};
}

CableElement companion_meridian(const CableParams& p) {
  std::vector<Letter> ls;
  for (int i = 0; i < p.n; ++i) ls.push_back({i, 1});
  return {Word::reduce(p.x_alphabet, ls), 0};
}

CableElement cable_meridian(const CableParams& p) { return {Word::generator(p.x_alphabet, 0), 0}; }

CableElement boundary_longitude(const CableParams& p) {
  std::vector<Letter> ls;
  for (int i = 0; i < p.sigma_shift; ++i) ls.push_back({i, 1});
  return {Word::reduce(p.x_alphabet, ls), 1};
}

AbImage ab_image(const CableElement& a) {
  AbImage im;
  for (const auto& l : a.w.letters()) im.x_degree = checked_add(im.x_degree, l.exp);
  im.t_degree = a.z;
  return im;
}

KillerCertificate killer_certificate(std::int64_t l, const CableParams& p) {
  if (l < 1) throw std::invalid_argument("killer index l must be >= 1");
  KillerCertificate c;
  c.params = p;
  c.l = l;
  Word head = l > 1 ? Word::generator(p.x_alphabet, 0, checked_neg(l - 1)) : Word(p.x_alphabet);
  for (int i = 0; i < p.n; ++i)
    c.conjugators.push_back({head, checked_mul(i, p.s)});
  c.target = companion_meridian(p);
  return c;
}

CertificateCheck verify_certificate(const KillerCertificate& c) {
  const CableParams& p = c.params;
  if (static_cast<int>(c.conjugators.size()) != p.n)
    throw std::invalid_argument("certificate must carry exactly n conjugators");
  CableElement g = killer_element(c.l, p);
  CableElement prod = identity(p);
  for (const auto& u : c.conjugators)
    prod = mul(prod, mul(mul(u, g, p), inv(u, p), p), p);
  CertificateCheck out;
  out.residual = mul(prod, inv(c.target, p), p);
  out.ok = out.residual.is_identity();
  return out;
}

ConstrainedImage constrained_image(std::int64_t l, std::int64_t z2, int eta, int eps,
                                   const CableParams& p) {
  if (l < 1) throw std::invalid_argument("killer index l must be >= 1");
  if (eta != 1 && eta != -1) throw std::invalid_argument("eta must be +1 or -1");
  if (eps != 1 && eps != -1) throw std::invalid_argument("eps must be +1 or -1");
  ConstrainedImage out;
  out.i = shift(1, z2, p);
  out.j = shift(1, checked_add(z2, checked_mul(eta, p.s)), p);
  out.j_vacuous = (l == 1);
  if (out.i == out.j) throw CheckError("constrained image produced i == j");
  std::vector<Letter> ls{{out.i - 1, checked_mul(eps, l)}};
  if (l > 1) ls.push_back({out.j - 1, checked_mul(-eps, l - 1)});
  out.core = Word::reduce(p.x_alphabet, ls);
  return out;
}

std::string format_element(const CableElement& a, const CableParams& p) {
  require_params(a, p);
  return words::format_word(a.w) + " ; t^" + std::to_string(a.z);
}

CableElement parse_element(std::string_view text, const CableParams& p) {
  auto semi = text.find(';');
  if (semi == std::string_view::npos) return from_word(words::parse_word(p.xt_alphabet, text), p);
  Word w = words::parse_word(p.x_alphabet, text.substr(0, semi));
  // the t-part is `t`, `t^<z>` (z may be 0), or `1`
  std::string tpart(text.substr(semi + 1));
  std::istringstream in(tpart);
  std::string tok, extra;
  if (!(in >> tok) || (in >> extra))
    throw ParseError("expected a single `t^<z>` token after `;`");
  std::int64_t z = 0;
  if (tok == "t") {
    z = 1;
  } else if (tok == "1") {
    z = 0;
  } else if (tok.rfind("t^", 0) == 0) {
    std::size_t used = 0;
    try {
      z = std::stoll(tok.substr(2), &used);
    } catch (const std::exception&) {
      throw ParseError("malformed t-exponent in `" + tok + "`");
    }
    if (used != tok.size() - 2) throw ParseError("malformed t-exponent in `" + tok + "`");
  } else {
    throw ParseError("expected `t^<z>` after `;`, got `" + tok + "`");
  }
  return {w, z};
}

std::string format_certificate(const KillerCertificate& c) {
  std::ostringstream out;
  out << "cable " << c.params.m << ' ' << c.params.n << '\n';
  out << "killer " << c.l << '\n';
  out << "target " << words::format_word(to_word(c.target, c.params)) << '\n';
  for (const auto& u : c.conjugators)
    out << "conj " << words::format_word(to_word(u, c.params)) << '\n';
  return out.str();
}

KillerCertificate parse_certificate(std::string_view text) {
  std::vector<std::pair<int, std::string>> lines;  // (lineno, content)
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string line(text.substr(pos, eol - pos));
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
    if (!blank) lines.emplace_back(lineno, line);
    if (eol == text.size()) break;
    pos = eol + 1;
  }

  auto expect = [&](std::size_t idx, const std::string& kw) -> std::istringstream {
    if (idx >= lines.size()) throw ParseError("unexpected end of certificate, expected `" + kw + "`");
    std::istringstream in(lines[idx].second);
    std::string head;
    in >> head;
    if (head != kw)
      throw ParseError("expected `" + kw + "`, got `" + head + "`", lines[idx].first);
    return in;
  };

  std::int64_t m = 0, l = 0;
  int n = 0;
  {
    auto in = expect(0, "cable");
    if (!(in >> m >> n)) throw ParseError("malformed `cable` line", lines[0].first);
  }
  {
    auto in = expect(1, "killer");
    if (!(in >> l)) throw ParseError("malformed `killer` line", lines[1].first);
  }
  KillerCertificate c;
  c.params = make_params(m, n);
  c.l = l;
  {
    auto in = expect(2, "target");
    std::string restw;
    std::getline(in, restw);
    c.target = from_word(words::parse_word(c.params.xt_alphabet, restw), c.params);
  }
  for (int i = 0; i < n; ++i) {
    auto in = expect(3 + static_cast<std::size_t>(i), "conj");
    std::string restw;
    std::getline(in, restw);
    c.conjugators.push_back(from_word(words::parse_word(c.params.xt_alphabet, restw), c.params));
  }
  if (lines.size() > 3 + static_cast<std::size_t>(n))
    throw ParseError("trailing content after conjugators", lines[3 + static_cast<std::size_t>(n)].first);
  return c;
}

}  // namespace kgt::cable
