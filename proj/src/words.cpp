#include "kgt/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <stdexcept>

#include "kgt/error.hpp"

namespace kgt::words {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

const AlphabetRef& require_same_alphabet(const Word& u, const Word& v) {
  require(u.alphabet() != nullptr && v.alphabet() != nullptr, "word without alphabet");
  if (u.alphabet() != v.alphabet() && !(*u.alphabet() == *v.alphabet()))
    throw std::invalid_argument("alphabet mismatch");
  return u.alphabet();
}

}  // namespace

Word::Word() {
  static const AlphabetRef empty = Alphabet::make({});
  alpha_ = empty;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in add");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in sub");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in mul");
  return r;
}

std::int64_t checked_neg(std::int64_t a) { return checked_sub(0, a); }

bool Alphabet::valid_name(std::string_view name) noexcept {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '.';
  });
}

AlphabetRef Alphabet::make(std::vector<std::string> names) {
  std::set<std::string_view> seen;
  for (const auto& n : names) {
    require(valid_name(n), "invalid generator name");
    require(seen.insert(n).second, "duplicate generator name");
  }
  return AlphabetRef(new Alphabet(std::move(names)));
}

const std::string& Alphabet::name(int gen) const {
  require(gen >= 0 && gen < size(), "generator index out of range");
  return names_[static_cast<std::size_t>(gen)];
}

std::optional<int> Alphabet::find(std::string_view name) const noexcept {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

Word Word::reduce(AlphabetRef alphabet, std::span<const Letter> raw) {
  require(alphabet != nullptr, "null alphabet");
  Word w(alphabet);
  auto& out = w.letters_;
  for (const Letter& l : raw) {
    require(l.gen >= 0 && l.gen < alphabet->size(), "invalid generator index");
    if (l.exp == 0) continue;
    if (!out.empty() && out.back().gen == l.gen) {
      std::int64_t merged = checked_add(out.back().exp, l.exp);
      out.pop_back();
      if (merged != 0) out.push_back({l.gen, merged});
      // a vanished run exposes the previous letter; the next input letter
      // merges with it through this same branch
    } else {
      out.push_back(l);
    }
  }
  return w;
}

Word Word::generator(AlphabetRef alphabet, int gen, std::int64_t exp) {
  Letter l{gen, exp};
  return reduce(std::move(alphabet), std::span<const Letter>(&l, 1));
}

std::int64_t Word::letter_length() const {
  std::int64_t n = 0;
  for (const Letter& l : letters_) n = checked_add(n, l.exp < 0 ? checked_neg(l.exp) : l.exp);
  return n;
}

bool operator==(const Word& u, const Word& v) {
  if (u.alpha_ != v.alpha_ && !(*u.alpha_ == *v.alpha_)) return false;
  return u.letters_ == v.letters_;
}

Word multiply(const Word& u, const Word& v) {
  AlphabetRef alpha = require_same_alphabet(u, v);
  Word w(alpha);
  w.letters_ = u.letters_;
  auto& out = w.letters_;
  // only the seam can cancel; the cascade is the same stack loop as reduce
  for (const Letter& l : v.letters_) {
    if (!out.empty() && out.back().gen == l.gen) {
      std::int64_t merged = checked_add(out.back().exp, l.exp);
      out.pop_back();
      if (merged != 0) out.push_back({l.gen, merged});
    } else {
      out.push_back(l);
    }
  }
  return w;
}

Word invert(const Word& u) {
  Word w(u.alphabet());
  w.letters_.reserve(u.letters_.size());
  for (auto it = u.letters_.rbegin(); it != u.letters_.rend(); ++it)
    w.letters_.push_back({it->gen, checked_neg(it->exp)});
  return w;
}

Word conjugate(const Word& u, const Word& g) { return multiply(multiply(g, u), invert(g)); }

Word power(const Word& u, std::int64_t k) {
  Word base = k < 0 ? invert(u) : u;
  std::int64_t reps = k < 0 ? checked_neg(k) : k;
  Word acc(u.alphabet());
  // binary powering; word length grows linearly in |k| anyway
  while (reps > 0) {
    if (reps & 1) acc = multiply(acc, base);
    reps >>= 1;
    if (reps > 0) base = multiply(base, base);
  }
  return acc;
}

CyclicReduction cyclic_reduce(const Word& u) {
  std::vector<Letter> core(u.letters());
  std::vector<Letter> conj;
  while (core.size() >= 2) {
    Letter& first = core.front();
    Letter& last = core.back();
    if (first.gen != last.gen) break;
    if ((first.exp > 0) == (last.exp > 0)) break;  // same sign: seam does not cancel
    std::int64_t fa = first.exp < 0 ? -first.exp : first.exp;
    std::int64_t la = last.exp < 0 ? -last.exp : last.exp;
    if (fa <= la) {
      conj.push_back(first);
      last.exp = checked_add(last.exp, first.exp);
      core.erase(core.begin());
      if (core.back().exp == 0) core.pop_back();
    } else {
      conj.push_back({last.gen, checked_neg(last.exp)});
      first.exp = checked_add(first.exp, last.exp);
      core.pop_back();
    }
  }
  CyclicReduction r{Word::reduce(u.alphabet(), core), Word::reduce(u.alphabet(), conj)};
  return r;
}

namespace {

// Rotate the leading run to the back until the first and last runs carry
// distinct generators (or one run remains). Returns the rotated core and h
// with core = h * rotated * h^-1. On a cyclically reduced input this is the
// unique block reading of the cyclic word that starts at a block boundary.
std::pair<std::vector<Letter>, Word> circular_normalize(const Word& core) {
  std::vector<Letter> blocks(core.letters());
  std::vector<Letter> h;
  while (blocks.size() >= 2 && blocks.front().gen == blocks.back().gen) {
    Letter first = blocks.front();
    blocks.erase(blocks.begin());
    blocks.back().exp = checked_add(blocks.back().exp, first.exp);  // same sign, cannot vanish
    h.push_back(first);
  }
  return {std::move(blocks), Word::reduce(core.alphabet(), h)};
}

}  // namespace

ConjugacyResult is_conjugate(const Word& u, const Word& v) {
  AlphabetRef alpha = require_same_alphabet(u, v);
  auto cu = cyclic_reduce(u);
  auto cv = cyclic_reduce(v);
  auto [bu, hu] = circular_normalize(cu.core);
  auto [bv, hv] = circular_normalize(cv.core);
  if (bu.size() != bv.size()) return {};

  Word gu = multiply(cu.conjugator, hu);
  Word gv = multiply(cv.conjugator, hv);

  auto finish = [&](const Word& rot) {
    // v = (gv * rot * gu^-1) u (...)^-1
    Word w = multiply(multiply(gv, rot), invert(gu));
    if (!(conjugate(u, w) == v)) throw CheckError("conjugacy witness failed verification");
    return ConjugacyResult{true, w};
  };

  const std::size_t n = bu.size();
  if (n == 0) return finish(Word(alpha));
  for (std::size_t r = 0; r < n; ++r) {
    bool match = true;
    for (std::size_t i = 0; i < n && match; ++i) match = bu[(r + i) % n] == bv[i];
    if (match) {
      // bv = p^-1 * bu * p with p the prefix of bu before the rotation point
      std::vector<Letter> prefix(bu.begin(), bu.begin() + static_cast<std::ptrdiff_t>(r));
      return finish(invert(Word::reduce(alpha, prefix)));
    }
  }
  return {};
}

AbVector ab_vector(const Word& u) {
  AbVector v(static_cast<std::size_t>(u.alphabet()->size()), 0);
  for (const Letter& l : u.letters())
    v[static_cast<std::size_t>(l.gen)] = checked_add(v[static_cast<std::size_t>(l.gen)], l.exp);
  return v;
}

std::string format_word(const Word& w) {
  if (w.is_identity()) return "1";
  std::string out;
  for (const Letter& l : w.letters()) {
    if (!out.empty()) out += ' ';
    out += w.alphabet()->name(l.gen);
    if (l.exp != 1) {
      out += '^';
      out += std::to_string(l.exp);
    }
  }
  return out;
}

Word parse_word(const AlphabetRef& alphabet, std::string_view text) {
  require(alphabet != nullptr, "null alphabet");
  std::vector<Letter> raw;
  std::size_t pos = 0;
  bool saw_one = false;
  int ntokens = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) break;
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    std::string_view tok = text.substr(start, pos - start);
    int col = static_cast<int>(start) + 1;
    ++ntokens;

    if (tok == "1") {
      saw_one = true;
      continue;
    }
    std::string_view name = tok;
    std::int64_t exp = 1;
    if (auto caret = tok.find('^'); caret != std::string_view::npos) {
      name = tok.substr(0, caret);
      std::string_view es = tok.substr(caret + 1);
      if (!es.empty() && es[0] == '+') es.remove_prefix(1);
      auto [p, ec] = std::from_chars(es.data(), es.data() + es.size(), exp);
      if (ec == std::errc::result_out_of_range)
        throw ParseError("exponent out of range in `" + std::string(tok) + "`", 0, col);
      if (ec != std::errc() || p != es.data() + es.size())
        throw ParseError("malformed exponent in `" + std::string(tok) + "`", 0, col);
      if (exp == 0) throw ParseError("zero exponent in `" + std::string(tok) + "`", 0, col);
    }
    auto gen = alphabet->find(name);
    if (!gen) throw ParseError("unknown generator `" + std::string(name) + "`", 0, col);
    raw.push_back({*gen, exp});
  }
  if (saw_one && ntokens > 1)
    throw ParseError("`1` (the empty word) cannot be mixed with generator tokens");
  return Word::reduce(alphabet, raw);
}

}  // namespace kgt::words
