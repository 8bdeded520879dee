#pragma once

// Exact arithmetic in finitely generated free groups: freely reduced words
// over a named alphabet, conjugation, cyclic reduction, the conjugacy
// decision with witnesses, and abelianization.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kgt::words {

class Alphabet;
using AlphabetRef = std::shared_ptr<const Alphabet>;

// Ordered list of distinct generator names. Immutable and shared by words;
// generator indices are positions in this list.
class Alphabet {
public:
  static AlphabetRef make(std::vector<std::string> names);

  int size() const noexcept { return static_cast<int>(names_.size()); }
  const std::string& name(int gen) const;
  std::optional<int> find(std::string_view name) const noexcept;

  bool operator==(const Alphabet& other) const noexcept { return names_ == other.names_; }

  // Valid names: [A-Za-z] followed by [A-Za-z0-9.]*. The dot admits the
  // part prefixes used when presentations are composed (`p1.a`).
  static bool valid_name(std::string_view name) noexcept;

private:
  explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {}
  std::vector<std::string> names_;
};

// Overflow-checked 64-bit arithmetic. Exponent arithmetic must never wrap
// silently; all throw std::overflow_error.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_sub(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_neg(std::int64_t a);

struct Letter {
  int gen = 0;
  std::int64_t exp = 0;  // nonzero in a reduced word
  friend bool operator==(const Letter&, const Letter&) = default;
};

// Freely reduced word in run-length form: adjacent letters carry distinct
// generators and no exponent is zero. The empty sequence is the identity.
class Word {
public:
  Word();  // identity over the empty alphabet
  explicit Word(AlphabetRef alphabet) : alpha_(std::move(alphabet)) {}

  // Free reduction of an arbitrary letter sequence (zero exponents dropped,
  // adjacent runs merged, cancellations cascaded).
  static Word reduce(AlphabetRef alphabet, std::span<const Letter> raw);
  static Word generator(AlphabetRef alphabet, int gen, std::int64_t exp = 1);

  const AlphabetRef& alphabet() const noexcept { return alpha_; }
  const std::vector<Letter>& letters() const noexcept { return letters_; }
  bool is_identity() const noexcept { return letters_.empty(); }
  std::int64_t letter_length() const;  // sum of |exp|

  friend bool operator==(const Word& u, const Word& v);

private:
  AlphabetRef alpha_;
  std::vector<Letter> letters_;

  friend Word multiply(const Word&, const Word&);
  friend Word invert(const Word&);
};

Word multiply(const Word& u, const Word& v);
Word invert(const Word& u);
Word conjugate(const Word& u, const Word& g);  // g u g^-1
Word power(const Word& u, std::int64_t k);

struct CyclicReduction {
  Word core;        // cyclically reduced
  Word conjugator;  // u = conjugator * core * conjugator^-1
};
CyclicReduction cyclic_reduce(const Word& u);

struct ConjugacyResult {
  bool conjugate = false;
  std::optional<Word> witness;  // witness * u * witness^-1 == v
};

// Exact free-group conjugacy: cyclically reduced cores must be rotations of
// one another as cyclic words. Handled at run-length block granularity, so
// large exponents are never expanded. The witness is canonical (least block
// rotation) and is re-verified before being returned.
ConjugacyResult is_conjugate(const Word& u, const Word& v);

using AbVector = std::vector<std::int64_t>;
AbVector ab_vector(const Word& u);  // exponent sum per generator

// Text form: whitespace-separated `name` or `name^k` tokens, k a nonzero
// decimal integer; the identity is spelled `1`.
std::string format_word(const Word& w);
Word parse_word(const AlphabetRef& alphabet, std::string_view text);

}  // namespace kgt::words
