#pragma once

// Shared test helpers and independent oracles. The oracles only use data
// accessors, never the library algorithms they are checking.

#include <cstdint>
#include <random>
#include <vector>

#include "kgt/words.hpp"

namespace kgt_test {

inline constexpr std::uint64_t kSeed = 1234567891;

// expand a run-length word into signed single letters: +/-(gen+1)
inline std::vector<int> expand_letters(const kgt::words::Word& w) {
  std::vector<int> out;
  for (const auto& l : w.letters()) {
    std::int64_t reps = l.exp < 0 ? -l.exp : l.exp;
    for (std::int64_t i = 0; i < reps; ++i) out.push_back(l.exp > 0 ? l.gen + 1 : -(l.gen + 1));
  }
  return out;
}

// letter-by-letter stack reduction
inline std::vector<int> naive_reduce(const std::vector<int>& raw) {
  std::vector<int> st;
  for (int x : raw) {
    if (!st.empty() && st.back() == -x)
      st.pop_back();
    else
      st.push_back(x);
  }
  return st;
}

// brute-force free-group conjugacy: cyclically reduce letter lists, then try
// every rotation
inline bool conjugate_oracle(const kgt::words::Word& u, const kgt::words::Word& v) {
  auto a = naive_reduce(expand_letters(u));
  auto b = naive_reduce(expand_letters(v));
  auto strip = [](std::vector<int>& x) {
    while (x.size() >= 2 && x.front() == -x.back()) {
      x.erase(x.begin());
      x.pop_back();
    }
  };
  strip(a);
  strip(b);
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t r = 0; r < a.size(); ++r) {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) ok = a[(r + i) % a.size()] == b[i];
    if (ok) return true;
  }
  return false;
}

struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed = kSeed) : engine(seed) {}
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine);
  }
};

inline kgt::words::Word random_word(const kgt::words::AlphabetRef& a, Rng& rng,
                                    int max_blocks = 8, int max_exp = 3) {
  std::vector<kgt::words::Letter> raw;
  std::int64_t blocks = rng.uniform(0, max_blocks);
  for (std::int64_t i = 0; i < blocks; ++i)
    raw.push_back(
        {static_cast<int>(rng.uniform(0, a->size() - 1)), rng.uniform(-max_exp, max_exp)});
  return kgt::words::Word::reduce(a, raw);
}

}  // namespace kgt_test
