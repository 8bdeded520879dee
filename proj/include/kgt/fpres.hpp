#pragma once

// Finite presentations: data model, line-oriented file grammar, integer
// relation matrices, Smith normal form, and H1 invariants.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kgt/words.hpp"

namespace kgt::fpres {

struct Presentation {
  words::AlphabetRef alphabet;
  std::vector<words::Word> relators;           // freely reduced, nonempty
  std::map<std::string, words::Word> named;    // distinguished words by label

  // equality is syntactic: same generator order, same relator list
  friend bool operator==(const Presentation& a, const Presentation& b) {
    return *a.alphabet == *b.alphabet && a.relators == b.relators && a.named == b.named;
  }
};

// File grammar (line-oriented, `#` comments):
//   gens <name> <name> ...
//   rel <word>
//   name <label> <word>
// One `gens` line required first; any number of `rel`/`name` lines.
Presentation parse_presentation(std::string_view text);
std::string format_presentation(const Presentation& p);

struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> a;  // row-major

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}
  std::int64_t& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  std::int64_t at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
  static IntMatrix identity(int n);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

// entry (r, g) = exponent sum of generator g in relator r
IntMatrix relation_matrix(const Presentation& p);

struct SmithResult {
  std::vector<std::int64_t> factors;  // invariant factors d1 | d2 | ... | d_rank, all >= 1
  int rank = 0;
  IntMatrix right;   // cols x cols unimodular R with L*M*R diagonal; set iff requested
  bool has_right = false;
};

// Pivot strategy: smallest nonzero absolute value with full reduction.
// Entries are checked 64-bit; blow-up raises std::overflow_error.
SmithResult smith_normal_form(const IntMatrix& m, bool want_right = false);

struct H1 {
  std::int64_t betti = 0;
  std::vector<std::int64_t> torsion;  // invariant factors > 1
  friend bool operator==(const H1&, const H1&) = default;
  bool trivial() const { return betti == 0 && torsion.empty(); }
};

H1 h1_invariants(const Presentation& p);

// Coordinates of v in Z^cols / (row lattice of M): residues modulo the
// invariant factors plus the free coordinates.
struct QuotientImage {
  std::vector<std::int64_t> torsion_residues;  // length rank, residue in [0, d_i)
  std::vector<std::int64_t> free_coords;       // length cols - rank
  bool zero() const;
};
QuotientImage quotient_image(const IntMatrix& m, std::span<const std::int64_t> v);
bool in_row_lattice(const IntMatrix& m, std::span<const std::int64_t> v);

}  // namespace kgt::fpres
