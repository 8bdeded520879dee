#pragma once

// Todd-Coxeter coset enumeration (HLT strategy with coincidence processing
// via union-find), an independent table validator, and trivial-quotient
// certification.

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "kgt/fpres.hpp"
#include "kgt/words.hpp"

namespace kgt::tc {

// Felsch fills the first hole of the lowest coset and drains a deduction
// stack after every definition; it needs far fewer definitions on collapsing
// quotients. Hlt scans whole relators at each coset with periodic lookahead
// sweeps. Both share the coincidence machinery and produce identical indices.
enum class Strategy { Felsch, Hlt };

struct Options {
  std::int64_t max_cosets = 1'000'000;       // bound on cosets ever defined
  Strategy strategy = Strategy::Felsch;
  bool lookahead = true;                     // Hlt: periodic relator sweep without defining
  std::int64_t lookahead_interval = 10'000;  // Hlt: definitions between sweeps
  // Felsch: pending deductions beyond this are replaced by a full rescan
  std::int64_t deduction_stack_limit = 1'000'000;
  std::ostream* transcript = nullptr;        // `def`/`coinc` events plus final line
};

struct Stats {
  std::int64_t cosets_defined = 0;  // includes the initial coset
  std::int64_t coincidences = 0;
  friend bool operator==(const Stats&, const Stats&) = default;
};

// Complete, compacted table: rows are live cosets numbered 1..index (coset 1
// is the subgroup coset), columns alternate generator/inverse.
class CosetTable {
public:
  CosetTable() = default;
  CosetTable(int ngens, std::int64_t index, std::vector<std::int32_t> entries)
      : ngens_(ngens), index_(index), entries_(std::move(entries)) {}

  std::int64_t index() const noexcept { return index_; }
  int ngens() const noexcept { return ngens_; }
  int ncols() const noexcept { return 2 * ngens_; }

  static int col(int gen, bool inverse) { return 2 * gen + (inverse ? 1 : 0); }
  static int inverse_col(int c) { return c ^ 1; }

  std::int32_t at(std::int64_t coset, int c) const {
    return entries_[static_cast<std::size_t>(coset - 1) * ncols() + static_cast<std::size_t>(c)];
  }

  friend bool operator==(const CosetTable&, const CosetTable&) = default;

private:
  int ngens_ = 0;
  std::int64_t index_ = 0;
  std::vector<std::int32_t> entries_;
};

struct EnumResult {
  bool completed = false;
  std::int64_t index = 0;            // valid iff completed
  std::optional<CosetTable> table;   // present iff completed
  Stats stats;
  std::int64_t max_cosets = 0;
};

// Enumerates cosets of <subgroup_generators> in the group presented by p.
// Overflow (the max_cosets bound) is reported as a result, never an error.
// Deterministic: identical inputs yield identical tables and stats.
EnumResult enumerate(const fpres::Presentation& p,
                     std::span<const words::Word> subgroup_generators,
                     const Options& options = {});

struct ValidationResult {
  bool ok = false;
  std::string message;
};

// Re-checks a completed table without trusting the enumerator: column
// consistency, reachability from coset 1, closure of every relator at every
// coset, and subgroup generators fixing coset 1.
ValidationResult validate(const CosetTable& table, const fpres::Presentation& p,
                          std::span<const words::Word> subgroup_generators);

enum class Certainty { Certified, Refuted, Inconclusive };
const char* to_string(Certainty c);

struct TrivialQuotientResult {
  Certainty verdict = Certainty::Inconclusive;
  std::int64_t index = 0;  // valid unless Inconclusive
  EnumResult enumeration;
};

// Certifies whether the relators of p together with extra_relators present
// the trivial group, by enumeration over the trivial subgroup.
TrivialQuotientResult is_trivial_quotient(const fpres::Presentation& p,
                                          std::span<const words::Word> extra_relators,
                                          const Options& options = {});

}  // namespace kgt::tc
