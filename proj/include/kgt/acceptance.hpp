#pragma once

// The full verification grid: certificate and quotient grids, cable-knot
// killer tests, d-robustness, the inequivalence case analysis, non-killer
// certificates, connected-sum transfer, enumerator validation, structural
// sanity and the randomized property suites. Prints one pass/fail line per
// criterion; output is deterministic for a fixed seed.

#include <cstdint>
#include <ostream>

namespace kgt::accept {

inline constexpr std::uint64_t kDefaultSeed = 1234567891;

// returns the number of failed criteria (0 = all green)
int run_all(std::ostream& out, std::uint64_t seed = kDefaultSeed);

}  // namespace kgt::accept
