// Runs the full verification grid and exits nonzero if any criterion fails.
// Optional argument: RNG seed for the property suites.

#include <cstdlib>
#include <iostream>

#include "kgt/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = kgt::accept::kDefaultSeed;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  int failed = kgt::accept::run_all(std::cout, seed);
  return failed == 0 ? 0 : 1;
}
