#pragma once

// The finite exact case analysis certifying pairwise inequivalence of the
// killers g_l: enumerate the constrained automorphism images of g_l over
// (z2 mod n, eta, eps) and decide conjugacy onto g_k in the free group, plus
// the weaker abelianized obstruction equation.

#include <cstdint>
#include <string>
#include <vector>

#include "kgt/cable_space.hpp"
#include "kgt/words.hpp"

namespace kgt::inequiv {

// solutions of eps*[l*e_i + (1-l)*e_j] = k*e_1 + (1-k)*e_2 over the
// enumerated triples, deduplicated by realized (i, j, eps)
struct AbelianSolution {
  int i = 0;
  int j = 0;
  bool j_vacuous = false;  // l = 1: the j coefficient vanishes
  int eps = 0;
  friend bool operator==(const AbelianSolution&, const AbelianSolution&) = default;
};
std::vector<AbelianSolution> abelian_obstruction(std::int64_t k, std::int64_t l,
                                                 const cable::CableParams& p);

struct CaseLine {
  std::int64_t z2 = 0;
  int eta = 0;
  int eps = 0;
  int i = 0;
  int j = 0;
  bool conjugate = false;
};

struct ConjugacySolution {
  std::int64_t z2 = 0;  // canonical representative: first triple realizing the case
  int eta = 0;
  int eps = 0;
  int i = 0;
  int j = 0;
  bool j_vacuous = false;
  words::Word core;
  words::Word witness;  // witness * core * witness^-1 = g_k, re-verified
};

struct ObstructionReport {
  std::int64_t k = 0;
  std::int64_t l = 0;
  std::vector<CaseLine> cases;                 // every enumerated triple, in order
  std::vector<ConjugacySolution> solutions;    // deduplicated by realized (i, j, eps)
  bool no_solution() const { return solutions.empty(); }
};

ObstructionReport conjugacy_obstruction(std::int64_t k, std::int64_t l,
                                        const cable::CableParams& p);

enum class Verdict { CertifiedInequivalent, EquivalentCandidate };

struct InequivalenceResult {
  Verdict verdict = Verdict::EquivalentCandidate;
  ObstructionReport report;
};

// CertifiedInequivalent iff no enumerated case is conjugate. The certificate
// covers the algebraic case analysis over the constrained automorphism
// family; the reduction of arbitrary automorphisms to that family is an
// imported hypothesis, stated in the docs.
InequivalenceResult inequivalence_verdict(std::int64_t k, std::int64_t l,
                                          const cable::CableParams& p);

// one `case ...` line per enumerated triple, terminated by a `verdict` line
std::string format_report(const InequivalenceResult& r);

// Abelianization-level check that g_k is not conjugate into the peripheral
// subgroup <m1, lambda>: its image (1, 0) must lie outside the lattice
// spanned by (n, 0) and (mbar, 1). Returns true when the obstruction is
// conclusive for these parameters.
bool peripheral_conjugacy_ab_obstruction(std::int64_t k, const cable::CableParams& p);

}  // namespace kgt::inequiv
