#pragma once

// Presentation builders for torus knot groups, cable knot groups (amalgams
// over the boundary torus of the companion) and connected sums, each with a
// machine-checked peripheral pair; an exact word-problem oracle for torus
// knot groups; and the killer test harness.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgt/cable_space.hpp"
#include "kgt/coset_enum.hpp"
#include "kgt/fpres.hpp"
#include "kgt/words.hpp"

namespace kgt::knots {

// Tree of knot constructions: Torus(p,q) leaves, Cable(m,n; companion)
// nodes, Sum(parts...) nodes. The tree itself certifies companion
// nontriviality.
class KnotSpec {
public:
  enum class Kind { Torus, Cable, Sum };

  static KnotSpec torus(std::int64_t p, std::int64_t q);
  static KnotSpec cable(std::int64_t m, int n, KnotSpec companion);
  static KnotSpec sum(std::vector<KnotSpec> parts);

  // grammar: `torus(2,3)`, `cable(3,2; torus(2,3))`, `sum(spec, spec, ...)`
  static KnotSpec parse(std::string_view text);
  std::string str() const;

  Kind kind() const { return kind_; }
  std::int64_t p() const { return p_; }
  std::int64_t q() const { return q_; }
  std::int64_t m() const { return m_; }
  int n() const { return n_; }
  const KnotSpec& companion() const { return children_[0]; }
  const std::vector<KnotSpec>& parts() const { return children_; }

private:
  KnotSpec() = default;
  Kind kind_ = Kind::Torus;
  std::int64_t p_ = 0, q_ = 0;  // torus
  std::int64_t m_ = 0;          // cable
  int n_ = 0;
  std::vector<KnotSpec> children_;
};

struct PeripheralPair {
  words::Word meridian;
  words::Word longitude;
};

struct BuiltKnot {
  fpres::Presentation presentation;
  PeripheralPair peripheral;
};

struct BuildOptions {
  std::int64_t d = 0;                  // longitude calibration at each cable junction
  std::int64_t max_cosets = 1'000'000; // budget for the construction-time quotient checks
  int named_killers = 4;               // killer.1..killer.k entries on cable builds
};

// Builders verify at construction: H1 = Z, the meridian generates H1, the
// longitude is null-homologous, and the meridian quotient enumerates to the
// trivial group. Violations throw CheckError.
BuiltKnot torus_presentation(std::int64_t p, std::int64_t q, const BuildOptions& = {});
BuiltKnot cable_presentation(std::int64_t m, int n, const BuiltKnot& companion,
                             const BuildOptions& = {});
BuiltKnot sum_presentation(const std::vector<BuiltKnot>& parts, const BuildOptions& = {});
BuiltKnot build(const KnotSpec& spec, const BuildOptions& = {});

// Canonical form in <a,b | a^p = b^q>: central exponent of z = a^p plus
// alternating syllables a^i (0<i<p) / b^j (0<j<q). Two words are equal in
// the group iff their canonical forms agree.
struct TorusSyllable {
  int gen = 0;  // 0 = a, 1 = b
  std::int64_t exp = 0;
  friend bool operator==(const TorusSyllable&, const TorusSyllable&) = default;
};
struct TorusNormalForm {
  std::int64_t center = 0;
  std::vector<TorusSyllable> syllables;
  friend bool operator==(const TorusNormalForm&, const TorusNormalForm&) = default;
  bool is_identity() const { return center == 0 && syllables.empty(); }
};
TorusNormalForm torus_normal_form(const words::Word& w, std::int64_t p, std::int64_t q);

struct KillerResult {
  tc::Certainty verdict = tc::Certainty::Inconclusive;
  bool refuted_by_h1 = false;          // nontrivial H1 of the augmented presentation
  fpres::H1 h1_augmented;
  std::optional<tc::TrivialQuotientResult> quotient;  // present when enumeration ran
};

// Decides whether w normally generates the presented group: a nontrivial H1
// of the augmented presentation refutes outright; otherwise the trivial
// quotient is certified or refuted by enumeration.
KillerResult killer_test(const fpres::Presentation& p, const words::Word& w,
                         const tc::Options& options = {});

}  // namespace kgt::knots
