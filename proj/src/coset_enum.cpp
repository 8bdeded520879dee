#include "kgt/coset_enum.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "kgt/error.hpp"

namespace kgt::tc {

namespace {

constexpr std::int64_t kMaxRelatorLetters = 1'000'000;

using Coset = std::int32_t;

// relator/generator word expanded into a column sequence
std::vector<int> expand_columns(const words::Word& w) {
  std::vector<int> cols;
  std::int64_t total = w.letter_length();
  if (total > kMaxRelatorLetters) throw std::invalid_argument("word too long to scan");
  cols.reserve(static_cast<std::size_t>(total));
  for (const auto& l : w.letters()) {
    int c = CosetTable::col(l.gen, l.exp < 0);
    std::int64_t reps = l.exp < 0 ? -l.exp : l.exp;
    for (std::int64_t i = 0; i < reps; ++i) cols.push_back(c);
  }
  return cols;
}

class Enumerator {
public:
  Enumerator(const fpres::Presentation& p, std::span<const words::Word> subgens,
             const Options& opt)
      : ngens_(p.alphabet->size()), ncols_(2 * p.alphabet->size()), opt_(opt), alpha_(p.alphabet) {
    // preprocessing: cyclically reduce, drop empties and duplicates, scan
    // short relators first (stable, so deterministic)
    std::vector<words::Word> relators;
    for (const auto& r : p.relators) {
      if (!(*r.alphabet() == *alpha_)) throw std::invalid_argument("relator over wrong alphabet");
      words::Word core = words::cyclic_reduce(r).core;
      if (core.is_identity()) continue;
      if (std::find(relators.begin(), relators.end(), core) == relators.end())
        relators.push_back(std::move(core));
    }
    std::stable_sort(relators.begin(), relators.end(),
                     [](const words::Word& a, const words::Word& b) {
                       return a.letter_length() < b.letter_length();
                     });
    for (const auto& r : relators) relator_cols_.push_back(expand_columns(r));

    for (const auto& g : subgens) {
      if (!(*g.alphabet() == *alpha_))
        throw std::invalid_argument("subgroup generator over wrong alphabet");
      if (!g.is_identity()) subgen_cols_.push_back(expand_columns(g));
    }

    if (opt_.strategy == Strategy::Felsch) build_rotation_tables();
  }

  EnumResult run() {
    new_coset_unchecked();  // coset 1
    for (const auto& w : subgen_cols_) {
      scan_and_fill(1, w);
      if (overflow_) return overflow_result();
    }
    if (opt_.strategy == Strategy::Felsch)
      run_felsch();
    else
      run_hlt();
    return overflow_ ? overflow_result() : completed_result();
  }

private:
  // ------------------------------------------------------------ strategies

  void run_hlt() {
    std::int64_t next_lookahead = opt_.lookahead ? opt_.lookahead_interval : -1;
    for (Coset current = 1; current <= ncosets_; ++current) {
      if (next_lookahead > 0 && stats_.cosets_defined >= next_lookahead) {
        lookahead_pass();
        next_lookahead += opt_.lookahead_interval;
      }
      if (!live(current)) continue;
      bool died = false;
      for (const auto& w : relator_cols_) {
        scan_and_fill(current, w);
        if (overflow_) return;
        if (!live(current)) {
          died = true;
          break;
        }
      }
      if (died) continue;
      // row fill: definitions only, cannot coincide
      for (int c = 0; c < ncols_; ++c) {
        if (get_raw(current, c) == 0) {
          define(current, c);
          if (overflow_) return;
        }
      }
    }
  }

  void run_felsch() {
    Coset cursor = 1;
    for (;;) {
      drain_deductions();
      if (overflow_) return;
      // first hole in the lowest live coset; live rows never lose entries,
      // so the cursor only moves forward
      while (cursor <= ncosets_ && (!live(cursor) || row_full(cursor))) ++cursor;
      if (cursor > ncosets_) {
        // complete; one closing sweep in case any deduction was dropped by a
        // stack overflow recovery
        lookahead_pass();
        drain_deductions();
        if (overflow_) return;
        Coset back = 1;
        while (back <= ncosets_ && (!live(back) || row_full(back))) ++back;
        if (back > ncosets_) return;
        cursor = back;
      }
      for (int c = 0; c < ncols_; ++c) {
        if (get_raw(cursor, c) == 0) {
          define(cursor, c);
          break;
        }
      }
      if (overflow_) return;
    }
  }

  bool row_full(Coset c) const {
    for (int col = 0; col < ncols_; ++col)
      if (get_raw(c, col) == 0) return false;
    return true;
  }

  // cyclic rotations of every relator and its inverse, grouped by leading
  // column; scanning these through a new entry propagates every consequence
  void build_rotation_tables() {
    rotations_.assign(static_cast<std::size_t>(ncols_), {});
    for (const auto& r : relator_cols_) {
      const std::size_t L = r.size();
      std::vector<int> inv(L);
      for (std::size_t i = 0; i < L; ++i) inv[i] = CosetTable::inverse_col(r[L - 1 - i]);
      const std::vector<int>* bases[2] = {&r, &inv};
      for (const auto* base : bases) {
        for (std::size_t s = 0; s < L; ++s) {
          std::vector<int> rot(L);
          for (std::size_t i = 0; i < L; ++i) rot[i] = (*base)[(s + i) % L];
          auto& bucket = rotations_[static_cast<std::size_t>(rot[0])];
          if (std::find(bucket.begin(), bucket.end(), rot) == bucket.end())
            bucket.push_back(std::move(rot));
        }
      }
    }
  }

  void push_deduction(Coset c, int col) {
    if (opt_.strategy != Strategy::Felsch) return;
    if (static_cast<std::int64_t>(deductions_.size()) >= opt_.deduction_stack_limit) {
      deduction_overflow_ = true;
      return;
    }
    deductions_.emplace_back(c, col);
  }

  void drain_deductions() {
    if (opt_.strategy != Strategy::Felsch) return;
    for (;;) {
      if (deduction_overflow_) {
        // recovery: forget the stack and rescan everything
        deductions_.clear();
        deduction_overflow_ = false;
        lookahead_pass();
        continue;
      }
      if (deductions_.empty()) return;
      auto [c, col] = deductions_.back();
      deductions_.pop_back();
      Coset a = rep(c);
      Coset b = get(a, col);
      if (b == 0) continue;  // cleared by a coincidence
      for (const auto& w : rotations_[static_cast<std::size_t>(col)]) scan_only(a, w);
      for (const auto& w : rotations_[static_cast<std::size_t>(CosetTable::inverse_col(col))])
        scan_only(b, w);
    }
  }

  // ------------------------------------------------------------- the table

  bool live(Coset c) const { return parent_[static_cast<std::size_t>(c)] == c; }

  Coset rep(Coset c) {
    Coset r = c;
    while (parent_[static_cast<std::size_t>(r)] != r) r = parent_[static_cast<std::size_t>(r)];
    while (parent_[static_cast<std::size_t>(c)] != r) {
      Coset next = parent_[static_cast<std::size_t>(c)];
      parent_[static_cast<std::size_t>(c)] = r;
      c = next;
    }
    return r;
  }

  std::int32_t get_raw(Coset c, int col) const {
    return table_[static_cast<std::size_t>(c - 1) * ncols_ + static_cast<std::size_t>(col)];
  }
  void set_raw(Coset c, int col, Coset v) {
    table_[static_cast<std::size_t>(c - 1) * ncols_ + static_cast<std::size_t>(col)] = v;
  }
  // follow an entry, collapsing through dead cosets
  Coset get(Coset c, int col) {
    Coset v = get_raw(c, col);
    return v == 0 ? 0 : rep(v);
  }

  Coset new_coset_unchecked() {
    ++ncosets_;
    table_.resize(static_cast<std::size_t>(ncosets_) * ncols_, 0);
    parent_.push_back(ncosets_);
    ++stats_.cosets_defined;
    return ncosets_;
  }

  // define tau(from, col) = fresh coset
  void define(Coset from, int col) {
    if (stats_.cosets_defined >= opt_.max_cosets) {
      overflow_ = true;
      return;
    }
    Coset n = new_coset_unchecked();
    set_raw(from, col, n);
    set_raw(n, CosetTable::inverse_col(col), from);
    push_deduction(from, col);
    if (opt_.transcript)
      *opt_.transcript << "def " << from << ' ' << col_name(col) << ' ' << n << '\n';
  }

  void merge(Coset a, Coset b) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);  // smaller index survives
    parent_[static_cast<std::size_t>(b)] = a;
    ++stats_.coincidences;
    if (opt_.transcript) *opt_.transcript << "coinc " << a << ' ' << b << '\n';
    queue_.push_back(b);
  }

  // identify a and b and drain all consequences
  void coincidence(Coset a, Coset b) {
    merge(a, b);
    while (!queue_.empty()) {
      Coset d = queue_.front();
      queue_.pop_front();
      for (int col = 0; col < ncols_; ++col) {
        Coset e = get_raw(d, col);
        if (e == 0) continue;
        set_raw(d, col, 0);
        if (get_raw(e, CosetTable::inverse_col(col)) == d)
          set_raw(e, CosetTable::inverse_col(col), 0);
        // transfer the fact d*col = e to the representatives
        Coset u = rep(d);
        Coset v = rep(e);
        Coset t1 = get_raw(u, col);
        if (t1 != 0) {
          merge(v, rep(t1));
        } else {
          Coset t2 = get_raw(v, CosetTable::inverse_col(col));
          if (t2 != 0) {
            merge(u, rep(t2));
          } else {
            set_raw(u, col, v);
            set_raw(v, CosetTable::inverse_col(col), u);
            push_deduction(u, col);
          }
        }
      }
    }
  }

  // HLT scan of word w at coset c, defining cosets to force closure
  void scan_and_fill(Coset c, const std::vector<int>& w) {
    if (w.empty()) return;
    c = rep(c);
    Coset f = c, b = c;
    std::size_t i = 0, j = w.size();
    for (;;) {
      while (i < j) {
        Coset nx = get(f, w[i]);
        if (nx == 0) break;
        f = nx;
        ++i;
      }
      if (i == j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j > i) {
        Coset nx = get(b, CosetTable::inverse_col(w[j - 1]));
        if (nx == 0) break;
        b = nx;
        --j;
      }
      if (j == i) {
        if (f != b) coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        // deduction: both directions verified undefined by the scans above
        set_raw(f, w[i], b);
        set_raw(b, CosetTable::inverse_col(w[i]), f);
        push_deduction(f, w[i]);
        return;
      }
      define(f, w[i]);
      if (overflow_) return;
      f = rep(get_raw(f, w[i]));
      ++i;
    }
  }

  // scan without defining; closes gaps of one and processes coincidences
  void scan_only(Coset c, const std::vector<int>& w) {
    if (w.empty()) return;
    c = rep(c);
    Coset f = c, b = c;
    std::size_t i = 0, j = w.size();
    while (i < j) {
      Coset nx = get(f, w[i]);
      if (nx == 0) break;
      f = nx;
      ++i;
    }
    if (i == j) {
      if (f != b) coincidence(f, b);
      return;
    }
    while (j > i) {
      Coset nx = get(b, CosetTable::inverse_col(w[j - 1]));
      if (nx == 0) break;
      b = nx;
      --j;
    }
    if (j == i) {
      if (f != b) coincidence(f, b);
    } else if (j == i + 1) {
      set_raw(f, w[i], b);
      set_raw(b, CosetTable::inverse_col(w[i]), f);
      push_deduction(f, w[i]);
    }
  }

  void lookahead_pass() {
    for (Coset c = 1; c <= ncosets_; ++c) {
      if (!live(c)) continue;
      for (const auto& w : relator_cols_) {
        scan_only(c, w);
        if (!live(c)) break;
      }
    }
  }

  std::string col_name(int col) const {
    std::string n = alpha_->name(col / 2);
    if (col & 1) n += "^-1";
    return n;
  }

  // -------------------------------------------------------------- results

  EnumResult overflow_result() {
    if (opt_.transcript) *opt_.transcript << "overflow " << opt_.max_cosets << '\n';
    EnumResult r;
    r.completed = false;
    r.stats = stats_;
    r.max_cosets = opt_.max_cosets;
    return r;
  }

  EnumResult completed_result() {
    std::vector<Coset> remap(static_cast<std::size_t>(ncosets_) + 1, 0);
    std::int64_t index = 0;
    for (Coset c = 1; c <= ncosets_; ++c)
      if (live(c)) remap[static_cast<std::size_t>(c)] = static_cast<Coset>(++index);
    std::vector<std::int32_t> entries(static_cast<std::size_t>(index) * ncols_, 0);
    for (Coset c = 1; c <= ncosets_; ++c) {
      if (!live(c)) continue;
      for (int col = 0; col < ncols_; ++col) {
        Coset v = get(c, col);
        if (v == 0) throw CheckError("completed coset table has an undefined entry");
        entries[static_cast<std::size_t>(remap[static_cast<std::size_t>(c)] - 1) * ncols_ +
                static_cast<std::size_t>(col)] = remap[static_cast<std::size_t>(v)];
      }
    }
    if (opt_.transcript) *opt_.transcript << "index " << index << '\n';
    EnumResult r;
    r.completed = true;
    r.index = index;
    r.table = CosetTable(ngens_, index, std::move(entries));
    r.stats = stats_;
    r.max_cosets = opt_.max_cosets;
    return r;
  }

  int ngens_;
  int ncols_;
  Options opt_;
  words::AlphabetRef alpha_;
  std::vector<std::vector<int>> relator_cols_;
  std::vector<std::vector<int>> subgen_cols_;
  std::vector<std::vector<std::vector<int>>> rotations_;  // by leading column

  std::vector<std::int32_t> table_;
  std::vector<Coset> parent_{0};  // index 0 unused
  std::deque<Coset> queue_;
  std::vector<std::pair<Coset, int>> deductions_;
  bool deduction_overflow_ = false;
  Coset ncosets_ = 0;
  Stats stats_;
  bool overflow_ = false;
};

}  // namespace

const char* to_string(Certainty c) {
  switch (c) {
    case Certainty::Certified: return "certified";
    case Certainty::Refuted: return "refuted";
    case Certainty::Inconclusive: return "inconclusive";
  }
  return "?";
}

EnumResult enumerate(const fpres::Presentation& p, std::span<const words::Word> subgroup_generators,
                     const Options& options) {
  if (options.max_cosets < 1) throw std::invalid_argument("max_cosets must be >= 1");
  Enumerator e(p, subgroup_generators, options);
  return e.run();
}

ValidationResult validate(const CosetTable& table, const fpres::Presentation& p,
                          std::span<const words::Word> subgroup_generators) {
  const std::int64_t n = table.index();
  const int ncols = table.ncols();
  if (table.ngens() != p.alphabet->size()) return {false, "generator count mismatch"};
  if (n < 1) return {false, "empty table"};

  for (std::int64_t c = 1; c <= n; ++c)
    for (int col = 0; col < ncols; ++col) {
      std::int32_t v = table.at(c, col);
      if (v < 1 || v > n) return {false, "entry out of range"};
      if (table.at(v, CosetTable::inverse_col(col)) != c)
        return {false, "inverse entry inconsistent"};
    }

  // reachability from coset 1 (the action must be transitive)
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::int64_t> stack{1};
  seen[1] = 1;
  std::int64_t reached = 1;
  while (!stack.empty()) {
    std::int64_t c = stack.back();
    stack.pop_back();
    for (int col = 0; col < ncols; ++col) {
      std::int32_t v = table.at(c, col);
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  if (reached != n) return {false, "table is not transitive"};

  auto trace = [&](std::int64_t start, const words::Word& w) -> std::int64_t {
    std::int64_t c = start;
    for (const auto& l : w.letters()) {
      int col = CosetTable::col(l.gen, l.exp < 0);
      std::int64_t reps = l.exp < 0 ? -l.exp : l.exp;
      for (std::int64_t i = 0; i < reps; ++i) c = table.at(c, col);
    }
    return c;
  };

  for (std::int64_t c = 1; c <= n; ++c)
    for (const auto& r : p.relators)
      if (trace(c, r) != c) return {false, "relator does not close at coset " + std::to_string(c)};
  for (const auto& g : subgroup_generators)
    if (trace(1, g) != 1) return {false, "subgroup generator moves coset 1"};

  return {true, "ok"};
}

TrivialQuotientResult is_trivial_quotient(const fpres::Presentation& p,
                                          std::span<const words::Word> extra_relators,
                                          const Options& options) {
  fpres::Presentation augmented{p.alphabet, p.relators, {}};
  for (const auto& w : extra_relators) {
    if (!(*w.alphabet() == *p.alphabet))
      throw std::invalid_argument("extra relator over wrong alphabet");
    if (!w.is_identity()) augmented.relators.push_back(w);
  }
  TrivialQuotientResult r;
  r.enumeration = enumerate(augmented, {}, options);
  if (!r.enumeration.completed) {
    r.verdict = Certainty::Inconclusive;
    return r;
  }
  r.index = r.enumeration.index;
  r.verdict = r.index == 1 ? Certainty::Certified : Certainty::Refuted;
  return r;
}

}  // namespace kgt::tc
