#include "kgt/fpres.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "kgt/error.hpp"

namespace kgt::fpres {

using words::checked_add;
using words::checked_mul;
using words::checked_neg;
using words::checked_sub;

namespace {

std::vector<std::string> split_tokens(std::string_view line) {
  std::vector<std::string> toks;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    std::size_t start = pos;
    while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos > start) toks.emplace_back(line.substr(start, pos - start));
  }
  return toks;
}

std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

}  // namespace

Presentation parse_presentation(std::string_view text) {
  Presentation p;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = strip_comment(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++lineno;
    auto toks = split_tokens(line);
    if (toks.empty()) {
      if (pos > text.size()) break;
      continue;
    }
    const std::string& kw = toks[0];
    std::string rest(line.substr(line.find(kw) + kw.size()));
    try {
      if (kw == "gens") {
        if (p.alphabet) throw ParseError("duplicate `gens` line", lineno);
        if (toks.size() < 2) throw ParseError("`gens` requires at least one name", lineno);
        p.alphabet = words::Alphabet::make({toks.begin() + 1, toks.end()});
      } else if (kw == "rel") {
        if (!p.alphabet) throw ParseError("`rel` before `gens`", lineno);
        words::Word w = words::parse_word(p.alphabet, rest);
        if (w.is_identity()) throw ParseError("relator reduces to the empty word", lineno);
        p.relators.push_back(std::move(w));
      } else if (kw == "name") {
        if (!p.alphabet) throw ParseError("`name` before `gens`", lineno);
        if (toks.size() < 3) throw ParseError("`name` requires a label and a word", lineno);
        const std::string& label = toks[1];
        if (p.named.count(label)) throw ParseError("duplicate label `" + label + "`", lineno);
        std::string word_text = rest;
        auto lp = word_text.find(label);
        p.named.emplace(label, words::parse_word(p.alphabet, word_text.substr(lp + label.size())));
      } else {
        throw ParseError("unknown directive `" + kw + "`", lineno);
      }
    } catch (const ParseError& pe) {
      if (pe.line() > 0) throw;  // already positioned
      throw ParseError(pe.what(), lineno);
    } catch (const std::exception& e) {
      throw ParseError(e.what(), lineno);
    }
    if (pos > text.size()) break;
  }
  if (!p.alphabet) throw ParseError("missing `gens` line");
  return p;
}

std::string format_presentation(const Presentation& p) {
  std::ostringstream out;
  out << "gens";
  for (int g = 0; g < p.alphabet->size(); ++g) out << ' ' << p.alphabet->name(g);
  out << '\n';
  for (const auto& r : p.relators) out << "rel " << words::format_word(r) << '\n';
  for (const auto& [label, w] : p.named) out << "name " << label << ' ' << words::format_word(w) << '\n';
  return out.str();
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix relation_matrix(const Presentation& p) {
  IntMatrix m(static_cast<int>(p.relators.size()), p.alphabet->size());
  for (int r = 0; r < m.rows; ++r) {
    auto v = words::ab_vector(p.relators[static_cast<std::size_t>(r)]);
    for (int c = 0; c < m.cols; ++c) m.at(r, c) = v[static_cast<std::size_t>(c)];
  }
  return m;
}

namespace {

struct SnfWork {
  IntMatrix d;
  IntMatrix r;
  bool track_r;

  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < d.cols; ++c) std::swap(d.at(i, c), d.at(j, c));
  }
  void swap_cols(int i, int j) {
    if (i == j) return;
    for (int rr = 0; rr < d.rows; ++rr) std::swap(d.at(rr, i), d.at(rr, j));
    if (track_r)
      for (int rr = 0; rr < r.rows; ++rr) std::swap(r.at(rr, i), r.at(rr, j));
  }
  void add_row(int dst, int src, std::int64_t f) {  // row dst += f * row src
    for (int c = 0; c < d.cols; ++c) d.at(dst, c) = checked_add(d.at(dst, c), checked_mul(f, d.at(src, c)));
  }
  void add_col(int dst, int src, std::int64_t f) {
    for (int rr = 0; rr < d.rows; ++rr) d.at(rr, dst) = checked_add(d.at(rr, dst), checked_mul(f, d.at(rr, src)));
    if (track_r)
      for (int rr = 0; rr < r.rows; ++rr) r.at(rr, dst) = checked_add(r.at(rr, dst), checked_mul(f, r.at(rr, src)));
  }
  void negate_row(int i) {
    for (int c = 0; c < d.cols; ++c) d.at(i, c) = checked_neg(d.at(i, c));
  }
};

}  // namespace

SmithResult smith_normal_form(const IntMatrix& m, bool want_right) {
  SnfWork w{m, IntMatrix::identity(m.cols), want_right};
  IntMatrix& d = w.d;
  const int nmin = std::min(m.rows, m.cols);

  int t = 0;
  for (; t < nmin; ++t) {
    // smallest nonzero |entry| in the trailing submatrix; first position on ties
    auto find_pivot = [&]() -> std::pair<int, int> {
      std::int64_t best = 0;
      std::pair<int, int> at{-1, -1};
      for (int i = t; i < d.rows; ++i)
        for (int j = t; j < d.cols; ++j) {
          std::int64_t v = d.at(i, j);
          if (v == 0) continue;
          std::int64_t av = v < 0 ? checked_neg(v) : v;
          if (at.first < 0 || av < best) {
            best = av;
            at = {i, j};
          }
        }
      return at;
    };

    auto [pi, pj] = find_pivot();
    if (pi < 0) break;  // trailing submatrix is zero
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);

    for (;;) {
      bool clean = true;
      for (int i = t + 1; i < d.rows; ++i) {
        if (d.at(i, t) == 0) continue;
        w.add_row(i, t, -(d.at(i, t) / d.at(t, t)));
        if (d.at(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < d.cols; ++j) {
        if (d.at(t, j) == 0) continue;
        w.add_col(j, t, -(d.at(t, j) / d.at(t, t)));
        if (d.at(t, j) != 0) clean = false;
      }
      if (!clean) {
        auto [qi, qj] = find_pivot();
        w.swap_rows(t, qi);
        w.swap_cols(t, qj);
        continue;
      }
      // pivot row/col are clean; enforce divisibility of the trailing block
      int bi = -1;
      for (int i = t + 1; i < d.rows && bi < 0; ++i)
        for (int j = t + 1; j < d.cols; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            bi = i;
            break;
          }
      if (bi < 0) break;
      w.add_row(t, bi, 1);
    }
    if (d.at(t, t) < 0) w.negate_row(t);
  }

  SmithResult out;
  out.rank = t;
  for (int i = 0; i < t; ++i) out.factors.push_back(d.at(i, i));
  out.has_right = want_right;
  if (want_right) out.right = std::move(w.r);
  return out;
}

H1 h1_invariants(const Presentation& p) {
  auto snf = smith_normal_form(relation_matrix(p));
  H1 h;
  h.betti = p.alphabet->size() - snf.rank;
  for (auto f : snf.factors)
    if (f > 1) h.torsion.push_back(f);
  return h;
}

QuotientImage quotient_image(const IntMatrix& m, std::span<const std::int64_t> v) {
  if (static_cast<int>(v.size()) != m.cols) throw std::invalid_argument("vector/matrix size mismatch");
  auto snf = smith_normal_form(m, /*want_right=*/true);
  std::vector<std::int64_t> w(static_cast<std::size_t>(m.cols), 0);
  for (int j = 0; j < m.cols; ++j) {
    std::int64_t acc = 0;
    for (int i = 0; i < m.cols; ++i)
      acc = checked_add(acc, checked_mul(v[static_cast<std::size_t>(i)], snf.right.at(i, j)));
    w[static_cast<std::size_t>(j)] = acc;
  }
  QuotientImage q;
  for (int i = 0; i < snf.rank; ++i) {
    std::int64_t d = snf.factors[static_cast<std::size_t>(i)];
    std::int64_t r = w[static_cast<std::size_t>(i)] % d;
    if (r < 0) r += d;
    q.torsion_residues.push_back(r);
  }
  for (int i = snf.rank; i < m.cols; ++i) q.free_coords.push_back(w[static_cast<std::size_t>(i)]);
  return q;
}

bool QuotientImage::zero() const {
  auto is0 = [](std::int64_t x) { return x == 0; };
  return std::all_of(torsion_residues.begin(), torsion_residues.end(), is0) &&
         std::all_of(free_coords.begin(), free_coords.end(), is0);
}

bool in_row_lattice(const IntMatrix& m, std::span<const std::int64_t> v) {
  return quotient_image(m, v).zero();
}

}  // namespace kgt::fpres
