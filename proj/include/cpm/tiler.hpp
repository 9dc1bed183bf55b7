#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cpm/errors.hpp"
#include "cpm/pattern.hpp"

namespace cpm {

// Dense m x n 0/1 matrix, row-major. Indices are 0-based.
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  BinaryMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cells_(rows * cols, 0) {
    if (rows == 0 || cols == 0) throw PreconditionError("BinaryMatrix: dimensions must be positive");
  }

  static BinaryMatrix from_rows(const std::vector<std::vector<int>>& rows) {
    if (rows.empty() || rows.front().empty()) throw PreconditionError("BinaryMatrix: empty");
    BinaryMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw PreconditionError("BinaryMatrix: ragged rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m.set(i, j, rows[i][j] != 0);
    }
    return m;
  }

  // Rows are transactions (tid - 1), columns are symbol ids.
  static BinaryMatrix from_transactions(const TransactionDB& db) {
    BinaryMatrix m(db.size(), std::max<std::size_t>(db.symbols.size(), 1));
    for (std::size_t t = 0; t < db.size(); ++t)
      for (auto item : db.transactions[t].items()) m.set(t, item, true);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool at(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c] != 0; }
  void set(std::size_t r, std::size_t c, bool v) { cells_[r * cols_ + c] = v ? 1 : 0; }

  std::size_t count_ones() const {
    return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
  }

  friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> cells_;
};

using Cell = std::pair<std::size_t, std::size_t>;  // (row, col)

// Rectangle rows x cols of a matrix together with the data ones inside it.
struct Tile {
  std::size_t id = 0;
  std::vector<std::size_t> rows;  // sorted
  std::vector<std::size_t> cols;  // sorted
  std::vector<Cell> ones;         // sorted

  std::size_t rect_area() const noexcept { return rows.size() * cols.size(); }
  friend bool operator==(const Tile&, const Tile&) = default;
};

// Tile over the given rectangle; `ones` are the matrix ones it contains.
inline Tile make_tile(const BinaryMatrix& m, std::vector<std::size_t> rows, std::vector<std::size_t> cols,
                      std::size_t id = 0) {
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  if (rows.empty() || cols.empty()) throw PreconditionError("tile needs at least one row and one column");
  if (rows.back() >= m.rows() || cols.back() >= m.cols()) throw PreconditionError("tile exceeds matrix bounds");
  Tile t{id, std::move(rows), std::move(cols), {}};
  for (auto r : t.rows)
    for (auto c : t.cols)
      if (m.at(r, c)) t.ones.emplace_back(r, c);
  return t;
}

// tau(alpha, D): rows = cover(alpha) (0-based), cols = alpha.
inline Tile tile_of(const BinaryMatrix& m, const std::vector<std::size_t>& cols) {
  if (cols.empty()) throw PreconditionError("tile_of: empty itemset");
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (std::all_of(cols.begin(), cols.end(), [&](auto c) { return c < m.cols() && m.at(r, c); })) rows.push_back(r);
  if (rows.empty()) throw PreconditionError("tile_of: itemset has empty cover");
  return make_tile(m, std::move(rows), cols);
}

inline Tile tile_of(const TransactionDB& db, const Itemset& alpha) {
  if (alpha.empty()) throw PreconditionError("tile_of: empty itemset");
  return tile_of(BinaryMatrix::from_transactions(db),
                 std::vector<std::size_t>(alpha.items().begin(), alpha.items().end()));
}

// |union of the tiles' ones|
inline std::size_t area(const std::vector<Tile>& tiles) {
  std::set<Cell> cells;
  for (const auto& t : tiles) cells.insert(t.ones.begin(), t.ones.end());
  return cells.size();
}

// ---------------------------------------------------------------------------
// Error of a tiling.
// ---------------------------------------------------------------------------

enum class ErrorMode { full, coverable };

inline std::optional<ErrorMode> parse_error_mode(std::string_view s) {
  if (s == "full") return ErrorMode::full;
  if (s == "coverable") return ErrorMode::coverable;
  return std::nullopt;
}

struct ErrorTerms {
  std::size_t ones_outside = 0;  // data ones not in any chosen rectangle (per mode)
  std::size_t zeros_inside = 0;  // data zeros inside the union of rectangles
  std::size_t uncoverable = 0;   // ones in no candidate rectangle (excluded in coverable mode)

  std::size_t total() const noexcept { return ones_outside + zeros_inside; }
};

namespace detail {

// Bitset over the m*n cells.
class CellMask {
 public:
  CellMask() = default;
  explicit CellMask(std::size_t cells) : words_((cells + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  CellMask& operator|=(const CellMask& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  // |this & ~other|
  std::size_t count_without(const CellMask& other) const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) n += std::popcount(words_[i] & ~other.words_[i]);
    return n;
  }
  std::size_t count_and(const CellMask& other) const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) n += std::popcount(words_[i] & other.words_[i]);
    return n;
  }

 private:
  std::vector<std::uint64_t> words_;
};

}  // namespace detail

// Matrix plus candidate tiles, with precomputed cell masks. Tile ids are
// positions in `candidates`.
class TilingProblem {
 public:
  TilingProblem(BinaryMatrix matrix, std::vector<Tile> candidates)
      : matrix_(std::move(matrix)), candidates_(std::move(candidates)) {
    const auto cells = matrix_.rows() * matrix_.cols();
    data_ = detail::CellMask(cells);
    zeros_ = detail::CellMask(cells);
    coverable_ = detail::CellMask(cells);
    for (std::size_t r = 0; r < matrix_.rows(); ++r)
      for (std::size_t c = 0; c < matrix_.cols(); ++c) (matrix_.at(r, c) ? data_ : zeros_).set(r * matrix_.cols() + c);
    for (std::size_t i = 0; i < candidates_.size(); ++i) {
      auto& t = candidates_[i];
      t.id = i;
      detail::CellMask rect(cells);
      for (auto r : t.rows)
        for (auto c : t.cols) {
          if (r >= matrix_.rows() || c >= matrix_.cols()) throw PreconditionError("tile exceeds matrix bounds");
          rect.set(r * matrix_.cols() + c);
        }
      coverable_ |= rect;
      rects_.push_back(std::move(rect));
    }
    uncoverable_ = data_.count_without(coverable_);
  }

  const BinaryMatrix& matrix() const noexcept { return matrix_; }
  const std::vector<Tile>& candidates() const noexcept { return candidates_; }
  std::size_t size() const noexcept { return candidates_.size(); }

  detail::CellMask empty_mask() const { return detail::CellMask(matrix_.rows() * matrix_.cols()); }
  const detail::CellMask& rect(std::size_t id) const { return rects_.at(id); }

  ErrorTerms terms(const detail::CellMask& covered, ErrorMode mode) const {
    ErrorTerms t;
    t.uncoverable = uncoverable_;
    t.zeros_inside = covered.count_and(zeros_);
    t.ones_outside = data_.count_without(covered);
    if (mode == ErrorMode::coverable) t.ones_outside -= uncoverable_;
    return t;
  }

  ErrorTerms terms(const std::vector<std::size_t>& chosen, ErrorMode mode) const {
    auto covered = empty_mask();
    for (auto id : chosen) covered |= rect(id);
    return terms(covered, mode);
  }

  std::size_t error(const std::vector<std::size_t>& chosen, ErrorMode mode) const {
    return terms(chosen, mode).total();
  }

 private:
  BinaryMatrix matrix_;
  std::vector<Tile> candidates_;
  detail::CellMask data_, zeros_, coverable_;
  std::vector<detail::CellMask> rects_;
  std::size_t uncoverable_ = 0;
};

// Hamming distance between the matrix and the union of the tiles' rectangles.
inline std::size_t error(const BinaryMatrix& m, const std::vector<Tile>& tiles, ErrorMode mode = ErrorMode::full) {
  TilingProblem problem(m, tiles);
  std::vector<std::size_t> all(tiles.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return problem.error(all, mode);
}

// ---------------------------------------------------------------------------
// Candidate generation.
// ---------------------------------------------------------------------------

// For every non-empty column i: columns B_i = { j : conf(i => j) >= tau },
// rows = rows whose ones within B_i are at least its zeros. Deduplicated,
// sorted by descending area (ones covered), ties by generation order,
// truncated to max_candidates.
inline std::vector<Tile> generate_candidates(const BinaryMatrix& m, double tau, std::size_t max_candidates) {
  if (!(tau > 0.0 && tau <= 1.0)) throw PreconditionError("generate_candidates: tau must lie in (0,1]");
  const auto n = m.cols();
  std::vector<std::size_t> col_count(n, 0);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < n; ++c) col_count[c] += m.at(r, c);

  std::vector<Tile> out;
  std::set<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> seen;
  for (std::size_t i = 0; i < n; ++i) {
    if (col_count[i] == 0) continue;
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t both = 0;
      for (std::size_t r = 0; r < m.rows(); ++r) both += m.at(r, i) && m.at(r, j);
      // conf(i => j) >= tau, compared without rounding the ratio.
      if (static_cast<double>(both) >= tau * static_cast<double>(col_count[i]) - 1e-12) cols.push_back(j);
    }
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      std::size_t ones = 0;
      for (auto c : cols) ones += m.at(r, c);
      if (2 * ones >= cols.size()) rows.push_back(r);
    }
    if (rows.empty() || !seen.emplace(rows, cols).second) continue;
    out.push_back(make_tile(m, std::move(rows), std::move(cols), out.size()));
  }
  std::stable_sort(out.begin(), out.end(), [](const Tile& a, const Tile& b) { return a.ones.size() > b.ones.size(); });
  if (out.size() > max_candidates) out.resize(max_candidates);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = i;
  return out;
}

// ---------------------------------------------------------------------------
// Selection.
// ---------------------------------------------------------------------------

struct TileSelection {
  std::vector<std::size_t> chosen;  // sorted tile ids
  std::size_t error = 0;
  ErrorTerms terms;

  std::size_t k() const noexcept { return chosen.size(); }
  friend bool operator==(const TileSelection& a, const TileSelection& b) {
    return a.chosen == b.chosen && a.error == b.error;
  }
};

enum class SelectStatus { ok, unsatisfiable };

struct SelectionResult {
  SelectStatus status = SelectStatus::unsatisfiable;
  std::vector<TileSelection> selections;

  bool ok() const noexcept { return status == SelectStatus::ok; }
};

inline TileSelection make_selection(const TilingProblem& problem, std::vector<std::size_t> chosen, ErrorMode mode) {
  std::sort(chosen.begin(), chosen.end());
  TileSelection s;
  s.terms = problem.terms(chosen, mode);
  s.error = s.terms.total();
  s.chosen = std::move(chosen);
  return s;
}

// Repeatedly adds the candidate with the largest error decrease (lowest id on
// ties) until error <= budget. Fails when no candidate strictly decreases
// the error; this can happen even when an admissible subset exists.
inline SelectionResult greedy_select(const TilingProblem& problem, std::size_t budget,
                                     ErrorMode mode = ErrorMode::coverable) {
  SelectionResult result;
  std::vector<std::size_t> chosen;
  std::vector<bool> used(problem.size(), false);
  auto covered = problem.empty_mask();
  std::size_t current = problem.terms(covered, mode).total();
  for (;;) {
    if (current <= budget) {
      result.status = SelectStatus::ok;
      result.selections.push_back(make_selection(problem, chosen, mode));
      return result;
    }
    std::optional<std::size_t> best;
    std::size_t best_error = current;
    for (std::size_t id = 0; id < problem.size(); ++id) {
      if (used[id]) continue;
      auto trial = covered;
      trial |= problem.rect(id);
      const auto e = problem.terms(trial, mode).total();
      if (e < best_error) {
        best_error = e;
        best = id;
      }
    }
    if (!best) {
      result.selections.push_back(make_selection(problem, chosen, mode));
      return result;
    }
    used[*best] = true;
    chosen.push_back(*best);
    covered |= problem.rect(*best);
    current = best_error;
  }
}

enum class ExactMode { first, all, optimal };

inline constexpr std::size_t kDefaultExactBound = 20;

namespace detail {

// Depth-first include/exclude search over tile ids in ascending order.
// Both error components are monotone in the chosen set, so
//   zeros_inside(chosen) + ones_outside(chosen + all undecided)
// lower-bounds every completion.
class ExactSearch {
 public:
  ExactSearch(const TilingProblem& problem, std::size_t budget, ErrorMode mode, ExactMode how)
      : p_(problem), budget_(budget), mode_(mode), how_(how) {
    suffix_.assign(p_.size() + 1, p_.empty_mask());
    for (std::size_t i = p_.size(); i-- > 0;) {
      suffix_[i] = suffix_[i + 1];
      suffix_[i] |= p_.rect(i);
    }
  }

  std::vector<TileSelection> run() {
    auto covered = p_.empty_mask();
    visit(0, covered);
    if (how_ == ExactMode::optimal && best_) found_.push_back(*best_);
    return std::move(found_);
  }

 private:
  std::size_t limit() const {
    if (how_ == ExactMode::optimal && best_) return std::min(budget_, best_->error);
    return budget_;
  }

  bool done() const { return how_ == ExactMode::first && !found_.empty(); }

  void visit(std::size_t next, const CellMask& covered) {
    if (done()) return;
    auto optimistic = covered;
    optimistic |= suffix_[next];
    const auto lower = p_.terms(covered, mode_).zeros_inside + p_.terms(optimistic, mode_).ones_outside;
    if (lower > limit()) return;

    if (next == p_.size()) {
      if (chosen_.empty()) return;  // at least one tile
      const auto terms = p_.terms(covered, mode_);
      if (terms.total() > budget_) return;
      TileSelection s{chosen_, terms.total(), terms};
      if (how_ == ExactMode::optimal) {
        if (!best_ || better(s, *best_)) best_ = std::move(s);
      } else {
        found_.push_back(std::move(s));
      }
      return;
    }
    auto with = covered;
    with |= p_.rect(next);
    chosen_.push_back(next);
    visit(next + 1, with);
    chosen_.pop_back();
    visit(next + 1, covered);
  }

  static bool better(const TileSelection& a, const TileSelection& b) {
    if (a.error != b.error) return a.error < b.error;
    if (a.k() != b.k()) return a.k() < b.k();
    return a.chosen < b.chosen;
  }

  const TilingProblem& p_;
  std::size_t budget_;
  ErrorMode mode_;
  ExactMode how_;
  std::vector<CellMask> suffix_;
  std::vector<std::size_t> chosen_;
  std::vector<TileSelection> found_;
  std::optional<TileSelection> best_;
};

}  // namespace detail

// Complete search over nonempty subsets of the candidates with error <= budget.
//   first   - one admissible selection
//   all     - every admissible selection, ordered by chosen ids
//   optimal - minimum error, then fewest tiles, then lexicographic ids
inline SelectionResult exact_select(const TilingProblem& problem, std::size_t budget, ExactMode how,
                                    ErrorMode mode = ErrorMode::coverable, std::size_t bound = kDefaultExactBound) {
  if (problem.size() > bound)
    throw BoundExceeded("exact_select: " + std::to_string(problem.size()) + " candidates exceed bound " +
                        std::to_string(bound));
  SelectionResult result;
  result.selections = detail::ExactSearch(problem, budget, mode, how).run();
  std::sort(result.selections.begin(), result.selections.end(),
            [](const TileSelection& a, const TileSelection& b) { return a.chosen < b.chosen; });
  result.status = result.selections.empty() ? SelectStatus::unsatisfiable : SelectStatus::ok;
  return result;
}

}  // namespace cpm
