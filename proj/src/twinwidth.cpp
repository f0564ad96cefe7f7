#include "twinmul/twinwidth.hpp"

#include <algorithm>
#include <string>

namespace twinmul {

namespace {

enum CellState : std::uint8_t { kConst0 = 0, kConst1 = 1, kMixedCell = 2 };

inline CellState combine(CellState a, CellState b) {
  return a == b ? a : kMixedCell;
}

// 2D prefix sums of the row-difference and column-difference indicator grids;
// gives O(1) "all rows equal" / "all columns equal" range queries.
struct DiffPrefix {
  std::size_t nr, nc;
  std::vector<std::uint32_t> row_diff;  // (nr) x (nc+1) prefixes over [r][c]=M(r,c)!=M(r+1,c)
  std::vector<std::uint32_t> col_diff;  // (nr+1) x (nc) prefixes over [r][c]=M(r,c)!=M(r,c+1)

  explicit DiffPrefix(const BitMatrix& m) : nr(m.n_rows()), nc(m.n_cols()) {
    row_diff.assign(nr * (nc + 1), 0);
    for (std::size_t r = 0; r + 1 < nr; ++r) {
      std::uint32_t run = 0;
      for (std::size_t c = 0; c < nc; ++c) {
        run += m.get(r, c) != m.get(r + 1, c) ? 1u : 0u;
        row_diff[r * (nc + 1) + c + 1] = run;
      }
    }
    // Turn per-row prefixes into 2D prefixes down the rows.
    for (std::size_t r = 1; r + 1 < nr; ++r)
      for (std::size_t c = 0; c <= nc; ++c)
        row_diff[r * (nc + 1) + c] += row_diff[(r - 1) * (nc + 1) + c];

    col_diff.assign((nr + 1) * nc, 0);
    for (std::size_t c = 0; c + 1 < nc; ++c) {
      std::uint32_t run = 0;
      for (std::size_t r = 0; r < nr; ++r) {
        run += m.get(r, c) != m.get(r, c + 1) ? 1u : 0u;
        col_diff[(r + 1) * nc + c] = run;
      }
    }
    for (std::size_t c = 1; c + 1 < nc; ++c)
      for (std::size_t r = 0; r <= nr; ++r)
        col_diff[r * nc + c] += col_diff[r * nc + c - 1];
  }

  bool rows_equal(const Rect& cell) const {
    if (cell.row_lo == cell.row_hi) return true;
    const auto sum_row = [&](std::size_t r) {
      return row_diff[r * (nc + 1) + cell.col_hi + 1] - row_diff[r * (nc + 1) + cell.col_lo];
    };
    const std::uint32_t upto_hi = sum_row(cell.row_hi - 1);
    const std::uint32_t upto_lo = cell.row_lo == 0 ? 0 : sum_row(cell.row_lo - 1);
    return upto_hi == upto_lo;
  }

  bool cols_equal(const Rect& cell) const {
    if (cell.col_lo == cell.col_hi) return true;
    const auto sum_col = [&](std::size_t c) {
      return col_diff[(cell.row_hi + 1) * nc + c] - col_diff[cell.row_lo * nc + c];
    };
    const std::uint32_t upto_hi = sum_col(cell.col_hi - 1);
    const std::uint32_t upto_lo = cell.col_lo == 0 ? 0 : sum_col(cell.col_lo - 1);
    return upto_hi == upto_lo;
  }
};

void check_cell(const BitMatrix& m, const Rect& cell) {
  if (cell.row_hi < cell.row_lo || cell.col_hi < cell.col_lo)
    throw structure_error("is_mixed: empty or inverted cell interval");
  if (cell.row_hi >= m.n_rows() || cell.col_hi >= m.n_cols())
    throw index_error("is_mixed: cell exceeds the matrix bounds");
}

std::uint64_t divisions_count(std::size_t n, std::size_t d) {
  // C(n-1, d-1), saturating at 2^64-1.
  if (d == 0 || d > n) return 0;
  const std::size_t k = std::min(d - 1, n - d);
  unsigned __int128 num = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    num = num * (n - 1 - k + i) / i;
    if (num > ~std::uint64_t{0}) return ~std::uint64_t{0};
  }
  return static_cast<std::uint64_t>(num);
}

}  // namespace

std::size_t max_wideness(const BitMatrix& m, const MergeSequence& seq) {
  const std::size_t n = m.n_rows();
  if (m.n_cols() != n)
    throw dimension_error("max_wideness: merge sequences apply to square matrices");
  if (seq.n != n)
    throw structure_error("max_wideness: sequence is for size " + std::to_string(seq.n) +
                          ", matrix is " + std::to_string(n));
  const std::size_t expected = n >= 1 ? 2 * n - 2 : 0;
  if (seq.ops.size() != expected)
    throw structure_error("max_wideness: expected " + std::to_string(expected) + " ops, got " +
                          std::to_string(seq.ops.size()));

  // Cell states live in a fixed n x n slot grid indexed by block ids; a merge
  // keeps the left block's id. Non-constant counts per block are maintained
  // incrementally; only the merged row (column) changes state.
  std::vector<std::uint8_t> state(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      state[r * n + c] = m.get(r, c) ? kConst1 : kConst0;

  std::vector<std::size_t> alive_rows(n), alive_cols(n);
  for (std::size_t i = 0; i < n; ++i) alive_rows[i] = alive_cols[i] = i;
  std::vector<std::size_t> row_count(n, 0), col_count(n, 0);

  std::size_t widest = 0;  // the all-singletons division has no mixed cells

  for (std::size_t t = 0; t < seq.ops.size(); ++t) {
    const MergeOp& op = seq.ops[t];
    auto& alive = op.axis == Axis::row ? alive_rows : alive_cols;
    if (op.pos + 1 >= alive.size())
      throw structure_error("max_wideness: op " + std::to_string(t) + ": position " +
                            std::to_string(op.pos) + " has no right neighbour (" +
                            std::to_string(alive.size()) + " blocks)");

    const std::size_t keep = alive[op.pos];
    const std::size_t gone = alive[op.pos + 1];
    const auto adjust = [](std::size_t& count, bool now, bool was_a, bool was_b) {
      const std::ptrdiff_t delta = std::ptrdiff_t{now} - std::ptrdiff_t{was_a} - std::ptrdiff_t{was_b};
      count = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(count) + delta);
    };
    if (op.axis == Axis::row) {
      row_count[keep] = 0;
      for (const std::size_t c : alive_cols) {
        const bool was_keep = state[keep * n + c] == kMixedCell;
        const bool was_gone = state[gone * n + c] == kMixedCell;
        const CellState merged =
            combine(static_cast<CellState>(state[keep * n + c]),
                    static_cast<CellState>(state[gone * n + c]));
        state[keep * n + c] = merged;
        const bool now = merged == kMixedCell;
        if (now) row_count[keep] += 1;
        adjust(col_count[c], now, was_keep, was_gone);
      }
    } else {
      col_count[keep] = 0;
      for (const std::size_t r : alive_rows) {
        const bool was_keep = state[r * n + keep] == kMixedCell;
        const bool was_gone = state[r * n + gone] == kMixedCell;
        const CellState merged =
            combine(static_cast<CellState>(state[r * n + keep]),
                    static_cast<CellState>(state[r * n + gone]));
        state[r * n + keep] = merged;
        const bool now = merged == kMixedCell;
        if (now) col_count[keep] += 1;
        adjust(row_count[r], now, was_keep, was_gone);
      }
    }
    alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(op.pos) + 1);

    for (const std::size_t r : alive_rows) widest = std::max(widest, row_count[r]);
    for (const std::size_t c : alive_cols) widest = std::max(widest, col_count[c]);
  }
  return widest;
}

bool verify_wideness(const BitMatrix& m, const MergeSequence& seq, std::size_t d) {
  return max_wideness(m, seq) <= d;
}

bool is_mixed(const BitMatrix& m, const Rect& cell) {
  check_cell(m, cell);
  bool rows_equal = true;
  for (std::size_t r = cell.row_lo; r < cell.row_hi && rows_equal; ++r)
    for (std::size_t c = cell.col_lo; c <= cell.col_hi; ++c)
      if (m.get(r, c) != m.get(r + 1, c)) {
        rows_equal = false;
        break;
      }
  if (rows_equal) return false;
  bool cols_equal = true;
  for (std::size_t r = cell.row_lo; r <= cell.row_hi && cols_equal; ++r)
    for (std::size_t c = cell.col_lo; c < cell.col_hi; ++c)
      if (m.get(r, c) != m.get(r, c + 1)) {
        cols_equal = false;
        break;
      }
  return !cols_equal;
}

std::size_t corner_count(const BitMatrix& m) {
  std::size_t total = 0;
  for (std::size_t r = 0; r + 1 < m.n_rows(); ++r) {
    for (std::size_t c = 0; c + 1 < m.n_cols(); ++c) {
      const bool a = m.get(r, c);
      const bool b = m.get(r, c + 1);
      const bool d = m.get(r + 1, c);
      const bool e = m.get(r + 1, c + 1);
      const bool rows_differ = a != d || b != e;
      const bool cols_differ = a != b || d != e;
      if (rows_differ && cols_differ) total += 1;
    }
  }
  return total;
}

MixedFreeResult mixed_free_check(const BitMatrix& m, std::size_t d,
                                 std::uint64_t division_budget) {
  const std::size_t n = m.n_rows();
  if (m.n_cols() != n)
    throw dimension_error("mixed_free_check: requires a square matrix");
  if (d == 0 || d > n)
    throw dimension_error("mixed_free_check: d must be in 1..n");

  const std::uint64_t per_axis = divisions_count(n, d);
  const unsigned __int128 total = static_cast<unsigned __int128>(per_axis) * per_axis;
  if (total > division_budget)
    throw capacity_error("mixed_free_check: C(n-1,d-1)^2 = " + std::to_string(per_axis) + "^2" +
                         " candidate divisions exceed the budget of " +
                         std::to_string(division_budget));

  const DiffPrefix prefix(m);

  // Cut vectors hold the d-1 interior cut positions (an interval ends before
  // each cut). Enumerate combinations in lexicographic order.
  std::vector<std::size_t> row_cuts(d - 1);
  const auto first_combination = [&](std::vector<std::size_t>& cuts) {
    for (std::size_t i = 0; i < cuts.size(); ++i) cuts[i] = i + 1;
  };
  const auto next_combination = [&](std::vector<std::size_t>& cuts) -> bool {
    if (cuts.empty()) return false;
    std::size_t i = cuts.size();
    while (i-- > 0) {
      if (cuts[i] < n - (cuts.size() - i)) {
        ++cuts[i];
        for (std::size_t j = i + 1; j < cuts.size(); ++j) cuts[j] = cuts[j - 1] + 1;
        return true;
      }
    }
    return false;
  };

  const auto interval = [&](const std::vector<std::size_t>& cuts, std::size_t block)
      -> std::pair<std::size_t, std::size_t> {
    const std::size_t lo = block == 0 ? 0 : cuts[block - 1];
    const std::size_t hi = block == cuts.size() ? n - 1 : cuts[block] - 1;
    return {lo, hi};
  };

  first_combination(row_cuts);
  do {
    std::vector<std::size_t> cols(d - 1);
    first_combination(cols);
    do {
      bool all_mixed = true;
      for (std::size_t bi = 0; bi < d && all_mixed; ++bi) {
        const auto [rlo, rhi] = interval(row_cuts, bi);
        for (std::size_t bj = 0; bj < d; ++bj) {
          const auto [clo, chi] = interval(cols, bj);
          const Rect cell{rlo, rhi, clo, chi};
          if (prefix.rows_equal(cell) || prefix.cols_equal(cell)) {
            all_mixed = false;
            break;
          }
        }
      }
      if (all_mixed) {
        MixedFreeResult res;
        res.mixed_free = false;
        res.witness = std::make_pair(row_cuts, cols);
        return res;
      }
    } while (next_combination(cols));
  } while (next_combination(row_cuts));

  return MixedFreeResult{};
}

MergeSequence tricyclic_merge_sequence(std::size_t level) {
  MergeSequence seq;
  seq.n = 2;
  seq.ops = {{Axis::row, 0}, {Axis::col, 0}};
  for (std::size_t k = 1; k <= level; ++k) {
    MergeSequence next;
    next.n = seq.n * 3;
    next.ops.reserve(3 * seq.ops.size() + 4);
    // Contract the three diagonal blocks in turn. While block b is being
    // contracted, exactly b fully merged blocks sit to its left on each axis,
    // so the recursive positions shift by b.
    for (std::size_t b = 0; b < 3; ++b)
      for (const MergeOp& op : seq.ops) next.ops.push_back({op.axis, op.pos + b});
    // Residual 3x3 block division: fold rows left to right, then columns.
    next.ops.push_back({Axis::row, 0});
    next.ops.push_back({Axis::row, 0});
    next.ops.push_back({Axis::col, 0});
    next.ops.push_back({Axis::col, 0});
    seq = std::move(next);
  }
  return seq;
}

}  // namespace twinmul
