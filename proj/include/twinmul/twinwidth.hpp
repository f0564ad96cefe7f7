#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "twinmul/bit_matrix.hpp"
#include "twinmul/rect_decomp.hpp"

namespace twinmul {

enum class Axis : std::uint8_t { row, col };

// Merge the adjacent intervals at positions pos and pos+1 (0-based) of the
// current row or column division.
struct MergeOp {
  Axis axis;
  std::size_t pos;

  bool operator==(const MergeOp&) const = default;
};

// A contraction schedule for an n x n matrix: 2n-2 merges taking the
// all-singletons division to the single-cell division.
struct MergeSequence {
  std::size_t n = 0;
  std::vector<MergeOp> ops;
};

// Replays the sequence on m and returns the largest number of non-constant
// cells found in any row block or column block of any intermediate division
// (the all-singletons start included; its count is zero). Structural problems
// (wrong op count, position out of range) raise a structure error naming the
// op index.
std::size_t max_wideness(const BitMatrix& m, const MergeSequence& seq);

// max_wideness(m, seq) <= d.
bool verify_wideness(const BitMatrix& m, const MergeSequence& seq, std::size_t d);

// A cell is mixed when neither all its rows nor all its columns are equal;
// equivalently, when it contains a 2x2 contiguous submatrix whose rows and
// columns both differ (a corner).
bool is_mixed(const BitMatrix& m, const Rect& cell);

// Number of 2x2 contiguous submatrices that are corners.
std::size_t corner_count(const BitMatrix& m);

struct MixedFreeResult {
  bool mixed_free = true;
  // When not mixed-free: interior cut positions (row index / col index before
  // which the division is cut) of a d-division whose cells are all mixed.
  std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> witness;
};

// Exhaustively checks whether some d-division of m has all d*d cells mixed.
// The number of candidate divisions C(n-1, d-1)^2 must not exceed
// division_budget, otherwise a capacity error names the bound.
MixedFreeResult mixed_free_check(const BitMatrix& m, std::size_t d,
                                 std::uint64_t division_budget = 10'000'000);

// Merge schedule of the recursive tricyclic family (gen_tricyclic): contracts
// the three diagonal blocks in turn via the level-1 schedule, then the
// residual 3x3 block division rows first, then columns. Its wideness on the
// matching matrix is at most 3 at every level.
MergeSequence tricyclic_merge_sequence(std::size_t level);

}  // namespace twinmul
