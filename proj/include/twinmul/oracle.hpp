#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "twinmul/bit_matrix.hpp"
#include "twinmul/rect_decomp.hpp"

// Reference implementations used as ground truth by the tests. Deliberately
// simple and independent of the production engines.
namespace twinmul::oracle {

// x_i = sum over set columns j of row i of v_j, iterating directly over the
// set bits of each row; row-major accumulation.
template <typename T>
std::vector<T> naive_mv(const BitMatrix& m, std::span<const T> v) {
  if (v.size() != m.n_cols()) throw dimension_error("naive_mv: vector length mismatch");
  std::vector<T> x(m.n_rows(), T{});
  for (std::size_t r = 0; r < m.n_rows(); ++r) {
    T acc{};
    const auto words = m.row_words(r);
    for (std::size_t w = 0; w < words.size(); ++w) {
      std::uint64_t bits = words[w];
      while (bits != 0) {
        const std::size_t c = w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
        acc += v[c];
        bits &= bits - 1;
      }
    }
    x[r] = acc;
  }
  return x;
}

// Same product accumulated column-major; used to cross-check accumulation
// order independence in tests.
template <typename T>
std::vector<T> naive_mv_column_major(const BitMatrix& m, std::span<const T> v) {
  if (v.size() != m.n_cols()) throw dimension_error("naive_mv: vector length mismatch");
  std::vector<T> x(m.n_rows(), T{});
  for (std::size_t c = 0; c < m.n_cols(); ++c)
    for (std::size_t r = 0; r < m.n_rows(); ++r)
      if (m.get(r, c)) x[r] += v[c];
  return x;
}

template <typename T>
std::vector<T> naive_vt_m(const BitMatrix& m, std::span<const T> v) {
  if (v.size() != m.n_rows()) throw dimension_error("naive_vt_m: vector length mismatch");
  std::vector<T> x(m.n_cols(), T{});
  for (std::size_t r = 0; r < m.n_rows(); ++r) {
    const auto words = m.row_words(r);
    for (std::size_t w = 0; w < words.size(); ++w) {
      std::uint64_t bits = words[w];
      while (bits != 0) {
        const std::size_t c = w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
        x[c] += v[r];
        bits &= bits - 1;
      }
    }
  }
  return x;
}

template <typename T>
DenseMatrix<T> naive_matmul(const BitMatrix& a, const DenseMatrix<T>& b) {
  if (b.n_rows() != a.n_cols()) throw dimension_error("naive_matmul: inner dimensions differ");
  DenseMatrix<T> out(a.n_rows(), b.n_cols());
  for (std::size_t j = 0; j < b.n_cols(); ++j) {
    const std::vector<T> col = b.column(j);
    const std::vector<T> x = naive_mv<T>(a, col);
    out.set_column(j, x);
  }
  return out;
}

// Sum over polygons of the uncovered region of max(1, ceil(C/2) - H + 1),
// a lower bound on the size of any disjoint rectangle partition.
std::size_t partition_lower_bound(const BitMatrix& m);

struct PartitionResult {
  std::size_t size = 0;
  std::vector<Rect> rects;
};

// Exact minimum disjoint all-ones rectangle partition by branch and bound.
// Anchors at the first uncovered 1-cell in row-major order (any valid
// partition's covering rectangle has its top-left corner there), branches
// over every feasible anchored rectangle largest-area-first, prunes with the
// incumbent and with the per-polygon lower bound. Matrices beyond cell_budget
// cells are rejected with a capacity error naming the bound.
PartitionResult optimal_rect_partition(const BitMatrix& m, std::size_t cell_budget = 36);

// Exact minimum-weight Hamiltonian path over the complete row graph under
// Hamming distance (free endpoints), by Held-Karp dynamic programming.
// Rejects matrices with more than max_rows rows.
std::pair<Permutation, std::size_t> optimal_row_ordering(const BitMatrix& m,
                                                         std::size_t max_rows = 15);

}  // namespace twinmul::oracle
