#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "twinmul/bit_matrix.hpp"

namespace twinmul {

// Product plan built from a row ordering: the product value for each row is
// obtained from the previous row's value by applying the signed column
// deltas where the two rows differ. Total work per product is one sum for
// the base row plus one ring operation per unit of realized Hamming weight.
struct HammingPlan {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  Permutation order;                    // visiting order of the rows
  std::vector<std::uint64_t> base_row;  // packed bits of row order[0]

  struct Delta {
    std::uint32_t col;
    std::int32_t sign;  // +1 where the bit turns 0 -> 1, -1 where 1 -> 0
  };
  std::vector<Delta> deltas;            // transitions, flattened
  std::vector<std::size_t> offsets;     // transition t = [offsets[t], offsets[t+1]); size n_rows
  std::size_t total_weight = 0;         // == deltas.size() == realized Hamming sum
};

// Row ordering from an exact minimum spanning tree of the complete row graph
// under Hamming distance (Prim, word-parallel distances), walked in DFS
// preorder from row 0 with children sorted by (edge weight, row index).
// The realized Hamming sum of this order is at most twice the optimum over
// all orderings (preorder shortcutting of the doubled tree walk; tree weight
// lower-bounds any Hamiltonian path).
Permutation mst_order(const BitMatrix& m);

// Deltas realizing the given ordering; columns ascending within a transition.
HammingPlan build_plan(const BitMatrix& m, const Permutation& pi);

// build_plan(m, mst_order(m)).
HammingPlan hamming_preprocess(const BitMatrix& m);

// Realized row Hamming sum of the MST order, an upper bound within 2x of the
// best achievable coherence.
std::size_t coherence_upper_bound(const BitMatrix& m);

template <typename T>
std::vector<T> hamming_mv(const HammingPlan& p, std::span<const T> v) {
  if (v.size() != p.n_cols) throw dimension_error("hamming_mv: vector length mismatch");
  std::vector<T> x(p.n_rows);

  T s{};
  bool first = true;
  for (std::size_t wi = 0; wi < p.base_row.size(); ++wi) {
    std::uint64_t w = p.base_row[wi];
    while (w != 0) {
      const std::size_t c = wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
      w &= w - 1;
      if (first) {
        s = v[c];
        first = false;
      } else {
        s += v[c];
      }
    }
  }
  x[p.order.map[0]] = s;

  for (std::size_t t = 0; t + 1 < p.n_rows; ++t) {
    for (std::size_t k = p.offsets[t]; k < p.offsets[t + 1]; ++k) {
      const HammingPlan::Delta& d = p.deltas[k];
      if (d.sign > 0)
        s += v[d.col];
      else
        s -= v[d.col];
    }
    x[p.order.map[t + 1]] = s;
  }
  return x;
}

template <typename T>
DenseMatrix<T> hamming_matmul(const HammingPlan& p, const DenseMatrix<T>& b) {
  if (b.n_rows() != p.n_cols) throw dimension_error("hamming_matmul: inner dimensions differ");
  DenseMatrix<T> out(p.n_rows, b.n_cols());
  for (std::size_t j = 0; j < b.n_cols(); ++j) {
    const std::vector<T> col = b.column(j);
    out.set_column(j, hamming_mv<T>(p, col));
  }
  return out;
}

// Owning handle mirroring RectHandle: plans for rows once (and for columns
// lazily is not needed; v^T M uses a transposed plan built up front).
class HammingHandle {
 public:
  static HammingHandle preprocess(const BitMatrix& m) {
    return HammingHandle(hamming_preprocess(m), hamming_preprocess(m.transposed()));
  }

  const HammingPlan& row_plan() const { return rows_; }
  std::size_t structure_size() const { return rows_.total_weight; }

  template <typename T>
  std::vector<T> mv(std::span<const T> v) const {
    return hamming_mv<T>(rows_, v);
  }

  template <typename T>
  std::vector<T> vt_m(std::span<const T> v) const {
    return hamming_mv<T>(cols_, v);
  }

  template <typename T>
  DenseMatrix<T> matmul(const DenseMatrix<T>& b) const {
    return hamming_matmul<T>(rows_, b);
  }

 private:
  HammingHandle(HammingPlan rows, HammingPlan cols)
      : rows_(std::move(rows)), cols_(std::move(cols)) {}

  HammingPlan rows_;
  HammingPlan cols_;
};

}  // namespace twinmul
