#pragma once

#include <span>
#include <vector>

#include "twinmul/rect_decomp.hpp"

namespace twinmul {

// Matrix-vector product through a rectangle decomposition, O(n + |rects|)
// ring operations: u <- prefix(v); each rect [a,b]x[c,d] contributes
// q = u_d - u_{c-1} once to the difference array at row a (and removes it
// after row b); x <- prefix of the difference array.
template <typename T>
std::vector<T> rect_mv(const RectDecomposition& d, std::span<const T> v) {
  if (v.size() != d.n_cols) throw dimension_error("rect_mv: vector length mismatch");

  // u[j+1] = v[0] + ... + v[j]; u[0] = 0 stands in for the empty prefix.
  std::vector<T> u(d.n_cols + 1, T{});
  u[1] = v[0];
  for (std::size_t j = 1; j < d.n_cols; ++j) u[j + 1] = u[j] + v[j];

  std::vector<T> y(d.n_rows, T{});
  for (const Rect& r : d.rects) {
    T q = u[r.col_hi + 1] - u[r.col_lo];
    y[r.row_lo] += q;
    if (r.row_hi + 1 < d.n_rows) y[r.row_hi + 1] -= q;
  }

  std::vector<T> x(d.n_rows);
  x[0] = y[0];
  for (std::size_t i = 1; i < d.n_rows; ++i) x[i] = x[i - 1] + y[i];
  return x;
}

// Row-vector product v^T M: range sums come from the row intervals and are
// scattered over the column intervals.
template <typename T>
std::vector<T> rect_vt_m(const RectDecomposition& d, std::span<const T> v) {
  if (v.size() != d.n_rows) throw dimension_error("rect_vt_m: vector length mismatch");

  std::vector<T> u(d.n_rows + 1, T{});
  u[1] = v[0];
  for (std::size_t i = 1; i < d.n_rows; ++i) u[i + 1] = u[i] + v[i];

  std::vector<T> y(d.n_cols, T{});
  for (const Rect& r : d.rects) {
    T q = u[r.row_hi + 1] - u[r.row_lo];
    y[r.col_lo] += q;
    if (r.col_hi + 1 < d.n_cols) y[r.col_hi + 1] -= q;
  }

  std::vector<T> x(d.n_cols);
  x[0] = y[0];
  for (std::size_t j = 1; j < d.n_cols; ++j) x[j] = x[j - 1] + y[j];
  return x;
}

template <typename T>
DenseMatrix<T> rect_matmul(const RectDecomposition& d, const DenseMatrix<T>& b) {
  if (b.n_rows() != d.n_cols) throw dimension_error("rect_matmul: inner dimensions differ");
  DenseMatrix<T> out(d.n_rows, b.n_cols());
  for (std::size_t j = 0; j < b.n_cols(); ++j) {
    const std::vector<T> col = b.column(j);
    out.set_column(j, rect_mv<T>(d, col));
  }
  return out;
}

// Owning handle: decomposes the matrix once and answers products from the
// rectangle structure alone.
class RectHandle {
 public:
  // Decomposes m and cross-checks the result; a failed check is an internal
  // invariant violation.
  static RectHandle preprocess(const BitMatrix& m) {
    RectDecomposition d = decompose(m);
    if (auto issue = validate(d, m))
      throw validation_error("rect preprocess: invalid decomposition: " + describe(*issue));
    return RectHandle(std::move(d));
  }

  // Wraps an externally supplied decomposition (e.g. read from a file).
  explicit RectHandle(RectDecomposition d) : d_(std::move(d)) {}

  const RectDecomposition& decomposition() const { return d_; }
  std::size_t structure_size() const { return d_.rects.size(); }

  template <typename T>
  std::vector<T> mv(std::span<const T> v) const {
    return rect_mv<T>(d_, v);
  }

  template <typename T>
  std::vector<T> vt_m(std::span<const T> v) const {
    return rect_vt_m<T>(d_, v);
  }

  template <typename T>
  DenseMatrix<T> matmul(const DenseMatrix<T>& b) const {
    return rect_matmul<T>(d_, b);
  }

 private:
  RectDecomposition d_;
};

}  // namespace twinmul
