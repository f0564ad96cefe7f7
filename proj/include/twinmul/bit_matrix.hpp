#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "twinmul/errors.hpp"

namespace twinmul {

inline constexpr std::size_t kWordBits = 64;

// Row-major bit-packed 0/1 matrix. Bits within a word are little-endian
// (column c lives in word c/64, bit c%64). Padding bits of the last word of
// each row are kept zero at all times, so popcount-style kernels never mask.
class BitMatrix {
 public:
  BitMatrix(std::size_t n_rows, std::size_t n_cols)
      : n_rows_(n_rows),
        n_cols_(n_cols),
        words_per_row_((n_cols + kWordBits - 1) / kWordBits),
        words_(n_rows * ((n_cols + kWordBits - 1) / kWordBits), 0) {
    if (n_rows == 0 || n_cols == 0)
      throw dimension_error("BitMatrix: dimensions must be positive");
  }

  // Rows given as strings of '0'/'1', all the same length.
  static BitMatrix from_rows(const std::vector<std::string>& rows);

  // Test convenience: {{1,0},{0,1}}.
  static BitMatrix from_bits(std::initializer_list<std::initializer_list<int>> rows);

  static BitMatrix identity(std::size_t n);

  std::size_t n_rows() const { return n_rows_; }
  std::size_t n_cols() const { return n_cols_; }
  std::size_t words_per_row() const { return words_per_row_; }

  bool get(std::size_t r, std::size_t c) const {
    check_index(r, c);
    return (words_[r * words_per_row_ + c / kWordBits] >> (c % kWordBits)) & 1u;
  }

  void set(std::size_t r, std::size_t c, bool value) {
    check_index(r, c);
    std::uint64_t& w = words_[r * words_per_row_ + c / kWordBits];
    const std::uint64_t mask = std::uint64_t{1} << (c % kWordBits);
    if (value)
      w |= mask;
    else
      w &= ~mask;
  }

  void flip(std::size_t r, std::size_t c) {
    check_index(r, c);
    words_[r * words_per_row_ + c / kWordBits] ^= std::uint64_t{1} << (c % kWordBits);
  }

  std::span<const std::uint64_t> row_words(std::size_t r) const {
    if (r >= n_rows_) throw index_error("BitMatrix: row index out of range");
    return {words_.data() + r * words_per_row_, words_per_row_};
  }

  std::size_t row_ones(std::size_t r) const;
  std::size_t ones_count() const;

  // Hamming distance between two rows of this matrix.
  std::size_t row_distance(std::size_t r1, std::size_t r2) const;

  BitMatrix transposed() const;

  bool operator==(const BitMatrix& other) const = default;

 private:
  void check_index(std::size_t r, std::size_t c) const {
    if (r >= n_rows_ || c >= n_cols_) throw index_error("BitMatrix: index out of range");
  }

  std::size_t n_rows_;
  std::size_t n_cols_;
  std::size_t words_per_row_;
  std::vector<std::uint64_t> words_;
};

// Word-parallel Hamming distance between equally long packed bit rows.
std::size_t hamming_distance(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

// A visiting order of n items: position i holds item map[i].
struct Permutation {
  std::vector<std::size_t> map;

  static Permutation identity(std::size_t n);
  std::size_t size() const { return map.size(); }
  // True iff this is a permutation of 0..n-1.
  bool valid_for(std::size_t n) const;
};

// Sum of Hamming distances between consecutive rows in the order pi.
std::size_t row_hamming_sum(const BitMatrix& m, const Permutation& pi);
// Same for columns (distances taken in the transposed matrix).
std::size_t col_hamming_sum(const BitMatrix& m, const Permutation& pi);

// Copy with the given (row, col) entries toggled.
BitMatrix flip_entries(const BitMatrix& m,
                       const std::vector<std::pair<std::size_t, std::size_t>>& positions);

// Copy with rows and columns rearranged: result(i, j) = m(rows.map[i], cols.map[j]).
BitMatrix permuted(const BitMatrix& m, const Permutation& rows, const Permutation& cols);

// u[i] = v[0] + ... + v[i].
template <typename T>
std::vector<T> prefix_sum(std::span<const T> v) {
  std::vector<T> u(v.size());
  if (v.empty()) return u;
  u[0] = v[0];
  for (std::size_t i = 1; i < v.size(); ++i) u[i] = u[i - 1] + v[i];
  return u;
}

// Inverse of prefix_sum: d[0] = u[0], d[i] = u[i] - u[i-1].
template <typename T>
std::vector<T> difference(std::span<const T> u) {
  std::vector<T> d(u.size());
  if (u.empty()) return d;
  d[0] = u[0];
  for (std::size_t i = 1; i < u.size(); ++i) d[i] = u[i] - u[i - 1];
  return d;
}

// Plain row-major numeric matrix for product right-hand sides and results.
template <typename T>
class DenseMatrix {
 public:
  DenseMatrix(std::size_t n_rows, std::size_t n_cols)
      : n_rows_(n_rows), n_cols_(n_cols), data_(n_rows * n_cols, T{}) {
    if (n_rows == 0 || n_cols == 0)
      throw dimension_error("DenseMatrix: dimensions must be positive");
  }

  std::size_t n_rows() const { return n_rows_; }
  std::size_t n_cols() const { return n_cols_; }

  T& at(std::size_t r, std::size_t c) { return data_[check(r, c)]; }
  const T& at(std::size_t r, std::size_t c) const { return data_[check(r, c)]; }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out(n_rows_);
    for (std::size_t r = 0; r < n_rows_; ++r) out[r] = at(r, c);
    return out;
  }

  void set_column(std::size_t c, std::span<const T> col) {
    if (col.size() != n_rows_) throw dimension_error("DenseMatrix: column length mismatch");
    for (std::size_t r = 0; r < n_rows_; ++r) at(r, c) = col[r];
  }

  bool operator==(const DenseMatrix& other) const = default;

 private:
  std::size_t check(std::size_t r, std::size_t c) const {
    if (r >= n_rows_ || c >= n_cols_) throw index_error("DenseMatrix: index out of range");
    return r * n_cols_ + c;
  }

  std::size_t n_rows_;
  std::size_t n_cols_;
  std::vector<T> data_;
};

}  // namespace twinmul
