#include "twinmul/bit_matrix.hpp"

#include <bit>

namespace twinmul {

BitMatrix BitMatrix::from_rows(const std::vector<std::string>& rows) {
  if (rows.empty()) throw dimension_error("BitMatrix::from_rows: no rows");
  BitMatrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.n_cols_)
      throw dimension_error("BitMatrix::from_rows: ragged rows");
    for (std::size_t c = 0; c < m.n_cols_; ++c) {
      const char ch = rows[r][c];
      if (ch != '0' && ch != '1')
        throw parse_error("BitMatrix::from_rows: entries must be '0' or '1'");
      if (ch == '1') m.set(r, c, true);
    }
  }
  return m;
}

BitMatrix BitMatrix::from_bits(std::initializer_list<std::initializer_list<int>> rows) {
  if (rows.size() == 0) throw dimension_error("BitMatrix::from_bits: no rows");
  BitMatrix m(rows.size(), rows.begin()->size());
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != m.n_cols_) throw dimension_error("BitMatrix::from_bits: ragged rows");
    std::size_t c = 0;
    for (int bit : row) {
      if (bit != 0 && bit != 1) throw parse_error("BitMatrix::from_bits: entries must be 0 or 1");
      if (bit) m.set(r, c, true);
      ++c;
    }
    ++r;
  }
  return m;
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

std::size_t BitMatrix::row_ones(std::size_t r) const {
  std::size_t total = 0;
  for (std::uint64_t w : row_words(r)) total += std::popcount(w);
  return total;
}

std::size_t BitMatrix::ones_count() const {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += std::popcount(w);
  return total;
}

std::size_t BitMatrix::row_distance(std::size_t r1, std::size_t r2) const {
  return hamming_distance(row_words(r1), row_words(r2));
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix t(n_cols_, n_rows_);
  for (std::size_t r = 0; r < n_rows_; ++r) {
    const std::uint64_t* words = words_.data() + r * words_per_row_;
    for (std::size_t wi = 0; wi < words_per_row_; ++wi) {
      std::uint64_t w = words[wi];
      while (w != 0) {
        const int b = std::countr_zero(w);
        w &= w - 1;
        t.set(wi * kWordBits + static_cast<std::size_t>(b), r, true);
      }
    }
  }
  return t;
}

std::size_t hamming_distance(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  if (a.size() != b.size()) throw dimension_error("hamming_distance: length mismatch");
  std::size_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) total += std::popcount(a[i] ^ b[i]);
  return total;
}

Permutation Permutation::identity(std::size_t n) {
  Permutation p;
  p.map.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.map[i] = i;
  return p;
}

bool Permutation::valid_for(std::size_t n) const {
  if (map.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (std::size_t v : map) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

std::size_t row_hamming_sum(const BitMatrix& m, const Permutation& pi) {
  if (!pi.valid_for(m.n_rows()))
    throw dimension_error("row_hamming_sum: not a permutation of the row set");
  std::size_t total = 0;
  for (std::size_t i = 0; i + 1 < pi.size(); ++i)
    total += m.row_distance(pi.map[i], pi.map[i + 1]);
  return total;
}

std::size_t col_hamming_sum(const BitMatrix& m, const Permutation& pi) {
  return row_hamming_sum(m.transposed(), pi);
}

BitMatrix flip_entries(const BitMatrix& m,
                       const std::vector<std::pair<std::size_t, std::size_t>>& positions) {
  BitMatrix out = m;
  for (const auto& [r, c] : positions) out.flip(r, c);
  return out;
}

BitMatrix permuted(const BitMatrix& m, const Permutation& rows, const Permutation& cols) {
  if (!rows.valid_for(m.n_rows()) || !cols.valid_for(m.n_cols()))
    throw dimension_error("permuted: invalid permutation");
  BitMatrix out(m.n_rows(), m.n_cols());
  for (std::size_t r = 0; r < m.n_rows(); ++r)
    for (std::size_t c = 0; c < m.n_cols(); ++c)
      if (m.get(rows.map[r], cols.map[c])) out.set(r, c, true);
  return out;
}

}  // namespace twinmul
