#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "twinmul/bit_matrix.hpp"
#include "twinmul/rect_decomp.hpp"
#include "twinmul/twinwidth.hpp"

namespace twinmul {

// Text formats. All are line-oriented, 1-based on disk, 0-based in memory.
//
//   dense matrix     "R C"            then R lines of C contiguous 0/1 chars
//   sparse matrix    "R C NNZ sparse" then NNZ lines "r c" of 1-positions
//   numeric matrix   "R C numeric"    then R rows of C numbers
//   vector           "N"              then N lines, one number each
//   decomposition    "R C K"          then K lines "r1 r2 c1 c2", inclusive
//   row ordering     "N"              then N lines, a permutation of 1..N
//   merge sequence   "N"              then 2N-2 lines "R p" or "C p": merge
//                    the p-th and (p+1)-th row (R) or column (C) blocks
//
// Readers throw parse_error naming the offending line.

BitMatrix read_matrix(std::istream& in);
BitMatrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const BitMatrix& m);
void write_matrix_sparse(std::ostream& out, const BitMatrix& m);
void write_matrix_file(const std::string& path, const BitMatrix& m, bool sparse = false);

std::vector<std::int64_t> read_vector_i64(std::istream& in);
std::vector<std::int64_t> read_vector_i64_file(const std::string& path);
std::vector<double> read_vector_f64(std::istream& in);
std::vector<double> read_vector_f64_file(const std::string& path);
// Integer entries stay integers; any fractional or exponent-form entry
// promotes the whole vector to double, so products mirror their inputs.
using NumericVector = std::variant<std::vector<std::int64_t>, std::vector<double>>;
NumericVector read_vector_any(std::istream& in);
NumericVector read_vector_any_file(const std::string& path);
void write_vector(std::ostream& out, std::span<const std::int64_t> v);
void write_vector(std::ostream& out, std::span<const double> v);

DenseMatrix<std::int64_t> read_numeric_matrix(std::istream& in);
DenseMatrix<std::int64_t> read_numeric_matrix_file(const std::string& path);
void write_numeric_matrix(std::ostream& out, const DenseMatrix<std::int64_t>& m);

RectDecomposition read_decomposition(std::istream& in);
RectDecomposition read_decomposition_file(const std::string& path);
void write_decomposition(std::ostream& out, const RectDecomposition& d);
void write_decomposition_file(const std::string& path, const RectDecomposition& d);

Permutation read_ordering(std::istream& in);
Permutation read_ordering_file(const std::string& path);
void write_ordering(std::ostream& out, const Permutation& p);

MergeSequence read_merge_sequence(std::istream& in);
MergeSequence read_merge_sequence_file(const std::string& path);
void write_merge_sequence(std::ostream& out, const MergeSequence& s);
void write_merge_sequence_file(const std::string& path, const MergeSequence& s);

// What the header line of a matrix-like file announces.
enum class MatrixFileKind { dense, sparse, numeric, decomposition };
MatrixFileKind sniff_matrix_file(const std::string& path);

// Paints the rectangles onto a zero matrix. Rejects (via validation of the
// stated contract) decompositions whose rectangles overlap or leave bounds.
BitMatrix matrix_from_decomposition(const RectDecomposition& d);

}  // namespace twinmul
