#include "twinmul/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "twinmul/errors.hpp"

namespace twinmul {

namespace {

// Line-by-line tokenizer that remembers positions for error messages.
// Blank lines are skipped; everything else must match the format exactly.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::size_t line_number() const { return line_; }

  // Next non-blank line split on whitespace; throws if the stream ends.
  std::vector<std::string> next_tokens(const std::string& what) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      std::istringstream ss(line);
      std::vector<std::string> tokens;
      for (std::string t; ss >> t;) tokens.push_back(std::move(t));
      if (!tokens.empty()) return tokens;
    }
    throw parse_error("unexpected end of file while reading " + what);
  }

  void expect_exhausted() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      std::istringstream ss(line);
      std::string t;
      if (ss >> t) {
        throw parse_error("unexpected trailing content at line " + std::to_string(line_));
      }
    }
  }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

std::int64_t parse_i64(const std::string& tok, const LineReader& r, const std::string& what) {
  std::int64_t value = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || p != tok.data() + tok.size()) {
    throw parse_error("line " + std::to_string(r.line_number()) + ": expected " + what +
                      ", got \"" + tok + "\"");
  }
  return value;
}

std::size_t parse_positive(const std::string& tok, const LineReader& r, const std::string& what) {
  const std::int64_t v = parse_i64(tok, r, what);
  if (v <= 0) {
    throw parse_error("line " + std::to_string(r.line_number()) + ": " + what +
                      " must be positive, got " + tok);
  }
  return static_cast<std::size_t>(v);
}

double parse_f64(const std::string& tok, const LineReader& r) {
  double value = 0.0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || p != tok.data() + tok.size()) {
    throw parse_error("line " + std::to_string(r.line_number()) + ": expected a number, got \"" +
                      tok + "\"");
  }
  return value;
}

void require_tokens(const std::vector<std::string>& tokens, std::size_t n, const LineReader& r,
                    const std::string& what) {
  if (tokens.size() != n) {
    throw parse_error("line " + std::to_string(r.line_number()) + ": expected " +
                      std::to_string(n) + " fields for " + what + ", got " +
                      std::to_string(tokens.size()));
  }
}

void append_f64(std::string& out, double x) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  out.append(buf, static_cast<std::size_t>(p - buf));
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open file: " + path);
  return in;
}

// Dense rows are C contiguous characters from {0,1}, no separators.
BitMatrix read_dense_body(LineReader& r, std::size_t n_rows, std::size_t n_cols) {
  BitMatrix m(n_rows, n_cols);
  for (std::size_t i = 0; i < n_rows; ++i) {
    const auto tokens = r.next_tokens("matrix row " + std::to_string(i + 1));
    require_tokens(tokens, 1, r, "a matrix row");
    const std::string& row = tokens[0];
    if (row.size() != n_cols) {
      throw parse_error("line " + std::to_string(r.line_number()) + ": matrix row has " +
                        std::to_string(row.size()) + " characters, expected " +
                        std::to_string(n_cols));
    }
    for (std::size_t j = 0; j < n_cols; ++j) {
      if (row[j] == '1')
        m.set(i, j, true);
      else if (row[j] != '0')
        throw parse_error("line " + std::to_string(r.line_number()) +
                          ": matrix entries must be 0 or 1, got '" + std::string(1, row[j]) +
                          "'");
    }
  }
  return m;
}

BitMatrix read_sparse_body(LineReader& r, std::size_t n_rows, std::size_t n_cols,
                           std::size_t nnz) {
  BitMatrix m(n_rows, n_cols);
  for (std::size_t e = 0; e < nnz; ++e) {
    const auto tokens = r.next_tokens("sparse entry " + std::to_string(e + 1));
    require_tokens(tokens, 2, r, "a sparse entry");
    const std::size_t row = parse_positive(tokens[0], r, "a row index");
    const std::size_t col = parse_positive(tokens[1], r, "a column index");
    if (row > n_rows || col > n_cols) {
      throw parse_error("line " + std::to_string(r.line_number()) + ": entry (" + tokens[0] +
                        ", " + tokens[1] + ") is outside the " + std::to_string(n_rows) + "x" +
                        std::to_string(n_cols) + " matrix");
    }
    m.set(row - 1, col - 1, true);
  }
  return m;
}

}  // namespace

BitMatrix read_matrix(std::istream& in) {
  LineReader r(in);
  const auto header = r.next_tokens("a matrix header");
  BitMatrix m = [&] {
    if (header.size() == 2) {
      const std::size_t n_rows = parse_positive(header[0], r, "a row count");
      const std::size_t n_cols = parse_positive(header[1], r, "a column count");
      return read_dense_body(r, n_rows, n_cols);
    }
    if (header.size() == 4 && header[3] == "sparse") {
      const std::size_t n_rows = parse_positive(header[0], r, "a row count");
      const std::size_t n_cols = parse_positive(header[1], r, "a column count");
      const std::int64_t nnz = parse_i64(header[2], r, "an entry count");
      if (nnz < 0) throw parse_error("line 1: entry count must be non-negative");
      return read_sparse_body(r, n_rows, n_cols, static_cast<std::size_t>(nnz));
    }
    throw parse_error("line " + std::to_string(r.line_number()) +
                      ": expected \"R C\" or \"R C NNZ sparse\" matrix header");
  }();
  r.expect_exhausted();
  return m;
}

BitMatrix read_matrix_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const BitMatrix& m) {
  out << m.n_rows() << ' ' << m.n_cols() << '\n';
  std::string line;
  line.reserve(m.n_cols() + 1);
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    line.clear();
    for (std::size_t j = 0; j < m.n_cols(); ++j) line.push_back(m.get(i, j) ? '1' : '0');
    line.push_back('\n');
    out << line;
  }
}

void write_matrix_sparse(std::ostream& out, const BitMatrix& m) {
  out << m.n_rows() << ' ' << m.n_cols() << ' ' << m.ones_count() << " sparse\n";
  for (std::size_t i = 0; i < m.n_rows(); ++i)
    for (std::size_t j = 0; j < m.n_cols(); ++j)
      if (m.get(i, j)) out << i + 1 << ' ' << j + 1 << '\n';
}

void write_matrix_file(const std::string& path, const BitMatrix& m, bool sparse) {
  std::ofstream out(path);
  if (!out) throw parse_error("cannot open file for writing: " + path);
  sparse ? write_matrix_sparse(out, m) : write_matrix(out, m);
}

namespace {

template <typename T, typename Parse>
std::vector<T> read_vector_impl(std::istream& in, Parse parse) {
  LineReader r(in);
  const auto header = r.next_tokens("a vector header");
  require_tokens(header, 1, r, "a vector header");
  const std::size_t n = parse_positive(header[0], r, "a vector length");
  std::vector<T> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto tokens = r.next_tokens("vector entry " + std::to_string(i + 1));
    require_tokens(tokens, 1, r, "a vector entry");
    v.push_back(parse(tokens[0], r));
  }
  r.expect_exhausted();
  return v;
}

}  // namespace

std::vector<std::int64_t> read_vector_i64(std::istream& in) {
  return read_vector_impl<std::int64_t>(
      in, [](const std::string& tok, const LineReader& r) { return parse_i64(tok, r, "an integer"); });
}

std::vector<std::int64_t> read_vector_i64_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_vector_i64(in);
}

std::vector<double> read_vector_f64(std::istream& in) {
  return read_vector_impl<double>(
      in, [](const std::string& tok, const LineReader& r) { return parse_f64(tok, r); });
}

std::vector<double> read_vector_f64_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_vector_f64(in);
}

NumericVector read_vector_any(std::istream& in) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    std::stringstream attempt(buffer.str());
    return read_vector_i64(attempt);
  } catch (const parse_error&) {
    std::stringstream attempt(buffer.str());
    return read_vector_f64(attempt);
  }
}

NumericVector read_vector_any_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_vector_any(in);
}

void write_vector(std::ostream& out, std::span<const std::int64_t> v) {
  out << v.size() << '\n';
  for (const std::int64_t x : v) out << x << '\n';
}

void write_vector(std::ostream& out, std::span<const double> v) {
  out << v.size() << '\n';
  std::string line;
  for (const double x : v) {
    line.clear();
    append_f64(line, x);
    line.push_back('\n');
    out << line;
  }
}

DenseMatrix<std::int64_t> read_numeric_matrix(std::istream& in) {
  LineReader r(in);
  const auto header = r.next_tokens("a numeric matrix header");
  if (header.size() != 3 || header[2] != "numeric") {
    throw parse_error("line " + std::to_string(r.line_number()) +
                      ": expected \"R C numeric\" header");
  }
  const std::size_t n_rows = parse_positive(header[0], r, "a row count");
  const std::size_t n_cols = parse_positive(header[1], r, "a column count");
  DenseMatrix<std::int64_t> m(n_rows, n_cols);
  for (std::size_t i = 0; i < n_rows; ++i) {
    const auto tokens = r.next_tokens("matrix row " + std::to_string(i + 1));
    require_tokens(tokens, n_cols, r, "a matrix row");
    for (std::size_t j = 0; j < n_cols; ++j) m.at(i, j) = parse_i64(tokens[j], r, "an integer");
  }
  r.expect_exhausted();
  return m;
}

DenseMatrix<std::int64_t> read_numeric_matrix_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_numeric_matrix(in);
}

void write_numeric_matrix(std::ostream& out, const DenseMatrix<std::int64_t>& m) {
  out << m.n_rows() << ' ' << m.n_cols() << " numeric\n";
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    for (std::size_t j = 0; j < m.n_cols(); ++j) {
      if (j > 0) out << ' ';
      out << m.at(i, j);
    }
    out << '\n';
  }
}

RectDecomposition read_decomposition(std::istream& in) {
  LineReader r(in);
  const auto header = r.next_tokens("a decomposition header");
  require_tokens(header, 3, r, "a decomposition header");
  const std::size_t n_rows = parse_positive(header[0], r, "a row count");
  const std::size_t n_cols = parse_positive(header[1], r, "a column count");
  const std::int64_t k = parse_i64(header[2], r, "a rectangle count");
  if (k < 0) throw parse_error("line 1: rectangle count must be non-negative");
  RectDecomposition d{n_rows, n_cols, {}};
  d.rects.reserve(static_cast<std::size_t>(k));
  for (std::int64_t e = 0; e < k; ++e) {
    const auto tokens = r.next_tokens("rectangle " + std::to_string(e + 1));
    require_tokens(tokens, 4, r, "a rectangle");
    const std::size_t r1 = parse_positive(tokens[0], r, "a row bound");
    const std::size_t r2 = parse_positive(tokens[1], r, "a row bound");
    const std::size_t c1 = parse_positive(tokens[2], r, "a column bound");
    const std::size_t c2 = parse_positive(tokens[3], r, "a column bound");
    if (r1 > r2 || c1 > c2 || r2 > n_rows || c2 > n_cols) {
      throw parse_error("line " + std::to_string(r.line_number()) + ": rectangle [" + tokens[0] +
                        ", " + tokens[1] + "] x [" + tokens[2] + ", " + tokens[3] +
                        "] is not a valid block of a " + std::to_string(n_rows) + "x" +
                        std::to_string(n_cols) + " matrix");
    }
    d.rects.push_back({r1 - 1, r2 - 1, c1 - 1, c2 - 1});
  }
  r.expect_exhausted();
  return d;
}

RectDecomposition read_decomposition_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_decomposition(in);
}

void write_decomposition(std::ostream& out, const RectDecomposition& d) {
  out << d.n_rows << ' ' << d.n_cols << ' ' << d.rects.size() << '\n';
  for (const Rect& r : d.rects) {
    out << r.row_lo + 1 << ' ' << r.row_hi + 1 << ' ' << r.col_lo + 1 << ' ' << r.col_hi + 1
        << '\n';
  }
}

void write_decomposition_file(const std::string& path, const RectDecomposition& d) {
  std::ofstream out(path);
  if (!out) throw parse_error("cannot open file for writing: " + path);
  write_decomposition(out, d);
}

Permutation read_ordering(std::istream& in) {
  LineReader r(in);
  const auto header = r.next_tokens("an ordering header");
  require_tokens(header, 1, r, "an ordering header");
  const std::size_t n = parse_positive(header[0], r, "an ordering length");
  Permutation p;
  p.map.reserve(n);
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const auto tokens = r.next_tokens("ordering entry " + std::to_string(i + 1));
    require_tokens(tokens, 1, r, "an ordering entry");
    const std::size_t v = parse_positive(tokens[0], r, "a row index");
    if (v > n || seen[v - 1]) {
      throw parse_error("line " + std::to_string(r.line_number()) +
                        ": ordering must be a permutation of 1.." + std::to_string(n) +
                        ", offending value " + tokens[0]);
    }
    seen[v - 1] = true;
    p.map.push_back(v - 1);
  }
  r.expect_exhausted();
  return p;
}

Permutation read_ordering_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_ordering(in);
}

void write_ordering(std::ostream& out, const Permutation& p) {
  out << p.map.size() << '\n';
  for (const std::size_t v : p.map) out << v + 1 << '\n';
}

MergeSequence read_merge_sequence(std::istream& in) {
  LineReader r(in);
  const auto header = r.next_tokens("a merge sequence header");
  require_tokens(header, 1, r, "a merge sequence header");
  const std::size_t n = parse_positive(header[0], r, "a dimension");
  MergeSequence s{n, {}};
  const std::size_t ops = n >= 1 ? 2 * n - 2 : 0;
  s.ops.reserve(ops);
  for (std::size_t e = 0; e < ops; ++e) {
    const auto tokens = r.next_tokens("merge op " + std::to_string(e + 1));
    require_tokens(tokens, 2, r, "a merge op");
    Axis axis;
    if (tokens[0] == "R")
      axis = Axis::row;
    else if (tokens[0] == "C")
      axis = Axis::col;
    else
      throw parse_error("line " + std::to_string(r.line_number()) +
                        ": merge axis must be R or C, got \"" + tokens[0] + "\"");
    const std::size_t pos = parse_positive(tokens[1], r, "a block position");
    if (pos >= n) {
      throw parse_error("line " + std::to_string(r.line_number()) + ": block position " +
                        tokens[1] + " cannot occur in any division of " + std::to_string(n) +
                        " rows or columns");
    }
    s.ops.push_back({axis, pos - 1});
  }
  r.expect_exhausted();
  return s;
}

MergeSequence read_merge_sequence_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_merge_sequence(in);
}

void write_merge_sequence(std::ostream& out, const MergeSequence& s) {
  out << s.n << '\n';
  for (const MergeOp& op : s.ops)
    out << (op.axis == Axis::row ? 'R' : 'C') << ' ' << op.pos + 1 << '\n';
}

void write_merge_sequence_file(const std::string& path, const MergeSequence& s) {
  std::ofstream out(path);
  if (!out) throw parse_error("cannot open file for writing: " + path);
  write_merge_sequence(out, s);
}

MatrixFileKind sniff_matrix_file(const std::string& path) {
  auto in = open_or_throw(path);
  LineReader r(in);
  const auto header = r.next_tokens("a matrix header in " + path);
  if (header.size() == 2) return MatrixFileKind::dense;
  if (header.size() == 4 && header[3] == "sparse") return MatrixFileKind::sparse;
  if (header.size() == 3 && header[2] == "numeric") return MatrixFileKind::numeric;
  if (header.size() == 3) {
    parse_i64(header[2], r, "a rectangle count");
    return MatrixFileKind::decomposition;
  }
  throw parse_error(path + ": unrecognized header \"" + header[0] + " ...\"");
}

BitMatrix matrix_from_decomposition(const RectDecomposition& d) {
  BitMatrix m(d.n_rows, d.n_cols);
  for (std::size_t k = 0; k < d.rects.size(); ++k) {
    const Rect& rc = d.rects[k];
    if (rc.row_lo > rc.row_hi || rc.col_lo > rc.col_hi || rc.row_hi >= d.n_rows ||
        rc.col_hi >= d.n_cols) {
      throw structure_error("rectangle " + std::to_string(k + 1) +
                            " is not a valid block of the stated matrix");
    }
    for (std::size_t i = rc.row_lo; i <= rc.row_hi; ++i) {
      for (std::size_t j = rc.col_lo; j <= rc.col_hi; ++j) {
        if (m.get(i, j)) {
          throw structure_error("rectangle " + std::to_string(k + 1) +
                                " overlaps an earlier rectangle at row " + std::to_string(i + 1) +
                                ", column " + std::to_string(j + 1));
        }
        m.set(i, j, true);
      }
    }
  }
  return m;
}

}  // namespace twinmul
