#include "twinmul/rect_decomp.hpp"

#include <algorithm>
#include <bit>
#include <vector>

namespace twinmul {

namespace {

// Zero-padded accessor: out-of-range cells read as 0.
inline bool padded_get(const BitMatrix& m, std::size_t r_plus1, std::size_t c_plus1) {
  // Arguments are shifted by one so 0 means "outside".
  if (r_plus1 == 0 || c_plus1 == 0 || r_plus1 > m.n_rows() || c_plus1 > m.n_cols()) return false;
  return m.get(r_plus1 - 1, c_plus1 - 1);
}

}  // namespace

PolygonStats polygon_stats(const BitMatrix& m) {
  PolygonStats s;
  const std::size_t nr = m.n_rows();
  const std::size_t nc = m.n_cols();

  // Vertex classification over all 2x2 windows of the padded grid.
  for (std::size_t r = 0; r <= nr; ++r) {
    for (std::size_t c = 0; c <= nc; ++c) {
      const bool a = padded_get(m, r, c);
      const bool b = padded_get(m, r, c + 1);
      const bool d = padded_get(m, r + 1, c);
      const bool e = padded_get(m, r + 1, c + 1);
      const int ones = int(a) + int(b) + int(d) + int(e);
      if (ones == 1) {
        s.convex_vertices += 1;
      } else if (ones == 3) {
        s.concave_vertices += 1;
      } else if (ones == 2 && ((a && e) || (b && d))) {
        s.convex_vertices += 2;
      }
    }
  }

  // Horizontal boundary edges: vertically adjacent cell pairs with different
  // values, borders included.
  for (std::size_t r = 0; r <= nr; ++r)
    for (std::size_t c = 1; c <= nc; ++c)
      if (padded_get(m, r, c) != padded_get(m, r + 1, c)) s.boundary_horizontal_length += 1;

  // 4-connected components of 1-cells.
  std::vector<bool> seen(nr * nc, false);
  std::vector<std::size_t> stack;
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t c = 0; c < nc; ++c) {
      if (!m.get(r, c) || seen[r * nc + c]) continue;
      s.polygons += 1;
      seen[r * nc + c] = true;
      stack.push_back(r * nc + c);
      while (!stack.empty()) {
        const std::size_t cell = stack.back();
        stack.pop_back();
        const std::size_t cr = cell / nc;
        const std::size_t cc = cell % nc;
        const auto visit = [&](std::size_t vr, std::size_t vc) {
          if (m.get(vr, vc) && !seen[vr * nc + vc]) {
            seen[vr * nc + vc] = true;
            stack.push_back(vr * nc + vc);
          }
        };
        if (cr > 0) visit(cr - 1, cc);
        if (cr + 1 < nr) visit(cr + 1, cc);
        if (cc > 0) visit(cr, cc - 1);
        if (cc + 1 < nc) visit(cr, cc + 1);
      }
    }
  }

  // Euler relation V - C = 4(P - H), all quantities non-negative.
  const long long vc = static_cast<long long>(s.convex_vertices) -
                       static_cast<long long>(s.concave_vertices);
  s.holes = static_cast<std::size_t>(static_cast<long long>(s.polygons) - vc / 4);
  return s;
}

RectDecomposition decompose(const BitMatrix& m) {
  RectDecomposition d;
  d.n_rows = m.n_rows();
  d.n_cols = m.n_cols();

  struct OpenRect {
    std::size_t row_lo, row_hi, col_lo;
  };
  std::vector<OpenRect> open;  // runs of the previous column, sorted by row_lo
  std::vector<OpenRect> next_open;
  std::vector<std::pair<std::size_t, std::size_t>> runs;  // current column's runs

  for (std::size_t c = 0; c < m.n_cols(); ++c) {
    runs.clear();
    std::size_t r = 0;
    while (r < m.n_rows()) {
      if (!m.get(r, c)) {
        ++r;
        continue;
      }
      std::size_t lo = r;
      while (r + 1 < m.n_rows() && m.get(r + 1, c)) ++r;
      runs.emplace_back(lo, r);
      ++r;
    }

    next_open.clear();
    std::size_t oi = 0;  // cursor into open (sorted by row_lo)
    for (const auto& [lo, hi] : runs) {
      // Either continue an open rect with the identical row interval or open a
      // new one; open rects not continued are emitted.
      while (oi < open.size() && open[oi].row_lo < lo) {
        d.rects.push_back({open[oi].row_lo, open[oi].row_hi, open[oi].col_lo, c - 1});
        ++oi;
      }
      if (oi < open.size() && open[oi].row_lo == lo && open[oi].row_hi == hi) {
        next_open.push_back(open[oi]);
        ++oi;
      } else {
        if (oi < open.size() && open[oi].row_lo == lo) {
          d.rects.push_back({open[oi].row_lo, open[oi].row_hi, open[oi].col_lo, c - 1});
          ++oi;
        }
        next_open.push_back({lo, hi, c});
      }
    }
    while (oi < open.size()) {
      d.rects.push_back({open[oi].row_lo, open[oi].row_hi, open[oi].col_lo, c - 1});
      ++oi;
    }
    std::swap(open, next_open);
  }
  for (const OpenRect& o : open)
    d.rects.push_back({o.row_lo, o.row_hi, o.col_lo, m.n_cols() - 1});

  std::sort(d.rects.begin(), d.rects.end(), [](const Rect& a, const Rect& b) {
    if (a.row_lo != b.row_lo) return a.row_lo < b.row_lo;
    if (a.col_lo != b.col_lo) return a.col_lo < b.col_lo;
    return a.row_hi < b.row_hi;
  });
  return d;
}

std::string describe(const ValidationIssue& issue) {
  std::string what;
  switch (issue.kind) {
    case ValidationIssue::Kind::bad_interval:
      what = "rect has an empty or inverted interval";
      break;
    case ValidationIssue::Kind::out_of_bounds:
      what = "rect exceeds the matrix bounds";
      break;
    case ValidationIssue::Kind::covers_zero:
      what = "rect covers a 0-entry";
      break;
    case ValidationIssue::Kind::overlap:
      what = "rect overlaps an earlier rect";
      break;
    case ValidationIssue::Kind::uncovered_one:
      what = "1-entry not covered by any rect";
      break;
  }
  return what + " (rect " + std::to_string(issue.rect_index) + ", cell " +
         std::to_string(issue.row) + "," + std::to_string(issue.col) + ")";
}

std::optional<ValidationIssue> validate(const RectDecomposition& d, const BitMatrix& m) {
  if (d.n_rows != m.n_rows() || d.n_cols != m.n_cols())
    throw dimension_error("validate: decomposition and matrix dimensions differ");

  const std::size_t wpr = m.words_per_row();
  std::vector<std::uint64_t> covered(d.n_rows * wpr, 0);

  const auto word_mask = [&](std::size_t wi, const Rect& rc) -> std::uint64_t {
    const std::size_t base = wi * kWordBits;
    std::uint64_t mask = ~std::uint64_t{0};
    if (rc.col_lo > base) mask &= ~std::uint64_t{0} << (rc.col_lo - base);
    if (rc.col_hi < base + kWordBits - 1)
      mask &= ~std::uint64_t{0} >> (base + kWordBits - 1 - rc.col_hi);
    return mask;
  };

  for (std::size_t i = 0; i < d.rects.size(); ++i) {
    const Rect& rc = d.rects[i];
    if (rc.row_hi < rc.row_lo || rc.col_hi < rc.col_lo)
      return ValidationIssue{ValidationIssue::Kind::bad_interval, i, rc.row_lo, rc.col_lo};
    if (rc.row_hi >= d.n_rows || rc.col_hi >= d.n_cols)
      return ValidationIssue{ValidationIssue::Kind::out_of_bounds, i, rc.row_hi, rc.col_hi};
    const std::size_t w_first = rc.col_lo / kWordBits;
    const std::size_t w_last = rc.col_hi / kWordBits;
    for (std::size_t r = rc.row_lo; r <= rc.row_hi; ++r) {
      const std::span<const std::uint64_t> row = m.row_words(r);
      for (std::size_t wi = w_first; wi <= w_last; ++wi) {
        const std::uint64_t mask = word_mask(wi, rc);
        const std::uint64_t zeros = mask & ~row[wi];
        if (zeros != 0) {
          const std::size_t c = wi * kWordBits + std::countr_zero(zeros);
          return ValidationIssue{ValidationIssue::Kind::covers_zero, i, r, c};
        }
        std::uint64_t& cw = covered[r * wpr + wi];
        const std::uint64_t clash = mask & cw;
        if (clash != 0) {
          const std::size_t c = wi * kWordBits + std::countr_zero(clash);
          return ValidationIssue{ValidationIssue::Kind::overlap, i, r, c};
        }
        cw |= mask;
      }
    }
  }

  for (std::size_t r = 0; r < d.n_rows; ++r) {
    const std::span<const std::uint64_t> row = m.row_words(r);
    for (std::size_t wi = 0; wi < wpr; ++wi) {
      const std::uint64_t missing = row[wi] & ~covered[r * wpr + wi];
      if (missing != 0) {
        const std::size_t c = wi * kWordBits + std::countr_zero(missing);
        return ValidationIssue{ValidationIssue::Kind::uncovered_one, d.rects.size(), r, c};
      }
    }
  }
  return std::nullopt;
}

}  // namespace twinmul
