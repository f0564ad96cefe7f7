#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "twinmul/bit_matrix.hpp"

namespace twinmul {

// Axis-aligned cell rectangle, 0-based inclusive bounds.
struct Rect {
  std::size_t row_lo, row_hi, col_lo, col_hi;

  std::size_t height() const { return row_hi - row_lo + 1; }
  std::size_t width() const { return col_hi - col_lo + 1; }
  std::size_t area() const { return height() * width(); }

  bool operator==(const Rect&) const = default;
};

// Disjoint all-ones rectangles covering exactly the 1-entries of a matrix.
struct RectDecomposition {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<Rect> rects;
};

// Counts over the orthogonal polygons formed by the 1-cells:
//   polygons          P: 4-connected components of 1-cells
//   convex_vertices   V: boundary vertices with a 90-degree interior angle
//   concave_vertices  C: boundary vertices with a 270-degree interior angle
//   holes             H: from the Euler relation V - C = 4(P - H)
// Vertices are classified by the 2x2 windows of the zero-padded grid: exactly
// one 1-cell in the window is one convex vertex, exactly three is one concave
// vertex, two diagonal 1-cells are two convex vertices.
struct PolygonStats {
  std::size_t polygons = 0;
  std::size_t convex_vertices = 0;
  std::size_t concave_vertices = 0;
  std::size_t holes = 0;
  // Horizontal unit boundary edges (1-cell above/below a 0-cell or the border).
  std::size_t boundary_horizontal_length = 0;
};

PolygonStats polygon_stats(const BitMatrix& m);

// Vertical-slab decomposition: per-column maximal runs of 1s, with runs of
// adjacent columns merged when they span identical row intervals. Covers each
// polygon with at most C - H + 1 rectangles (C, H of that polygon), so the
// total is at most C - H + P; any decomposition needs at least C/2 - H + 1
// per polygon, which bounds the approximation ratio by 3.
RectDecomposition decompose(const BitMatrix& m);

struct ValidationIssue {
  enum class Kind { bad_interval, out_of_bounds, covers_zero, overlap, uncovered_one };
  Kind kind;
  std::size_t rect_index;  // offending rect, or the uncovered cell's position
  std::size_t row, col;
};

std::string describe(const ValidationIssue& issue);

// First violation of the decomposition contract against m, or nullopt.
std::optional<ValidationIssue> validate(const RectDecomposition& d, const BitMatrix& m);

}  // namespace twinmul
