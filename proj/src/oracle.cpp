#include "twinmul/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <string>

namespace twinmul::oracle {

namespace {

// Region of up to 64 cells as a bitmask, row-major bit r*nc+c.
struct MaskGrid {
  std::size_t nr, nc;
  std::uint64_t ones;

  bool test(std::uint64_t mask, std::size_t r, std::size_t c) const {
    return (mask >> (r * nc + c)) & 1u;
  }
};

// Per-polygon lower bound max(1, ceil(C/2) - H + 1) summed over the polygons
// of `mask`, with V/C counted by the 2x2 window rule and H from the Euler
// relation.
std::size_t mask_lower_bound(const MaskGrid& g, std::uint64_t mask) {
  if (mask == 0) return 0;
  const std::size_t cells = g.nr * g.nc;
  int label[64];
  std::fill(label, label + cells, -1);
  int n_labels = 0;
  std::uint64_t todo = mask;
  std::size_t stack[64];
  while (todo != 0) {
    const std::size_t seed = static_cast<std::size_t>(std::countr_zero(todo));
    const int cur = n_labels++;
    std::size_t top = 0;
    stack[top++] = seed;
    label[seed] = cur;
    todo &= ~(std::uint64_t{1} << seed);
    while (top > 0) {
      const std::size_t cell = stack[--top];
      const std::size_t r = cell / g.nc;
      const std::size_t c = cell % g.nc;
      const auto visit = [&](std::size_t n_r, std::size_t n_c) {
        const std::size_t idx = n_r * g.nc + n_c;
        if (((mask >> idx) & 1u) && label[idx] < 0) {
          label[idx] = cur;
          todo &= ~(std::uint64_t{1} << idx);
          stack[top++] = idx;
        }
      };
      if (r > 0) visit(r - 1, c);
      if (r + 1 < g.nr) visit(r + 1, c);
      if (c > 0) visit(r, c - 1);
      if (c + 1 < g.nc) visit(r, c + 1);
    }
  }

  long long convex[64] = {0};
  long long concave[64] = {0};
  const auto cell_label = [&](std::size_t r_plus1, std::size_t c_plus1) -> int {
    if (r_plus1 == 0 || c_plus1 == 0 || r_plus1 > g.nr || c_plus1 > g.nc) return -1;
    const std::size_t idx = (r_plus1 - 1) * g.nc + (c_plus1 - 1);
    return ((mask >> idx) & 1u) ? label[idx] : -1;
  };
  for (std::size_t r = 0; r <= g.nr; ++r) {
    for (std::size_t c = 0; c <= g.nc; ++c) {
      const int a = cell_label(r, c);
      const int b = cell_label(r, c + 1);
      const int d = cell_label(r + 1, c);
      const int e = cell_label(r + 1, c + 1);
      const int ones = int(a >= 0) + int(b >= 0) + int(d >= 0) + int(e >= 0);
      if (ones == 1) {
        convex[std::max({a, b, d, e})] += 1;
      } else if (ones == 3) {
        int lab = a >= 0 ? a : b;  // the three cells are 4-connected, same label
        concave[lab] += 1;
      } else if (ones == 2 && a >= 0 && e >= 0) {
        convex[a] += 1;
        convex[e] += 1;
      } else if (ones == 2 && b >= 0 && d >= 0) {
        convex[b] += 1;
        convex[d] += 1;
      }
    }
  }

  std::size_t total = 0;
  for (int p = 0; p < n_labels; ++p) {
    const long long holes = 1 - (convex[p] - concave[p]) / 4;
    const long long term = (concave[p] + 1) / 2 - holes + 1;
    total += static_cast<std::size_t>(std::max(1LL, term));
  }
  return total;
}

struct PartitionSearch {
  MaskGrid g;
  std::size_t best;
  std::vector<Rect> best_rects;
  std::vector<Rect> current;

  std::uint64_t rect_mask(std::size_t r, std::size_t c, std::size_t h, std::size_t w) const {
    std::uint64_t mask = 0;
    const std::uint64_t row_bits = ((w == kWordBits ? ~std::uint64_t{0} : (std::uint64_t{1} << w) - 1));
    for (std::size_t i = 0; i < h; ++i) mask |= row_bits << ((r + i) * g.nc + c);
    return mask;
  }

  void run(std::uint64_t covered) {
    const std::uint64_t uncovered = g.ones & ~covered;
    if (uncovered == 0) {
      if (current.size() < best) {
        best = current.size();
        best_rects = current;
      }
      return;
    }
    if (current.size() + mask_lower_bound(g, uncovered) >= best) return;

    const std::size_t anchor = static_cast<std::size_t>(std::countr_zero(uncovered));
    const std::size_t r = anchor / g.nc;
    const std::size_t c = anchor % g.nc;

    struct Candidate {
      std::size_t h, w;
      std::uint64_t mask;
    };
    std::vector<Candidate> cands;
    std::size_t w_limit = g.nc - c;
    for (std::size_t h = 1; r + h - 1 < g.nr; ++h) {
      // Shrink the feasible width to the run of uncovered ones in this row.
      std::size_t w_row = 0;
      while (w_row < w_limit && g.test(uncovered, r + h - 1, c + w_row)) ++w_row;
      if (w_row == 0) break;
      w_limit = std::min(w_limit, w_row);
      for (std::size_t w = 1; w <= w_limit; ++w)
        cands.push_back({h, w, rect_mask(r, c, h, w)});
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
      if (a.h * a.w != b.h * b.w) return a.h * a.w > b.h * b.w;
      return a.h > b.h;
    });

    for (const Candidate& cand : cands) {
      current.push_back({r, r + cand.h - 1, c, c + cand.w - 1});
      run(covered | cand.mask);
      current.pop_back();
    }
  }
};

}  // namespace

std::size_t partition_lower_bound(const BitMatrix& m) {
  if (m.n_rows() * m.n_cols() > 64)
    throw capacity_error("partition_lower_bound: limited to 64 cells");
  MaskGrid g{m.n_rows(), m.n_cols(), 0};
  for (std::size_t r = 0; r < m.n_rows(); ++r)
    for (std::size_t c = 0; c < m.n_cols(); ++c)
      if (m.get(r, c)) g.ones |= std::uint64_t{1} << (r * m.n_cols() + c);
  return mask_lower_bound(g, g.ones);
}

PartitionResult optimal_rect_partition(const BitMatrix& m, std::size_t cell_budget) {
  const std::size_t cells = m.n_rows() * m.n_cols();
  if (cells > cell_budget || cells > 64)
    throw capacity_error("optimal_rect_partition: matrix has " + std::to_string(cells) +
                         " cells, budget is " + std::to_string(std::min<std::size_t>(cell_budget, 64)));

  PartitionSearch s;
  s.g = MaskGrid{m.n_rows(), m.n_cols(), 0};
  for (std::size_t r = 0; r < m.n_rows(); ++r)
    for (std::size_t c = 0; c < m.n_cols(); ++c)
      if (m.get(r, c)) s.g.ones |= std::uint64_t{1} << (r * m.n_cols() + c);

  // All-singletons is always a valid partition, a safe incumbent.
  s.best = static_cast<std::size_t>(std::popcount(s.g.ones));
  for (std::size_t r = 0; r < m.n_rows(); ++r)
    for (std::size_t c = 0; c < m.n_cols(); ++c)
      if (m.get(r, c)) s.best_rects.push_back({r, r, c, c});

  if (s.g.ones != 0) s.run(0);
  return {s.best_rects.size(), std::move(s.best_rects)};
}

std::pair<Permutation, std::size_t> optimal_row_ordering(const BitMatrix& m,
                                                         std::size_t max_rows) {
  const std::size_t n = m.n_rows();
  if (max_rows > 20) max_rows = 20;  // keeps the DP table within memory
  if (n > max_rows)
    throw capacity_error("optimal_row_ordering: " + std::to_string(n) +
                         " rows exceeds the limit of " + std::to_string(max_rows));
  if (n == 1) return {Permutation::identity(1), 0};

  std::vector<std::uint32_t> dist(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      dist[i * n + j] = static_cast<std::uint32_t>(m.row_distance(i, j));

  const std::size_t full = (std::size_t{1} << n) - 1;
  constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> dp((full + 1) * n, kInf);
  std::vector<std::int8_t> parent((full + 1) * n, -1);
  for (std::size_t i = 0; i < n; ++i) dp[(std::size_t{1} << i) * n + i] = 0;

  for (std::size_t mask = 1; mask <= full; ++mask) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!((mask >> i) & 1u)) continue;
      const std::uint32_t base = dp[mask * n + i];
      if (base == kInf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if ((mask >> j) & 1u) continue;
        const std::size_t nm = mask | (std::size_t{1} << j);
        const std::uint32_t cand = base + dist[i * n + j];
        if (cand < dp[nm * n + j]) {
          dp[nm * n + j] = cand;
          parent[nm * n + j] = static_cast<std::int8_t>(i);
        }
      }
    }
  }

  std::size_t end = 0;
  std::uint32_t best = kInf;
  for (std::size_t i = 0; i < n; ++i) {
    if (dp[full * n + i] < best) {
      best = dp[full * n + i];
      end = i;
    }
  }

  Permutation pi;
  pi.map.resize(n);
  std::size_t mask = full;
  std::size_t cur = end;
  for (std::size_t pos = n; pos-- > 0;) {
    pi.map[pos] = cur;
    const std::int8_t par = parent[mask * n + cur];
    mask &= ~(std::size_t{1} << cur);
    if (par < 0) break;
    cur = static_cast<std::size_t>(par);
  }
  return {pi, best};
}

}  // namespace twinmul::oracle
