#include "twinmul/generators.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "twinmul/errors.hpp"
#include "twinmul/rng.hpp"

namespace twinmul {

namespace {

std::size_t pow3(std::size_t e) {
  std::size_t r = 1;
  while (e-- > 0) r *= 3;
  return r;
}

}  // namespace

BitMatrix gen_tricyclic(std::size_t level) {
  if (level > 9) {
    throw capacity_error("gen_tricyclic: level " + std::to_string(level) +
                         " exceeds the supported maximum of 9");
  }
  BitMatrix m = BitMatrix::identity(2);
  for (std::size_t k = 1; k <= level; ++k) {
    const std::size_t b = 2 * pow3(k - 1);  // previous size: one block edge
    BitMatrix next(3 * b, 3 * b);
    for (std::size_t br = 0; br < 3; ++br) {
      const std::size_t bc_one = (br + 2) % 3;  // all-ones block column
      for (std::size_t i = 0; i < b; ++i) {
        for (std::size_t j = 0; j < b; ++j) {
          if (m.get(i, j)) next.set(br * b + i, br * b + j, true);
          next.set(br * b + i, bc_one * b + j, true);
        }
      }
    }
    m = std::move(next);
  }
  return m;
}

BitMatrix gen_chessboard(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = (i + 1) % 2; j < n; j += 2) m.set(i, j, true);
  return m;
}

BitMatrix gen_stripe_block(std::size_t n) {
  if (n < 2 || n % 2 != 0) {
    throw dimension_error("gen_stripe_block: n must be even and at least 2, got " +
                          std::to_string(n));
  }
  const std::size_t h = n / 2;
  BitMatrix m(n, n);
  // Q has odd rows all-ones; Q^T therefore has odd columns all-ones.
  for (std::size_t i = 0; i < h; ++i) {
    for (std::size_t j = 0; j < h; ++j) {
      const bool q = (i % 2 == 1);   // Q(i, j)
      const bool qt = (j % 2 == 1);  // Q^T(i, j)
      m.set(i, j, qt);
      m.set(i, h + j, q);
      m.set(h + i, j, q);
      m.set(h + i, h + j, qt);
    }
  }
  return m;
}

BitMatrix gen_random_dense(std::size_t n, double density, std::uint64_t seed) {
  if (!(density >= 0.0 && density <= 1.0)) {
    throw index_error("gen_random_dense: density must lie in [0, 1]");
  }
  SplitMix64 rng(seed);
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (rng.bernoulli(density)) m.set(i, j, true);
  return m;
}

namespace {

// One axis of the split-tree construction: nodes are created in pairs by
// splitting an alive node into two copies; ids grow monotonically, so a
// parent always has a smaller id than its children.
struct SplitTree {
  std::vector<std::pair<int, int>> children;  // (-1, -1) while a leaf
  std::vector<int> alive;                     // current left-to-right node order

  SplitTree() : children{{-1, -1}}, alive{0} {}

  struct Split {
    int parent;
    int left;
    int right;
  };

  // Splits alive[idx]; the new right copy takes the slot just after it.
  Split split(std::size_t idx) {
    const int u = alive[idx];
    const int left = static_cast<int>(children.size());
    const int right = left + 1;
    children[static_cast<std::size_t>(u)] = {left, right};
    children.emplace_back(-1, -1);
    children.emplace_back(-1, -1);
    alive[idx] = left;
    alive.insert(alive.begin() + static_cast<std::ptrdiff_t>(idx) + 1, right);
    return {u, left, right};
  }

  // Leaf interval of every node in the final order, as [lo, hi] positions.
  std::vector<std::pair<std::size_t, std::size_t>> intervals() const {
    std::vector<std::pair<std::size_t, std::size_t>> iv(children.size());
    for (std::size_t pos = 0; pos < alive.size(); ++pos)
      iv[static_cast<std::size_t>(alive[pos])] = {pos, pos};
    for (std::size_t u = children.size(); u-- > 0;) {
      const auto [l, r] = children[u];
      if (l >= 0) iv[u] = {iv[static_cast<std::size_t>(l)].first,
                           iv[static_cast<std::size_t>(r)].second};
    }
    return iv;
  }
};

struct SplitEvent {
  Axis axis;
  int parent;                        // node that was split
  int left;                          // node the split parent turns into
  int right;                         // newly inserted copy
  std::vector<std::pair<int, int>> flips;  // (row node, column node) regions
};

}  // namespace

TwinOrderedInstance gen_random_twin_ordered(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (n == 0) throw dimension_error("gen_random_twin_ordered: n must be positive");
  SplitMix64 rng(seed);
  const bool root_bit = rng.next() & 1u;

  std::vector<Axis> axis_order;
  axis_order.reserve(2 * (n - 1));
  for (std::size_t i = 1; i < n; ++i) {
    axis_order.push_back(Axis::row);
    axis_order.push_back(Axis::col);
  }
  for (std::size_t i = axis_order.size(); i > 1; --i)
    std::swap(axis_order[i - 1], axis_order[rng.below(i)]);

  SplitTree rows;
  SplitTree cols;
  std::vector<SplitEvent> events;
  events.reserve(axis_order.size());
  const std::size_t flips_per_split = d / 2;

  for (Axis axis : axis_order) {
    SplitTree& own = axis == Axis::row ? rows : cols;
    SplitTree& other = axis == Axis::row ? cols : rows;
    const SplitTree::Split s = own.split(rng.below(own.alive.size()));

    const std::size_t max_flips = std::min(flips_per_split, other.alive.size());
    const std::size_t k = rng.below(max_flips + 1);
    std::vector<std::size_t> picked;
    while (picked.size() < k) {
      const std::size_t cand = rng.below(other.alive.size());
      if (std::find(picked.begin(), picked.end(), cand) == picked.end())
        picked.push_back(cand);
    }
    SplitEvent ev{axis, s.parent, s.left, s.right, {}};
    ev.flips.reserve(k);
    for (std::size_t idx : picked) {
      const int cross = other.alive[idx];
      if (axis == Axis::row)
        ev.flips.emplace_back(s.right, cross);
      else
        ev.flips.emplace_back(cross, s.right);
    }
    events.push_back(std::move(ev));
  }

  // Materialize through an XOR difference grid: each flip region toggles a
  // combinatorial rectangle of the final matrix, and the root bit toggles
  // everything. 2D XOR-prefixing the grid recovers the entries.
  const auto row_iv = rows.intervals();
  const auto col_iv = cols.intervals();
  std::vector<std::vector<std::uint8_t>> grid(n + 1, std::vector<std::uint8_t>(n + 1, 0));
  const auto toggle = [&](std::size_t r1, std::size_t r2, std::size_t c1, std::size_t c2) {
    grid[r1][c1] ^= 1;
    grid[r1][c2 + 1] ^= 1;
    grid[r2 + 1][c1] ^= 1;
    grid[r2 + 1][c2 + 1] ^= 1;
  };
  if (root_bit) toggle(0, n - 1, 0, n - 1);
  for (const SplitEvent& ev : events) {
    for (const auto& [rn, cn] : ev.flips) {
      const auto [r1, r2] = row_iv[static_cast<std::size_t>(rn)];
      const auto [c1, c2] = col_iv[static_cast<std::size_t>(cn)];
      toggle(r1, r2, c1, c2);
    }
  }
  BitMatrix m(n, n);
  std::vector<std::uint8_t> prev(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint8_t row_acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
      row_acc ^= grid[i][j];
      prev[j] ^= row_acc;
      if (prev[j]) m.set(i, j, true);
    }
  }

  // The merge sequence is the construction run backwards: undoing a split
  // merges the two adjacent copies it created.
  MergeSequence seq{n, {}};
  seq.ops.reserve(events.size());
  std::vector<int> row_alive = rows.alive;
  std::vector<int> col_alive = cols.alive;
  for (std::size_t e = events.size(); e-- > 0;) {
    const SplitEvent& ev = events[e];
    std::vector<int>& alive = ev.axis == Axis::row ? row_alive : col_alive;
    const auto it = std::find(alive.begin(), alive.end(), ev.left);
    const std::size_t pos = static_cast<std::size_t>(it - alive.begin());
    if (it == alive.end() || pos + 1 >= alive.size() || alive[pos + 1] != ev.right) {
      throw validation_error("gen_random_twin_ordered: split replay lost adjacency");
    }
    alive[pos] = ev.parent;
    alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(pos) + 1);
    seq.ops.push_back({ev.axis, pos});
  }

  const std::size_t width = max_wideness(m, seq);
  return {std::move(m), std::move(seq), width};
}

BitMatrix gen_grid_sparse(std::size_t n, std::size_t d, std::uint64_t seed) {
  BitMatrix m(n, n);
  const std::size_t side = (n + 1) / 2;  // usable even coordinates per axis
  const std::size_t sites = side * side;
  const std::size_t target = std::min(d * n, sites);
  SplitMix64 rng(seed);
  // Floyd's sampling: uniform subset of `target` sites without replacement.
  std::unordered_set<std::size_t> chosen;
  chosen.reserve(target * 2);
  for (std::size_t j = sites - target; j < sites; ++j) {
    const std::size_t t = rng.below(j + 1);
    const std::size_t site = chosen.insert(t).second ? t : j;
    if (site != t) chosen.insert(site);
    m.set(2 * (site / side), 2 * (site % side), true);
  }
  return m;
}

BitMatrix corrupt(const BitMatrix& m, std::size_t flips, std::uint64_t seed) {
  const std::size_t total = m.n_rows() * m.n_cols();
  if (flips > total) {
    throw index_error("corrupt: " + std::to_string(flips) + " flips exceed the " +
                      std::to_string(total) + " entries available");
  }
  SplitMix64 rng(seed);
  BitMatrix out = m;
  std::unordered_set<std::size_t> chosen;
  chosen.reserve(flips * 2);
  for (std::size_t j = total - flips; j < total; ++j) {
    const std::size_t t = rng.below(j + 1);
    const std::size_t pos = chosen.insert(t).second ? t : j;
    if (pos != t) chosen.insert(pos);
    out.flip(pos / m.n_cols(), pos % m.n_cols());
  }
  return out;
}

BitMatrix pad_to(const BitMatrix& m, std::size_t n_rows, std::size_t n_cols) {
  if (n_rows < m.n_rows() || n_cols < m.n_cols()) {
    throw dimension_error("pad_to: target " + std::to_string(n_rows) + "x" +
                          std::to_string(n_cols) + " is smaller than the " +
                          std::to_string(m.n_rows()) + "x" + std::to_string(m.n_cols()) +
                          " input");
  }
  BitMatrix out(n_rows, n_cols);
  for (std::size_t r = 0; r < m.n_rows(); ++r)
    for (std::size_t c = 0; c < m.n_cols(); ++c)
      if (m.get(r, c)) out.set(r, c, true);
  return out;
}

}  // namespace twinmul
