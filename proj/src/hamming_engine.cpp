#include "twinmul/hamming_engine.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace twinmul {

Permutation mst_order(const BitMatrix& m) {
  const std::size_t n = m.n_rows();
  if (n == 1) return Permutation::identity(1);

  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> key(n, kUnset);
  std::vector<std::size_t> parent(n, kUnset);
  std::vector<bool> in_tree(n, false);

  // Prim from row 0; keys update only on strict improvement, ties on the key
  // pick the smallest row, so the tree is deterministic.
  in_tree[0] = true;
  for (std::size_t j = 1; j < n; ++j) {
    key[j] = m.row_distance(0, j);
    parent[j] = 0;
  }
  for (std::size_t step = 1; step < n; ++step) {
    std::size_t pick = kUnset;
    for (std::size_t j = 0; j < n; ++j)
      if (!in_tree[j] && (pick == kUnset || key[j] < key[pick])) pick = j;
    in_tree[pick] = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (in_tree[j]) continue;
      const std::size_t dist = m.row_distance(pick, j);
      if (dist < key[j]) {
        key[j] = dist;
        parent[j] = pick;
      }
    }
  }

  struct Edge {
    std::size_t weight, child;
  };
  std::vector<std::vector<Edge>> children(n);
  for (std::size_t j = 1; j < n; ++j) children[parent[j]].push_back({key[j], j});
  for (auto& list : children)
    std::sort(list.begin(), list.end(), [](const Edge& a, const Edge& b) {
      if (a.weight != b.weight) return a.weight < b.weight;
      return a.child < b.child;
    });

  Permutation pi;
  pi.map.reserve(n);
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const std::size_t node = stack.back();
    stack.pop_back();
    pi.map.push_back(node);
    const auto& list = children[node];
    for (std::size_t k = list.size(); k-- > 0;) stack.push_back(list[k].child);
  }
  return pi;
}

HammingPlan build_plan(const BitMatrix& m, const Permutation& pi) {
  if (!pi.valid_for(m.n_rows()))
    throw dimension_error("build_plan: not a permutation of the row set");

  HammingPlan p;
  p.n_rows = m.n_rows();
  p.n_cols = m.n_cols();
  p.order = pi;
  const auto base = m.row_words(pi.map[0]);
  p.base_row.assign(base.begin(), base.end());

  p.offsets.assign(m.n_rows(), 0);
  for (std::size_t t = 0; t + 1 < m.n_rows(); ++t) {
    const auto prev = m.row_words(pi.map[t]);
    const auto cur = m.row_words(pi.map[t + 1]);
    for (std::size_t wi = 0; wi < prev.size(); ++wi) {
      std::uint64_t diff = prev[wi] ^ cur[wi];
      while (diff != 0) {
        const std::uint32_t c =
            static_cast<std::uint32_t>(wi * kWordBits) + static_cast<std::uint32_t>(std::countr_zero(diff));
        const std::uint64_t bit = diff & (~diff + 1);
        diff ^= bit;
        p.deltas.push_back({c, (cur[wi] & bit) != 0 ? 1 : -1});
      }
    }
    p.offsets[t + 1] = p.deltas.size();
  }
  p.total_weight = p.deltas.size();
  return p;
}

HammingPlan hamming_preprocess(const BitMatrix& m) { return build_plan(m, mst_order(m)); }

std::size_t coherence_upper_bound(const BitMatrix& m) {
  return row_hamming_sum(m, mst_order(m));
}

}  // namespace twinmul
