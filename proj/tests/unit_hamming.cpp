#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "support/counting_scalar.hpp"
#include "twinmul/bit_matrix.hpp"
#include "twinmul/generators.hpp"
#include "twinmul/hamming_engine.hpp"
#include "twinmul/oracle.hpp"
#include "twinmul/rng.hpp"

using namespace twinmul;
using testing::CountingScalar;

namespace {

BitMatrix random_matrix(std::size_t n_rows, std::size_t n_cols, double density,
                        std::uint64_t seed) {
  SplitMix64 rng(seed);
  BitMatrix m(n_rows, n_cols);
  for (std::size_t r = 0; r < n_rows; ++r)
    for (std::size_t c = 0; c < n_cols; ++c)
      if (rng.bernoulli(density)) m.set(r, c, true);
  return m;
}

std::vector<long long> random_vec(std::size_t n, SplitMix64& rng) {
  std::vector<long long> v(n);
  for (auto& x : v) x = rng.int_in(-100, 100);
  return v;
}

// Materializes row t of the ordered matrix by replaying the plan's deltas.
std::vector<int> replay_row(const HammingPlan& p, std::size_t t) {
  std::vector<int> row(p.n_cols, 0);
  for (std::size_t c = 0; c < p.n_cols; ++c)
    row[c] = (p.base_row[c / kWordBits] >> (c % kWordBits)) & 1u;
  for (std::size_t step = 0; step < t; ++step)
    for (std::size_t k = p.offsets[step]; k < p.offsets[step + 1]; ++k)
      row[p.deltas[k].col] += p.deltas[k].sign;
  return row;
}

}  // namespace

TEST_CASE("mst_order: returns a permutation with the promised realized sums") {
  SUBCASE("single row") {
    const Permutation pi = mst_order(BitMatrix(1, 5));
    CHECK(pi.map == std::vector<std::size_t>{0});
  }
  SUBCASE("identity matrix: every ordering realizes 2(n-1)") {
    for (const std::size_t n : {2, 5, 9}) {
      const BitMatrix m = BitMatrix::identity(n);
      const Permutation pi = mst_order(m);
      CHECK(pi.valid_for(n));
      CHECK(row_hamming_sum(m, pi) == 2 * (n - 1));
    }
  }
  SUBCASE("all rows equal: realized sum zero") {
    BitMatrix m(6, 4);
    for (std::size_t r = 0; r < 6; ++r) m.set(r, 2, true);
    CHECK(row_hamming_sum(m, mst_order(m)) == 0);
  }
  SUBCASE("starts at row 0 and is deterministic") {
    const BitMatrix m = random_matrix(12, 10, 0.5, 21);
    const Permutation pi = mst_order(m);
    CHECK(pi.map[0] == 0);
    CHECK(mst_order(m).map == pi.map);
  }
}

TEST_CASE("mst_order: rows drawn from few patterns end up grouped") {
  // Zero-weight spanning edges connect duplicate rows, and the preorder walks
  // a zero-weight subtree before leaving it, so every duplicate class is
  // contiguous in the order.
  SplitMix64 rng(33);
  const std::vector<std::string> patterns{"10010110", "01101001", "11110000", "00000000"};
  std::vector<std::string> rows;
  for (int i = 0; i < 20; ++i) rows.push_back(patterns[rng.below(patterns.size())]);
  const BitMatrix m = BitMatrix::from_rows(rows);

  const Permutation pi = mst_order(m);
  std::vector<int> seen_done(patterns.size(), 0);
  std::size_t current = patterns.size();
  for (const std::size_t r : pi.map) {
    const std::size_t cls =
        std::find(patterns.begin(), patterns.end(), rows[r]) - patterns.begin();
    if (cls != current) {
      CHECK(!seen_done[cls]);  // a class never resumes after being left
      if (current < patterns.size()) seen_done[current] = 1;
      current = cls;
    }
  }
}

TEST_CASE("build_plan: deltas replay the matrix in order") {
  SUBCASE("random matrices, mst and shuffled orders") {
    std::uint64_t seed = 50;
    for (const auto& [nr, nc] : {std::pair<std::size_t, std::size_t>{9, 14}, {16, 7}}) {
      const BitMatrix m = random_matrix(nr, nc, 0.45, seed++);
      SplitMix64 rng(seed * 13);

      Permutation shuffled = Permutation::identity(nr);
      for (std::size_t i = nr; i > 1; --i)
        std::swap(shuffled.map[i - 1], shuffled.map[rng.below(i)]);

      for (const Permutation& pi : {mst_order(m), shuffled}) {
        const HammingPlan p = build_plan(m, pi);
        CHECK(p.total_weight == row_hamming_sum(m, pi));
        CHECK(p.total_weight == p.deltas.size());
        for (std::size_t t = 0; t < nr; ++t) {
          const std::vector<int> row = replay_row(p, t);
          for (std::size_t c = 0; c < nc; ++c) {
            CHECK(row[c] == (m.get(pi.map[t], c) ? 1 : 0));
          }
        }
        // columns ascend within each transition
        for (std::size_t t = 0; t + 1 < nr; ++t)
          for (std::size_t k = p.offsets[t] + 1; k < p.offsets[t + 1]; ++k)
            CHECK(p.deltas[k - 1].col < p.deltas[k].col);
      }
    }
  }
  SUBCASE("all rows equal: no deltas") {
    BitMatrix m(5, 8);
    for (std::size_t r = 0; r < 5; ++r) m.set(r, 3, true);
    const HammingPlan p = build_plan(m, Permutation::identity(5));
    CHECK(p.total_weight == 0);
    CHECK(p.deltas.empty());
  }
  SUBCASE("complementary pair: one full-width transition") {
    const BitMatrix m = BitMatrix::from_rows({"10101", "01010"});
    const HammingPlan p = build_plan(m, Permutation::identity(2));
    CHECK(p.total_weight == 5);
    int pluses = 0, minuses = 0;
    for (const auto& d : p.deltas) (d.sign > 0 ? pluses : minuses)++;
    CHECK(pluses == 2);   // columns that turn 0 -> 1
    CHECK(minuses == 3);  // columns that turn 1 -> 0
  }
}

TEST_CASE("realized Hamming sums of the recursive family") {
  // identity-order sums: level 1 -> 14, level 2 -> 66
  CHECK(build_plan(gen_tricyclic(1), Permutation::identity(6)).total_weight == 14);
  CHECK(build_plan(gen_tricyclic(2), Permutation::identity(18)).total_weight == 66);
  // the MST order can only improve on a factor-2 envelope of the optimum,
  // which the identity-order sum upper-bounds
  CHECK(coherence_upper_bound(gen_tricyclic(2)) <= 2 * 66);
}

TEST_CASE("hamming_mv: hand examples and oracle agreement") {
  SUBCASE("all rows equal: constant output") {
    BitMatrix m(4, 3);
    for (std::size_t r = 0; r < 4; ++r) {
      m.set(r, 0, true);
      m.set(r, 2, true);
    }
    const std::vector<long long> v{7, -1, 4};
    const std::vector<long long> x = hamming_mv<long long>(hamming_preprocess(m), v);
    CHECK(x == std::vector<long long>(4, 11));
  }
  SUBCASE("row weights via the all-ones vector") {
    const BitMatrix m = gen_tricyclic(1);
    const HammingPlan p = build_plan(m, Permutation::identity(6));
    const std::vector<long long> x = hamming_mv<long long>(p, std::vector<long long>(6, 1));
    CHECK(x == std::vector<long long>(6, 3));  // every row has 3^1 ones
  }
  SUBCASE("stripe block 8x8, counting vector") {
    const BitMatrix m = gen_stripe_block(8);
    std::vector<long long> v(8);
    std::iota(v.begin(), v.end(), 1);
    CHECK(hamming_mv<long long>(hamming_preprocess(m), v) == oracle::naive_mv<long long>(m, v));
  }
  SUBCASE("random matrices, both integer and double") {
    std::uint64_t seed = 77;
    for (const auto& [nr, nc] : {std::pair<std::size_t, std::size_t>{15, 15}, {9, 22}, {26, 8}}) {
      const BitMatrix m = random_matrix(nr, nc, 0.5, seed++);
      const HammingPlan p = hamming_preprocess(m);
      SplitMix64 rng(seed * 7);
      for (int trial = 0; trial < 6; ++trial) {
        const std::vector<long long> v = random_vec(nc, rng);
        CHECK(hamming_mv<long long>(p, v) == oracle::naive_mv<long long>(m, v));
      }
      std::vector<double> dv(nc);
      for (auto& x : dv) x = static_cast<double>(rng.int_in(-800, 800)) / 16.0;
      const std::vector<double> got = hamming_mv<double>(p, dv);
      const std::vector<double> want = oracle::naive_mv<double>(m, dv);
      for (std::size_t i = 0; i < got.size(); ++i)
        CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-10));
    }
  }
  SUBCASE("vector length is checked") {
    const HammingPlan p = hamming_preprocess(BitMatrix(2, 3));
    CHECK_THROWS_AS(hamming_mv<long long>(p, std::vector<long long>{1, 2}), dimension_error);
  }
}

TEST_CASE("HammingHandle: products and structure size") {
  const BitMatrix m = random_matrix(14, 11, 0.4, 140);
  const HammingHandle h = HammingHandle::preprocess(m);
  SplitMix64 rng(141);

  CHECK(h.structure_size() == h.row_plan().total_weight);
  CHECK(h.row_plan().total_weight == row_hamming_sum(m, mst_order(m)));

  const std::vector<long long> v = random_vec(11, rng);
  const std::vector<long long> w = random_vec(14, rng);
  CHECK(h.mv<long long>(v) == oracle::naive_mv<long long>(m, v));
  CHECK(h.vt_m<long long>(w) == oracle::naive_vt_m<long long>(m, w));

  DenseMatrix<long long> b(11, 4);
  for (std::size_t r = 0; r < 11; ++r)
    for (std::size_t c = 0; c < 4; ++c) b.at(r, c) = rng.int_in(-50, 50);
  CHECK(h.matmul<long long>(b) == oracle::naive_matmul<long long>(m, b));

  SUBCASE("identity and zero matrices") {
    const HammingHandle id = HammingHandle::preprocess(BitMatrix::identity(6));
    const std::vector<long long> u = random_vec(6, rng);
    CHECK(id.mv<long long>(u) == u);
    CHECK(id.vt_m<long long>(u) == u);
    const HammingHandle zero = HammingHandle::preprocess(BitMatrix(3, 5));
    CHECK(zero.mv<long long>(std::vector<long long>(5, 4)) == std::vector<long long>(3, 0));
    CHECK(zero.vt_m<long long>(std::vector<long long>(3, 4)) == std::vector<long long>(5, 0));
  }
}

TEST_CASE("optimal_row_ordering: exact optimum within its budget") {
  SUBCASE("identity: any order is optimal") {
    for (const std::size_t n : {2, 5, 8}) {
      const auto [pi, weight] = oracle::optimal_row_ordering(BitMatrix::identity(n));
      CHECK(pi.valid_for(n));
      CHECK(weight == 2 * (n - 1));
    }
  }
  SUBCASE("identical rows cost nothing") {
    BitMatrix m(7, 3);
    for (std::size_t r = 0; r < 7; ++r) m.set(r, 1, true);
    CHECK(oracle::optimal_row_ordering(m).second == 0);
  }
  SUBCASE("level-1 family: identity order achieves 14, optimum not above it") {
    const BitMatrix m = gen_tricyclic(1);
    const auto [pi, weight] = oracle::optimal_row_ordering(m);
    CHECK(weight <= 14);
    CHECK(weight == row_hamming_sum(m, pi));
  }
  SUBCASE("returned weight is realized by the returned permutation") {
    for (std::uint64_t seed = 300; seed < 305; ++seed) {
      const BitMatrix m = random_matrix(9, 12, 0.5, seed);
      const auto [pi, weight] = oracle::optimal_row_ordering(m);
      CHECK(weight == row_hamming_sum(m, pi));
    }
  }
  SUBCASE("optimum is invariant under row and column shuffles") {
    const BitMatrix m = random_matrix(8, 9, 0.5, 320);
    const std::size_t base = oracle::optimal_row_ordering(m).second;
    SplitMix64 rng(321);
    for (int trial = 0; trial < 4; ++trial) {
      Permutation rows = Permutation::identity(8);
      Permutation cols = Permutation::identity(9);
      for (std::size_t i = 8; i > 1; --i) std::swap(rows.map[i - 1], rows.map[rng.below(i)]);
      for (std::size_t i = 9; i > 1; --i) std::swap(cols.map[i - 1], cols.map[rng.below(i)]);
      CHECK(oracle::optimal_row_ordering(permuted(m, rows, cols)).second == base);
    }
  }
  SUBCASE("row budget enforced") {
    CHECK_THROWS_AS(oracle::optimal_row_ordering(BitMatrix(16, 4)), capacity_error);
  }
}

TEST_CASE("coherence_upper_bound: between the optimum and twice the optimum") {
  CHECK(coherence_upper_bound(BitMatrix::identity(7)) == 12);
  BitMatrix all_ones(5, 5);
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t c = 0; c < 5; ++c) all_ones.set(r, c, true);
  CHECK(coherence_upper_bound(all_ones) == 0);

  std::uint64_t seed = 400;
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 4 + trial % 8;  // up to 11 rows
    const BitMatrix m = random_matrix(n, 10, 0.2 + 0.1 * (trial % 7), seed++);
    const std::size_t opt = oracle::optimal_row_ordering(m).second;
    const std::size_t got = coherence_upper_bound(m);
    CHECK(got >= opt);
    CHECK(got <= 2 * opt);
  }
}

TEST_CASE("hamming_mv operation count: one op per base 1-bit beyond the first plus one per delta") {
  const auto run = [](const BitMatrix& m) {
    const HammingPlan p = hamming_preprocess(m);
    std::vector<CountingScalar> v(m.n_cols());
    SplitMix64 rng(m.n_cols() * 53 + 1);
    for (auto& x : v) x = CountingScalar(rng.int_in(-100, 100));

    CountingScalar::counts.reset();
    const std::vector<CountingScalar> got = hamming_mv<CountingScalar>(p, v);
    const auto ops = CountingScalar::counts;
    CHECK(ops.total() <= m.n_cols() - 1 + p.total_weight);
    CHECK(ops.minus == 0);  // only the running value is mutated

    std::vector<long long> vv(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) vv[j] = v[j].value();
    const std::vector<long long> want = oracle::naive_mv<long long>(m, vv);
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i].value() == want[i]);
  };

  run(gen_tricyclic(2));
  run(gen_stripe_block(8));
  run(gen_chessboard(9));
  run(random_matrix(20, 20, 0.5, 555));
  run(random_matrix(13, 27, 0.8, 556));
}
