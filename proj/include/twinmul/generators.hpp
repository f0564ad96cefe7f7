#pragma once

#include <cstdint>

#include "twinmul/bit_matrix.hpp"
#include "twinmul/twinwidth.hpp"

namespace twinmul {

// Recursive tricyclic family: level 0 is the 2x2 identity; each level embeds
// three copies of the previous level on the diagonal of a 3x3 block grid with
// all-ones blocks cyclically above and all-zeros blocks below:
//   [ A 0 1 ]
//   [ 1 A 0 ]
//   [ 0 1 A ]
// Size 2*3^level; every row and column has exactly 3^level ones; the realized
// identity-order row Hamming sum is 3^(level-1)*(8*level+6) for level >= 1.
BitMatrix gen_tricyclic(std::size_t level);

// (i+j) mod 2 pattern; the densest structure-free case: the decomposition
// degenerates to one rectangle per 1-entry.
BitMatrix gen_chessboard(std::size_t n);

// 2x2 block matrix [[Q^T, Q], [Q, Q^T]] where Q is the (n/2)-sized block
// whose rows alternate all-0, all-1 (first row all-0). n must be even.
// Not d-twin-ordered for any d < n/2 yet 2-mixed-free.
BitMatrix gen_stripe_block(std::size_t n);

// Independent Bernoulli(density) entries.
BitMatrix gen_random_dense(std::size_t n, double density, std::uint64_t seed);

struct TwinOrderedInstance {
  BitMatrix matrix;
  MergeSequence sequence;     // witness contraction schedule
  std::size_t measured_width; // max_wideness(matrix, sequence), measured, not assumed
};

// Grows a matrix from 1x1 by n-1 row splits and n-1 column splits in a
// seeded random interleaving; each split duplicates a random row (column)
// and toggles up to floor(d/2) random entries in the new copy. The reverse
// of the construction is returned as the merge sequence; the instance
// certifies exactly the wideness it measures on that sequence.
TwinOrderedInstance gen_random_twin_ordered(std::size_t n, std::size_t d, std::uint64_t seed);

// At most d*n ones sampled without replacement from the even-even sites
// (2i, 2j), so no two 1s are adjacent (not even diagonally).
BitMatrix gen_grid_sparse(std::size_t n, std::size_t d, std::uint64_t seed);

// Copy of m with `flips` distinct uniformly seeded entries toggled.
BitMatrix corrupt(const BitMatrix& m, std::size_t flips, std::uint64_t seed);

// m embedded in the top-left corner of an n_rows x n_cols all-zeros matrix.
// Lets the fixed-size families (e.g. tricyclic, whose sizes are 2*3^level)
// stand in for arbitrary target sizes. Throws dimension_error if the target
// is smaller than m on either axis.
BitMatrix pad_to(const BitMatrix& m, std::size_t n_rows, std::size_t n_cols);

}  // namespace twinmul
