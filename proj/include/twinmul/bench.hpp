#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace twinmul {

// Matrix-vector throughput comparison across engines on generated families.
// Every engine at a given (family, n) sees the same matrix and the same
// query vectors; queries run once unmeasured to warm caches, then
// `repeats` measured rounds report the median of per-round means.
struct BenchConfig {
  std::vector<std::string> families;  // random-twin-ordered, random-dense,
                                      // grid-sparse, chessboard, stripe-block
  std::vector<std::size_t> sizes;
  std::vector<std::string> engines;   // naive, rect, hamming
  std::size_t d = 4;                  // structure parameter where a family takes one
  double density = 0.5;               // random-dense only
  std::size_t queries = 8;
  std::size_t repeats = 5;
  std::uint64_t seed = 0;
};

struct BenchRow {
  std::string family;
  std::size_t n = 0;
  std::string engine;
  std::uint64_t preprocess_ns = 0;
  double mean_query_ns = 0.0;
  std::size_t structure_size = 0;  // n^2 naive, rectangle count rect, delta count hamming
};

std::vector<BenchRow> run_bench(const BenchConfig& config);

// Header is exactly: family,n,engine,preprocess_ns,mean_query_ns,structure_size
void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace twinmul
