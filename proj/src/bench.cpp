#include "twinmul/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "twinmul/bit_matrix.hpp"
#include "twinmul/errors.hpp"
#include "twinmul/generators.hpp"
#include "twinmul/hamming_engine.hpp"
#include "twinmul/oracle.hpp"
#include "twinmul/rect_engine.hpp"
#include "twinmul/rng.hpp"

namespace twinmul {

namespace {

volatile std::int64_t g_sink = 0;  // keeps query results observable

// Dense baseline doing identical work per entry regardless of how many bits
// are set (branchless masked add), so its cost is a stable Theta(n^2) yard-
// stick for the structured engines across instances of any density.
std::vector<std::int64_t> dense_baseline_mv(const BitMatrix& m,
                                            std::span<const std::int64_t> v) {
  std::vector<std::int64_t> x(m.n_rows());
  for (std::size_t r = 0; r < m.n_rows(); ++r) {
    const auto words = m.row_words(r);
    std::int64_t acc = 0;
    for (std::size_t c = 0; c < m.n_cols(); ++c) {
      const std::int64_t bit = static_cast<std::int64_t>((words[c / kWordBits] >> (c % kWordBits)) & 1u);
      acc += v[c] & -bit;
    }
    x[r] = acc;
  }
  return x;
}

std::uint64_t elapsed_ns(const std::chrono::steady_clock::time_point& t0) {
  const auto t1 = std::chrono::steady_clock::now();
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
}

// A burst of arithmetic before the first measurement lets the CPU reach its
// steady clock rate; otherwise the earliest rows absorb the ramp-up and
// cross-size ratios skew.
void warm_up_cpu() {
  const auto t0 = std::chrono::steady_clock::now();
  volatile std::uint64_t sink = 0x9E3779B97F4A7C15ULL;
  while (elapsed_ns(t0) < 150'000'000ULL) {
    std::uint64_t x = sink;
    for (int i = 0; i < 4096; ++i) x = x * 6364136223846793005ULL + 1442695040888963407ULL;
    sink = x;
  }
}

BitMatrix make_instance(const std::string& family, std::size_t n, const BenchConfig& cfg,
                        std::uint64_t seed) {
  if (family == "random-twin-ordered") return gen_random_twin_ordered(n, cfg.d, seed).matrix;
  if (family == "random-dense") return gen_random_dense(n, cfg.density, seed);
  if (family == "grid-sparse") return gen_grid_sparse(n, cfg.d, seed);
  if (family == "chessboard") return gen_chessboard(n);
  if (family == "stripe-block") return gen_stripe_block(n);
  throw index_error("unknown bench family: " + family);
}

struct EngineRun {
  std::uint64_t preprocess_ns = 0;
  std::size_t structure_size = 0;
  std::function<std::vector<std::int64_t>(std::span<const std::int64_t>)> query;
};

EngineRun prepare_engine(const std::string& engine, const BitMatrix& m) {
  EngineRun run;
  if (engine == "naive") {
    run.structure_size = m.n_rows() * m.n_cols();
    run.query = [&m](std::span<const std::int64_t> v) { return dense_baseline_mv(m, v); };
    return run;
  }
  if (engine == "rect") {
    const auto t0 = std::chrono::steady_clock::now();
    auto handle = std::make_shared<RectHandle>(RectHandle::preprocess(m));
    run.preprocess_ns = elapsed_ns(t0);
    run.structure_size = handle->structure_size();
    run.query = [handle](std::span<const std::int64_t> v) { return handle->mv(v); };
    return run;
  }
  if (engine == "hamming") {
    const auto t0 = std::chrono::steady_clock::now();
    auto handle = std::make_shared<HammingHandle>(HammingHandle::preprocess(m));
    run.preprocess_ns = elapsed_ns(t0);
    run.structure_size = handle->structure_size();
    run.query = [handle](std::span<const std::int64_t> v) { return handle->mv(v); };
    return run;
  }
  throw index_error("unknown bench engine: " + engine);
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchConfig& config) {
  if (config.queries > 0 && config.repeats == 0) {
    throw index_error("bench needs at least one repeat when queries are requested");
  }
  if (config.queries > 0) warm_up_cpu();
  std::vector<BenchRow> rows;
  for (const std::string& family : config.families) {
    for (const std::size_t n : config.sizes) {
      const std::uint64_t instance_seed = SplitMix64(config.seed ^ n).next();
      const BitMatrix m = make_instance(family, n, config, instance_seed);

      SplitMix64 qrng(instance_seed ^ 0x51ab5f2d90c1e3b7ULL);
      std::vector<std::vector<std::int64_t>> queries(config.queries);
      for (auto& q : queries) {
        q.resize(m.n_cols());
        for (auto& x : q) x = qrng.int_in(-100, 100);
      }

      for (const std::string& engine : config.engines) {
        const EngineRun run = prepare_engine(engine, m);
        if (config.queries == 0) {  // preprocess-only row
          rows.push_back({family, n, engine, run.preprocess_ns, 0.0, run.structure_size});
          continue;
        }

        for (const auto& q : queries) {
          const auto r = run.query(q);
          g_sink = g_sink + (r.front() ^ r.back());
        }
        std::vector<double> round_means;
        round_means.reserve(config.repeats);
        for (std::size_t rep = 0; rep < config.repeats; ++rep) {
          const auto t0 = std::chrono::steady_clock::now();
          for (const auto& q : queries) {
            const auto r = run.query(q);
            g_sink = g_sink + (r.front() ^ r.back());
          }
          round_means.push_back(static_cast<double>(elapsed_ns(t0)) /
                                static_cast<double>(queries.size()));
        }
        std::sort(round_means.begin(), round_means.end());
        rows.push_back({family, n, engine, run.preprocess_ns,
                        round_means[round_means.size() / 2], run.structure_size});
      }
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "family,n,engine,preprocess_ns,mean_query_ns,structure_size\n";
  for (const BenchRow& r : rows) {
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, r.mean_query_ns);
    out << r.family << ',' << r.n << ',' << r.engine << ',' << r.preprocess_ns << ','
        << std::string_view(buf, static_cast<std::size_t>(p - buf)) << ',' << r.structure_size
        << '\n';
  }
}

}  // namespace twinmul
