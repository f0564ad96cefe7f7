#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "twinmul/bench.hpp"
#include "twinmul/bit_matrix.hpp"
#include "twinmul/errors.hpp"
#include "twinmul/generators.hpp"
#include "twinmul/hamming_engine.hpp"
#include "twinmul/io.hpp"
#include "twinmul/oracle.hpp"
#include "twinmul/rect_decomp.hpp"
#include "twinmul/rect_engine.hpp"
#include "twinmul/twinwidth.hpp"

namespace {

using namespace twinmul;

template <typename F>
void with_output(const std::string& path, F&& f) {
  if (path.empty() || path == "-") {
    f(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw parse_error("cannot open file for writing: " + path);
  f(out);
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> parts;
  std::istringstream ss(s);
  for (std::string part; std::getline(ss, part, ',');)
    if (!part.empty()) parts.push_back(part);
  return parts;
}

std::size_t parse_size(const std::string& tok, const std::string& flag) {
  std::size_t value = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || p != tok.data() + tok.size() || value == 0) {
    throw index_error(flag + ": expected a positive size, got \"" + tok + "\"");
  }
  return value;
}

// mv and matmul accept either a matrix or a precomputed decomposition on the
// left; a decomposition is painted back to its matrix for the non-rect
// engines and reused as-is by the rect engine.
struct MatrixInput {
  BitMatrix matrix;
  std::optional<RectDecomposition> decomposition;
};

MatrixInput load_matrix_input(const std::string& path) {
  switch (sniff_matrix_file(path)) {
    case MatrixFileKind::dense:
    case MatrixFileKind::sparse:
      return {read_matrix_file(path), std::nullopt};
    case MatrixFileKind::decomposition: {
      RectDecomposition d = read_decomposition_file(path);
      return {matrix_from_decomposition(d), std::move(d)};
    }
    case MatrixFileKind::numeric:
      break;
  }
  throw parse_error(path +
                    ": expected a binary matrix or a decomposition, found a numeric matrix");
}

DenseMatrix<std::int64_t> load_numeric_input(const std::string& path) {
  if (sniff_matrix_file(path) == MatrixFileKind::numeric) return read_numeric_matrix_file(path);
  const BitMatrix m = load_matrix_input(path).matrix;
  DenseMatrix<std::int64_t> out(m.n_rows(), m.n_cols());
  for (std::size_t i = 0; i < m.n_rows(); ++i)
    for (std::size_t j = 0; j < m.n_cols(); ++j)
      if (m.get(i, j)) out.at(i, j) = 1;
  return out;
}

// ---- gen ----

struct GenOpts {
  std::string family;
  std::size_t n = 8;
  std::size_t level = 1;
  std::size_t d = 2;
  double density = 0.5;
  std::uint64_t seed = 0;
  std::size_t pad = 0;
  std::string out;
  std::string seq_out;
  bool sparse = false;
};

int run_gen(const GenOpts& o) {
  BitMatrix m(1, 1);
  std::optional<MergeSequence> seq;
  if (o.family == "tricyclic") {
    m = gen_tricyclic(o.level);
    seq = tricyclic_merge_sequence(o.level);
  } else if (o.family == "chessboard") {
    m = gen_chessboard(o.n);
  } else if (o.family == "stripe-block") {
    m = gen_stripe_block(o.n);
  } else if (o.family == "random-dense") {
    m = gen_random_dense(o.n, o.density, o.seed);
  } else if (o.family == "random-twin-ordered") {
    TwinOrderedInstance inst = gen_random_twin_ordered(o.n, o.d, o.seed);
    m = std::move(inst.matrix);
    seq = std::move(inst.sequence);
  } else if (o.family == "grid-sparse") {
    m = gen_grid_sparse(o.n, o.d, o.seed);
  } else {
    throw index_error("unknown family: " + o.family);
  }
  if (o.pad != 0) {
    if (!o.seq_out.empty()) {
      throw index_error("--pad-to cannot be combined with --seq-out: the witness "
                        "sequence belongs to the unpadded matrix");
    }
    m = pad_to(m, o.pad, o.pad);
  }
  if (!o.seq_out.empty()) {
    if (!seq) {
      throw index_error("--seq-out needs a family with a merge-sequence witness "
                        "(tricyclic or random-twin-ordered)");
    }
    write_merge_sequence_file(o.seq_out, *seq);
  }
  with_output(o.out, [&](std::ostream& os) {
    o.sparse ? write_matrix_sparse(os, m) : write_matrix(os, m);
  });
  return 0;
}

// ---- decompose ----

struct DecomposeOpts {
  std::string in;
  std::string out;
};

int run_decompose(const DecomposeOpts& o) {
  const BitMatrix m = read_matrix_file(o.in);
  const RectDecomposition d = decompose(m);
  if (const auto issue = validate(d, m)) {
    throw validation_error("decompose self-check failed: " + describe(*issue));
  }
  const PolygonStats s = polygon_stats(m);
  std::cout << "rects=" << d.rects.size() << " polygons=" << s.polygons
            << " concave=" << s.concave_vertices << " holes=" << s.holes << '\n';
  if (!o.out.empty()) write_decomposition_file(o.out, d);
  return 0;
}

// ---- mv ----

struct MvOpts {
  std::string in;
  std::string vec;
  std::string out;
  std::string engine = "rect";
  bool left = false;
};

template <typename T>
std::vector<T> run_mv_typed(const MatrixInput& input, const std::string& engine, bool left,
                            std::span<const T> v) {
  if (engine == "naive") {
    return left ? oracle::naive_vt_m<T>(input.matrix, v) : oracle::naive_mv<T>(input.matrix, v);
  }
  if (engine == "rect") {
    const RectHandle h = input.decomposition ? RectHandle(*input.decomposition)
                                             : RectHandle::preprocess(input.matrix);
    return left ? h.vt_m<T>(v) : h.mv<T>(v);
  }
  if (engine == "hamming") {
    const HammingHandle h = HammingHandle::preprocess(input.matrix);
    return left ? h.vt_m<T>(v) : h.mv<T>(v);
  }
  throw index_error("unknown engine: " + engine);
}

int run_mv(const MvOpts& o) {
  const MatrixInput input = load_matrix_input(o.in);
  const NumericVector v = read_vector_any_file(o.vec);
  const std::size_t need = o.left ? input.matrix.n_rows() : input.matrix.n_cols();
  std::visit(
      [&](const auto& vec) {
        using T = typename std::decay_t<decltype(vec)>::value_type;
        if (vec.size() != need) {
          throw dimension_error("mv: vector has " + std::to_string(vec.size()) +
                                " entries, matrix needs " + std::to_string(need));
        }
        const std::vector<T> r =
            run_mv_typed<T>(input, o.engine, o.left, std::span<const T>(vec));
        with_output(o.out, [&](std::ostream& os) { write_vector(os, std::span<const T>(r)); });
      },
      v);
  return 0;
}

// ---- matmul ----

struct MatmulOpts {
  std::string a;
  std::string b;
  std::string out;
  std::string engine = "rect";
};

int run_matmul(const MatmulOpts& o) {
  const MatrixInput a = load_matrix_input(o.a);
  const DenseMatrix<std::int64_t> b = load_numeric_input(o.b);
  if (b.n_rows() != a.matrix.n_cols()) {
    throw dimension_error("matmul: left matrix has " + std::to_string(a.matrix.n_cols()) +
                          " columns, right has " + std::to_string(b.n_rows()) + " rows");
  }
  DenseMatrix<std::int64_t> r(1, 1);
  if (o.engine == "naive") {
    r = oracle::naive_matmul<std::int64_t>(a.matrix, b);
  } else if (o.engine == "rect") {
    const RectHandle h = a.decomposition ? RectHandle(*a.decomposition)
                                         : RectHandle::preprocess(a.matrix);
    r = h.matmul<std::int64_t>(b);
  } else if (o.engine == "hamming") {
    r = HammingHandle::preprocess(a.matrix).matmul<std::int64_t>(b);
  } else {
    throw index_error("unknown engine: " + o.engine);
  }
  with_output(o.out, [&](std::ostream& os) { write_numeric_matrix(os, r); });
  return 0;
}

// ---- stats ----

int run_stats(const std::string& in) {
  const BitMatrix m = read_matrix_file(in);
  const PolygonStats s = polygon_stats(m);
  const RectDecomposition d = decompose(m);
  std::cout << "n_rows=" << m.n_rows() << '\n'
            << "n_cols=" << m.n_cols() << '\n'
            << "ones=" << m.ones_count() << '\n'
            << "corners=" << corner_count(m) << '\n'
            << "polygons=" << s.polygons << '\n'
            << "convex=" << s.convex_vertices << '\n'
            << "concave=" << s.concave_vertices << '\n'
            << "holes=" << s.holes << '\n'
            << "boundary_horizontal=" << s.boundary_horizontal_length << '\n'
            << "rects=" << d.rects.size() << '\n'
            << "row_hamming_identity=" << row_hamming_sum(m, Permutation::identity(m.n_rows()))
            << '\n'
            << "col_hamming_identity=" << col_hamming_sum(m, Permutation::identity(m.n_cols()))
            << '\n'
            << "mst_row_hamming=" << coherence_upper_bound(m) << '\n';
  return 0;
}

// ---- verify ----

struct VerifyOpts {
  std::string matrix;
  std::string seq;
  std::size_t d = 0;
};

int run_verify(const VerifyOpts& o) {
  const BitMatrix m = read_matrix_file(o.matrix);
  const MergeSequence s = read_merge_sequence_file(o.seq);
  const std::size_t w = max_wideness(m, s);
  const bool pass = w <= o.d;
  std::cout << "max_wideness=" << w << " d=" << o.d << " verdict=" << (pass ? "pass" : "fail")
            << '\n';
  return pass ? 0 : 1;
}

// ---- bench ----

struct BenchOpts {
  std::vector<std::string> families;
  std::string n_list;
  std::string engine_list = "naive,rect,hamming";
  std::size_t queries = 8;
  std::size_t repeats = 5;
  std::size_t d = 4;
  double density = 0.5;
  std::uint64_t seed = 0;
  std::string out;
};

int run_bench_cmd(const BenchOpts& o) {
  BenchConfig cfg;
  for (const std::string& group : o.families)
    for (std::string& f : split_csv(group)) cfg.families.push_back(std::move(f));
  for (const std::string& tok : split_csv(o.n_list))
    cfg.sizes.push_back(parse_size(tok, "--n-list"));
  cfg.engines = split_csv(o.engine_list);
  if (cfg.families.empty() || cfg.sizes.empty() || cfg.engines.empty()) {
    throw index_error("bench needs at least one family, one size, and one engine");
  }
  cfg.queries = o.queries;
  cfg.repeats = o.repeats;
  cfg.d = o.d;
  cfg.density = o.density;
  cfg.seed = o.seed;
  const std::vector<BenchRow> rows = run_bench(cfg);
  with_output(o.out, [&](std::ostream& os) { write_csv(os, rows); });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Binary-matrix products through structure: rectangle decompositions, "
               "Hamming-coherent row orders, and engines that exploit them"};
  app.require_subcommand(1);

  GenOpts gen_opts;
  CLI::App* gen = app.add_subcommand("gen", "Generate a matrix from a named family");
  gen->add_option("--family", gen_opts.family, "Family to generate")
      ->required()
      ->check(CLI::IsMember({"tricyclic", "chessboard", "stripe-block", "random-dense",
                             "random-twin-ordered", "grid-sparse"}));
  gen->add_option("--n", gen_opts.n, "Matrix size (ignored by tricyclic)")
      ->capture_default_str();
  gen->add_option("--level", gen_opts.level, "Tricyclic recursion depth (size 2*3^level)")
      ->capture_default_str();
  gen->add_option("--d", gen_opts.d, "Structure parameter for random-twin-ordered / grid-sparse")
      ->capture_default_str();
  gen->add_option("--density", gen_opts.density, "Ones density for random-dense")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  gen->add_option("--seed", gen_opts.seed, "RNG seed")->capture_default_str();
  gen->add_option("--pad-to", gen_opts.pad,
                  "Zero-pad the generated matrix to this square size (0 = no padding)");
  gen->add_option("--out", gen_opts.out, "Output matrix file (default stdout)");
  gen->add_option("--seq-out", gen_opts.seq_out,
                  "Also write the witness merge sequence (tricyclic, random-twin-ordered)");
  gen->add_flag("--sparse", gen_opts.sparse, "Write the sparse matrix format");

  DecomposeOpts dec_opts;
  CLI::App* dec = app.add_subcommand(
      "decompose", "Decompose a matrix into disjoint all-ones rectangles and print stats");
  dec->add_option("--in", dec_opts.in, "Input matrix file")->required();
  dec->add_option("--out", dec_opts.out, "Output decomposition file");

  MvOpts mv_opts;
  CLI::App* mv = app.add_subcommand("mv", "Multiply a matrix by a vector");
  mv->add_option("--in", mv_opts.in, "Matrix or decomposition file")->required();
  mv->add_option("--vec", mv_opts.vec, "Vector file")->required();
  mv->add_option("--engine", mv_opts.engine, "Product engine")
      ->check(CLI::IsMember({"rect", "hamming", "naive"}))
      ->capture_default_str();
  mv->add_flag("--left", mv_opts.left, "Compute v^T M instead of M v");
  mv->add_option("--out", mv_opts.out, "Output vector file (default stdout)");

  MatmulOpts mm_opts;
  CLI::App* mm = app.add_subcommand("matmul", "Multiply a binary matrix by a numeric matrix");
  mm->add_option("--a", mm_opts.a, "Left matrix or decomposition file")->required();
  mm->add_option("--b", mm_opts.b, "Right matrix file (numeric or binary)")->required();
  mm->add_option("--engine", mm_opts.engine, "Product engine")
      ->check(CLI::IsMember({"rect", "hamming", "naive"}))
      ->capture_default_str();
  mm->add_option("--out", mm_opts.out, "Output numeric matrix file (default stdout)");

  std::string stats_in;
  CLI::App* stats = app.add_subcommand("stats", "Print structural measures of a matrix");
  stats->add_option("--in", stats_in, "Input matrix file")->required();

  VerifyOpts ver_opts;
  CLI::App* ver = app.add_subcommand(
      "verify", "Check a merge sequence's wideness against a bound (exit 1 on fail)");
  ver->add_option("--matrix", ver_opts.matrix, "Matrix file")->required();
  ver->add_option("--seq", ver_opts.seq, "Merge sequence file")->required();
  ver->add_option("--d", ver_opts.d, "Wideness bound to check against")->required();

  BenchOpts bench_opts;
  CLI::App* bench = app.add_subcommand("bench", "Time engines across families and sizes (CSV)");
  bench->add_option("--family", bench_opts.families, "Family (repeatable or comma-separated)")
      ->required();
  bench->add_option("--n-list", bench_opts.n_list, "Comma-separated sizes")->required();
  bench->add_option("--engine-list", bench_opts.engine_list, "Comma-separated engines")
      ->capture_default_str();
  bench->add_option("--queries", bench_opts.queries, "Random queries per engine")
      ->capture_default_str();
  bench->add_option("--repeats", bench_opts.repeats, "Measured rounds (median reported)")
      ->capture_default_str();
  bench->add_option("--d", bench_opts.d, "Structure parameter for families that take one")
      ->capture_default_str();
  bench->add_option("--density", bench_opts.density, "Density for random-dense")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  bench->add_option("--seed", bench_opts.seed, "RNG seed")->capture_default_str();
  bench->add_option("--out", bench_opts.out, "Output CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) return run_gen(gen_opts);
    if (dec->parsed()) return run_decompose(dec_opts);
    if (mv->parsed()) return run_mv(mv_opts);
    if (mm->parsed()) return run_matmul(mm_opts);
    if (stats->parsed()) return run_stats(stats_in);
    if (ver->parsed()) return run_verify(ver_opts);
    if (bench->parsed()) return run_bench_cmd(bench_opts);
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const validation_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
