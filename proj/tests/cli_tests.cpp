// End-to-end tests for the twinmul command-line tool.  Every assertion here
// drives the real binary (path passed as argv[1]) through files and compares
// observable behaviour -- stdout, output files, exit codes -- against the
// library called in-process.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "twinmul/bit_matrix.hpp"
#include "twinmul/generators.hpp"
#include "twinmul/hamming_engine.hpp"
#include "twinmul/io.hpp"
#include "twinmul/oracle.hpp"
#include "twinmul/rect_decomp.hpp"
#include "twinmul/twinwidth.hpp"

namespace fs = std::filesystem;
using namespace twinmul;

namespace {

int g_failures = 0;

void check(bool ok, const std::string& what) {
  if (!ok) {
    std::cout << "FAIL: " << what << '\n';
    ++g_failures;
  }
}

std::string g_bin;
fs::path g_dir;

fs::path scratch(const std::string& name) { return g_dir / name; }

// Runs `twinmul <args>`, captures stdout into `stdout_name`, returns the
// exit code (or -1 if the process died abnormally).
int run_cli(const std::string& args, const std::string& stdout_name = "out.txt") {
  const std::string cmd = g_bin + " " + args + " > " + scratch(stdout_name).string() + " 2> " +
                          scratch("err.txt").string();
  const int status = std::system(cmd.c_str());
  if (status < 0) return -1;
#ifdef WEXITSTATUS
  if (!WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
#else
  return status;
#endif
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

BitMatrix all_ones(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, true);
  return m;
}

template <typename T>
void write_vector_to(const fs::path& p, const std::vector<T>& v) {
  std::ofstream out(p);
  write_vector(out, std::span<const T>(v));
}

void write_numeric_to(const fs::path& p, const DenseMatrix<std::int64_t>& m) {
  std::ofstream out(p);
  write_numeric_matrix(out, m);
}

const BitMatrix kRing = BitMatrix::from_rows({"111", "101", "111"});

void test_gen_matches_library() {
  check(run_cli("gen --family stripe-block --n 8 --out " + scratch("sb8.mat").string()) == 0,
        "gen stripe-block exits 0");
  check(read_matrix_file(scratch("sb8.mat").string()) == gen_stripe_block(8),
        "gen stripe-block --n 8 file equals the library matrix");

  check(run_cli("gen --family tricyclic --level 1 --out " + scratch("tri1.mat").string()) == 0,
        "gen tricyclic exits 0");
  check(read_matrix_file(scratch("tri1.mat").string()) == gen_tricyclic(1),
        "gen tricyclic --level 1 file equals the library matrix");

  check(run_cli("gen --family random-dense --n 24 --density 0.3 --seed 42 --out " +
                scratch("rd.mat").string()) == 0,
        "gen random-dense exits 0");
  check(read_matrix_file(scratch("rd.mat").string()) == gen_random_dense(24, 0.3, 42),
        "gen random-dense is seed-deterministic across process boundaries");

  // Default output is stdout.
  check(run_cli("gen --family chessboard --n 2", "chess2.txt") == 0, "gen to stdout exits 0");
  check(slurp(scratch("chess2.txt")) == "2 2\n01\n10\n", "chessboard 2x2 printed form");
}

void test_gen_sparse_roundtrip() {
  const fs::path p = scratch("gs.sparse");
  check(run_cli("gen --family grid-sparse --n 16 --d 2 --seed 3 --sparse --out " + p.string()) ==
            0,
        "gen --sparse exits 0");
  check(sniff_matrix_file(p.string()) == MatrixFileKind::sparse, "sparse file sniffs as sparse");
  check(read_matrix_file(p.string()) == gen_grid_sparse(16, 2, 3),
        "sparse encoding round-trips the grid-sparse matrix");
}

void test_gen_pad_to() {
  const fs::path p = scratch("tri1_pad.mat");
  check(run_cli("gen --family tricyclic --level 1 --pad-to 10 --out " + p.string()) == 0,
        "gen --pad-to exits 0");
  check(read_matrix_file(p.string()) == pad_to(gen_tricyclic(1), 10, 10),
        "padded matrix embeds the original top-left in zeros");
  check(run_cli("gen --family tricyclic --level 1 --pad-to 10 --seq-out " +
                scratch("never.seq").string()) == 2,
        "--pad-to with --seq-out is rejected with exit 2");
  check(run_cli("gen --family tricyclic --level 1 --pad-to 3 --out " +
                scratch("never.mat").string()) == 2,
        "padding below the generated size is a user error (exit 2)");
}

void test_verify_witness() {
  const fs::path m = scratch("rto.mat");
  const fs::path s = scratch("rto.seq");
  check(run_cli("gen --family random-twin-ordered --n 20 --d 2 --seed 5 --seq-out " + s.string() +
                " --out " + m.string()) == 0,
        "gen --seq-out exits 0");
  const TwinOrderedInstance inst = gen_random_twin_ordered(20, 2, 5);
  check(read_matrix_file(m.string()) == inst.matrix, "generated matrix matches library");
  const std::size_t w = inst.measured_width;

  check(run_cli("verify --matrix " + m.string() + " --seq " + s.string() + " --d " +
                    std::to_string(w),
                "verify_pass.txt") == 0,
        "verify at the measured width exits 0");
  check(slurp(scratch("verify_pass.txt")) ==
            "max_wideness=" + std::to_string(w) + " d=" + std::to_string(w) + " verdict=pass\n",
        "verify pass line");
  if (w > 0) {
    check(run_cli("verify --matrix " + m.string() + " --seq " + s.string() + " --d " +
                      std::to_string(w - 1),
                  "verify_fail.txt") == 1,
          "verify below the measured width exits 1");
    check(slurp(scratch("verify_fail.txt")).find("verdict=fail") != std::string::npos,
          "verify fail line says verdict=fail");
  }

  // The tricyclic family ships a width-3 witness.
  const fs::path tm = scratch("tri2.mat");
  const fs::path ts = scratch("tri2.seq");
  check(run_cli("gen --family tricyclic --level 2 --seq-out " + ts.string() + " --out " +
                tm.string()) == 0,
        "gen tricyclic --seq-out exits 0");
  check(run_cli("verify --matrix " + tm.string() + " --seq " + ts.string() + " --d 3") == 0,
        "tricyclic witness verifies at d=3");
  check(run_cli("verify --matrix " + tm.string() + " --seq " + ts.string() + " --d 0") == 1,
        "tricyclic witness fails at d=0");
}

void test_decompose_stats_lines() {
  const fs::path ring = scratch("ring.mat");
  write_matrix_file(ring.string(), kRing);
  check(run_cli("decompose --in " + ring.string() + " --out " + scratch("ring.dec").string(),
                "ring_stats.txt") == 0,
        "decompose ring exits 0");
  check(slurp(scratch("ring_stats.txt")) == "rects=4 polygons=1 concave=4 holes=1\n",
        "ring stats line");

  const RectDecomposition d = read_decomposition_file(scratch("ring.dec").string());
  check(!validate(d, kRing).has_value(), "written decomposition validates against the ring");
  check(d.rects == decompose(kRing).rects, "written decomposition equals the library's");

  const fs::path ones4 = scratch("ones4.mat");
  write_matrix_file(ones4.string(), all_ones(4));
  check(run_cli("decompose --in " + ones4.string(), "ones4_stats.txt") == 0,
        "decompose all-ones exits 0");
  check(slurp(scratch("ones4_stats.txt")) == "rects=1 polygons=1 concave=0 holes=0\n",
        "all-ones 4x4 stats line");

  const fs::path id4 = scratch("id4.mat");
  write_matrix_file(id4.string(), BitMatrix::identity(4));
  check(run_cli("decompose --in " + id4.string(), "id4_stats.txt") == 0,
        "decompose identity exits 0");
  check(slurp(scratch("id4_stats.txt")) == "rects=4 polygons=4 concave=0 holes=0\n",
        "identity 4x4 stats line");
}

void test_mv_engines_agree() {
  const fs::path m = scratch("mv.mat");
  write_matrix_file(m.string(), gen_random_dense(32, 0.4, 7));
  std::vector<std::int64_t> v(32);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<std::int64_t>(i) - 16;
  const fs::path vf = scratch("mv.vec");
  write_vector_to(vf, v);

  for (const std::string engine : {"rect", "hamming", "naive"}) {
    check(run_cli("mv --in " + m.string() + " --vec " + vf.string() + " --engine " + engine +
                  " --out " + scratch("mv_" + engine + ".out").string()) == 0,
          "mv " + engine + " exits 0");
  }
  const std::string rect_out = slurp(scratch("mv_rect.out"));
  check(rect_out == slurp(scratch("mv_hamming.out")), "rect and hamming mv outputs identical");
  check(rect_out == slurp(scratch("mv_naive.out")), "rect and naive mv outputs identical");
  check(read_vector_i64_file(scratch("mv_rect.out").string()) ==
            oracle::naive_mv<std::int64_t>(gen_random_dense(32, 0.4, 7),
                                           std::span<const std::int64_t>(v)),
        "mv output equals the in-process oracle");

  // --left computes the row-vector product v^T M.
  for (const std::string engine : {"rect", "hamming", "naive"}) {
    check(run_cli("mv --left --in " + m.string() + " --vec " + vf.string() + " --engine " +
                  engine + " --out " + scratch("vtm_" + engine + ".out").string()) == 0,
          "mv --left " + engine + " exits 0");
  }
  check(slurp(scratch("vtm_rect.out")) == slurp(scratch("vtm_naive.out")),
        "rect and naive --left outputs identical");
  check(slurp(scratch("vtm_rect.out")) == slurp(scratch("vtm_hamming.out")),
        "rect and hamming --left outputs identical");
  check(read_vector_i64_file(scratch("vtm_rect.out").string()) ==
            oracle::naive_vt_m<std::int64_t>(gen_random_dense(32, 0.4, 7),
                                             std::span<const std::int64_t>(v)),
        "--left output equals the in-process oracle");
}

void test_mv_float_vectors() {
  const fs::path m = scratch("ones11.mat");
  write_matrix_file(m.string(), all_ones(11));
  const std::vector<double> v(11, 0.5);
  const fs::path vf = scratch("half.vec");
  write_vector_to(vf, v);

  for (const std::string engine : {"rect", "hamming", "naive"}) {
    check(run_cli("mv --in " + m.string() + " --vec " + vf.string() + " --engine " + engine +
                  " --out " + scratch("half_" + engine + ".out").string()) == 0,
          "float mv " + engine + " exits 0");
    check(slurp(scratch("half_" + engine + ".out")) ==
              "11\n5.5\n5.5\n5.5\n5.5\n5.5\n5.5\n5.5\n5.5\n5.5\n5.5\n5.5\n",
          "all-ones times 0.5-vector prints eleven 5.5 entries (" + engine + ")");
  }
}

void test_mv_decomposition_input() {
  const fs::path ring = scratch("ring.mat");     // written by test_decompose_stats_lines
  const fs::path dec = scratch("ring.dec");
  std::vector<std::int64_t> v{1, 10, 100};
  const fs::path vf = scratch("ring.vec");
  write_vector_to(vf, v);

  for (const std::string engine : {"rect", "hamming", "naive"}) {
    check(run_cli("mv --in " + dec.string() + " --vec " + vf.string() + " --engine " + engine +
                  " --out " + scratch("dec_" + engine + ".out").string()) == 0,
          "mv on a decomposition file exits 0 (" + engine + ")");
  }
  check(run_cli("mv --in " + ring.string() + " --vec " + vf.string() + " --engine rect --out " +
                scratch("dec_direct.out").string()) == 0,
        "mv on the painted matrix exits 0");
  const std::string direct = slurp(scratch("dec_direct.out"));
  for (const std::string engine : {"rect", "hamming", "naive"}) {
    check(slurp(scratch("dec_" + engine + ".out")) == direct,
          "decomposition input gives the same product as the matrix (" + engine + ")");
  }
  check(read_vector_i64_file(scratch("dec_rect.out").string()) ==
            std::vector<std::int64_t>{111, 101, 111},
        "ring times (1,10,100)");
}

void test_matmul() {
  const fs::path a = scratch("mm_a.mat");
  write_matrix_file(a.string(), BitMatrix::identity(4));
  DenseMatrix<std::int64_t> b(4, 3);
  std::int64_t fill = -6;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 3; ++j) b.at(i, j) = fill++;
  const fs::path bf = scratch("mm_b.num");
  write_numeric_to(bf, b);

  check(run_cli("matmul --a " + a.string() + " --b " + bf.string() + " --out " +
                scratch("mm_id.num").string()) == 0,
        "matmul exits 0");
  check(read_numeric_matrix_file(scratch("mm_id.num").string()) == b,
        "identity times B returns B");

  const fs::path a2 = scratch("mm_a2.mat");
  const BitMatrix m2 = gen_random_dense(12, 0.5, 11);
  write_matrix_file(a2.string(), m2);
  for (const std::string engine : {"rect", "hamming", "naive"}) {
    check(run_cli("matmul --a " + a2.string() + " --b " + bf.string() + " --engine " + engine,
                  "never.txt") == 2,
          "matmul dimension mismatch exits 2 (" + engine + ")");
  }
  DenseMatrix<std::int64_t> b2(12, 2);
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 2; ++j) b2.at(i, j) = static_cast<std::int64_t>(3 * i) - 7;
  const fs::path b2f = scratch("mm_b2.num");
  write_numeric_to(b2f, b2);
  for (const std::string engine : {"rect", "hamming", "naive"}) {
    check(run_cli("matmul --a " + a2.string() + " --b " + b2f.string() + " --engine " + engine +
                  " --out " + scratch("mm_" + engine + ".num").string()) == 0,
          "matmul " + engine + " exits 0");
  }
  const std::string rect_out = slurp(scratch("mm_rect.num"));
  check(rect_out == slurp(scratch("mm_hamming.num")), "matmul rect == hamming output");
  check(rect_out == slurp(scratch("mm_naive.num")), "matmul rect == naive output");
  check(read_numeric_matrix_file(scratch("mm_rect.num").string()) ==
            oracle::naive_matmul<std::int64_t>(m2, b2),
        "matmul output equals the in-process oracle");

  // A binary matrix is accepted on the right and treated as 0/1 numerics.
  const fs::path bbin = scratch("mm_bbin.mat");
  write_matrix_file(bbin.string(), BitMatrix::identity(12));
  check(run_cli("matmul --a " + a2.string() + " --b " + bbin.string() + " --out " +
                scratch("mm_bin.num").string()) == 0,
        "matmul with binary right operand exits 0");
  DenseMatrix<std::int64_t> m2_num(12, 12);
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 12; ++j) m2_num.at(i, j) = m2.get(i, j) ? 1 : 0;
  check(read_numeric_matrix_file(scratch("mm_bin.num").string()) == m2_num,
        "M times identity returns M as numerics");
}

void test_stats_block() {
  const fs::path p = scratch("chess5.mat");
  check(run_cli("gen --family chessboard --n 5 --out " + p.string()) == 0, "gen chess5");
  check(run_cli("stats --in " + p.string(), "chess5_stats.txt") == 0, "stats exits 0");
  check(slurp(scratch("chess5_stats.txt")) ==
            "n_rows=5\n"
            "n_cols=5\n"
            "ones=12\n"
            "corners=16\n"
            "polygons=12\n"
            "convex=48\n"
            "concave=0\n"
            "holes=0\n"
            "boundary_horizontal=24\n"
            "rects=12\n"
            "row_hamming_identity=20\n"
            "col_hamming_identity=20\n"
            "mst_row_hamming=5\n",
        "stats block for chessboard 5");
}

void test_bench_csv() {
  const fs::path csv = scratch("bench.csv");
  check(run_cli("bench --family chessboard --n-list 8,16 --engine-list rect,naive --queries 2 "
                "--repeats 2 --seed 1 --out " +
                csv.string()) == 0,
        "bench exits 0");
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  check(line == "family,n,engine,preprocess_ns,mean_query_ns,structure_size",
        "bench CSV header");
  std::vector<std::string> rows;
  while (std::getline(in, line))
    if (!line.empty()) rows.push_back(line);
  check(rows.size() == 4, "bench emits one row per (size, engine) pair");
  for (const std::string& r : rows) {
    check(r.rfind("chessboard,", 0) == 0, "bench row names its family: " + r);
    std::istringstream ss(r);
    std::string field;
    std::size_t n_fields = 0;
    while (std::getline(ss, field, ',')) ++n_fields;
    check(n_fields == 6, "bench row has 6 fields: " + r);
  }

  // queries=0 measures preprocessing only and must still emit rows.
  check(run_cli("bench --family stripe-block --n-list 8 --engine-list hamming --queries 0 "
                "--repeats 1 --out " +
                scratch("bench0.csv").string()) == 0,
        "bench with --queries 0 exits 0");
  std::ifstream in0(scratch("bench0.csv"));
  std::getline(in0, line);
  check(std::getline(in0, line) && line.rfind("stripe-block,8,hamming,", 0) == 0,
        "preprocess-only bench row present");
}

void test_error_exit_codes() {
  check(run_cli("decompose --in " + scratch("no_such_file.mat").string()) == 2,
        "missing input file exits 2");
  check(run_cli("gen --family no-such-family --n 4") == 2, "unknown family exits 2");
  check(run_cli("gen --no-such-flag") == 2, "unknown flag exits 2");
  check(run_cli("frobnicate") == 2, "unknown subcommand exits 2");
  check(run_cli("gen --family stripe-block --n 7 --out " + scratch("never.mat").string()) == 2,
        "stripe-block with odd n exits 2");
  check(run_cli("gen --family tricyclic --level 40 --out " + scratch("never.mat").string()) == 2,
        "tricyclic level over the capacity guard exits 2");

  const fs::path m = scratch("ring.mat");
  const fs::path shortvec = scratch("short.vec");
  const std::vector<std::int64_t> v{1, 2};
  write_vector_to(shortvec, v);
  check(run_cli("mv --in " + m.string() + " --vec " + shortvec.string()) == 2,
        "mv with a wrong-length vector exits 2");

  const fs::path num = scratch("numeric_in.num");
  DenseMatrix<std::int64_t> nm(2, 2);
  nm.at(0, 1) = 5;
  write_numeric_to(num, nm);
  check(run_cli("mv --in " + num.string() + " --vec " + shortvec.string()) == 2,
        "numeric matrix as mv input exits 2");

  const fs::path garbled = scratch("garbled.mat");
  std::ofstream(garbled) << "3 3\n101\n1\n111\n";
  check(run_cli("decompose --in " + garbled.string(), "never.txt") == 2,
        "malformed matrix file exits 2");
  check(slurp(scratch("err.txt")).find("line 3") != std::string::npos,
        "parse error names the offending line");

  check(run_cli("bench --family chessboard --n-list 0 --engine-list rect") == 2,
        "bench rejects a zero size with exit 2");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_tests <path-to-twinmul-binary>\n";
    return 2;
  }
  g_bin = argv[1];
  g_dir = fs::path("cli_scratch");
  std::error_code ec;
  fs::remove_all(g_dir, ec);
  fs::create_directories(g_dir);

  test_gen_matches_library();
  test_gen_sparse_roundtrip();
  test_gen_pad_to();
  test_verify_witness();
  test_decompose_stats_lines();
  test_mv_engines_agree();
  test_mv_float_vectors();
  test_mv_decomposition_input();
  test_matmul();
  test_stats_block();
  test_bench_csv();
  test_error_exit_codes();

  fs::remove_all(g_dir, ec);
  if (g_failures != 0) {
    std::cout << g_failures << " CLI check(s) failed\n";
    return 1;
  }
  std::cout << "all CLI checks passed\n";
  return 0;
}
