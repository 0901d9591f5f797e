#include <doctest.h>

#include <cstring>
#include <limits>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "spmvsel/csr_matrix.hpp"
#include "spmvsel/error.hpp"
#include "spmvsel/matrix_market.hpp"
#include "spmvsel/partition.hpp"
#include "spmvsel/spmv.hpp"
#include "spmvsel/worker_pool.hpp"

using namespace spmvsel;

namespace {

TripletList parse(const std::string& text) {
  std::istringstream in(text);
  return parse_matrix_market(in);
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<std::size_t> partition_nnz(const CsrMatrix& a, const RowPartition& p) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < p.parts(); ++k) out.push_back(a.row_begin(p.end(k)) - a.row_begin(p.begin(k)));
  return out;
}

CsrMatrix from_row_lengths(const std::vector<std::size_t>& lengths) {
  TripletList t{lengths.size(), 16, {}};
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    for (std::size_t j = 0; j < lengths[i]; ++j) t.entries.push_back({i, j, 1.0});
  }
  return csr_from_triplets(t);
}

}  // namespace

TEST_CASE("matrix market: general real") {
  const auto t = parse("%%MatrixMarket matrix coordinate real general\n% c\n2 2 2\n1 1 5.0\n2 2 7.0\n");
  CHECK(t == TripletList{2, 2, {{0, 0, 5.0}, {1, 1, 7.0}}});
}

TEST_CASE("matrix market: symmetric mirrors off-diagonal entries") {
  const auto t = parse("%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n1 1 1.0\n2 1 3.0\n");
  REQUIRE(t.entries.size() == 3);
  const auto a = csr_from_triplets(t);
  const auto d = to_dense(a);
  CHECK(d(0, 0) == 1.0);
  CHECK(d(1, 0) == 3.0);
  CHECK(d(0, 1) == 3.0);
}

TEST_CASE("matrix market: pattern and integer fields") {
  CHECK(parse("%%MatrixMarket matrix coordinate pattern general\n1 2 1\n1 2\n") ==
        TripletList{1, 2, {{0, 1, 1.0}}});
  CHECK(parse("%%MatrixMarket matrix coordinate integer general\n1 1 1\n1 1 4\n") ==
        TripletList{1, 1, {{0, 0, 4.0}}});
}

TEST_CASE("matrix market: errors") {
  CHECK_THROWS_AS(parse("garbage\n1 1 0\n"), ParseError);
  CHECK_THROWS_AS(parse("%%MatrixMarket matrix coordinate complex general\n1 1 0\n"), ParseError);
  CHECK_THROWS_AS(parse("%%MatrixMarket matrix coordinate real hermitian\n1 1 0\n"), ParseError);
  CHECK_THROWS_AS(parse("%%MatrixMarket matrix coordinate real skew-symmetric\n1 1 0\n"),
                  ParseError);
  CHECK_THROWS_AS(parse("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n"),
                  ParseError);
  CHECK_THROWS_AS(parse("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n"),
                  ParseError);
  CHECK_THROWS_AS(parse("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 1.0\n2 2 1.0\n"),
                  ParseError);
}

TEST_CASE("matrix market: write then parse round trip") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const CsrMatrix a = csr_from_triplets(oracle::random_triplets(rng, 24));
    std::ostringstream out;
    write_matrix_market(out, a);
    std::istringstream in(out.str());
    CHECK(csr_from_triplets(parse_matrix_market(in)) == a);
  }
}

TEST_CASE("csr_from_triplets: matrix E") {
  const CsrMatrix e = csr_from_triplets(oracle::matrix_e());
  CHECK(std::vector<std::uint32_t>(e.rowptr().begin(), e.rowptr().end()) ==
        std::vector<std::uint32_t>{0, 2, 3, 3, 6});
  CHECK(std::vector<std::uint32_t>(e.colind().begin(), e.colind().end()) ==
        std::vector<std::uint32_t>{0, 3, 1, 0, 1, 3});
  CHECK(std::vector<double>(e.values().begin(), e.values().end()) ==
        std::vector<double>{1, 2, 3, 4, 5, 6});
  CHECK(e.index_width() == IndexWidth::k32);
  CHECK(to_dense(e) == oracle::dense_from_triplets(oracle::matrix_e()));
}

TEST_CASE("csr_from_triplets: empty and duplicates") {
  const CsrMatrix z = csr_from_triplets({3, 3, {}});
  CHECK(std::vector<std::uint32_t>(z.rowptr().begin(), z.rowptr().end()) ==
        std::vector<std::uint32_t>{0, 0, 0, 0});
  CHECK(to_dense(z).data == std::vector<double>(9, 0.0));
  const CsrMatrix d = csr_from_triplets({1, 1, {{0, 0, 1}, {0, 0, 2}}});
  CHECK(d.nnz() == 1);
  CHECK(d.values()[0] == 3.0);
}

TEST_CASE("csr invariants are enforced") {
  CHECK_THROWS_AS(CsrMatrix(2, 2, {0, 1}, {0}, {1.0}), InvalidArgument);           // rowptr size
  CHECK_THROWS_AS(CsrMatrix(1, 2, {1, 1}, {0}, {1.0}), InvalidArgument);           // rowptr[0]
  CHECK_THROWS_AS(CsrMatrix(1, 2, {0, 2}, {1, 0}, {1.0, 1.0}), InvalidArgument);   // unsorted
  CHECK_THROWS_AS(CsrMatrix(1, 2, {0, 1}, {2}, {1.0}), InvalidArgument);           // col bound
  CHECK_THROWS_AS(CsrMatrix(1, 2, {0, 1}, {0}, {1.0, 2.0}), InvalidArgument);      // lengths
  CHECK_THROWS_AS(csr_from_triplets({1, 1, {{1, 0, 1.0}}}), InvalidArgument);
}

TEST_CASE("round trip and dense oracle on random instances") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const TripletList t = oracle::random_triplets(rng, 8);
    const CsrMatrix a = csr_from_triplets(t);
    CHECK(csr_from_triplets(to_triplets(a)) == a);
    CHECK(to_dense(a) == oracle::dense_from_triplets(t));
  }
}

TEST_CASE("spmv_baseline: matrix E") {
  const CsrMatrix e = csr_from_triplets(oracle::matrix_e());
  CHECK(spmv_baseline(e, std::vector<double>{1, 1, 1, 1}) == std::vector<double>{3, 3, 0, 15});
  CHECK(spmv_baseline(e, std::vector<double>{1, 2, 3, 4}) == std::vector<double>{9, 6, 0, 38});
  CHECK(spmv_baseline(e, std::vector<double>(4, 0.0)) == std::vector<double>(4, 0.0));
  CHECK_THROWS_AS(spmv_baseline(e, std::vector<double>(3, 1.0)), DimensionError);
}

TEST_CASE("spmv_baseline: dense oracle and partition independence") {
  std::mt19937_64 rng(17);
  WorkerPool pool(4);
  for (int trial = 0; trial < 60; ++trial) {
    const TripletList t = oracle::random_triplets(rng, 64);
    const CsrMatrix a = csr_from_triplets(t);
    const auto x = oracle::random_vector(rng, a.ncols());
    const auto dense = oracle::dense_from_triplets(t);
    const auto expect = oracle::dense_matvec(dense, x);
    const auto exact = oracle::dense_matvec_exact(dense, x);
    const double tol = std::numeric_limits<double>::epsilon() * static_cast<double>(a.ncols());
    const auto y1 = spmv_baseline(a, x, partition_rows_by_nnz(a, 1), pool);
    for (std::size_t i = 0; i < y1.size(); ++i) {
      CHECK(oracle::rel_close(y1[i], expect[i], 1e-12));
      CHECK(oracle::scaled_close(y1[i], exact.y[i], exact.scale[i], tol));
    }
    for (std::size_t p : {2u, 4u, 8u}) {
      CHECK(bitwise_equal(spmv_baseline(a, x, partition_rows_by_nnz(a, p), pool), y1));
    }
  }
}

TEST_CASE("partition_rows_by_nnz: worked examples") {
  CHECK(partition_rows_by_nnz(from_row_lengths({5, 1, 1, 5}), 2).boundaries() ==
        std::vector<std::size_t>{0, 2, 4});
  CHECK(partition_rows_by_nnz(from_row_lengths({10, 1, 1}), 3).boundaries() ==
        std::vector<std::size_t>{0, 1, 1, 3});
  const CsrMatrix e = csr_from_triplets(oracle::matrix_e());
  CHECK(partition_rows_by_nnz(e, 1).boundaries() == std::vector<std::size_t>{0, 4});
  // more parts than rows leaves empty trailing partitions
  const auto wide = partition_rows_by_nnz(from_row_lengths({1, 1}), 5);
  CHECK(wide.parts() == 5);
  CHECK(wide.nrows() == 2);
}

TEST_CASE("partition_rows_by_nnz: boundary rule against a direct search") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const CsrMatrix a = csr_from_triplets(oracle::random_triplets(rng, 40));
    const std::size_t p = 1 + rng() % 9;
    const RowPartition part = partition_rows_by_nnz(a, p);
    const auto& b = part.boundaries();
    REQUIRE(b.size() == p + 1);
    CHECK(b.front() == 0);
    CHECK(b.back() == a.nrows());
    std::size_t prev = 0;
    for (std::size_t k = 1; k < p; ++k) {
      std::size_t r = 0;  // smallest r with rowptr[r] * p >= k * nnz
      while (r < a.nrows() && a.row_begin(r) * p < k * a.nnz()) ++r;
      const std::size_t expect = std::max(prev, r);
      CHECK(b[k] == expect);
      prev = expect;
    }
    // Every partition lies within one maximal row of the ideal share.
    std::size_t max_row = 0;
    for (std::size_t i = 0; i < a.nrows(); ++i) max_row = std::max(max_row, a.row_nnz(i));
    const double ideal = static_cast<double>(a.nnz()) / static_cast<double>(p);
    for (std::size_t n : partition_nnz(a, part)) {
      CHECK(static_cast<double>(n) < ideal + static_cast<double>(max_row) + 1e-9);
    }
  }
}

TEST_CASE("RowPartition validation") {
  CHECK_THROWS_AS(RowPartition({1, 2}), InvalidArgument);
  CHECK_THROWS_AS(RowPartition({0, 3, 2}), InvalidArgument);
  CHECK_THROWS_AS(partition_rows_by_nnz(csr_from_triplets({2, 2, {}}), 0), InvalidArgument);
  const CsrMatrix e = csr_from_triplets(oracle::matrix_e());
  std::vector<double> y(4);
  CHECK_THROWS_AS(spmv_baseline(e, std::vector<double>(4, 1.0), y, RowPartition::whole(3)),
                  DimensionError);
}

TEST_CASE("worker pool runs every task and chunk once") {
  WorkerPool pool(3);
  std::vector<int> hits(100, 0);
  pool.for_each_task(hits.size(), [&](std::size_t t) { ++hits[t]; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  std::vector<int> rows(1001, 0);
  pool.for_each_chunk(rows.size(), 7, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) ++rows[i];
  });
  CHECK(std::all_of(rows.begin(), rows.end(), [](int h) { return h == 1; }));
  CHECK_THROWS(pool.for_each_task(4, [](std::size_t t) {
    if (t == 2) throw std::runtime_error("boom");
  }));
  pool.for_each_task(2, [](std::size_t) {});  // still usable after an exception
}
