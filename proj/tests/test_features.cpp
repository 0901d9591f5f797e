#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "spmvsel/csr_matrix.hpp"
#include "spmvsel/error.hpp"
#include "spmvsel/features.hpp"

using namespace spmvsel;

namespace {

CsrMatrix identity(std::size_t n) {
  TripletList t{n, n, {}};
  for (std::size_t i = 0; i < n; ++i) t.entries.push_back({i, i, 1.0});
  return csr_from_triplets(t);
}

void check_against_oracle(const TripletList& t, const CacheConfig& cfg) {
  const CsrMatrix a = csr_from_triplets(t);
  const auto got = extract_features(a, cfg).as_array();
  const auto want =
      oracle::features(oracle::dense_from_triplets(t), cfg.llc_bytes, cfg.line_elements());
  // size, density and the nnz/bw extrema are exact; the rest are statistics.
  for (std::size_t k : {0u, 1u, 2u, 3u, 6u, 7u}) CHECK(got[k] == want[k]);
  for (std::size_t k = 0; k < got.size(); ++k) {
    INFO("feature " << feature_names()[k]);
    CHECK(oracle::rel_close(got[k], want[k], 1e-12));
  }
}

}  // namespace

TEST_CASE("identity fixture") {
  const auto fv = extract_features(identity(10), CacheConfig{});
  CHECK(fv.size == 1.0);
  CHECK(fv.density == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(fv.nnz_min == 1.0);
  CHECK(fv.nnz_max == 1.0);
  CHECK(fv.nnz_avg == 1.0);
  CHECK(fv.nnz_sd == 0.0);
  CHECK(fv.bw_min == 0.0);
  CHECK(fv.bw_max == 0.0);
  CHECK(fv.bw_avg == 0.0);
  CHECK(fv.bw_sd == 0.0);
  CHECK(fv.dispersion_avg == 1.0);
  CHECK(fv.dispersion_sd == 0.0);
  CHECK(fv.clustering == 1.0);
  CHECK(fv.miss_ratio == 0.0);
}

TEST_CASE("matrix E fixture") {
  const auto fv = extract_features(csr_from_triplets(oracle::matrix_e()), CacheConfig{});
  CHECK(fv.density == 0.375);
  CHECK(fv.nnz_min == 0.0);
  CHECK(fv.nnz_max == 3.0);
  CHECK(fv.nnz_avg == 1.5);
  CHECK(fv.nnz_sd == doctest::Approx(1.118033988749895).epsilon(1e-12));
  CHECK(fv.bw_min == 0.0);
  CHECK(fv.bw_max == 3.0);
  CHECK(fv.bw_avg == 1.5);
  CHECK(fv.bw_sd == 1.5);
  CHECK(fv.dispersion_avg == 0.5625);
  // per-row dispersion {0.5, 1, 0, 0.75}: variance 0.546875 / 4
  CHECK(fv.dispersion_sd == doctest::Approx(std::sqrt(0.13671875)).epsilon(1e-12));
  CHECK(fv.clustering == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(fv.miss_ratio == 0.0);
  CHECK(fv.size == 1.0);
}

TEST_CASE("miss rule: gap larger than a cache line") {
  const CsrMatrix a = csr_from_triplets({1, 101, {{0, 0, 1.0}, {0, 100, 1.0}}});
  const auto fv = extract_features(a, CacheConfig{});
  CHECK(fv.miss_ratio == 1.0);
  // exactly one line apart is not a miss
  const CsrMatrix b = csr_from_triplets({1, 20, {{0, 0, 1.0}, {0, 8, 1.0}, {0, 17, 1.0}}});
  CHECK(extract_features(b, CacheConfig{}).miss_ratio == 1.0);
}

TEST_CASE("working set and size feature") {
  const CsrMatrix e = csr_from_triplets(oracle::matrix_e());
  CHECK(working_set_bytes(e, CacheConfig{}) == 156);
  CacheConfig small;
  small.llc_bytes = 150;
  CHECK(extract_features(e, small).size == 0.0);
  small.llc_bytes = 200;
  CHECK(extract_features(e, small).size == 1.0);
  CHECK(working_set_bytes(csr_from_triplets({1, 1, {}}), CacheConfig{}) == 24);
}

TEST_CASE("cache config validation") {
  CacheConfig c;
  c.cacheline_bytes = 12;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c.cacheline_bytes = 0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
}

TEST_CASE("oracle agreement on random matrices") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 150; ++trial) {
    CacheConfig cfg;
    cfg.cacheline_bytes = 8u << (rng() % 4);  // 1, 2, 4 or 8 values per line
    cfg.llc_bytes = 2000 + rng() % 40000;
    check_against_oracle(oracle::random_triplets(rng, 64), cfg);
  }
}

TEST_CASE("row order does not matter") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    TripletList t = oracle::random_triplets(rng, 48);
    std::vector<std::size_t> perm(t.nrows);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    TripletList shuffled = t;
    for (Triplet& e : shuffled.entries) e.row = perm[e.row];
    const auto a = extract_features(csr_from_triplets(t), CacheConfig{}).as_array();
    const auto b = extract_features(csr_from_triplets(shuffled), CacheConfig{}).as_array();
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(oracle::rel_close(a[k], b[k], 1e-12));
  }
}

TEST_CASE("invariants of the feature vector") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    const auto fv = extract_features(csr_from_triplets(oracle::random_triplets(rng, 64)),
                                     CacheConfig{});
    CHECK(fv.nnz_min <= fv.nnz_avg);
    CHECK(fv.nnz_avg <= fv.nnz_max);
    CHECK(fv.bw_min <= fv.bw_avg);
    CHECK(fv.bw_avg <= fv.bw_max);
    CHECK(fv.density >= 0.0);
    CHECK(fv.density <= 1.0);
    CHECK(fv.nnz_sd >= 0.0);
    CHECK(fv.bw_sd >= 0.0);
    CHECK(fv.dispersion_sd >= 0.0);
    CHECK(fv.dispersion_avg >= 0.0);
    CHECK(fv.dispersion_avg <= 1.0);
    CHECK(fv.clustering >= 0.0);
    CHECK(fv.clustering <= 1.0);
    CHECK((fv.size == 0.0 || fv.size == 1.0));
  }
}

TEST_CASE("extraction work is linear in N + NNZ") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const CsrMatrix a = csr_from_triplets(oracle::random_triplets(rng, 64));
    ExtractionCounters c;
    extract_features(a, CacheConfig{}, &c);
    CHECK(c.row_visits == a.nrows());
    CHECK(c.element_visits == a.nnz());
  }
}

TEST_CASE("feature selection and presets") {
  const auto fv = extract_features(csr_from_triplets(oracle::matrix_e()), CacheConfig{});
  CHECK(select_features(fv, feature_subset_preset("xeon-phi-nb")).size() == 6);
  const auto sb = select_features(fv, feature_subset_preset("sandy-bridge-nb"));
  CHECK(sb == std::vector<double>{fv.size, fv.nnz_min, fv.nnz_max});
  CHECK(select_features(fv, std::vector<std::string>{}).empty());
  const auto arr = fv.as_array();
  CHECK(select_features(fv, feature_subset_preset("all")) ==
        std::vector<double>(arr.begin(), arr.end()));
  CHECK_THROWS_AS(select_features(fv, std::vector<std::string>{"nope"}), InvalidArgument);
  CHECK_THROWS_AS(feature_subset_preset("nope"), InvalidArgument);
  CHECK(FeatureVector::from_array(fv.as_array()) == fv);
}

TEST_CASE("csv dump") {
  std::ostringstream out;
  write_feature_csv_header(out, "matrix");
  write_feature_csv_row(out, extract_features(identity(2), CacheConfig{}), "id2");
  const std::string s = out.str();
  CHECK(s.rfind("matrix,size,density,nnz_min,nnz_max,nnz_avg,nnz_sd,bw_min,bw_max,bw_avg,bw_sd,"
                "dispersion_avg,dispersion_sd,clustering,miss_ratio\n",
                0) == 0);
  CHECK(s.find("\nid2,1,0.5,1,1,1,0,0,0,0,0,1,0,1,0\n") != std::string::npos);
}
