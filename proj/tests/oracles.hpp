// Independent reference implementations used by the tests. Nothing here calls
// into the library code it checks; inputs come in as dense matrices or plain
// numbers.
#ifndef SPMVSEL_TESTS_ORACLES_HPP
#define SPMVSEL_TESTS_ORACLES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "spmvsel/csr_matrix.hpp"
#include "spmvsel/matrix_class.hpp"

namespace oracle {

using spmvsel::DenseMatrix;
using spmvsel::MatrixClass;
using spmvsel::Triplet;
using spmvsel::TripletList;

/// The worked 4x4 example used throughout the tests.
inline TripletList matrix_e() {
  return {4, 4, {{0, 0, 1}, {0, 3, 2}, {1, 1, 3}, {3, 0, 4}, {3, 1, 5}, {3, 3, 6}}};
}

/// Random matrix with a shape up to max_dim x max_dim and density in
/// [min_density, max_density]. Values are nonzero so a dense scan recovers
/// the sparsity pattern exactly.
inline TripletList random_triplets(std::mt19937_64& rng, std::size_t max_dim,
                                   double min_density = 0.01, double max_density = 0.5) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  std::uniform_real_distribution<double> dens(min_density, max_density);
  std::uniform_real_distribution<double> mag(0.25, 4.0);
  std::bernoulli_distribution coin(0.5);
  TripletList t{dim(rng), dim(rng), {}};
  const double d = dens(rng);
  std::bernoulli_distribution keep(d);
  for (std::size_t i = 0; i < t.nrows; ++i) {
    for (std::size_t j = 0; j < t.ncols; ++j) {
      if (keep(rng)) t.entries.push_back({i, j, coin(rng) ? mag(rng) : -mag(rng)});
    }
  }
  std::shuffle(t.entries.begin(), t.entries.end(), rng);
  return t;
}

inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> x(n);
  for (double& v : x) v = u(rng);
  return x;
}

/// Dense accumulation of triplets (duplicates summed).
inline DenseMatrix dense_from_triplets(const TripletList& t) {
  DenseMatrix d{t.nrows, t.ncols, std::vector<double>(t.nrows * t.ncols, 0.0)};
  for (const Triplet& e : t.entries) d(e.row, e.col) += e.value;
  return d;
}

/// Plain double-precision dense mat-vec, columns summed left to right.
inline std::vector<double> dense_matvec(const DenseMatrix& a, const std::vector<double>& x) {
  std::vector<double> y(a.nrows, 0.0);
  for (std::size_t i = 0; i < a.nrows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.ncols; ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

/// Extended-precision row sums and the row scales sum_j |a_ij x_j|.
struct ExactMatvec {
  std::vector<long double> y;
  std::vector<long double> scale;
};

inline ExactMatvec dense_matvec_exact(const DenseMatrix& a, const std::vector<double>& x) {
  ExactMatvec out{std::vector<long double>(a.nrows, 0.0L), std::vector<long double>(a.nrows, 0.0L)};
  for (std::size_t i = 0; i < a.nrows; ++i) {
    for (std::size_t j = 0; j < a.ncols; ++j) {
      const long double t = static_cast<long double>(a(i, j)) * x[j];
      out.y[i] += t;
      out.scale[i] += std::abs(t);
    }
  }
  return out;
}

/// Forward error bound for a length-n double sum: |y - exact| <= tol * scale.
inline bool scaled_close(double y, long double exact, long double scale, double tol) {
  return std::abs(static_cast<long double>(y) - exact) <= tol * scale;
}

inline bool rel_close(double a, double b, double rel) {
  if (a == b) return true;
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

inline std::vector<std::size_t> nonzero_cols(const DenseMatrix& a, std::size_t i) {
  std::vector<std::size_t> cols;
  for (std::size_t j = 0; j < a.ncols; ++j) {
    if (a(i, j) != 0.0) cols.push_back(j);
  }
  return cols;
}

/// Row-by-row recomputation of the 14 structural features, in canonical order.
inline std::array<double, 14> features(const DenseMatrix& a, std::size_t llc_bytes,
                                       std::size_t line_elements) {
  const std::size_t n = a.nrows;
  std::vector<double> nnz(n), bw(n), disp(n), clust(n), miss(n);
  std::size_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto cols = nonzero_cols(a, i);
    total += cols.size();
    nnz[i] = static_cast<double>(cols.size());
    if (cols.empty()) continue;
    bw[i] = static_cast<double>(cols.back() - cols.front());
    disp[i] = nnz[i] / (bw[i] + 1.0);
    std::size_t groups = 1, misses = 0;
    for (std::size_t k = 1; k < cols.size(); ++k) {
      if (cols[k] != cols[k - 1] + 1) ++groups;
      if (cols[k] - cols[k - 1] > line_elements) ++misses;
    }
    clust[i] = static_cast<double>(groups) / nnz[i];
    miss[i] = static_cast<double>(misses);
  }
  auto mean = [&](const std::vector<double>& v) {
    long double s = 0.0L;
    for (double e : v) s += e;
    return static_cast<double>(s / n);
  };
  auto sd = [&](const std::vector<double>& v) {
    const double m = mean(v);
    long double s = 0.0L;
    for (double e : v) s += (e - m) * (e - m);
    return std::sqrt(static_cast<double>(s / n));
  };
  const std::size_t ws = 8 * total + 4 * total + 4 * (n + 1) + 8 * (n + a.ncols);
  return {ws <= llc_bytes ? 1.0 : 0.0,
          static_cast<double>(total) / (static_cast<double>(n) * static_cast<double>(a.ncols)),
          *std::min_element(nnz.begin(), nnz.end()),
          *std::max_element(nnz.begin(), nnz.end()),
          mean(nnz),
          sd(nnz),
          *std::min_element(bw.begin(), bw.end()),
          *std::max_element(bw.begin(), bw.end()),
          mean(bw),
          sd(bw),
          mean(disp),
          sd(disp),
          mean(clust),
          mean(miss)};
}

/// Matrix-wide delta width by counting rows whose first column and gaps fit.
/// Returns 8 or 16.
inline int delta_width(const DenseMatrix& a) {
  std::size_t fit8 = 0;
  for (std::size_t i = 0; i < a.nrows; ++i) {
    const auto cols = nonzero_cols(a, i);
    bool ok = cols.empty() || cols.front() <= 255;
    for (std::size_t k = 1; k < cols.size(); ++k) ok = ok && cols[k] - cols[k - 1] <= 255;
    fit8 += ok;
  }
  return 10 * fit8 >= 9 * a.nrows ? 8 : 16;
}

/// Threshold cascade, stated declaratively: class c wins when it passes its
/// own threshold and every class ranked above it fails. A class ranks above
/// another with a strictly higher score, or an equal score and higher
/// priority (MB, then IMB, then CML).
inline MatrixClass cascade(double s_cml, double s_mb, double s_imb, double t_cml, double t_mb,
                           double t_imb) {
  struct Entry {
    MatrixClass cls;
    double score, threshold;
    int priority;
  };
  const std::array<Entry, 3> e = {{{MatrixClass::kCML, s_cml, t_cml, 0},
                                   {MatrixClass::kMB, s_mb, t_mb, 2},
                                   {MatrixClass::kIMB, s_imb, t_imb, 1}}};
  auto above = [](const Entry& a, const Entry& b) {
    return a.score > b.score || (a.score == b.score && a.priority > b.priority);
  };
  std::optional<MatrixClass> winner;
  for (const Entry& c : e) {
    if (c.score < c.threshold) continue;
    bool all_above_fail = true;
    for (const Entry& d : e) {
      if (above(d, c) && d.score >= d.threshold) all_above_fail = false;
    }
    if (all_above_fail) {
      if (winner) return MatrixClass::kCMP;  // would mean an inconsistent ranking
      winner = c.cls;
    }
  }
  return winner.value_or(MatrixClass::kCMP);
}

/// Gini impurity from raw label counts.
inline double gini(const std::vector<std::size_t>& counts) {
  double n = 0.0;
  for (std::size_t c : counts) n += static_cast<double>(c);
  if (n == 0.0) return 0.0;
  double g = 1.0;
  for (std::size_t c : counts) g -= (c / n) * (c / n);
  return g;
}

/// Linear-interpolation quantile on already sorted values.
inline double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace oracle

#endif  // SPMVSEL_TESTS_ORACLES_HPP
