#include "spmvsel/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "spmvsel/error.hpp"

namespace spmvsel {
namespace {

enum class Field { kReal, kInteger, kPattern };
enum class Symmetry { kGeneral, kSymmetric };

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

struct Banner {
  Field field;
  Symmetry symmetry;
};

Banner parse_banner(const std::string& line) {
  std::istringstream ss(line);
  std::string tag, object, format, field, symmetry;
  ss >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket" || symmetry.empty()) {
    throw ParseError("malformed Matrix Market banner: '" + line + "'");
  }
  object = lower(object);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix" || format != "coordinate") {
    throw ParseError("only 'matrix coordinate' files are supported");
  }

  Banner b{};
  if (field == "real") {
    b.field = Field::kReal;
  } else if (field == "integer") {
    b.field = Field::kInteger;
  } else if (field == "pattern") {
    b.field = Field::kPattern;
  } else {
    throw ParseError("unsupported Matrix Market field '" + field + "'");
  }
  if (symmetry == "general") {
    b.symmetry = Symmetry::kGeneral;
  } else if (symmetry == "symmetric") {
    b.symmetry = Symmetry::kSymmetric;
  } else {
    throw ParseError("unsupported Matrix Market symmetry '" + symmetry + "'");
  }
  return b;
}

}  // namespace

TripletList parse_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty Matrix Market stream");
  const Banner banner = parse_banner(line);

  // Skip comments and blank lines up to the size line.
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '%') continue;
    if (blank(line)) continue;
    break;
  }
  long long nrows = -1, ncols = -1, declared = -1;
  {
    std::istringstream ss(line);
    std::string extra;
    if (!(ss >> nrows >> ncols >> declared) || (ss >> extra) || nrows < 0 || ncols < 0 ||
        declared < 0) {
      throw ParseError("malformed size line: '" + line + "'");
    }
  }

  TripletList t;
  t.nrows = static_cast<std::size_t>(nrows);
  t.ncols = static_cast<std::size_t>(ncols);
  t.entries.reserve(static_cast<std::size_t>(declared) *
                    (banner.symmetry == Symmetry::kSymmetric ? 2 : 1));

  long long read = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '%') continue;
    if (blank(line)) continue;
    if (read == declared) {
      throw ParseError(fmt::format("more entries than the declared {}", declared));
    }
    std::istringstream ss(line);
    long long i = 0, j = 0;
    double v = 1.0;
    if (!(ss >> i >> j)) throw ParseError("malformed entry line: '" + line + "'");
    if (banner.field != Field::kPattern && !(ss >> v)) {
      throw ParseError("missing value on entry line: '" + line + "'");
    }
    if (i < 1 || j < 1 || i > nrows || j > ncols) {
      throw ParseError(fmt::format("entry ({}, {}) outside declared {}x{} bounds", i, j, nrows,
                                   ncols));
    }
    const auto r = static_cast<std::size_t>(i - 1);
    const auto c = static_cast<std::size_t>(j - 1);
    t.entries.push_back({r, c, v});
    if (banner.symmetry == Symmetry::kSymmetric && r != c) {
      if (c >= t.nrows || r >= t.ncols) {
        throw ParseError("symmetric entry mirrors outside a non-square matrix");
      }
      t.entries.push_back({c, r, v});
    }
    ++read;
  }
  if (read != declared) {
    throw ParseError(fmt::format("declared {} entries but read {}", declared, read));
  }
  return t;
}

TripletList read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return parse_matrix_market(in);
}

CsrMatrix load_csr(const std::filesystem::path& path) {
  return csr_from_triplets(read_matrix_market(path));
}

void write_matrix_market(std::ostream& out, const CsrMatrix& a) {
  fmt::print(out, "%%MatrixMarket matrix coordinate real general\n");
  fmt::print(out, "{} {} {}\n", a.nrows(), a.ncols(), a.nnz());
  for (std::size_t i = 0; i < a.nrows(); ++i) {
    for (std::size_t j = a.row_begin(i); j < a.row_end(i); ++j) {
      fmt::print(out, "{} {} {}\n", i + 1, a.colind()[j] + 1, a.values()[j]);
    }
  }
}

}  // namespace spmvsel
