/*
 * Licensed to the Apache Software Foundation (ASF) under one
 * or more contributor license agreements.  See the NOTICE file
 * distributed with this work for additional information
 * regarding copyright ownership.  The ASF licenses this file
 * to you under the Apache License, Version 2.0 (the
 * "License"); you may not use this file except in compliance
 * with the License.  You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing,
 * software distributed under the License is distributed on an
 * "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
 * KIND, either express or implied.  See the License for the
 * specific language governing permissions and limitations
 * under the License.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sparsetl/error.hpp"

namespace sparsetl {

/// Sparsity pattern in compressed sparse row form. Values are never stored:
/// the cost models and the surrogate oracles only look at structure.
struct SparseMatrixCSR {
  std::string name;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> row_ptr;    // rows + 1 entries
  std::vector<std::uint32_t> col_idx;  // nnz entries, strictly increasing per row

  std::size_t nnz() const noexcept { return col_idx.size(); }

  std::size_t row_nnz(std::size_t r) const { return row_ptr[r + 1] - row_ptr[r]; }

  /// Throws Error when a structural invariant is broken.
  void validate() const {
    if (row_ptr.size() != rows + 1) throw Error(name + ": row_ptr must have rows+1 entries");
    if (row_ptr.front() != 0) throw Error(name + ": row_ptr[0] must be 0");
    if (row_ptr.back() != col_idx.size()) throw Error(name + ": row_ptr[rows] must equal nnz");
    for (std::size_t r = 0; r < rows; ++r) {
      if (row_ptr[r] > row_ptr[r + 1]) throw Error(name + ": row_ptr must be non-decreasing");
      for (std::size_t p = row_ptr[r]; p < row_ptr[r + 1]; ++p) {
        if (col_idx[p] >= cols) throw Error(name + ": column index out of range");
        if (p > row_ptr[r] && col_idx[p] <= col_idx[p - 1])
          throw Error(name + ": column indices must be strictly increasing within a row");
      }
    }
  }

  friend bool operator==(const SparseMatrixCSR&, const SparseMatrixCSR&) = default;
};

/// Builds a CSR pattern from 0-based (row, col) pairs. Pairs may come in any
/// order; duplicates must have been rejected by the caller.
inline SparseMatrixCSR csr_from_coordinates(std::string name, std::size_t rows, std::size_t cols,
                                            std::vector<std::pair<std::uint32_t, std::uint32_t>> coords) {
  std::sort(coords.begin(), coords.end());
  SparseMatrixCSR m;
  m.name = std::move(name);
  m.rows = rows;
  m.cols = cols;
  m.row_ptr.assign(rows + 1, 0);
  m.col_idx.reserve(coords.size());
  for (const auto& [r, c] : coords) {
    ++m.row_ptr[r + 1];
    m.col_idx.push_back(c);
  }
  std::partial_sum(m.row_ptr.begin(), m.row_ptr.end(), m.row_ptr.begin());
  m.validate();
  return m;
}

namespace detail {

inline std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace detail

/// Reads the Matrix Market "coordinate" variant (pattern, real or integer;
/// general or symmetric). Symmetric files are expanded to the full pattern.
inline SparseMatrixCSR parse_matrix_market(std::istream& in, std::string name = "matrix") {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError(1, "empty stream");
  ++lineno;
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket") throw ParseError(lineno, "missing %%MatrixMarket banner");
  object = detail::lower(object);
  format = detail::lower(format);
  field = detail::lower(field);
  symmetry = detail::lower(symmetry);
  if (object != "matrix") throw ParseError(lineno, "unsupported object '" + object + "'");
  if (format != "coordinate") throw ParseError(lineno, "only the coordinate format is supported");
  if (field != "pattern" && field != "real" && field != "integer")
    throw ParseError(lineno, "unsupported field '" + field + "'");
  if (symmetry != "general" && symmetry != "symmetric")
    throw ParseError(lineno, "unsupported symmetry '" + symmetry + "'");
  const bool symmetric = symmetry == "symmetric";

  // size line, skipping comments and blank lines
  std::size_t rows = 0, cols = 0, declared = 0;
  for (;;) {
    if (!std::getline(in, line)) throw ParseError(lineno + 1, "missing size line");
    ++lineno;
    if (line.empty() || line[0] == '%') continue;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream sz(line);
    long long r = -1, c = -1, n = -1;
    if (!(sz >> r >> c >> n) || r <= 0 || c <= 0 || n < 0) throw ParseError(lineno, "malformed size line");
    rows = static_cast<std::size_t>(r);
    cols = static_cast<std::size_t>(c);
    declared = static_cast<std::size_t>(n);
    break;
  }
  if (symmetric && rows != cols) throw ParseError(lineno, "symmetric matrix must be square");

  struct Entry {
    std::uint32_t row, col;
    std::size_t line;
  };
  std::vector<Entry> entries;
  entries.reserve(symmetric ? 2 * declared : declared);
  std::size_t seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '%') continue;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream es(line);
    long long i = 0, j = 0;
    if (!(es >> i >> j)) throw ParseError(lineno, "malformed entry");
    if (field != "pattern") {
      double v;
      if (!(es >> v)) throw ParseError(lineno, "missing value");
    }
    if (i < 1 || j < 1 || static_cast<std::size_t>(i) > rows || static_cast<std::size_t>(j) > cols)
      throw ParseError(lineno, "index out of range");
    if (++seen > declared) throw ParseError(lineno, "more entries than declared");
    const auto r0 = static_cast<std::uint32_t>(i - 1);
    const auto c0 = static_cast<std::uint32_t>(j - 1);
    entries.push_back({r0, c0, lineno});
    if (symmetric && r0 != c0) entries.push_back({c0, r0, lineno});
  }
  if (seen != declared)
    throw ParseError(lineno, "expected " + std::to_string(declared) + " entries, found " + std::to_string(seen));

  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (std::size_t k = 1; k < entries.size(); ++k) {
    if (entries[k].row == entries[k - 1].row && entries[k].col == entries[k - 1].col) {
      const std::size_t at = std::max(entries[k].line, entries[k - 1].line);
      throw ParseError(at, "duplicate entry (" + std::to_string(entries[k].row + 1) + ", " +
                               std::to_string(entries[k].col + 1) + ")");
    }
  }

  SparseMatrixCSR m;
  m.name = std::move(name);
  m.rows = rows;
  m.cols = cols;
  m.row_ptr.assign(rows + 1, 0);
  m.col_idx.reserve(entries.size());
  for (const auto& e : entries) {
    ++m.row_ptr[e.row + 1];
    m.col_idx.push_back(e.col);
  }
  std::partial_sum(m.row_ptr.begin(), m.row_ptr.end(), m.row_ptr.begin());
  return m;
}

/// Writes the pattern as "coordinate pattern general" with 1-based indices.
inline void write_matrix_market(std::ostream& out, const SparseMatrixCSR& m) {
  out << "%%MatrixMarket matrix coordinate pattern general\n";
  out << "% " << m.name << "\n";
  out << m.rows << ' ' << m.cols << ' ' << m.nnz() << '\n';
  for (std::size_t r = 0; r < m.rows; ++r)
    for (std::size_t p = m.row_ptr[r]; p < m.row_ptr[r + 1]; ++p) out << (r + 1) << ' ' << (m.col_idx[p] + 1) << '\n';
}

enum class MatrixKind { uniform, banded, power_law };

inline std::string_view to_string(MatrixKind k) {
  switch (k) {
    case MatrixKind::uniform: return "uniform";
    case MatrixKind::banded: return "banded";
    case MatrixKind::power_law: return "power_law";
  }
  return "?";
}

inline MatrixKind parse_matrix_kind(std::string_view s) {
  if (s == "uniform") return MatrixKind::uniform;
  if (s == "banded") return MatrixKind::banded;
  if (s == "power_law") return MatrixKind::power_law;
  throw Error("unknown matrix kind '" + std::string(s) + "'");
}

/// Seeded synthetic pattern. The reported nnz is the count after removing
/// duplicate draws, so it can fall short of `target_nnz`.
///  - uniform:   i.i.d. positions
///  - banded:    |col - diag(row)| <= max(1, cols / 16)
///  - power_law: Zipf-like row degrees (exponent 1.5), uniform columns
inline SparseMatrixCSR generate_synthetic_matrix(MatrixKind kind, std::size_t rows, std::size_t cols,
                                                 std::size_t target_nnz, std::uint64_t seed,
                                                 std::string name = {}) {
  if (rows == 0 || cols == 0) throw Error("synthetic matrix needs positive rows and cols");
  if (target_nnz == 0) throw Error("synthetic matrix needs target_nnz > 0");
  if (static_cast<double>(target_nnz) > static_cast<double>(rows) * static_cast<double>(cols))
    throw Error("target_nnz exceeds rows*cols");
  if (name.empty()) name = std::string(to_string(kind)) + "_" + std::to_string(rows) + "x" + std::to_string(cols);

  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> keys;
  keys.reserve(target_nnz);
  const auto key = [cols](std::uint64_t r, std::uint64_t c) { return r * cols + c; };

  switch (kind) {
    case MatrixKind::uniform: {
      std::uniform_int_distribution<std::uint64_t> pos(0, static_cast<std::uint64_t>(rows) * cols - 1);
      for (std::size_t k = 0; k < target_nnz; ++k) keys.push_back(pos(rng));
      break;
    }
    case MatrixKind::banded: {
      const auto half = static_cast<std::int64_t>(std::max<std::size_t>(1, cols / 16));
      std::uniform_int_distribution<std::uint64_t> row(0, rows - 1);
      std::uniform_int_distribution<std::int64_t> offset(-half, half);
      for (std::size_t k = 0; k < target_nnz; ++k) {
        for (;;) {
          const std::uint64_t r = row(rng);
          const auto diag = static_cast<std::int64_t>((static_cast<double>(r) * cols) / rows);
          const std::int64_t c = diag + offset(rng);
          if (c < 0 || c >= static_cast<std::int64_t>(cols)) continue;
          keys.push_back(key(r, static_cast<std::uint64_t>(c)));
          break;
        }
      }
      break;
    }
    case MatrixKind::power_law: {
      std::vector<std::size_t> rank(rows);
      std::iota(rank.begin(), rank.end(), 0);
      std::shuffle(rank.begin(), rank.end(), rng);
      std::vector<double> weight(rows);
      for (std::size_t r = 0; r < rows; ++r) weight[r] = std::pow(static_cast<double>(rank[r] + 1), -1.5);
      std::discrete_distribution<std::size_t> row(weight.begin(), weight.end());
      std::uniform_int_distribution<std::uint64_t> col(0, cols - 1);
      for (std::size_t k = 0; k < target_nnz; ++k) {
        const std::uint64_t r = row(rng);
        keys.push_back(key(r, col(rng)));
      }
      break;
    }
  }

  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  SparseMatrixCSR m;
  m.name = std::move(name);
  m.rows = rows;
  m.cols = cols;
  m.row_ptr.assign(rows + 1, 0);
  m.col_idx.reserve(keys.size());
  for (const auto k : keys) {
    ++m.row_ptr[k / cols + 1];
    m.col_idx.push_back(static_cast<std::uint32_t>(k % cols));
  }
  std::partial_sum(m.row_ptr.begin(), m.row_ptr.end(), m.row_ptr.begin());
  return m;
}

struct MatrixStats {
  double mean_row_nnz = 0.0;
  double gini = 0.0;       // row-degree imbalance, [0, 1]
  double bandwidth = 0.0;  // mean normalized within-row column spread, [0, 0.5]
  double density = 0.0;    // (0, 1]
};

/// Gini coefficient of non-negative values via the sorted-cumulative formula.
inline double gini_coefficient(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  double total = 0.0, weighted = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    total += values[i];
    weighted += static_cast<double>(i + 1) * values[i];
  }
  if (total <= 0.0) return 0.0;
  const auto n = static_cast<double>(values.size());
  return std::clamp(2.0 * weighted / (n * total) - (n + 1.0) / n, 0.0, 1.0);
}

inline MatrixStats compute_stats(const SparseMatrixCSR& m) {
  if (m.nnz() == 0) throw Error(m.name + ": statistics need at least one nonzero");
  MatrixStats s;
  const auto nnz = static_cast<double>(m.nnz());
  s.mean_row_nnz = nnz / static_cast<double>(m.rows);
  s.density = nnz / (static_cast<double>(m.rows) * static_cast<double>(m.cols));

  std::vector<double> degrees(m.rows);
  double spread = 0.0;
  for (std::size_t r = 0; r < m.rows; ++r) {
    const std::size_t b = m.row_ptr[r], e = m.row_ptr[r + 1];
    degrees[r] = static_cast<double>(e - b);
    if (e == b) continue;
    double mean = 0.0;
    for (std::size_t p = b; p < e; ++p) mean += m.col_idx[p];
    mean /= static_cast<double>(e - b);
    for (std::size_t p = b; p < e; ++p) spread += std::abs(m.col_idx[p] - mean);
  }
  s.gini = gini_coefficient(std::move(degrees));
  s.bandwidth = spread / nnz / static_cast<double>(m.cols);
  return s;
}

/// Fixed-resolution pooled density of a pattern. Each nonzero is a unit
/// square whose mass is split over the (real-valued) blocks it overlaps, so
/// cell values stay in [0, 1] and sum(cell * block_area) == nnz.
struct DensityGrid {
  std::size_t resolution = 0;
  double block_rows = 0.0;  // rows / resolution
  double block_cols = 0.0;  // cols / resolution
  std::vector<double> cells;  // row-major, resolution x resolution

  double at(std::size_t u, std::size_t v) const { return cells[u * resolution + v]; }
  double block_area() const noexcept { return block_rows * block_cols; }
};

namespace detail {

struct Overlap {
  std::size_t block;
  double fraction;
};

// Blocks covered by the unit interval [pos, pos + 1) when [0, extent) is cut
// into `resolution` equal pieces.
inline void unit_overlaps(std::size_t pos, double width, std::size_t resolution, std::vector<Overlap>& out) {
  out.clear();
  const double lo = static_cast<double>(pos), hi = lo + 1.0;
  auto first = static_cast<std::size_t>(lo / width);
  first = std::min(first, resolution - 1);
  for (std::size_t b = first; b < resolution; ++b) {
    const double start = static_cast<double>(b) * width;
    if (start >= hi) break;
    const double end = b + 1 == resolution ? std::max(hi, static_cast<double>(b + 1) * width)
                                           : static_cast<double>(b + 1) * width;
    const double f = std::min(hi, end) - std::max(lo, start);
    if (f > 0.0) out.push_back({b, f});
  }
}

}  // namespace detail

inline DensityGrid to_density_grid(const SparseMatrixCSR& m, std::size_t resolution) {
  if (resolution == 0) throw Error("density grid resolution must be positive");
  DensityGrid g;
  g.resolution = resolution;
  g.block_rows = static_cast<double>(m.rows) / static_cast<double>(resolution);
  g.block_cols = static_cast<double>(m.cols) / static_cast<double>(resolution);
  g.cells.assign(resolution * resolution, 0.0);

  // column overlaps are reused across rows
  std::vector<std::size_t> col_start(m.cols + 1, 0);
  std::vector<detail::Overlap> col_over;
  {
    std::vector<detail::Overlap> tmp;
    for (std::size_t c = 0; c < m.cols; ++c) {
      detail::unit_overlaps(c, g.block_cols, resolution, tmp);
      col_start[c] = col_over.size();
      col_over.insert(col_over.end(), tmp.begin(), tmp.end());
    }
    col_start[m.cols] = col_over.size();
  }
  std::vector<detail::Overlap> row_over;
  for (std::size_t r = 0; r < m.rows; ++r) {
    if (m.row_nnz(r) == 0) continue;
    detail::unit_overlaps(r, g.block_rows, resolution, row_over);
    for (std::size_t p = m.row_ptr[r]; p < m.row_ptr[r + 1]; ++p) {
      const std::size_t c = m.col_idx[p];
      for (const auto& ro : row_over)
        for (std::size_t k = col_start[c]; k < col_start[c + 1]; ++k)
          g.cells[ro.block * resolution + col_over[k].block] += ro.fraction * col_over[k].fraction;
    }
  }
  const double area = g.block_area();
  for (auto& cell : g.cells) cell = std::min(1.0, cell / area);
  return g;
}

inline constexpr std::array<std::size_t, 4> kRowBinUpperBounds = {8192, 32768, 65536, 131072};
inline constexpr std::size_t kRowBinCount = 5;

/// 0-based bin of a row count: <=8192, <=32768, <=65536, <=131072, >131072.
inline std::size_t row_bin(std::size_t rows) {
  for (std::size_t b = 0; b < kRowBinUpperBounds.size(); ++b)
    if (rows <= kRowBinUpperBounds[b]) return b;
  return kRowBinUpperBounds.size();
}

/// Partitions items into the five row-count bins, keeping input order within
/// each bin. `rows_of` maps an item to its row count.
template <typename Range, typename RowsOf>
std::array<std::vector<std::size_t>, kRowBinCount> bin_matrices_by_rows(const Range& items, RowsOf rows_of) {
  std::array<std::vector<std::size_t>, kRowBinCount> bins;
  std::size_t index = 0;
  for (const auto& item : items) bins[row_bin(rows_of(item))].push_back(index++);
  return bins;
}

inline std::array<std::vector<std::size_t>, kRowBinCount> bin_matrices_by_rows(
    const std::vector<SparseMatrixCSR>& matrices) {
  return bin_matrices_by_rows(matrices, [](const SparseMatrixCSR& m) { return m.rows; });
}

}  // namespace sparsetl
