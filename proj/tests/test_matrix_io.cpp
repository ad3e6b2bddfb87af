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

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "sparsetl/matrix_io.hpp"

using namespace sparsetl;

namespace {

SparseMatrixCSR identity(std::size_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> c;
  for (std::uint32_t i = 0; i < n; ++i) c.emplace_back(i, i);
  return csr_from_coordinates("identity", n, n, c);
}

SparseMatrixCSR parse(const std::string& text) {
  std::istringstream in(text);
  return parse_matrix_market(in, "t");
}

// Gini by its pairwise-difference definition, independent of the sorted formula.
double gini_pairwise(const std::vector<double>& x) {
  double num = 0, sum = 0;
  for (double a : x) {
    sum += a;
    for (double b : x) num += std::abs(a - b);
  }
  return num / (2.0 * static_cast<double>(x.size()) * sum);
}

}  // namespace

TEST(ParseMatrixMarket, IdentityPattern) {
  const auto m = parse(
      "%%MatrixMarket matrix coordinate pattern general\n"
      "% comment\n"
      "3 3 3\n1 1\n2 2\n3 3\n");
  EXPECT_EQ(m.rows, 3u);
  EXPECT_EQ(m.cols, 3u);
  EXPECT_EQ(m.nnz(), 3u);
  EXPECT_EQ(m.col_idx, (std::vector<std::uint32_t>{0, 1, 2}));
}

TEST(ParseMatrixMarket, SymmetricExpansion) {
  const auto m = parse("%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n2 1 3.5\n");
  EXPECT_EQ(m.nnz(), 2u);
  EXPECT_EQ(m.row_ptr, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(m.col_idx, (std::vector<std::uint32_t>{1, 0}));
}

TEST(ParseMatrixMarket, SymmetricDiagonalNotDuplicated) {
  const auto m = parse("%%MatrixMarket matrix coordinate integer symmetric\n2 2 2\n1 1 4\n2 1 7\n");
  EXPECT_EQ(m.nnz(), 3u);
}

TEST(ParseMatrixMarket, ErrorsCarryLineNumbers) {
  const auto line_of = [](const std::string& text) {
    try {
      parse(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  EXPECT_EQ(line_of("%%MatrixMarket matrix array real general\n2 2\n"), 1u);
  EXPECT_EQ(line_of("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n3 1\n"), 3u);
  EXPECT_EQ(line_of("%%MatrixMarket matrix coordinate pattern general\n2 2 2\n1 1\n1 1\n"), 4u);
  EXPECT_GT(line_of("%%MatrixMarket matrix coordinate pattern general\n2 2 3\n1 1\n"), 0u);
  EXPECT_EQ(line_of("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1\n"), 3u);
}

TEST(ParseMatrixMarket, RoundTripRandomMatrices) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto kind = static_cast<MatrixKind>(seed % 3);
    const auto m = generate_synthetic_matrix(kind, 50 + seed * 7, 40 + seed * 3, 200, seed, "rt");
    std::stringstream ss;
    write_matrix_market(ss, m);
    const auto back = parse_matrix_market(ss, "rt");
    EXPECT_EQ(back, m) << "seed " << seed;
  }
}

TEST(GenerateSynthetic, BandedStaysInBand) {
  const auto m = generate_synthetic_matrix(MatrixKind::banded, 64, 64, 64, 7);
  m.validate();
  for (std::size_t r = 0; r < m.rows; ++r)
    for (auto p = m.row_ptr[r]; p < m.row_ptr[r + 1]; ++p)
      EXPECT_LE(std::abs(static_cast<long>(r) - static_cast<long>(m.col_idx[p])), 4);
}

TEST(GenerateSynthetic, Deterministic) {
  for (auto kind : {MatrixKind::uniform, MatrixKind::banded, MatrixKind::power_law}) {
    const auto a = generate_synthetic_matrix(kind, 300, 200, 1500, 11);
    const auto b = generate_synthetic_matrix(kind, 300, 200, 1500, 11);
    EXPECT_EQ(a, b);
    a.validate();
    EXPECT_LE(a.nnz(), 1500u);
    EXPECT_GT(a.nnz(), 750u);
  }
}

TEST(GenerateSynthetic, PowerLawMoreSkewedThanUniform) {
  const auto p = generate_synthetic_matrix(MatrixKind::power_law, 1024, 1024, 8192, 1);
  const auto u = generate_synthetic_matrix(MatrixKind::uniform, 1024, 1024, 8192, 1);
  EXPECT_GT(compute_stats(p).gini, compute_stats(u).gini);
}

TEST(GenerateSynthetic, RejectsBadArguments) {
  EXPECT_THROW(generate_synthetic_matrix(MatrixKind::uniform, 0, 4, 1, 0), Error);
  EXPECT_THROW(generate_synthetic_matrix(MatrixKind::uniform, 4, 4, 0, 0), Error);
  EXPECT_THROW(generate_synthetic_matrix(MatrixKind::uniform, 4, 4, 17, 0), Error);
}

TEST(ComputeStats, IdentityAndDense) {
  const auto s = compute_stats(identity(4));
  EXPECT_DOUBLE_EQ(s.gini, 0.0);
  EXPECT_DOUBLE_EQ(s.bandwidth, 0.0);
  const auto d = csr_from_coordinates("d", 2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  EXPECT_DOUBLE_EQ(compute_stats(d).density, 1.0);
}

TEST(ComputeStats, GiniOfSingleHeavyRow) {
  const auto m = csr_from_coordinates("g", 4, 4, {{3, 0}, {3, 1}, {3, 2}, {3, 3}});
  EXPECT_NEAR(compute_stats(m).gini, 0.75, 1e-12);
  EXPECT_NEAR(gini_pairwise({0, 0, 0, 4}), 0.75, 1e-12);
}

TEST(ComputeStats, GiniMatchesPairwiseDefinitionAndIsScaleFree) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(0, 20);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> x(13);
    for (auto& v : x) v = d(rng);
    x[0] += 1;
    EXPECT_NEAR(gini_coefficient(x), gini_pairwise(x), 1e-12);
    auto doubled = x;
    for (auto& v : doubled) v *= 2;
    EXPECT_NEAR(gini_coefficient(doubled), gini_coefficient(x), 1e-12);
  }
}

TEST(ComputeStats, SingleColumnHasZeroBandwidth) {
  const auto m = csr_from_coordinates("c", 5, 1, {{0, 0}, {2, 0}, {4, 0}});
  EXPECT_DOUBLE_EQ(compute_stats(m).bandwidth, 0.0);
}

TEST(ComputeStats, BandwidthByHand) {
  // Row 0 holds columns {0, 3} of a 4-wide matrix: mean 1.5, spreads 1.5/4 each.
  const auto m = csr_from_coordinates("b", 2, 4, {{0, 0}, {0, 3}, {1, 2}});
  EXPECT_NEAR(compute_stats(m).bandwidth, (1.5 / 4 + 1.5 / 4 + 0.0) / 3.0, 1e-12);
}

TEST(DensityGrid, IdentityAtFullResolution) {
  const auto g = to_density_grid(identity(64), 64);
  for (std::size_t u = 0; u < 64; ++u)
    for (std::size_t v = 0; v < 64; ++v) EXPECT_DOUBLE_EQ(g.at(u, v), u == v ? 1.0 : 0.0);
}

TEST(DensityGrid, ResolutionOneIsDensity) {
  const auto m = generate_synthetic_matrix(MatrixKind::uniform, 37, 91, 300, 5);
  EXPECT_NEAR(to_density_grid(m, 1).cells[0], compute_stats(m).density, 1e-12);
}

TEST(DensityGrid, MassConservation) {
  const auto m = generate_synthetic_matrix(MatrixKind::uniform, 128, 128, 2000, 9);
  const auto g = to_density_grid(m, 64);
  double mass = 0;
  for (double c : g.cells) mass += c * 2 * 2;
  EXPECT_NEAR(mass, double(m.nnz()), 1e-9 * double(m.nnz()));
}

TEST(DensityGrid, MassConservationFractionalBlocks) {
  for (std::size_t res : {1u, 3u, 8u, 64u, 256u}) {
    const auto m = generate_synthetic_matrix(MatrixKind::power_law, 100, 77, 900, res);
    const auto g = to_density_grid(m, res);
    double mass = 0;
    for (double c : g.cells) {
      EXPECT_GE(c, 0.0);
      EXPECT_LE(c, 1.0);
      mass += c * g.block_area();
    }
    EXPECT_NEAR(mass, double(m.nnz()), 1e-9 * double(m.nnz())) << "resolution " << res;
  }
  EXPECT_THROW(to_density_grid(identity(4), 0), Error);
}

TEST(RowBins, Thresholds) {
  EXPECT_EQ(row_bin(8192), 0u);
  EXPECT_EQ(row_bin(8193), 1u);
  EXPECT_EQ(row_bin(32768), 1u);
  EXPECT_EQ(row_bin(65536), 2u);
  EXPECT_EQ(row_bin(131072), 3u);
  EXPECT_EQ(row_bin(200000), 4u);
}

TEST(RowBins, StablePartition) {
  const std::vector<std::size_t> rows = {10, 200000, 9000, 20, 70000, 8192};
  const auto bins = bin_matrices_by_rows(rows, [](std::size_t r) { return r; });
  EXPECT_EQ(bins[0], (std::vector<std::size_t>{0, 3, 5}));
  EXPECT_EQ(bins[1], (std::vector<std::size_t>{2}));
  EXPECT_EQ(bins[3], (std::vector<std::size_t>{4}));
  EXPECT_EQ(bins[4], (std::vector<std::size_t>{1}));
}
