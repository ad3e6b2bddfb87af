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
#include <sstream>

#include "sparsetl/eval.hpp"

using namespace sparsetl;

namespace {

using V = std::vector<double>;

std::vector<MatrixEntry> test_matrices(std::size_t n) {
  std::vector<MatrixEntry> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t rows = 2000 + 1500 * i;
    const auto m = generate_synthetic_matrix(static_cast<MatrixKind>(i % 3), rows, rows * 2 - 300 * i, rows * (2 + i % 7),
                                             40 + i, "t" + std::to_string(100 - i));
    out.push_back(prepare_matrix(m, 16));
  }
  return out;
}

// Tau-b from the full sign matrices, written independently of the pair loop.
double tau_b_reference(const V& x, const V& y) {
  const std::size_t n = x.size();
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double a = (x[i] > x[j]) - (x[i] < x[j]);
      const double b = (y[i] > y[j]) - (y[i] < y[j]);
      sxy += a * b;
      sxx += a * a;
      syy += b * b;
    }
  return sxy / std::sqrt(sxx * syy);
}

struct RandomScorer {
  std::uint64_t seed;
  V operator()(const MatrixEntry& m, std::span<const ProgramConfig> configs) const {
    std::mt19937_64 rng(seed ^ std::hash<std::string>{}(m.profile.name));
    std::uniform_real_distribution<double> u(0, 1);
    V out(configs.size());
    for (auto& v : out) v = u(rng);
    return out;
  }
};

}  // namespace

TEST(OrderedPairAccuracy, Examples) {
  EXPECT_DOUBLE_EQ(ordered_pair_accuracy(V{1, 2, 3, 4}, V{1, 2, 3, 4}), 1.0);
  EXPECT_DOUBLE_EQ(ordered_pair_accuracy(V{-1, -2, -3, -4}, V{1, 2, 3, 4}), 0.0);
  EXPECT_DOUBLE_EQ(ordered_pair_accuracy(V{1, 2, 3}, V{1, 3, 2}), 2.0 / 3.0);
  // the tied-runtime pair (0,1) is excluded
  EXPECT_DOUBLE_EQ(ordered_pair_accuracy(V{1, 2, 3}, V{5, 5, 9}), 1.0);
  EXPECT_THROW(ordered_pair_accuracy(V{1, 2}, V{3, 3}), Error);
  EXPECT_THROW(ordered_pair_accuracy(V{1}, V{1}), Error);
  EXPECT_THROW(ordered_pair_accuracy(V{1, 2}, V{1, 2, 3}), Error);
}

TEST(KendallTau, Examples) {
  EXPECT_DOUBLE_EQ(kendall_tau(V{1, 2, 3, 4}, V{10, 20, 30, 40}), 1.0);
  EXPECT_DOUBLE_EQ(kendall_tau(V{4, 3, 2, 1}, V{10, 20, 30, 40}), -1.0);
  EXPECT_NEAR(kendall_tau(V{1, 2, 3}, V{1, 3, 2}), 1.0 / 3.0, 1e-15);
  EXPECT_THROW(kendall_tau(V{1, 1, 1}, V{1, 2, 3}), Error);
  EXPECT_THROW(kendall_tau(V{1, 2, 3}, V{4, 4, 4}), Error);
}

TEST(KendallTau, TieCorrectionMatchesReference) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> d(0, 4);
  for (int t = 0; t < 30; ++t) {
    V x(12), y(12);
    for (auto& v : x) v = d(rng);
    for (auto& v : y) v = d(rng);
    x[0] = 10;
    y[1] = 10;
    EXPECT_NEAR(kendall_tau(x, y), tau_b_reference(x, y), 1e-12);
  }
}

TEST(RankMetrics, InvariantUnderIncreasingTransforms) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n(0, 1);
  V s(40), t(40);
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i] = n(rng);
    t[i] = std::exp(n(rng));
  }
  V transformed;
  for (double v : s) transformed.push_back(std::exp(3 * v) + 7);
  EXPECT_DOUBLE_EQ(ordered_pair_accuracy(s, t), ordered_pair_accuracy(transformed, t));
  EXPECT_DOUBLE_EQ(kendall_tau(s, t), kendall_tau(transformed, t));
}

TEST(Ape, Examples) {
  using P = std::vector<std::pair<double, double>>;
  EXPECT_DOUBLE_EQ(ape(P{{3, 3}, {7, 7}}), 0.0);
  EXPECT_NEAR(ape(P{{110, 100}}), 10.0, 1e-12);
  EXPECT_NEAR(ape(P{{110, 100}, {100, 100}}), 5.0, 1e-12);
  EXPECT_THROW(ape(P{{1, 0}}), Error);
  EXPECT_THROW(ape(P{}), Error);
}

TEST(GeomeanSpeedup, Examples) {
  EXPECT_DOUBLE_EQ(geomean_speedup(V{3, 5}, V{3, 5}), 1.0);
  EXPECT_NEAR(geomean_speedup(V{2, 8}, V{1, 2}), std::sqrt(8.0), 1e-12);
  EXPECT_NEAR(geomean_speedup(V{8, 2}, V{2, 1}), geomean_speedup(V{2, 8}, V{1, 2}), 1e-15);
  EXPECT_THROW(geomean_speedup(V{1, 0}, V{1, 1}), Error);
  EXPECT_THROW(geomean_speedup(V{1, 1}, V{-1, 1}), Error);
}

TEST(Dce, TableValues) {
  const std::vector<CollectionCost> nt = {{1000, 500}};
  const std::vector<CollectionCost> tl = {{1, 10000}, {1000, 500}};
  EXPECT_NEAR(dce(nt), 0.50, 1e-12);
  EXPECT_NEAR(dce(tl), 0.51, 1e-12);
  EXPECT_EQ(dce({}), 0.0);
}

TEST(DefaultConfig, InsideEachDomain) {
  for (auto p : kAllPlatforms) {
    const auto spec = default_platform_spec(p);
    const auto c = default_config(spec);
    EXPECT_EQ(c.platform(), p);
    EXPECT_NO_THROW(validate_config(c, spec));
  }
  const auto s = default_config(default_platform_spec(Platform::spade)).spade();
  EXPECT_EQ(s, (SpadeConfig{32, 1024, 32, false, false, false}));
}

TEST(Evaluate, OracleScorerIsExact) {
  const auto ms = test_matrices(8);
  for (auto p : kAllPlatforms) {
    const auto spec = default_platform_spec(p);
    const auto r = evaluate_scorer(OracleScorer{p, Kernel::spmm, {}}, spec, Kernel::spmm, ms);
    EXPECT_EQ(r.ape_top1, 0.0);
    EXPECT_EQ(r.ape_top5, 0.0);
    EXPECT_EQ(r.speedup_top1, r.speedup_optimal);
    EXPECT_EQ(r.speedup_top5, r.speedup_optimal);
    EXPECT_DOUBLE_EQ(r.opa, 1.0);
    for (const auto& e : ms) {
      const auto it = std::find_if(r.matrices.begin(), r.matrices.end(),
                                   [&](const MatrixResult& m) { return m.matrix_id == e.profile.name; });
      ASSERT_NE(it, r.matrices.end());
      EXPECT_EQ(it->optimal, brute_force_optimum(spec, Kernel::spmm, e.profile).runtime);
    }
  }
}

TEST(Evaluate, RandomScorerInvariants) {
  const auto ms = test_matrices(20);
  const auto spec = default_platform_spec(Platform::spade);
  const auto r = evaluate_scorer(RandomScorer{5}, spec, Kernel::sddmm, ms);
  ASSERT_EQ(r.matrices.size(), 20u);
  EXPECT_GE(r.speedup_top5, r.speedup_top1);
  EXPECT_LE(r.speedup_top5, r.speedup_optimal);
  EXPECT_GE(r.ape_top1, r.ape_top5);
  for (std::size_t i = 0; i < r.matrices.size(); ++i) {
    const auto& m = r.matrices[i];
    EXPECT_LE(m.optimal, m.top5);
    EXPECT_LE(m.top5, m.top1);
    EXPECT_LE(m.optimal, m.baseline);
    if (i > 0) {
      EXPECT_LT(r.matrices[i - 1].matrix_id, m.matrix_id);
    }
  }
  EXPECT_THROW(evaluate_scorer(RandomScorer{5}, spec, Kernel::spmm, std::span<const MatrixEntry>{}), Error);
}

TEST(Evaluate, RefusesModelOfAnotherPlatform) {
  CostModelOptions o;
  o.grid_resolution = 16;
  const auto model = make_cost_model(o);
  const auto ms = test_matrices(1);
  EXPECT_THROW(evaluate_model(model, default_platform_spec(Platform::spade), Kernel::spmm, ms), PlatformMismatch);
  EXPECT_NO_THROW(evaluate_model(model, default_platform_spec(Platform::cpu), Kernel::spmm, ms));
}

TEST(Reports, CsvAndSummary) {
  const auto ms = test_matrices(3);
  auto r = evaluate_scorer(OracleScorer{Platform::spade, Kernel::spmm, {}}, default_platform_spec(Platform::spade),
                           Kernel::spmm, ms);
  r.label = "oracle";
  std::stringstream csv;
  write_report_csv(csv, r);
  std::size_t lines = 0;
  for (std::string l; std::getline(csv, l);) ++lines;
  EXPECT_EQ(lines, 4u);
  std::stringstream lf;
  write_speedup_long_csv(lf, std::vector<MetricsReport>{r});
  lines = 0;
  for (std::string l; std::getline(lf, l);) ++lines;
  EXPECT_EQ(lines, 1u + 3u * 3u);
  const auto j = summary_json(r);
  EXPECT_EQ(j.at("label"), "oracle");
  EXPECT_EQ(j.at("matrices"), 3);
  EXPECT_EQ(j.at("ape_top1"), 0.0);
}

TEST(LatentVariants, RawCopiesAndPcaSeparates) {
  for (auto p : kAllPlatforms) {
    const auto raw = linear_latent_encoder(p, LatentVariant::raw);
    const auto pca = linear_latent_encoder(p, LatentVariant::pca);
    const auto points = enumerate_heterogeneous(p);
    std::vector<V> codes;
    for (const auto& h : points) {
      const auto z = nn::infer(raw.encoder, nn::Tensor({h.values.size()}, h.values)).values();
      ASSERT_EQ(z.size(), kLatentWidth);
      for (std::size_t i = 0; i < kLatentWidth; ++i) EXPECT_EQ(z[i], i < h.values.size() ? h.values[i] : 0.0);
      codes.push_back(nn::infer(pca.encoder, nn::Tensor({h.values.size()}, h.values)).values());
    }
    V mean(kLatentWidth, 0.0);
    for (const auto& c : codes)
      for (std::size_t i = 0; i < kLatentWidth; ++i) mean[i] += c[i] / double(codes.size());
    for (double m : mean) EXPECT_NEAR(m, 0.0, 1e-12);  // PCA codes are centred
    for (std::size_t a = 0; a < codes.size(); ++a)
      for (std::size_t b = a + 1; b < codes.size(); ++b) {
        double d = 0;
        for (std::size_t i = 0; i < kLatentWidth; ++i) d += std::abs(codes[a][i] - codes[b][i]);
        EXPECT_GT(d, 0.1);
      }
  }
  EXPECT_THROW(linear_latent_encoder(Platform::spade, LatentVariant::autoencoder), Error);
}
