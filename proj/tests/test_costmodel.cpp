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

#include <cmath>

#include "sparsetl/costmodel.hpp"
#include "support/gradcheck.hpp"

using namespace sparsetl;

namespace {

CostModel small_model(Platform p = Platform::spade, std::uint64_t seed = 3,
                      ConfigEncoding enc = ConfigEncoding::mapped) {
  CostModelOptions o;
  o.platform = p;
  o.grid_resolution = 16;
  o.encoding = enc;
  o.seed = seed;
  return make_cost_model(o);
}

SparseMatrixCSR lower_triangle(std::size_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> c;
  for (std::uint32_t r = 0; r < n; ++r)
    for (std::uint32_t k = 0; k <= r; k += 3) c.emplace_back(r, k);
  return csr_from_coordinates("tri", n, n, c);
}

DensityGrid transpose(const DensityGrid& g) {
  DensityGrid t = g;
  std::swap(t.block_rows, t.block_cols);
  for (std::size_t u = 0; u < g.resolution; ++u)
    for (std::size_t v = 0; v < g.resolution; ++v) t.cells[v * g.resolution + u] = g.at(u, v);
  return t;
}

std::vector<ProgramConfig> spade_configs(std::size_t cols) {
  return enumerate_configs(default_platform_spec(Platform::spade), cols);
}

}  // namespace

TEST(CostModel, ComponentWidthsBothPresets) {
  for (auto preset : {FeaturizerPreset::desk, FeaturizerPreset::paper}) {
    CostModelOptions o;
    o.preset = preset;
    o.grid_resolution = preset == FeaturizerPreset::desk ? 32 : 16;
    const auto m = make_cost_model(o);
    EXPECT_EQ(nn::validate_network(m.ife), nn::Shape{kMatrixEmbedding});
    EXPECT_EQ(nn::validate_network(m.fm), nn::Shape{kConfigEmbedding});
    EXPECT_EQ(nn::validate_network(m.le), nn::Shape{kLatentWidth});
    EXPECT_EQ(m.predictor.input_shape, nn::Shape{256});
    const auto grid = to_density_grid(lower_triangle(100), o.grid_resolution);
    EXPECT_EQ(featurize_matrix(m, grid).size(), 128u);
  }
}

TEST(CostModel, PaperPresetLayerPlan) {
  std::mt19937_64 rng(1);
  const auto net = make_featurizer(FeaturizerPreset::paper, 64, 4, rng);
  std::vector<std::size_t> channels;
  std::size_t pools = 0;
  for (const auto& l : net.layers) {
    if (const auto* c = std::get_if<nn::Conv2d>(&l)) channels.push_back(c->out_channels);
    if (std::holds_alternative<nn::MaxPool2d>(l)) ++pools;
  }
  EXPECT_EQ(channels, (std::vector<std::size_t>{32, 32, 64, 64, 64, 128, 128, 128, 256, 256, 256, 256}));
  EXPECT_EQ(pools, 3u);
}

TEST(CostModel, AllZeroGridsGiveOneConstant) {
  CostModelOptions o;
  o.platform = Platform::spade;
  o.grid_resolution = 16;
  o.extent_planes = false;
  auto m = make_cost_model(o);
  DensityGrid a{16, 4.0, 4.0, std::vector<double>(256, 0.0)};
  DensityGrid b{16, 1000.0, 7.5, std::vector<double>(256, 0.0)};
  const auto za = featurize_matrix(m, a);
  EXPECT_EQ(za, featurize_matrix(m, b));
  // a zero input meets the first convolution, so its weights play no part
  auto& first = std::get<nn::Conv2d>(m.ife.layers.front());
  std::fill(first.weight.data.begin(), first.weight.data.end(), 7.0);
  EXPECT_EQ(featurize_matrix(m, a), za);
}

TEST(CostModel, ExtentPlanesSeparateEqualPatternsOfDifferentSize) {
  const auto m = small_model();
  DensityGrid a{16, 4.0, 4.0, std::vector<double>(256, 0.0)};
  DensityGrid b{16, 1000.0, 7.5, std::vector<double>(256, 0.0)};
  DensityGrid a2{16, 4.0, 4.0, std::vector<double>(256, 0.0)};
  EXPECT_EQ(featurize_matrix(m, a), featurize_matrix(m, a2));
  EXPECT_NE(featurize_matrix(m, a), featurize_matrix(m, b));
  const auto t = featurizer_input(b);
  ASSERT_EQ(t.shape, (nn::Shape{4, 16, 16}));
  EXPECT_DOUBLE_EQ(t.data[2 * 256 + 17], std::log2(16000.0) / 24.0);
  EXPECT_DOUBLE_EQ(t.data[3 * 256 + 255], std::log2(120.0) / 24.0);
  EXPECT_EQ(featurizer_input(b, false).shape, (nn::Shape{2, 16, 16}));
}

TEST(CostModel, TransposeEquivariantWeightsGiveEqualEmbeddings) {
  auto m = small_model();
  // Symmetric kernels commute with transposition; pooling does too.
  for (auto& l : m.ife.layers)
    if (auto* c = std::get_if<nn::Conv2d>(&l)) {
      const std::size_t k = c->kernel;
      for (std::size_t o = 0; o < c->out_channels; ++o)
        for (std::size_t i = 0; i < c->in_channels; ++i)
          for (std::size_t y = 0; y < k; ++y)
            for (std::size_t x = 0; x < y; ++x) {
              const std::size_t base = (o * c->in_channels + i) * k * k;
              c->weight.data[base + x * k + y] = c->weight.data[base + y * k + x];
            }
    }
  const auto grid = to_density_grid(lower_triangle(96), 16);
  const auto a = featurize_matrix(m, grid), b = featurize_matrix(m, transpose(grid));
  ASSERT_NE(grid.cells, transpose(grid).cells);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
}

TEST(CostModel, ResolutionMismatch) {
  const auto m = small_model();
  EXPECT_THROW(featurize_matrix(m, to_density_grid(lower_triangle(40), 32)), ShapeError);
}

TEST(CostModel, ConfigEmbeddingIgnoresHeterogeneousBits) {
  const auto m = small_model();
  const SpadeConfig a{32, 16384, 256, true, false, false};
  SpadeConfig b = a;
  b.bypass = true;
  b.reorder = true;
  const auto pa = embed_config(m, split_config(a).homogeneous);
  EXPECT_EQ(pa.size(), 64u);
  EXPECT_EQ(pa, embed_config(m, split_config(b).homogeneous));
  SpadeConfig c = a;
  c.barrier = false;
  EXPECT_NE(pa, embed_config(m, split_config(c).homogeneous));
}

TEST(CostModel, LatentEncode) {
  const auto m = small_model();
  const HeterogeneousParams h{Platform::spade, {1, 0}};
  const auto z = latent_encode(m, h);
  EXPECT_EQ(z.size(), 64u);
  EXPECT_EQ(z, latent_encode(m, h));
  EXPECT_THROW(latent_encode(m, HeterogeneousParams{Platform::cpu, {1}}), PlatformMismatch);
}

TEST(CostModel, PredictCostDeterministicAndGuarded) {
  const auto m = small_model();
  const auto csr = lower_triangle(80);
  const SpadeConfig c{4, 1024, 32, false, true, false};
  EXPECT_EQ(predict_cost(m, csr, c), predict_cost(m, csr, c));
  EXPECT_THROW(predict_cost(m, csr, CpuConfig{}), PlatformMismatch);
}

TEST(CostModel, ZeroedPredictorReturnsBias) {
  auto m = small_model();
  for (auto* p : m.predictor.parameters()) std::fill(p->data.begin(), p->data.end(), 0.0);
  std::get<nn::Dense>(m.predictor.layers.back()).bias.data[0] = 0.625;
  const auto csr = lower_triangle(70);
  for (const auto& c : spade_configs(csr.cols)) EXPECT_EQ(predict_cost(m, csr, c), 0.625);
}

TEST(CostModel, BatchedScoresMatchSingleCalls) {
  const auto m = small_model();
  const auto csr = lower_triangle(90);
  const auto entry = prepare_matrix(csr, 16);
  const auto configs = spade_configs(csr.cols);
  const auto batch = score_configs(m, entry, configs);
  for (std::size_t i = 0; i < configs.size(); i += 37)
    EXPECT_NEAR(batch[i], predict_cost(m, csr, configs[i]), 1e-12);
}

TEST(CostModel, HeterogeneousBitsOnlyThroughLatentEncoder) {
  auto m = small_model();
  std::get<nn::Dense>(m.le.layers.front()).weight.data.assign(64, 0.0);
  const auto entry = prepare_matrix(lower_triangle(64), 16);
  const auto configs = spade_configs(64);
  const auto scores = score_configs(m, entry, configs);
  // configs come in groups of 4 over (bypass, reorder)
  for (std::size_t i = 0; i < configs.size(); i += 4)
    for (std::size_t j = 1; j < 4; ++j) EXPECT_EQ(scores[i + j], scores[i]);
}

TEST(CostModel, DroppedComponentsKeepPredictorWidth) {
  for (auto mask : {ComponentMask{false, true, true}, ComponentMask{true, false, true}, ComponentMask{true, true, false}}) {
    auto m = small_model();
    m.components = mask;
    EXPECT_EQ(m.predictor.input_shape, nn::Shape{256});
    const auto entry = prepare_matrix(lower_triangle(64), 16);
    const auto configs = spade_configs(64);
    EXPECT_EQ(score_configs(m, entry, configs).size(), configs.size());
    if (!mask.le) {
      const auto z = latent_encode(m, {Platform::spade, {1, 1}});
      for (double v : z) EXPECT_EQ(v, 0.0);
    }
  }
}

TEST(CostModel, FeatureAugmentedModelScores) {
  const auto m = small_model(Platform::spade, 4, ConfigEncoding::feature_augmented);
  EXPECT_EQ(m.fm.input_shape, nn::Shape{91});
  EXPECT_FALSE(m.components.le);
  const auto entry = prepare_matrix(lower_triangle(64), 16);
  const auto scores = score_configs(m, entry, spade_configs(64));
  EXPECT_EQ(scores.size(), 256u);
}

TEST(CostModel, ScoringPassGradientsMatchFiniteDifferences) {
  for (auto enc : {ConfigEncoding::mapped, ConfigEncoding::feature_augmented}) {
    auto m = small_model(Platform::spade, 11, enc);
    // Zero biases on empty grid regions sit exactly on ReLU kinks, where central differences are meaningless.
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-0.05, 0.05);
    for (auto* net : {&m.ife, &m.fm, &m.le, &m.predictor})
      for (auto* p : net->parameters())
        for (auto& v : p->data) v += u(rng);
    const auto entry = prepare_matrix(lower_triangle(64), 16);
    const auto all = spade_configs(64);
    const std::vector<ProgramConfig> configs{all[3], all[50], all[101], all[190]};
    const std::vector<double> w{0.7, -1.2, 0.4, 1.1};
    const auto input = featurizer_input(entry.grid);
    const auto loss = [&] {
      const auto s = ScoringPass(m, input, configs).scores();
      double t = 0;
      for (std::size_t i = 0; i < s.size(); ++i) t += w[i] * s[i];
      return t;
    };
    const auto grads = ScoringPass(m, input, configs).backward(w);
    double worst = 0;
    const auto probe = [&](nn::Network& net, const std::vector<nn::Tensor>& g) {
      auto params = net.parameters();
      ASSERT_EQ(params.size(), g.size());
      for (std::size_t t = 0; t < params.size(); ++t)
        for (std::size_t i = 0; i < params[t]->size(); i += std::max<std::size_t>(1, params[t]->size() / 3)) {
          double& slot = params[t]->data[i];
          const double saved = slot, h = 1e-5;
          slot = saved + h;
          const double up = loss();
          slot = saved - h;
          const double down = loss();
          slot = saved;
          worst = std::max(worst, gradcheck::rel_error(g[t].data[i], (up - down) / (2 * h)));
        }
    };
    probe(m.ife, grads.ife);
    EXPECT_LT(worst, 1e-4) << "featurizer";
    probe(m.fm, grads.fm);
    EXPECT_LT(worst, 1e-4) << "mapper";
    probe(m.predictor, grads.predictor);
    EXPECT_LT(worst, 1e-4) << "predictor";
    if (enc == ConfigEncoding::mapped) probe(m.le, grads.le);
    EXPECT_LT(worst, 1e-4) << "latent encoder";
  }
}

TEST(Ranking, OracleScorerTopOneIsBruteForceOptimum) {
  for (std::uint64_t s = 0; s < 6; ++s) {
    const auto csr = generate_synthetic_matrix(static_cast<MatrixKind>(s % 3), 3000 + 500 * s, 4000, 20000, s);
    const auto entry = prepare_matrix(csr, 16);
    const auto configs = spade_configs(csr.cols);
    const OracleScorer oracle{Platform::spade, Kernel::spmm, {}};
    const auto top = top_k(oracle, entry, configs, 1);
    const auto best = brute_force_optimum(default_platform_spec(Platform::spade), Kernel::spmm, entry.profile);
    EXPECT_EQ(top.front(), best.config);
  }
}

TEST(Ranking, PrefixAndPermutation) {
  const auto entry = prepare_matrix(lower_triangle(64), 16);
  const auto configs = spade_configs(64);
  const auto m = small_model();
  const ModelScorer scorer{&m};
  const auto all = rank_configs(scorer, entry, configs);
  ASSERT_EQ(all.size(), configs.size());
  for (const auto& c : configs) EXPECT_NE(std::find(all.begin(), all.end(), c), all.end());
  const auto five = top_k(scorer, entry, configs, 5);
  EXPECT_TRUE(std::equal(five.begin(), five.end(), all.begin()));
  const auto scores = score_configs(m, entry, all);
  EXPECT_TRUE(std::is_sorted(scores.begin(), scores.end()));
}

TEST(Ranking, TwoConfigsLowerScoreFirst) {
  const std::vector<ProgramConfig> two{SpadeConfig{4, 1024, 32, false, false, false},
                                       SpadeConfig{32, 1024, 32, false, false, false}};
  const auto fixed = [](const MatrixEntry&, std::span<const ProgramConfig>) { return std::vector<double>{0.2, 0.1}; };
  const auto entry = prepare_matrix(lower_triangle(8), 4);
  EXPECT_EQ(top_k(fixed, entry, two, 1).front(), two[1]);
  const auto tie = [](const MatrixEntry&, std::span<const ProgramConfig>) { return std::vector<double>{0.5, 0.5}; };
  EXPECT_EQ(rank_configs(tie, entry, two), two);
  EXPECT_THROW(rank_configs(fixed, entry, std::vector<ProgramConfig>{}), Error);
}

TEST(Checkpoint, RoundTrip) {
  for (auto enc : {ConfigEncoding::mapped, ConfigEncoding::feature_augmented}) {
    auto m = small_model(Platform::gpu, 8, enc);
    m.components.fm = false;
    const auto back = cost_model_from_json(nlohmann::json::parse(to_json(m).dump()));
    EXPECT_EQ(back.platform, Platform::gpu);
    EXPECT_EQ(back.components, m.components);
    EXPECT_EQ(back.grid_resolution, 16u);
    const auto entry = prepare_matrix(lower_triangle(64), 16);
    const auto configs = enumerate_configs(default_platform_spec(Platform::gpu), 64);
    EXPECT_EQ(score_configs(back, entry, configs), score_configs(m, entry, configs));
  }
}

TEST(Checkpoint, RejectsMismatchedEncoder) {
  auto j = to_json(small_model(Platform::spade));
  j["platform"] = "cpu";
  EXPECT_THROW(cost_model_from_json(j), ShapeError);
  j["format"] = "other";
  EXPECT_THROW(cost_model_from_json(j), Error);
  auto k = to_json(small_model(Platform::spade));
  k["extent_planes"] = false;
  EXPECT_THROW(cost_model_from_json(k), ShapeError);
}
