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
#include <cmath>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "sparsetl/config_space.hpp"
#include "sparsetl/matrix_io.hpp"
#include "sparsetl/nn/network.hpp"
#include "sparsetl/nn/serialize.hpp"
#include "sparsetl/oracle.hpp"

namespace sparsetl {

inline constexpr std::size_t kMatrixEmbedding = 128;  // s_M
inline constexpr std::size_t kConfigEmbedding = 64;   // p_j
inline constexpr std::size_t kLatentWidth = 64;       // z_j
inline constexpr std::size_t kPredictorInput = kMatrixEmbedding + kConfigEmbedding + kLatentWidth;
// Two pattern planes (log density, density relative to the peak cell) plus,
// optionally, two constant planes holding log2 of the matrix extents.
inline constexpr std::size_t kPatternPlanes = 2;
inline constexpr std::size_t featurizer_channels(bool extent_planes) { return extent_planes ? 4 : 2; }
inline constexpr std::size_t kDefaultGridResolution = 64;

enum class FeaturizerPreset { desk, paper };

/// `mapped`: φ/π canonical nest into the mapper, heterogeneous part through the
/// latent encoder. `feature_augmented`: concatenated raw per-platform vectors,
/// no mapping and no latent encoder.
enum class ConfigEncoding { mapped, feature_augmented };

/// Components whose output is replaced by zeros when disabled (ablations).
struct ComponentMask {
  bool ife = true, fm = true, le = true;
  friend bool operator==(const ComponentMask&, const ComponentMask&) = default;
};

inline std::string to_string(FeaturizerPreset p) { return p == FeaturizerPreset::desk ? "desk" : "paper"; }

inline FeaturizerPreset parse_preset(const std::string& s) {
  if (s == "desk") return FeaturizerPreset::desk;
  if (s == "paper") return FeaturizerPreset::paper;
  throw Error("unknown featurizer preset '" + s + "'");
}

inline std::string to_string(ConfigEncoding e) {
  return e == ConfigEncoding::mapped ? "mapped" : "feature_augmented";
}

using LatentCode = std::array<double, kLatentWidth>;

/// Input featurizer (IFE), configuration mapper (FM), latent encoder (LE)
/// and predictor (P). Scores are unnormalised costs: lower ranks first.
struct CostModel {
  Platform platform = Platform::cpu;
  FeaturizerPreset preset = FeaturizerPreset::desk;
  std::size_t grid_resolution = kDefaultGridResolution;
  ConfigEncoding encoding = ConfigEncoding::mapped;
  ComponentMask components;
  TilingOrientation orientation = TilingOrientation::worked_example;
  bool extent_planes = true;
  std::string oracle_version;
  nn::Network ife, fm, le, predictor;
};

/// Encoder and decoder halves of a per-platform autoencoder.
struct Autoencoder {
  Platform platform = Platform::cpu;
  nn::Network encoder, decoder;
};

inline nn::Network make_featurizer(FeaturizerPreset preset, std::size_t resolution, std::size_t channels,
                                   std::mt19937_64& rng) {
  using namespace nn;
  Network net;
  net.input_shape = {channels, resolution, resolution};
  const auto conv = [&](std::size_t in, std::size_t out, std::size_t k) {
    net.layers.emplace_back(make_conv(in, out, k, rng));
    net.layers.emplace_back(Activation{ActivationKind::relu});
  };
  const auto pool = [&] { net.layers.emplace_back(MaxPool2d{2}); };
  std::size_t last = 0;
  if (preset == FeaturizerPreset::desk) {
    std::size_t in = channels;
    for (std::size_t ch : {8, 16, 32, 64}) {
      conv(in, ch, 3);
      conv(ch, ch, 3);
      pool();
      in = ch;
    }
    last = in;
  } else {
    conv(channels, 32, 5);
    conv(32, 32, 3);
    conv(32, 64, 3);
    pool();
    conv(64, 64, 3);
    conv(64, 64, 3);
    conv(64, 128, 3);
    pool();
    conv(128, 128, 3);
    conv(128, 128, 3);
    conv(128, 256, 3);
    pool();
    conv(256, 256, 3);
    conv(256, 256, 3);
    conv(256, 256, 3);
    last = 256;
  }
  net.layers.emplace_back(GlobalAvgPool{});
  net.layers.emplace_back(make_dense(last, kMatrixEmbedding, rng));
  validate_network(net);
  return net;
}

inline nn::Network make_config_mapper(std::size_t input_width, std::mt19937_64& rng) {
  nn::Network net;
  net.input_shape = {input_width};
  net.layers.emplace_back(nn::make_dense(input_width, kConfigEmbedding, rng));
  net.layers.emplace_back(nn::Activation{nn::ActivationKind::relu});
  net.layers.emplace_back(nn::make_dense(kConfigEmbedding, kConfigEmbedding, rng));
  return net;
}

inline nn::Network make_predictor(std::mt19937_64& rng) {
  nn::Network net;
  net.input_shape = {kPredictorInput};
  net.layers.emplace_back(nn::make_dense(kPredictorInput, 128, rng));
  net.layers.emplace_back(nn::Activation{nn::ActivationKind::relu});
  net.layers.emplace_back(nn::make_dense(128, 64, rng));
  net.layers.emplace_back(nn::Activation{nn::ActivationKind::relu});
  net.layers.emplace_back(nn::make_dense(64, 1, rng));
  return net;
}

/// in -> 32 -> 64 (latent, tanh) -> 32 -> in
inline Autoencoder make_autoencoder(Platform platform, std::mt19937_64& rng) {
  const std::size_t in = heterogeneous_width(platform);
  Autoencoder ae{platform, {}, {}};
  ae.encoder.input_shape = {in};
  ae.encoder.layers.emplace_back(nn::make_dense(in, 32, rng));
  ae.encoder.layers.emplace_back(nn::Activation{nn::ActivationKind::relu});
  ae.encoder.layers.emplace_back(nn::make_dense(32, kLatentWidth, rng));
  ae.encoder.layers.emplace_back(nn::Activation{nn::ActivationKind::tanh});
  ae.decoder.input_shape = {kLatentWidth};
  ae.decoder.layers.emplace_back(nn::make_dense(kLatentWidth, 32, rng));
  ae.decoder.layers.emplace_back(nn::Activation{nn::ActivationKind::relu});
  ae.decoder.layers.emplace_back(nn::make_dense(32, in, rng));
  return ae;
}

struct CostModelOptions {
  Platform platform = Platform::cpu;
  FeaturizerPreset preset = FeaturizerPreset::desk;
  std::size_t grid_resolution = kDefaultGridResolution;
  ConfigEncoding encoding = ConfigEncoding::mapped;
  ComponentMask components;
  TilingOrientation orientation = TilingOrientation::worked_example;
  bool extent_planes = true;
  std::string oracle_version = SurrogateConstants{}.version;
  std::uint64_t seed = 0;
};

/// Freshly initialised model. The latent encoder is random until replaced by
/// a trained autoencoder's encoder (see `install_encoder`).
inline CostModel make_cost_model(const CostModelOptions& o) {
  std::mt19937_64 rng(o.seed);
  CostModel m;
  m.platform = o.platform;
  m.preset = o.preset;
  m.grid_resolution = o.grid_resolution;
  m.encoding = o.encoding;
  m.components = o.components;
  m.orientation = o.orientation;
  m.extent_planes = o.extent_planes;
  m.oracle_version = o.oracle_version;
  m.ife = make_featurizer(o.preset, o.grid_resolution, featurizer_channels(o.extent_planes), rng);
  m.fm = make_config_mapper(
      o.encoding == ConfigEncoding::mapped ? kConfigEmbeddingInput : feature_augmented_width(), rng);
  m.predictor = make_predictor(rng);
  if (o.encoding == ConfigEncoding::mapped) {
    m.le = make_autoencoder(o.platform, rng).encoder;
  } else {
    m.components.le = false;
  }
  return m;
}

/// Swaps in a trained encoder and retags the model for its platform.
inline void install_encoder(CostModel& model, const Autoencoder& ae) {
  model.platform = ae.platform;
  if (model.encoding == ConfigEncoding::mapped) model.le = ae.encoder;
}

/// A matrix prepared for the cost model and the oracles.
struct MatrixEntry {
  MatrixProfile profile;
  DensityGrid grid;
};

inline MatrixEntry prepare_matrix(const SparseMatrixCSR& m, std::size_t resolution = kDefaultGridResolution) {
  return {make_profile(m), to_density_grid(m, resolution)};
}

/// Two-channel featurizer input: log-scaled absolute density (occupied cells
/// only) and density relative to the densest cell.
inline nn::Tensor featurizer_input(const DensityGrid& grid, bool extent_planes = true) {
  const std::size_t R = grid.resolution, n = R * R;
  nn::Tensor t({featurizer_channels(extent_planes), R, R});
  const double peak = *std::max_element(grid.cells.begin(), grid.cells.end());
  // A grid cell only knows a fraction, so the matrix extent rides along as two
  // constant planes; without it a 1k and a 100k matrix of equal density look alike.
  const double log_rows = std::log2(std::max(1.0, grid.block_rows * double(R))) / 24.0;
  const double log_cols = std::log2(std::max(1.0, grid.block_cols * double(R))) / 24.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = grid.cells[i];
    t.data[i] = c > 0.0 ? std::clamp(1.0 + std::log10(c) / 8.0, 0.0, 1.0) : 0.0;
    t.data[n + i] = peak > 0.0 ? c / peak : 0.0;
    if (!extent_planes) continue;
    t.data[2 * n + i] = log_rows;
    t.data[3 * n + i] = log_cols;
  }
  return t;
}

inline void check_resolution(const CostModel& model, const DensityGrid& grid) {
  if (grid.resolution != model.grid_resolution)
    throw ShapeError("density grid resolution " + std::to_string(grid.resolution) + " does not match the model's " +
                     std::to_string(model.grid_resolution));
}

/// s_M, the 128-wide matrix embedding (zeros when the featurizer is dropped).
inline std::vector<double> featurize_matrix(const CostModel& model, const DensityGrid& grid) {
  check_resolution(model, grid);
  if (!model.components.ife) return std::vector<double>(kMatrixEmbedding, 0.0);
  return nn::infer(model.ife, featurizer_input(grid, model.extent_planes)).values();
}

inline std::vector<double> config_mapper_input(const CostModel& model, const ProgramConfig& c,
                                               const SplitConfig& split) {
  if (model.encoding == ConfigEncoding::feature_augmented) return feature_augmented_vector(c);
  const auto v = config_embedding_input(split.homogeneous);
  return {v.begin(), v.end()};
}

/// p_j, the 64-wide configuration embedding of a canonical nest.
inline std::vector<double> embed_config(const CostModel& model, const CanonicalLoopNest& nest) {
  if (model.encoding != ConfigEncoding::mapped) throw Error("embed_config needs a mapped-encoding model");
  if (!model.components.fm) return std::vector<double>(kConfigEmbedding, 0.0);
  const auto v = config_embedding_input(nest);
  return nn::infer(model.fm, nn::Tensor({kConfigEmbeddingInput}, nn::Buffer(v.begin(), v.end()))).values();
}

/// z_j for a heterogeneous vector of the model's platform.
inline LatentCode latent_encode(const CostModel& model, const HeterogeneousParams& h) {
  if (h.platform != model.platform)
    throw PlatformMismatch("heterogeneous parameters for " + std::string(to_string(h.platform)) +
                           " given to a " + std::string(to_string(model.platform)) + " model");
  LatentCode z{};
  if (!model.components.le) return z;
  const auto out = nn::infer(model.le, nn::Tensor({h.values.size()}, h.values));
  std::copy(out.data.begin(), out.data.end(), z.begin());
  return z;
}

/// Gradients of all four components, aligned with their parameter lists.
struct ModelGradients {
  std::vector<nn::Tensor> ife, fm, le, predictor;
};

inline ModelGradients zero_gradients(const CostModel& m) {
  return {nn::zero_gradients(m.ife), nn::zero_gradients(m.fm), nn::zero_gradients(m.le),
          nn::zero_gradients(m.predictor)};
}

/// One batched forward pass over a matrix and a list of its configurations,
/// keeping the tapes for `backward`.
class ScoringPass {
 public:
  ScoringPass(const CostModel& model, const nn::Tensor& features, std::span<const ProgramConfig> configs)
      : model_(&model), batch_(configs.size()) {
    if (configs.empty()) throw Error("scoring needs at least one configuration");
    const std::size_t B = batch_;
    std::vector<double> matrix_embedding(kMatrixEmbedding, 0.0);
    if (model.components.ife) {
      auto [s, tape] = nn::forward(model.ife, features);
      matrix_embedding = s.values();
      ife_tape_ = std::move(tape);
    }

    const std::size_t fm_in = model.fm.input_shape.at(0);
    const std::size_t le_in = heterogeneous_width(model.platform);
    nn::Tensor fm_x({B, fm_in}), le_x({B, le_in});
    for (std::size_t b = 0; b < B; ++b) {
      if (configs[b].platform() != model.platform)
        throw PlatformMismatch("a " + std::string(to_string(configs[b].platform())) +
                               " configuration was given to a " + std::string(to_string(model.platform)) + " model");
      const auto split = split_config(configs[b], model.orientation);
      const auto v = config_mapper_input(model, configs[b], split);
      if (v.size() != fm_in) throw ShapeError("configuration mapper input width mismatch");
      std::copy(v.begin(), v.end(), fm_x.data.begin() + static_cast<std::ptrdiff_t>(b * fm_in));
      std::copy(split.heterogeneous.values.begin(), split.heterogeneous.values.end(),
                le_x.data.begin() + static_cast<std::ptrdiff_t>(b * le_in));
    }

    nn::Tensor concat({B, kPredictorInput});
    for (std::size_t b = 0; b < B; ++b)
      std::copy(matrix_embedding.begin(), matrix_embedding.end(),
                concat.data.begin() + static_cast<std::ptrdiff_t>(b * kPredictorInput));
    if (model.components.fm) {
      auto [p, tape] = nn::forward(model.fm, std::move(fm_x));
      for (std::size_t b = 0; b < B; ++b)
        std::copy_n(p.data.begin() + static_cast<std::ptrdiff_t>(b * kConfigEmbedding), kConfigEmbedding,
                    concat.data.begin() + static_cast<std::ptrdiff_t>(b * kPredictorInput + kMatrixEmbedding));
      fm_tape_ = std::move(tape);
    }
    if (model.components.le) {
      if (model.le.input_shape != nn::Shape{le_in})
        throw PlatformMismatch("latent encoder input width does not match the model's platform");
      auto [z, tape] = nn::forward(model.le, std::move(le_x));
      for (std::size_t b = 0; b < B; ++b)
        std::copy_n(z.data.begin() + static_cast<std::ptrdiff_t>(b * kLatentWidth), kLatentWidth,
                    concat.data.begin() +
                        static_cast<std::ptrdiff_t>(b * kPredictorInput + kMatrixEmbedding + kConfigEmbedding));
      le_tape_ = std::move(tape);
    }
    auto [r, tape] = nn::forward(model.predictor, std::move(concat));
    scores_ = r.values();
    predictor_tape_ = std::move(tape);
  }

  const std::vector<double>& scores() const noexcept { return scores_; }

  /// Gradients of sum(scores * d_scores) for every component.
  ModelGradients backward(std::span<const double> d_scores) const {
    if (d_scores.size() != batch_) throw ShapeError("score gradient length mismatch");
    const CostModel& m = *model_;
    const std::size_t B = batch_;
    ModelGradients g = zero_gradients(m);
    auto pg = nn::backward(m.predictor, predictor_tape_, nn::Tensor({B, 1}, nn::Buffer(d_scores.begin(), d_scores.end())));
    g.predictor = std::move(pg.params);
    const auto& dcat = pg.input.data;
    if (m.components.ife) {
      nn::Tensor ds({kMatrixEmbedding});
      for (std::size_t b = 0; b < B; ++b)
        for (std::size_t i = 0; i < kMatrixEmbedding; ++i) ds.data[i] += dcat[b * kPredictorInput + i];
      g.ife = nn::backward(m.ife, ife_tape_, ds).params;
    }
    if (m.components.fm) {
      nn::Tensor dp({B, kConfigEmbedding});
      for (std::size_t b = 0; b < B; ++b)
        std::copy_n(dcat.begin() + static_cast<std::ptrdiff_t>(b * kPredictorInput + kMatrixEmbedding),
                    kConfigEmbedding, dp.data.begin() + static_cast<std::ptrdiff_t>(b * kConfigEmbedding));
      g.fm = nn::backward(m.fm, fm_tape_, dp).params;
    }
    if (m.components.le) {
      nn::Tensor dz({B, kLatentWidth});
      for (std::size_t b = 0; b < B; ++b)
        std::copy_n(
            dcat.begin() + static_cast<std::ptrdiff_t>(b * kPredictorInput + kMatrixEmbedding + kConfigEmbedding),
            kLatentWidth, dz.data.begin() + static_cast<std::ptrdiff_t>(b * kLatentWidth));
      g.le = nn::backward(m.le, le_tape_, dz).params;
    }
    return g;
  }

 private:
  const CostModel* model_;
  std::size_t batch_;
  std::vector<double> scores_;
  nn::Tape ife_tape_, fm_tape_, le_tape_, predictor_tape_;
};

/// Predicted costs of `configs` on a prepared matrix.
inline std::vector<double> score_configs(const CostModel& model, const MatrixEntry& m,
                                         std::span<const ProgramConfig> configs) {
  check_resolution(model, m.grid);
  return ScoringPass(model, featurizer_input(m.grid, model.extent_planes), configs).scores();
}

/// r̂ for one matrix and configuration.
inline double predict_cost(const CostModel& model, const SparseMatrixCSR& m, const ProgramConfig& c) {
  if (c.platform() != model.platform)
    throw PlatformMismatch("configuration platform differs from the model's platform");
  const auto entry = prepare_matrix(m, model.grid_resolution);
  return score_configs(model, entry, std::span<const ProgramConfig>(&c, 1)).front();
}

/// Indices of `scores` sorted ascending; ties keep list order.
inline std::vector<std::size_t> ranking_order(std::span<const double> scores) {
  std::vector<std::size_t> idx(scores.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  return idx;
}

/// Configurations sorted by ascending predicted cost (stable).
template <typename Scorer>
std::vector<ProgramConfig> rank_configs(const Scorer& scorer, const MatrixEntry& m,
                                        std::span<const ProgramConfig> configs) {
  if (configs.empty()) throw Error("rank_configs needs a non-empty configuration list");
  const auto platform = configs.front().platform();
  for (const auto& c : configs)
    if (c.platform() != platform) throw PlatformMismatch("rank_configs needs configurations of one platform");
  const auto scores = scorer(m, configs);
  std::vector<ProgramConfig> out;
  out.reserve(configs.size());
  for (auto i : ranking_order(scores)) out.push_back(configs[i]);
  return out;
}

template <typename Scorer>
std::vector<ProgramConfig> top_k(const Scorer& scorer, const MatrixEntry& m, std::span<const ProgramConfig> configs,
                                 std::size_t k) {
  auto ranked = rank_configs(scorer, m, configs);
  ranked.resize(std::min(k, ranked.size()));
  return ranked;
}

/// Adapts a CostModel to the scorer interface used by ranking and evaluation.
struct ModelScorer {
  const CostModel* model;
  std::vector<double> operator()(const MatrixEntry& m, std::span<const ProgramConfig> configs) const {
    return score_configs(*model, m, configs);
  }
};

/// Scores configurations with the surrogate runtime itself (a perfect model).
struct OracleScorer {
  Platform platform;
  Kernel kernel = Kernel::spmm;
  SurrogateConstants constants;
  std::vector<double> operator()(const MatrixEntry& m, std::span<const ProgramConfig> configs) const {
    std::vector<double> out;
    out.reserve(configs.size());
    for (const auto& c : configs) out.push_back(surrogate_runtime(platform, kernel, m.profile, c, constants));
    return out;
  }
};

// ---------------------------------------------------------------- checkpoints

inline constexpr int kCheckpointVersion = 1;

inline nlohmann::json to_json(const CostModel& m) {
  return {{"format", "sparsetl-costmodel"},
          {"version", kCheckpointVersion},
          {"platform", to_string(m.platform)},
          {"preset", to_string(m.preset)},
          {"grid_resolution", m.grid_resolution},
          {"encoding", to_string(m.encoding)},
          {"components", {{"ife", m.components.ife}, {"fm", m.components.fm}, {"le", m.components.le}}},
          {"orientation", m.orientation == TilingOrientation::worked_example ? "worked_example" : "loop_text"},
          {"extent_planes", m.extent_planes},
          {"oracle_version", m.oracle_version},
          {"ife", nn::network_to_json(m.ife)},
          {"fm", nn::network_to_json(m.fm)},
          {"le", m.encoding == ConfigEncoding::mapped ? nn::network_to_json(m.le) : nlohmann::json()},
          {"predictor", nn::network_to_json(m.predictor)}};
}

inline CostModel cost_model_from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "sparsetl-costmodel") throw Error("not a cost-model checkpoint");
  if (j.value("version", 0) != kCheckpointVersion) throw Error("unsupported checkpoint version");
  CostModel m;
  m.platform = parse_platform(j.at("platform").get<std::string>());
  m.preset = parse_preset(j.at("preset").get<std::string>());
  m.grid_resolution = j.at("grid_resolution").get<std::size_t>();
  const auto enc = j.at("encoding").get<std::string>();
  if (enc != "mapped" && enc != "feature_augmented") throw Error("unknown config encoding '" + enc + "'");
  m.encoding = enc == "mapped" ? ConfigEncoding::mapped : ConfigEncoding::feature_augmented;
  const auto& c = j.at("components");
  m.components = {c.at("ife").get<bool>(), c.at("fm").get<bool>(), c.at("le").get<bool>()};
  m.orientation = j.at("orientation").get<std::string>() == "loop_text" ? TilingOrientation::loop_text
                                                                         : TilingOrientation::worked_example;
  m.extent_planes = j.at("extent_planes").get<bool>();
  m.oracle_version = j.at("oracle_version").get<std::string>();
  m.ife = nn::network_from_json(j.at("ife"));
  m.fm = nn::network_from_json(j.at("fm"));
  if (m.encoding == ConfigEncoding::mapped) m.le = nn::network_from_json(j.at("le"));
  m.predictor = nn::network_from_json(j.at("predictor"));
  if (nn::validate_network(m.ife) != nn::Shape{kMatrixEmbedding} ||
      nn::validate_network(m.fm) != nn::Shape{kConfigEmbedding} ||
      nn::validate_network(m.predictor) != nn::Shape{1} || m.predictor.input_shape != nn::Shape{kPredictorInput})
    throw ShapeError("checkpoint component widths do not match the cost-model layout");
  if (m.encoding == ConfigEncoding::mapped &&
      (m.le.input_shape != nn::Shape{heterogeneous_width(m.platform)} ||
       nn::validate_network(m.le) != nn::Shape{kLatentWidth}))
    throw ShapeError("checkpoint latent encoder does not match its platform");
  if (m.ife.input_shape != nn::Shape{featurizer_channels(m.extent_planes), m.grid_resolution, m.grid_resolution})
    throw ShapeError("checkpoint featurizer input does not match its grid settings");
  return m;
}

inline nlohmann::json to_json(const Autoencoder& ae) {
  return {{"format", "sparsetl-autoencoder"},
          {"version", kCheckpointVersion},
          {"platform", to_string(ae.platform)},
          {"encoder", nn::network_to_json(ae.encoder)},
          {"decoder", nn::network_to_json(ae.decoder)}};
}

inline Autoencoder autoencoder_from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "sparsetl-autoencoder") throw Error("not an autoencoder checkpoint");
  Autoencoder ae;
  ae.platform = parse_platform(j.at("platform").get<std::string>());
  ae.encoder = nn::network_from_json(j.at("encoder"));
  ae.decoder = nn::network_from_json(j.at("decoder"));
  if (ae.encoder.input_shape != nn::Shape{heterogeneous_width(ae.platform)})
    throw ShapeError("autoencoder width does not match its platform");
  return ae;
}

}  // namespace sparsetl
