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
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "sparsetl/costmodel.hpp"
#include "sparsetl/metrics.hpp"
#include "sparsetl/nn/loss.hpp"
#include "sparsetl/nn/optim.hpp"

namespace sparsetl {

// ------------------------------------------------------------------- datasets

/// Configurations and measured runtimes of one matrix.
struct MatrixSamples {
  std::string matrix_id;
  std::vector<ProgramConfig> configs;
  std::vector<double> runtimes;
};

struct Sample {
  std::string matrix_id;
  Platform platform = Platform::cpu;
  Kernel kernel = Kernel::spmm;
  ProgramConfig config;
  double runtime = 0.0;
  std::string oracle_version;
};

struct Dataset {
  Platform platform = Platform::cpu;
  Kernel kernel = Kernel::spmm;
  double beta = 1.0;
  std::string oracle_version;
  std::uint64_t seed = 0;
  std::vector<MatrixSamples> matrices;

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& m : matrices) n += m.configs.size();
    return n;
  }

  std::vector<Sample> samples() const {
    std::vector<Sample> out;
    for (const auto& m : matrices)
      for (std::size_t i = 0; i < m.configs.size(); ++i)
        out.push_back({m.matrix_id, platform, kernel, m.configs[i], m.runtimes[i], oracle_version});
    return out;
  }

  void validate() const {
    for (const auto& m : matrices) {
      if (m.configs.size() != m.runtimes.size()) throw Error("dataset matrix '" + m.matrix_id + "' is ragged");
      for (std::size_t i = 0; i < m.configs.size(); ++i) {
        if (!(m.runtimes[i] > 0.0)) throw Error("dataset runtime must be positive (matrix '" + m.matrix_id + "')");
        if (m.configs[i].platform() != platform)
          throw PlatformMismatch("dataset for " + std::string(to_string(platform)) + " holds a " +
                                 std::string(to_string(m.configs[i].platform())) + " configuration");
        for (std::size_t j = 0; j < i; ++j)
          if (m.configs[j] == m.configs[i])
            throw Error("duplicate configuration in dataset matrix '" + m.matrix_id + "'");
      }
    }
  }
};

/// Seeded uniform sample of `configs_per_matrix` configurations per matrix,
/// without replacement, labelled by the surrogate oracle. Each matrix draws
/// from its own stream so the result does not depend on list order.
inline Dataset build_dataset(const PlatformSpec& spec, Kernel kernel, std::span<const MatrixEntry> matrices,
                             std::size_t configs_per_matrix, std::uint64_t seed,
                             const SurrogateConstants& constants = {}) {
  if (configs_per_matrix == 0) throw Error("configs_per_matrix must be positive");
  Dataset ds{spec.id, kernel, spec.beta, constants.version, seed, {}};
  for (const auto& entry : matrices) {
    const auto all = enumerate_configs(spec, entry.profile.cols);
    if (configs_per_matrix > all.size())
      throw Error("cannot sample " + std::to_string(configs_per_matrix) + " configurations from a space of " +
                  std::to_string(all.size()) + " (matrix '" + entry.profile.name + "')");
    std::vector<std::size_t> idx(all.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::mt19937_64 rng(detail::mix64(seed ^ detail::hash_text(entry.profile.name)));
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(configs_per_matrix);
    std::sort(idx.begin(), idx.end());
    MatrixSamples ms{entry.profile.name, {}, {}};
    for (auto i : idx) {
      ms.configs.push_back(all[i]);
      ms.runtimes.push_back(surrogate_runtime(spec.id, kernel, entry.profile, all[i], constants));
    }
    ds.matrices.push_back(std::move(ms));
  }
  return ds;
}

/// Round-robin draw over the row-count bins; each bin is shuffled with the
/// seed first and bins that run dry are skipped. Returns indices into `rows`.
inline std::vector<std::size_t> select_pretraining_matrices(std::span<const std::size_t> rows, std::size_t n,
                                                            std::uint64_t seed) {
  if (n > rows.size())
    throw Error("cannot select " + std::to_string(n) + " matrices from a pool of " + std::to_string(rows.size()));
  auto bins = bin_matrices_by_rows(rows, [](std::size_t r) { return r; });
  std::mt19937_64 rng(seed);
  for (auto& b : bins) std::shuffle(b.begin(), b.end(), rng);
  std::vector<std::size_t> out;
  std::array<std::size_t, kRowBinCount> next{};
  while (out.size() < n)
    for (std::size_t b = 0; b < kRowBinCount && out.size() < n; ++b)
      if (next[b] < bins[b].size()) out.push_back(bins[b][next[b]++]);
  return out;
}

inline std::vector<std::size_t> select_pretraining_matrices(std::span<const MatrixEntry> pool, std::size_t n,
                                                            std::uint64_t seed) {
  std::vector<std::size_t> rows;
  for (const auto& m : pool) rows.push_back(m.profile.rows);
  return select_pretraining_matrices(rows, n, seed);
}

// ------------------------------------------------------- dataset file format

inline constexpr int kDatasetSchemaVersion = 1;

inline std::string order_string(const LoopOrder6& order) {
  std::string s;
  for (auto slot : order) {
    if (!s.empty()) s += ',';
    s += to_string(slot);
  }
  return s;
}

inline LoopOrder6 parse_order(const std::string& s) {
  LoopOrder6 order{};
  std::size_t n = 0, start = 0;
  while (start <= s.size()) {
    const auto end = std::min(s.find(',', start), s.size());
    if (n == order.size()) throw Error("loop order '" + s + "' has more than 6 slots");
    order[n++] = parse_loop_slot(s.substr(start, end - start));
    start = end + 1;
  }
  if (n != order.size()) throw Error("loop order '" + s + "' has fewer than 6 slots");
  return order;
}

/// Flat named-field record of a configuration.
inline nlohmann::json config_to_json(const ProgramConfig& c) {
  switch (c.platform()) {
    case Platform::spade: {
      const auto& s = c.spade();
      return {{"p_row", s.p_row}, {"p_col", s.p_col}, {"s_split", s.s_split},
              {"barrier", s.barrier}, {"bypass", s.bypass}, {"reorder", s.reorder}};
    }
    case Platform::cpu: {
      const auto& p = c.cpu();
      return {{"i_split", p.i_split}, {"j_split", p.j_split}, {"k_split", p.k_split},
              {"order", order_string(p.order)}, {"format_reorder", p.format_reorder}};
    }
    case Platform::gpu: {
      const auto& p = c.gpu();
      return {{"i_split", p.i_split}, {"j_split", p.j_split}, {"k_split", p.k_split},
              {"order", order_string(p.order)}, {"binding", p.binding}, {"unroll", p.unroll}};
    }
  }
  throw Error("unreachable");
}

inline ProgramConfig config_from_json(const nlohmann::json& j, Platform platform) {
  ProgramConfig c;
  switch (platform) {
    case Platform::spade:
      c = SpadeConfig{j.at("p_row").get<std::int64_t>(), j.at("p_col").get<std::int64_t>(),
                      j.at("s_split").get<std::int64_t>(), j.at("barrier").get<bool>(),
                      j.at("bypass").get<bool>(), j.at("reorder").get<bool>()};
      break;
    case Platform::cpu:
      c = CpuConfig{j.at("i_split").get<std::int64_t>(), j.at("j_split").get<std::int64_t>(),
                    j.at("k_split").get<std::int64_t>(), parse_order(j.at("order").get<std::string>()),
                    j.at("format_reorder").get<bool>()};
      break;
    case Platform::gpu:
      c = GpuConfig{j.at("i_split").get<std::int64_t>(), j.at("j_split").get<std::int64_t>(),
                    j.at("k_split").get<std::int64_t>(), parse_order(j.at("order").get<std::string>()),
                    j.at("binding").get<int>(), j.at("unroll").get<int>()};
      break;
  }
  validate_config(c);
  return c;
}

/// One JSON record per line. `extra` fields (seed, config hash) are copied
/// into every row.
inline void write_dataset_jsonl(std::ostream& out, const Dataset& ds,
                                const nlohmann::json& extra = nlohmann::json::object()) {
  if (!extra.is_object()) throw Error("extra dataset fields must be a JSON object");
  for (const auto& m : ds.matrices)
    for (std::size_t i = 0; i < m.configs.size(); ++i) {
      nlohmann::json row = {{"schema_version", kDatasetSchemaVersion},
                            {"matrix_id", m.matrix_id},
                            {"platform", to_string(ds.platform)},
                            {"kernel", to_string(ds.kernel)},
                            {"beta", ds.beta},
                            {"seed", ds.seed}};
      const auto fields = config_to_json(m.configs[i]);
      for (const auto& [k, v] : fields.items()) row[k] = v;
      row["runtime"] = m.runtimes[i];
      row["oracle_version"] = ds.oracle_version;
      for (const auto& [k, v] : extra.items()) row[k] = v;
      out << row.dump() << '\n';
    }
}

inline Dataset read_dataset_jsonl(std::istream& in) {
  Dataset ds;
  std::map<std::string, std::size_t> index;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto row = nlohmann::json::parse(line);
      if (row.value("schema_version", 0) != kDatasetSchemaVersion)
        throw ParseError(line_no, "unsupported dataset schema version");
      const auto platform = parse_platform(row.at("platform").get<std::string>());
      const auto kernel = parse_kernel(row.at("kernel").get<std::string>());
      const auto version = row.at("oracle_version").get<std::string>();
      if (first) {
        ds.platform = platform;
        ds.kernel = kernel;
        ds.oracle_version = version;
        ds.beta = row.at("beta").get<double>();
        ds.seed = row.value("seed", std::uint64_t{0});
        first = false;
      } else if (platform != ds.platform || kernel != ds.kernel || version != ds.oracle_version) {
        throw ParseError(line_no, "dataset rows disagree on platform, kernel or oracle version");
      }
      const auto id = row.at("matrix_id").get<std::string>();
      auto [it, inserted] = index.emplace(id, ds.matrices.size());
      if (inserted) ds.matrices.push_back({id, {}, {}});
      auto& m = ds.matrices[it->second];
      m.configs.push_back(config_from_json(row, platform));
      m.runtimes.push_back(row.at("runtime").get<double>());
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (first) throw ParseError(line_no, "dataset file is empty");
  ds.validate();
  return ds;
}

// ---------------------------------------------------------------- hyperparams

struct Hyperparams {
  double lr = 1e-4;
  std::size_t epochs = 100;
  std::size_t pairs_per_matrix = 512;
  std::size_t matrices_per_step = 1;
  double margin = 1.0;
  double validation_fraction = 0.1;
  bool freeze_ife = false;
  double ae_lr = 1e-3;
  std::size_t ae_epochs = 1000;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(lr > 0.0) || !(ae_lr > 0.0) || !(margin > 0.0)) throw Error("learning rates and margin must be positive");
    if (pairs_per_matrix == 0 || matrices_per_step == 0) throw Error("pair and step counts must be positive");
    if (validation_fraction < 0.0 || validation_fraction >= 1.0) throw Error("validation_fraction must be in [0, 1)");
  }
};

// --------------------------------------------------------------- autoencoder

struct AutoencoderResult {
  Autoencoder ae;
  double initial_mse = 0.0;
  double final_mse = 0.0;
};

/// Full-batch MSE training on every enumerated heterogeneous vector.
inline AutoencoderResult train_autoencoder(Platform platform, const Hyperparams& hp) {
  hp.validate();
  std::mt19937_64 rng(hp.seed);
  AutoencoderResult r{make_autoencoder(platform, rng), 0.0, 0.0};
  const auto points = enumerate_heterogeneous(platform);
  const std::size_t w = heterogeneous_width(platform);
  nn::Tensor x({points.size(), w});
  for (std::size_t i = 0; i < points.size(); ++i)
    std::copy(points[i].values.begin(), points[i].values.end(), x.data.begin() + static_cast<std::ptrdiff_t>(i * w));

  auto enc_opt = nn::make_adam(r.ae.encoder, {.lr = hp.ae_lr});
  auto dec_opt = nn::make_adam(r.ae.decoder, {.lr = hp.ae_lr});
  const auto loss_now = [&] {
    return nn::mse_loss(nn::infer(r.ae.decoder, nn::infer(r.ae.encoder, x)), x).loss;
  };
  r.initial_mse = loss_now();
  for (std::size_t epoch = 0; epoch < hp.ae_epochs; ++epoch) {
    auto [z, enc_tape] = nn::forward(r.ae.encoder, x);
    auto [y, dec_tape] = nn::forward(r.ae.decoder, z);
    const auto l = nn::mse_loss(y, x);
    if (!std::isfinite(l.loss)) throw DivergenceError("autoencoder loss became non-finite");
    const auto dg = nn::backward(r.ae.decoder, dec_tape, l.grad);
    const auto eg = nn::backward(r.ae.encoder, enc_tape, dg.input);
    nn::adam_step(dec_opt, r.ae.decoder, dg.params);
    nn::adam_step(enc_opt, r.ae.encoder, eg.params);
  }
  r.final_mse = loss_now();
  if (!std::isfinite(r.final_mse)) throw DivergenceError("autoencoder loss became non-finite");
  return r;
}

inline std::vector<double> reconstruct(const Autoencoder& ae, const HeterogeneousParams& h) {
  if (h.platform != ae.platform) throw PlatformMismatch("heterogeneous vector does not match the autoencoder");
  return nn::infer(ae.decoder, nn::infer(ae.encoder, nn::Tensor({h.values.size()}, h.values))).values();
}

// ---------------------------------------------------------- ranking training

struct EpochMetrics {
  std::size_t epoch = 0;
  double train_prl = 0.0;
  double val_prl = std::nan("");
  double val_opa = std::nan("");
  double val_ktau = std::nan("");
};

struct TrainingResult {
  CostModel model;
  std::vector<EpochMetrics> history;
  std::size_t best_epoch = 0;  // 0 = the initial weights were kept
  double initial_val_prl = std::nan("");
  std::vector<std::string> validation_matrices;
};

inline void write_metrics_csv(std::ostream& out, const std::vector<EpochMetrics>& history) {
  out << "epoch,train_prl,val_prl,opa,ktau\n";
  for (const auto& e : history)
    out << e.epoch << ',' << e.train_prl << ',' << e.val_prl << ',' << e.val_opa << ',' << e.val_ktau << '\n';
}

/// Mean hinge over all pairs with distinct runtimes.
inline double pairwise_ranking_loss(std::span<const double> scores, std::span<const double> runtimes,
                                    double margin = 1.0) {
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < scores.size(); ++i)
    for (std::size_t j = i + 1; j < scores.size(); ++j) {
      const int y = nn::sign_of(runtimes[i] - runtimes[j]);
      if (y == 0) continue;
      sum += nn::margin_ranking_loss(scores[i], scores[j], y, margin).loss;
      ++n;
    }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

namespace detail {

struct PreparedMatrix {
  const MatrixSamples* samples;
  nn::Tensor features;
};

inline std::vector<PreparedMatrix> prepare_training_set(const CostModel& model, const Dataset& ds,
                                                        std::span<const MatrixEntry> matrices) {
  std::unordered_map<std::string, const MatrixEntry*> by_name;
  for (const auto& m : matrices) by_name[m.profile.name] = &m;
  std::vector<PreparedMatrix> out;
  for (const auto& ms : ds.matrices) {
    const auto it = by_name.find(ms.matrix_id);
    if (it == by_name.end()) throw Error("no prepared matrix named '" + ms.matrix_id + "'");
    check_resolution(model, it->second->grid);
    if (ms.configs.size() < 2) throw Error("matrix '" + ms.matrix_id + "' needs at least two samples");
    out.push_back({&ms, featurizer_input(it->second->grid, model.extent_planes)});
  }
  return out;
}

inline void accumulate(std::vector<nn::Tensor>& into, const std::vector<nn::Tensor>& g) {
  for (std::size_t i = 0; i < into.size(); ++i)
    for (std::size_t j = 0; j < into[i].data.size(); ++j) into[i].data[j] += g[i].data[j];
}

struct ValidationScore {
  double prl = 0.0, opa = 0.0, ktau = 0.0;
};

inline ValidationScore validate(const CostModel& model, std::span<const PreparedMatrix> val, double margin) {
  ValidationScore v;
  std::size_t rank_terms = 0;
  for (const auto& pm : val) {
    const auto scores = ScoringPass(model, pm.features, pm.samples->configs).scores();
    v.prl += pairwise_ranking_loss(scores, pm.samples->runtimes, margin);
    try {
      v.opa += ordered_pair_accuracy(scores, pm.samples->runtimes);
      v.ktau += kendall_tau(scores, pm.samples->runtimes);
      ++rank_terms;
    } catch (const Error&) {
      // constant scores or runtimes: rank statistics are undefined for this matrix
    }
  }
  v.prl /= static_cast<double>(val.size());
  v.opa = rank_terms ? v.opa / static_cast<double>(rank_terms) : std::nan("");
  v.ktau = rank_terms ? v.ktau / static_cast<double>(rank_terms) : std::nan("");
  return v;
}

}  // namespace detail

/// Pairwise margin-ranking training shared by pre-training, fine-tuning and
/// the no-transfer baseline. Each optimiser step covers `matrices_per_step`
/// matrices with `pairs_per_matrix` seeded pairs each. When a validation split
/// exists, the weights with the lowest validation loss are returned.
inline TrainingResult train_ranking(CostModel model, const Dataset& ds, std::span<const MatrixEntry> matrices,
                                    const Hyperparams& hp) {
  hp.validate();
  if (ds.matrices.empty() || ds.size() == 0) throw Error("training dataset is empty");
  if (model.platform != ds.platform)
    throw PlatformMismatch("a " + std::string(to_string(model.platform)) + " model cannot train on " +
                           std::string(to_string(ds.platform)) + " data");
  ds.validate();

  TrainingResult result;
  auto prepared = detail::prepare_training_set(model, ds, matrices);
  std::mt19937_64 rng(hp.seed);
  std::vector<std::size_t> order(prepared.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  const auto n_val = static_cast<std::size_t>(std::floor(hp.validation_fraction * static_cast<double>(prepared.size())));
  std::vector<detail::PreparedMatrix> train, val;
  for (std::size_t i = 0; i < order.size(); ++i) (i < n_val ? val : train).push_back(prepared[order[i]]);
  if (train.empty()) throw Error("validation split leaves no training matrices");
  for (const auto& v : val) result.validation_matrices.push_back(v.samples->matrix_id);

  const nn::AdamConfig adam{.lr = hp.lr};
  auto opt_ife = nn::make_adam(model.ife, adam), opt_fm = nn::make_adam(model.fm, adam);
  auto opt_le = nn::make_adam(model.le, adam), opt_p = nn::make_adam(model.predictor, adam);

  double best_val = val.empty() ? 0.0 : detail::validate(model, val, hp.margin).prl;
  if (!val.empty()) result.initial_val_prl = best_val;
  result.model = model;

  for (std::size_t epoch = 1; epoch <= hp.epochs; ++epoch) {
    std::shuffle(train.begin(), train.end(), rng);
    double epoch_loss = 0.0;
    std::size_t pos = 0;
    while (pos < train.size()) {
      const std::size_t stop = std::min(train.size(), pos + hp.matrices_per_step);
      const double per_step = static_cast<double>(stop - pos);
      auto grads = zero_gradients(model);
      for (; pos < stop; ++pos) {
        const auto& pm = train[pos];
        const auto& rt = pm.samples->runtimes;
        const ScoringPass pass(model, pm.features, pm.samples->configs);
        const auto& s = pass.scores();
        const std::size_t n = s.size();
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        std::vector<double> d(n, 0.0);
        double loss = 0.0;
        std::size_t used = 0;
        for (std::size_t p = 0; p < hp.pairs_per_matrix; ++p) {
          const std::size_t i = pick(rng);
          std::size_t j = pick(rng);
          if (j == i) j = (j + 1) % n;
          const int y = nn::sign_of(rt[i] - rt[j]);
          if (y == 0) continue;
          const auto l = nn::margin_ranking_loss(s[i], s[j], y, hp.margin);
          loss += l.loss;
          d[i] += l.d_r1;
          d[j] += l.d_r2;
          ++used;
        }
        if (used == 0) continue;
        if (!std::isfinite(loss)) throw DivergenceError("ranking loss became non-finite");
        const double scale = 1.0 / (static_cast<double>(used) * per_step);
        for (auto& v : d) v *= scale;
        epoch_loss += loss / static_cast<double>(used);
        const auto g = pass.backward(d);
        if (model.components.ife) detail::accumulate(grads.ife, g.ife);
        if (model.components.fm) detail::accumulate(grads.fm, g.fm);
        if (model.components.le) detail::accumulate(grads.le, g.le);
        detail::accumulate(grads.predictor, g.predictor);
      }
      if (model.components.ife && !hp.freeze_ife) nn::adam_step(opt_ife, model.ife, grads.ife);
      if (model.components.fm) nn::adam_step(opt_fm, model.fm, grads.fm);
      if (model.components.le) nn::adam_step(opt_le, model.le, grads.le);
      nn::adam_step(opt_p, model.predictor, grads.predictor);
    }

    EpochMetrics em;
    em.epoch = epoch;
    em.train_prl = epoch_loss / static_cast<double>(train.size());
    if (!std::isfinite(em.train_prl)) throw DivergenceError("training loss became non-finite");
    if (!val.empty()) {
      const auto v = detail::validate(model, val, hp.margin);
      em.val_prl = v.prl;
      em.val_opa = v.opa;
      em.val_ktau = v.ktau;
      if (v.prl < best_val) {
        best_val = v.prl;
        result.model = model;
        result.best_epoch = epoch;
      }
    }
    result.history.push_back(em);
  }
  if (val.empty()) {
    result.model = std::move(model);
    result.best_epoch = hp.epochs;
  }
  return result;
}

inline TrainingResult pretrain_source(const CostModel& model_init, const Dataset& source,
                                      std::span<const MatrixEntry> matrices, const Hyperparams& hp) {
  if (source.platform != Platform::cpu) throw PlatformMismatch("pre-training expects cpu source data");
  return train_ranking(model_init, source, matrices, hp);
}

/// Carries over IFE, FM and predictor, swaps in the target platform's
/// encoder and trains all components jointly on the target data.
inline TrainingResult finetune_target(const CostModel& source, const Dataset& target, const Autoencoder& target_ae,
                                      std::span<const MatrixEntry> matrices, const Hyperparams& hp) {
  if (target.platform == Platform::cpu) throw PlatformMismatch("fine-tuning expects spade or gpu target data");
  if (target_ae.platform != target.platform)
    throw PlatformMismatch("autoencoder for " + std::string(to_string(target_ae.platform)) + " given with " +
                           std::string(to_string(target.platform)) + " data");
  CostModel model = source;
  install_encoder(model, target_ae);
  return train_ranking(std::move(model), target, matrices, hp);
}

inline TrainingResult train_no_transfer(const CostModel& model_init, const Dataset& target,
                                        std::span<const MatrixEntry> matrices, const Hyperparams& hp) {
  return train_ranking(model_init, target, matrices, hp);
}

}  // namespace sparsetl
