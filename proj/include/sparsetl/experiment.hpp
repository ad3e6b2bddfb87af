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
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sparsetl/costmodel.hpp"
#include "sparsetl/eval.hpp"
#include "sparsetl/training.hpp"

namespace sparsetl {

// --------------------------------------------------------------------- config

/// Everything one protocol run depends on. Loaded from a flat JSON document.
struct ExperimentConfig {
  std::uint64_t seed = 1;
  Kernel kernel = Kernel::spmm;
  Platform source_platform = Platform::cpu;
  Platform target_platform = Platform::spade;
  FeaturizerPreset preset = FeaturizerPreset::desk;
  std::size_t grid_resolution = kDefaultGridResolution;
  bool extent_planes = true;

  std::size_t corpus_size = 160;
  std::size_t corpus_min_rows = 512;
  std::size_t corpus_max_rows = 262144;
  double corpus_min_degree = 2.0;
  double corpus_max_degree = 16.0;
  std::vector<MatrixKind> corpus_kinds = {MatrixKind::uniform, MatrixKind::banded, MatrixKind::power_law};
  std::string corpus_mtx_dir;
  bool write_matrices = false;

  std::size_t pretrain_matrices = 100;
  std::size_t finetune_matrices = 5;
  std::size_t test_matrices = 50;
  std::size_t configs_per_matrix = 100;

  Hyperparams hp;
  SurrogateConstants oracle;
  std::string output_dir = "run";

  void validate() const {
    if (corpus_size == 0 || pretrain_matrices == 0 || finetune_matrices == 0 || test_matrices == 0 ||
        configs_per_matrix == 0)
      throw Error("corpus and dataset sizes must be positive");
    if (corpus_min_rows == 0 || corpus_min_rows > corpus_max_rows) throw Error("corpus row range is empty");
    if (!(corpus_min_degree > 0.0) || corpus_min_degree > corpus_max_degree)
      throw Error("corpus degree range is empty");
    if (corpus_kinds.empty() && corpus_mtx_dir.empty()) throw Error("corpus has no generator kinds and no directory");
    if (source_platform != Platform::cpu) throw Error("the source platform must be cpu");
    if (target_platform == Platform::cpu) throw Error("the target platform must be spade or gpu");
    hp.validate();
  }
};

inline std::string kinds_string(const std::vector<MatrixKind>& kinds) {
  std::string s;
  for (auto k : kinds) {
    if (!s.empty()) s += ',';
    s += to_string(k);
  }
  return s;
}

inline nlohmann::json to_json(const ExperimentConfig& c) {
  return {{"seed", c.seed},
          {"kernel", to_string(c.kernel)},
          {"source_platform", to_string(c.source_platform)},
          {"target_platform", to_string(c.target_platform)},
          {"preset", to_string(c.preset)},
          {"grid_resolution", c.grid_resolution},
          {"extent_planes", c.extent_planes},
          {"corpus_size", c.corpus_size},
          {"corpus_min_rows", c.corpus_min_rows},
          {"corpus_max_rows", c.corpus_max_rows},
          {"corpus_min_degree", c.corpus_min_degree},
          {"corpus_max_degree", c.corpus_max_degree},
          {"corpus_kinds", kinds_string(c.corpus_kinds)},
          {"corpus_mtx_dir", c.corpus_mtx_dir},
          {"write_matrices", c.write_matrices},
          {"pretrain_matrices", c.pretrain_matrices},
          {"finetune_matrices", c.finetune_matrices},
          {"test_matrices", c.test_matrices},
          {"configs_per_matrix", c.configs_per_matrix},
          {"lr", c.hp.lr},
          {"epochs", c.hp.epochs},
          {"pairs_per_matrix", c.hp.pairs_per_matrix},
          {"matrices_per_step", c.hp.matrices_per_step},
          {"margin", c.hp.margin},
          {"validation_fraction", c.hp.validation_fraction},
          {"freeze_ife", c.hp.freeze_ife},
          {"ae_lr", c.hp.ae_lr},
          {"ae_epochs", c.hp.ae_epochs},
          {"oracle_version", c.oracle.version},
          {"oracle_jitter", c.oracle.jitter},
          {"output_dir", c.output_dir}};
}

/// Applies one `key = value` setting. Values arrive as JSON scalars.
inline void set_config_value(ExperimentConfig& c, const std::string& key, const nlohmann::json& v) {
  const auto str = [&] { return v.get<std::string>(); };
  const auto size = [&] {
    if (!v.is_number_integer() || v.get<long long>() < 0) throw Error("'" + key + "' must be a non-negative integer");
    return v.get<std::size_t>();
  };
  if (key == "seed") c.seed = v.get<std::uint64_t>();
  else if (key == "kernel") c.kernel = parse_kernel(str());
  else if (key == "source_platform") c.source_platform = parse_platform(str());
  else if (key == "target_platform") c.target_platform = parse_platform(str());
  else if (key == "preset") c.preset = parse_preset(str());
  else if (key == "grid_resolution") c.grid_resolution = size();
  else if (key == "extent_planes") c.extent_planes = v.get<bool>();
  else if (key == "corpus_size") c.corpus_size = size();
  else if (key == "corpus_min_rows") c.corpus_min_rows = size();
  else if (key == "corpus_max_rows") c.corpus_max_rows = size();
  else if (key == "corpus_min_degree") c.corpus_min_degree = v.get<double>();
  else if (key == "corpus_max_degree") c.corpus_max_degree = v.get<double>();
  else if (key == "corpus_kinds") {
    c.corpus_kinds.clear();
    std::stringstream ss(str());
    for (std::string part; std::getline(ss, part, ',');)
      if (!part.empty()) c.corpus_kinds.push_back(parse_matrix_kind(part));
  } else if (key == "corpus_mtx_dir") c.corpus_mtx_dir = str();
  else if (key == "write_matrices") c.write_matrices = v.get<bool>();
  else if (key == "pretrain_matrices") c.pretrain_matrices = size();
  else if (key == "finetune_matrices") c.finetune_matrices = size();
  else if (key == "test_matrices") c.test_matrices = size();
  else if (key == "configs_per_matrix") c.configs_per_matrix = size();
  else if (key == "lr") c.hp.lr = v.get<double>();
  else if (key == "epochs") c.hp.epochs = size();
  else if (key == "pairs_per_matrix") c.hp.pairs_per_matrix = size();
  else if (key == "matrices_per_step") c.hp.matrices_per_step = size();
  else if (key == "margin") c.hp.margin = v.get<double>();
  else if (key == "validation_fraction") c.hp.validation_fraction = v.get<double>();
  else if (key == "freeze_ife") c.hp.freeze_ife = v.get<bool>();
  else if (key == "ae_lr") c.hp.ae_lr = v.get<double>();
  else if (key == "ae_epochs") c.hp.ae_epochs = size();
  else if (key == "oracle_version") {
    if (str() != c.oracle.version)
      throw Error("config asks for oracle '" + str() + "' but this build implements '" + c.oracle.version + "'");
  } else if (key == "oracle_jitter") c.oracle.jitter = v.get<double>();
  else if (key == "output_dir") c.output_dir = str();
  else throw Error("unknown config key '" + key + "'");
}

inline ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("experiment config must be a JSON object");
  ExperimentConfig c;
  for (const auto& [k, v] : j.items()) {
    try {
      set_config_value(c, k, v);
    } catch (const nlohmann::json::exception& e) {
      throw Error("config key '" + k + "': " + e.what());
    }
  }
  c.validate();
  return c;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file " + path.string());
  try {
    const auto j = nlohmann::json::parse(in);
    // a run manifest carries the full configuration of the stage that wrote it
    if (j.is_object() && j.contains("config") && j.contains("stage")) return experiment_config_from_json(j.at("config"));
    return experiment_config_from_json(j);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, path.string() + ": " + e.what());
  }
}

inline std::string hex64(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[static_cast<std::size_t>(i)] = digits[h & 15];
  return s;
}

/// FNV-1a of the canonical (sorted-key) JSON form, without the output directory.
inline std::string config_hash(const ExperimentConfig& c) {
  auto j = to_json(c);
  j.erase("output_dir");
  return hex64(detail::hash_text(j.dump()));
}

inline std::string file_hash(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return hex64(detail::hash_text(ss.str()));
}

// --------------------------------------------------------------------- corpus

struct CorpusRecord {
  std::string id;
  std::string kind;  // generator kind, or "file"
  std::uint64_t seed = 0;
  MatrixEntry entry;
};

/// Synthetic matrix recipe i of the corpus: log-uniform rows, columns within
/// a factor of two of the rows, log-uniform average degree.
struct MatrixRecipe {
  std::string id;
  MatrixKind kind = MatrixKind::uniform;
  std::size_t rows = 0, cols = 0, nnz = 0;
  std::uint64_t seed = 0;
};

inline std::vector<MatrixRecipe> corpus_recipes(const ExperimentConfig& c) {
  std::vector<MatrixRecipe> out;
  if (c.corpus_kinds.empty()) return out;
  std::mt19937_64 rng(detail::mix64(c.seed ^ 0x636f72707573ULL));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double lr0 = std::log(static_cast<double>(c.corpus_min_rows));
  const double lr1 = std::log(static_cast<double>(c.corpus_max_rows));
  const double ld0 = std::log(c.corpus_min_degree), ld1 = std::log(c.corpus_max_degree);
  for (std::size_t i = 0; i < c.corpus_size; ++i) {
    MatrixRecipe r;
    r.kind = c.corpus_kinds[i % c.corpus_kinds.size()];
    r.rows = static_cast<std::size_t>(std::llround(std::exp(lr0 + (lr1 - lr0) * u(rng))));
    r.cols = std::max<std::size_t>(16, static_cast<std::size_t>(std::llround(static_cast<double>(r.rows) *
                                                                               std::exp2(2.0 * u(rng) - 1.0))));
    const double degree = std::exp(ld0 + (ld1 - ld0) * u(rng));
    r.nnz = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(degree * static_cast<double>(r.rows))));
    r.nnz = std::min(r.nnz, r.rows * r.cols / 2);
    r.seed = rng();
    std::ostringstream id;
    id << "syn" << std::setw(4) << std::setfill('0') << i << '_' << to_string(r.kind);
    r.id = id.str();
    out.push_back(r);
  }
  return out;
}

inline SparseMatrixCSR materialize(const MatrixRecipe& r) {
  return generate_synthetic_matrix(r.kind, r.rows, r.cols, r.nnz, r.seed, r.id);
}

/// Matrix Market files of a directory in name order.
inline std::vector<std::filesystem::path> matrix_market_files(const std::string& dir) {
  std::vector<std::filesystem::path> out;
  if (dir.empty()) return out;
  if (!std::filesystem::is_directory(dir)) throw Error("corpus directory '" + dir + "' does not exist");
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".mtx") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

/// Generates (or reads) every corpus matrix and reduces it to the profile and
/// density grid the pipeline consumes. `on_matrix` sees each CSR once.
inline std::vector<CorpusRecord> build_corpus(
    const ExperimentConfig& c, const std::function<void(const CorpusRecord&, const SparseMatrixCSR&)>& on_matrix = {}) {
  std::vector<CorpusRecord> out;
  for (const auto& r : corpus_recipes(c)) {
    const auto csr = materialize(r);
    out.push_back({r.id, std::string(to_string(r.kind)), r.seed, prepare_matrix(csr, c.grid_resolution)});
    if (on_matrix) on_matrix(out.back(), csr);
  }
  for (const auto& path : matrix_market_files(c.corpus_mtx_dir)) {
    std::ifstream in(path);
    auto csr = parse_matrix_market(in, path.stem().string());
    out.push_back({csr.name, "file", 0, prepare_matrix(csr, c.grid_resolution)});
    if (on_matrix) on_matrix(out.back(), csr);
  }
  return out;
}

/// One line per matrix: the profile and density grid later stages consume,
/// so they never need the matrices themselves.
inline void write_corpus_entries_jsonl(std::ostream& out, const std::vector<CorpusRecord>& corpus) {
  for (const auto& r : corpus) {
    const auto& p = r.entry.profile;
    const auto& g = r.entry.grid;
    const nlohmann::json row = {{"id", r.id},
                                {"kind", r.kind},
                                {"seed", r.seed},
                                {"rows", p.rows},
                                {"cols", p.cols},
                                {"nnz", p.nnz},
                                {"mean_row_nnz", p.stats.mean_row_nnz},
                                {"gini", p.stats.gini},
                                {"bandwidth", p.stats.bandwidth},
                                {"density", p.stats.density},
                                {"resolution", g.resolution},
                                {"block_rows", g.block_rows},
                                {"block_cols", g.block_cols},
                                {"cells", g.cells}};
    out << row.dump() << '\n';
  }
}

inline std::vector<CorpusRecord> read_corpus_entries_jsonl(std::istream& in) {
  std::vector<CorpusRecord> out;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      CorpusRecord r;
      r.id = j.at("id").get<std::string>();
      r.kind = j.at("kind").get<std::string>();
      r.seed = j.at("seed").get<std::uint64_t>();
      auto& p = r.entry.profile;
      p.name = r.id;
      p.rows = j.at("rows").get<std::size_t>();
      p.cols = j.at("cols").get<std::size_t>();
      p.nnz = j.at("nnz").get<std::size_t>();
      p.stats = {j.at("mean_row_nnz").get<double>(), j.at("gini").get<double>(), j.at("bandwidth").get<double>(),
                 j.at("density").get<double>()};
      auto& g = r.entry.grid;
      g.resolution = j.at("resolution").get<std::size_t>();
      g.block_rows = j.at("block_rows").get<double>();
      g.block_cols = j.at("block_cols").get<double>();
      g.cells = j.at("cells").get<std::vector<double>>();
      if (g.cells.size() != g.resolution * g.resolution) throw Error("grid has the wrong number of cells");
      out.push_back(std::move(r));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return out;
}

inline std::vector<MatrixEntry> entries_of(const std::vector<CorpusRecord>& corpus) {
  std::vector<MatrixEntry> out;
  for (const auto& r : corpus) out.push_back(r.entry);
  return out;
}

/// Disjoint test, fine-tune and pre-training sets drawn from one corpus.
struct CorpusSplit {
  std::vector<MatrixEntry> test, finetune, pool, pretrain;
};

inline CorpusSplit split_corpus(const std::vector<MatrixEntry>& corpus, std::size_t n_test, std::size_t n_finetune,
                                std::size_t n_pretrain, std::uint64_t seed) {
  if (n_test + n_finetune >= corpus.size())
    throw Error("corpus of " + std::to_string(corpus.size()) + " matrices cannot hold " + std::to_string(n_test) +
                " test and " + std::to_string(n_finetune) + " fine-tuning matrices plus a pre-training pool");
  std::vector<std::size_t> idx(corpus.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937_64 rng(detail::mix64(seed ^ 0x73706c6974ULL));
  std::shuffle(idx.begin(), idx.end(), rng);
  CorpusSplit s;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const auto& m = corpus[idx[i]];
    if (i < n_test) s.test.push_back(m);
    else if (i < n_test + n_finetune) s.finetune.push_back(m);
    else s.pool.push_back(m);
  }
  for (auto i : select_pretraining_matrices(s.pool, std::min(n_pretrain, s.pool.size()), seed))
    s.pretrain.push_back(s.pool[i]);
  return s;
}

inline void write_corpus_manifest_csv(std::ostream& out, const std::vector<CorpusRecord>& corpus) {
  out << "id,kind,rows,cols,nnz,density,gini,bandwidth,row_bin,seed\n";
  for (const auto& r : corpus) {
    const auto& p = r.entry.profile;
    out << r.id << ',' << r.kind << ',' << p.rows << ',' << p.cols << ',' << p.nnz << ',' << p.stats.density << ','
        << p.stats.gini << ',' << p.stats.bandwidth << ',' << row_bin(p.rows) << ',' << r.seed << '\n';
  }
}

// ------------------------------------------------------------------- protocol

/// One model family trained under the transfer protocol.
struct Variant {
  std::string label = "tl";
  ConfigEncoding encoding = ConfigEncoding::mapped;
  ComponentMask components;
  LatentVariant latent = LatentVariant::autoencoder;
  bool transfer = true;  // false: train on the target data only (no transfer)
};

inline Variant variant_by_name(const std::string& name) {
  if (name == "tl") return {};
  if (name == "nt") return {"nt", ConfigEncoding::mapped, {}, LatentVariant::autoencoder, false};
  if (name == "fa") return {"fa", ConfigEncoding::feature_augmented, {true, true, false}, LatentVariant::autoencoder, true};
  if (name == "drop_ife") return {"drop_ife", ConfigEncoding::mapped, {false, true, true}, LatentVariant::autoencoder, true};
  if (name == "drop_fm") return {"drop_fm", ConfigEncoding::mapped, {true, false, true}, LatentVariant::autoencoder, true};
  if (name == "drop_le") return {"drop_le", ConfigEncoding::mapped, {true, true, false}, LatentVariant::autoencoder, true};
  if (name == "latent_raw") return {"latent_raw", ConfigEncoding::mapped, {}, LatentVariant::raw, true};
  if (name == "latent_pca") return {"latent_pca", ConfigEncoding::mapped, {}, LatentVariant::pca, true};
  throw Error("unknown variant '" + name + "'");
}

struct VariantResult {
  Variant variant;
  std::optional<TrainingResult> pretrain;
  TrainingResult finetune;
  MetricsReport report;
};

/// Shared inputs of every variant of one seed: split, datasets and the
/// per-platform autoencoders.
struct ProtocolContext {
  ExperimentConfig config;
  CorpusSplit split;
  Dataset source, target;
  Autoencoder source_ae, target_ae;
  std::function<void(const std::string&)> log;
};

inline ProtocolContext make_protocol_context(const ExperimentConfig& c, const std::vector<MatrixEntry>& corpus,
                                             std::function<void(const std::string&)> log = {}) {
  ProtocolContext ctx;
  ctx.config = c;
  ctx.config.hp.seed = c.seed;
  ctx.config.oracle.jitter_seed = c.seed;
  ctx.log = std::move(log);
  const auto& cfg = ctx.config;
  ctx.split = split_corpus(corpus, cfg.test_matrices, cfg.finetune_matrices, cfg.pretrain_matrices, cfg.seed);
  ctx.source = build_dataset(default_platform_spec(cfg.source_platform), cfg.kernel, ctx.split.pretrain,
                             cfg.configs_per_matrix, cfg.seed, cfg.oracle);
  ctx.target = build_dataset(default_platform_spec(cfg.target_platform), cfg.kernel, ctx.split.finetune,
                             cfg.configs_per_matrix, cfg.seed, cfg.oracle);
  ctx.source_ae = train_autoencoder(cfg.source_platform, cfg.hp).ae;
  ctx.target_ae = train_autoencoder(cfg.target_platform, cfg.hp).ae;
  return ctx;
}

inline CostModelOptions model_options(const ExperimentConfig& c, Platform platform, const Variant& v) {
  CostModelOptions o;
  o.platform = platform;
  o.preset = c.preset;
  o.grid_resolution = c.grid_resolution;
  o.extent_planes = c.extent_planes;
  o.encoding = v.encoding;
  o.components = v.components;
  o.oracle_version = c.oracle.version;
  o.seed = detail::mix64(c.seed ^ 0x6d6f64656cULL);
  return o;
}

/// The latent encoder a variant uses on `platform`: the trained autoencoder or
/// one of the fixed linear stand-ins.
inline Autoencoder variant_encoder(const Variant& v, Platform platform, const Autoencoder& trained) {
  if (v.latent == LatentVariant::autoencoder) {
    if (trained.platform != platform)
      throw PlatformMismatch("autoencoder for " + std::string(to_string(trained.platform)) + " given for " +
                             std::string(to_string(platform)));
    return trained;
  }
  return linear_latent_encoder(platform, v.latent);
}

/// Untrained model of a variant for `platform`, encoder installed.
inline CostModel initial_model(const ExperimentConfig& c, Platform platform, const Variant& v,
                               const Autoencoder& trained) {
  CostModel m = make_cost_model(model_options(c, platform, v));
  if (v.encoding == ConfigEncoding::mapped) install_encoder(m, variant_encoder(v, platform, trained));
  return m;
}

inline VariantResult run_variant(const ProtocolContext& ctx, const Variant& v) {
  const auto& c = ctx.config;
  const auto say = [&](const std::string& s) {
    if (ctx.log) ctx.log("[" + v.label + "] " + s);
  };
  VariantResult r;
  r.variant = v;
  const Autoencoder target_ae = variant_encoder(v, c.target_platform, ctx.target_ae);
  if (v.transfer) {
    const CostModel init = initial_model(c, c.source_platform, v, ctx.source_ae);
    say("pre-training on " + std::to_string(ctx.source.matrices.size()) + " " +
        std::string(to_string(c.source_platform)) + " matrices");
    r.pretrain = pretrain_source(init, ctx.source, ctx.split.pretrain, c.hp);
    say("fine-tuning on " + std::to_string(ctx.target.matrices.size()) + " " +
        std::string(to_string(c.target_platform)) + " matrices");
    r.finetune = finetune_target(r.pretrain->model, ctx.target, target_ae, ctx.split.finetune, c.hp);
  } else {
    const CostModel init = initial_model(c, c.target_platform, v, ctx.target_ae);
    say("training from scratch on " + std::to_string(ctx.target.matrices.size()) + " " +
        std::string(to_string(c.target_platform)) + " matrices");
    r.finetune = train_no_transfer(init, ctx.target, ctx.split.finetune, c.hp);
  }
  r.report = evaluate_model(r.finetune.model, default_platform_spec(c.target_platform), c.kernel, ctx.split.test,
                            c.oracle);
  r.report.label = v.label;
  const std::vector<CollectionCost> costs =
      v.transfer ? std::vector<CollectionCost>{{ctx.source.beta, ctx.source.size()}, {ctx.target.beta, ctx.target.size()}}
                 : std::vector<CollectionCost>{{ctx.target.beta, ctx.target.size()}};
  r.report.dce = dce(costs);
  say("top-1 speedup " + std::to_string(r.report.speedup_top1) + ", top-5 " + std::to_string(r.report.speedup_top5) +
      ", optimal " + std::to_string(r.report.speedup_optimal));
  return r;
}

/// Full model pre-trained on the source data and fine-tuned on the target,
/// with configurations encoded as concatenated raw per-platform vectors.
inline VariantResult feature_augmentation_baseline(const ProtocolContext& ctx) {
  return run_variant(ctx, variant_by_name("fa"));
}

// ------------------------------------------------------------------- ablation

enum class Ablation { drop_ife, drop_fm, drop_le, source_size_sweep, finetune_size_sweep, latent_variant };

inline Ablation parse_ablation(const std::string& s) {
  if (s == "drop_ife") return Ablation::drop_ife;
  if (s == "drop_fm") return Ablation::drop_fm;
  if (s == "drop_le") return Ablation::drop_le;
  if (s == "source_size_sweep") return Ablation::source_size_sweep;
  if (s == "finetune_size_sweep") return Ablation::finetune_size_sweep;
  if (s == "latent_variant") return Ablation::latent_variant;
  throw Error("unknown ablation '" + s + "'");
}

struct AblationRow {
  std::string variant;
  std::size_t source_matrices = 0;
  std::size_t finetune_matrices = 0;
  MetricsReport report;
};

inline void write_ablation_csv(std::ostream& out, const std::vector<AblationRow>& rows) {
  out << "variant,source_matrices,finetune_matrices,speedup_top1,speedup_top5,speedup_optimal,ape_top1,opa,ktau,dce\n";
  for (const auto& r : rows)
    out << r.variant << ',' << r.source_matrices << ',' << r.finetune_matrices << ',' << r.report.speedup_top1 << ','
        << r.report.speedup_top5 << ',' << r.report.speedup_optimal << ',' << r.report.ape_top1 << ','
        << r.report.opa << ',' << r.report.ktau << ',' << r.report.dce << '\n';
}

/// Source sizes of the sweep, capped to the pre-training pool.
inline std::vector<std::size_t> source_sweep_sizes(std::size_t pool) {
  std::vector<std::size_t> out;
  for (std::size_t n : {5, 20, 100, 500, 1000}) {
    const std::size_t capped = std::min(n, pool);
    if (out.empty() || out.back() != capped) out.push_back(capped);
  }
  return out;
}

/// Component drops retrain with the dropped output zeroed; sweeps rerun the
/// whole protocol per size. The full model's row comes first.
inline std::vector<AblationRow> run_ablation(Ablation which, const ExperimentConfig& c,
                                             const std::vector<MatrixEntry>& corpus,
                                             std::function<void(const std::string&)> log = {}) {
  std::vector<AblationRow> rows;
  const auto run = [&](const ExperimentConfig& cfg, const std::vector<std::string>& variants) {
    const auto ctx = make_protocol_context(cfg, corpus, log);
    for (const auto& name : variants) {
      auto r = run_variant(ctx, variant_by_name(name));
      rows.push_back({name, ctx.source.matrices.size(), ctx.target.matrices.size(), std::move(r.report)});
    }
  };
  switch (which) {
    case Ablation::drop_ife: run(c, {"tl", "drop_ife"}); break;
    case Ablation::drop_fm: run(c, {"tl", "drop_fm"}); break;
    case Ablation::drop_le: run(c, {"tl", "drop_le"}); break;
    case Ablation::latent_variant: run(c, {"tl", "latent_raw", "latent_pca"}); break;
    case Ablation::source_size_sweep: {
      const auto pool = corpus.size() - c.test_matrices - c.finetune_matrices;
      for (auto n : source_sweep_sizes(pool)) {
        auto cfg = c;
        cfg.pretrain_matrices = n;
        run(cfg, {"tl"});
      }
      break;
    }
    case Ablation::finetune_size_sweep:
      for (std::size_t n : {3, 5, 7}) {
        auto cfg = c;
        cfg.finetune_matrices = n;
        run(cfg, {"tl"});
      }
      break;
  }
  return rows;
}

}  // namespace sparsetl
