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

// Command-line front end. One flat JSON config drives every stage; `--set`
// overrides single keys. Progress goes to stderr, results only to files
// under the run directory (corpus/, datasets/, checkpoints/, reports/).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sparsetl/experiment.hpp"

namespace fs = std::filesystem;
using namespace sparsetl;
using nlohmann::json;

namespace {

void say(const std::string& s) { std::cerr << s << std::endl; }

struct Layout {
  fs::path root;
  fs::path corpus() const { return root / "corpus"; }
  fs::path datasets() const { return root / "datasets"; }
  fs::path checkpoints() const { return root / "checkpoints"; }
  fs::path reports() const { return root / "reports"; }
};

json read_json(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw Error("missing artifact " + p.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(p.string() + " is not valid JSON: " + e.what());
  }
}

void write_text(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write " + p.string());
  out << text;
  if (!out) throw Error("failed writing " + p.string());
}

void write_json(const fs::path& p, const json& j) { write_text(p, j.dump(2) + "\n"); }

template <typename Fn>
void write_with(const fs::path& p, Fn&& fn) {
  std::ostringstream ss;
  ss.precision(17);
  fn(ss);
  write_text(p, ss.str());
}

/// Every stage leaves one of these next to its outputs: the full config, the
/// provenance stamps and content hashes of what it read and wrote.
void write_manifest(const fs::path& p, const std::string& stage, const ExperimentConfig& c,
                    const std::vector<fs::path>& inputs, const std::vector<fs::path>& outputs, json extra = json::object()) {
  json in = json::object(), out = json::object();
  for (const auto& f : inputs) in[f.string()] = file_hash(f);
  for (const auto& f : outputs) out[f.string()] = file_hash(f);
  json m = {{"stage", stage},          {"seed", c.seed},     {"config_hash", config_hash(c)},
            {"oracle_version", c.oracle.version}, {"config", to_json(c)}, {"inputs", in},
            {"outputs", out}};
  for (auto it = extra.begin(); it != extra.end(); ++it) m[it.key()] = it.value();
  write_json(p, m);
  say("wrote " + p.string());
}

/// Seed, config hash and oracle version, stamped into every artifact.
void stamp(json& j, const ExperimentConfig& c) {
  j["seed"] = c.seed;
  j["config_hash"] = config_hash(c);
  j["oracle_version"] = c.oracle.version;
}

// ------------------------------------------------------------------ config

struct Common {
  std::string config_path;
  std::vector<std::string> sets;
  std::string run_dir;
};

void add_common(CLI::App* app, Common& o) {
  app->add_option("-c,--config", o.config_path, "flat JSON config, or the manifest of an earlier run");
  app->add_option("--set", o.sets, "override one config key, key=value (repeatable)");
  app->add_option("--run", o.run_dir, "run directory (overrides output_dir)");
}

ExperimentConfig resolve_config(const Common& o) {
  ExperimentConfig c = o.config_path.empty() ? ExperimentConfig{} : load_config(o.config_path);
  for (const auto& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw Error("--set expects key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq), text = kv.substr(eq + 1);
    json value;
    try {
      value = json::parse(text);
    } catch (const json::parse_error&) {
      value = text;  // bare words are strings
    }
    try {
      set_config_value(c, key, value);
    } catch (const json::exception& e) {
      throw Error("--set " + key + ": " + e.what());
    }
  }
  if (!o.run_dir.empty()) c.output_dir = o.run_dir;
  c.validate();
  return c;
}

// ---------------------------------------------------------------- artifacts

void require_oracle(const std::string& found, const std::string& expected, const std::string& what) {
  if (found != expected)
    throw Error("refusing " + what + ": built with oracle '" + found + "' but this run uses '" + expected + "'");
}

std::vector<CorpusRecord> load_corpus(const Layout& L, const ExperimentConfig& c) {
  const auto manifest = read_json(L.corpus() / "manifest.json");
  require_oracle(manifest.at("oracle_version").get<std::string>(), c.oracle.version, "the corpus");
  const auto path = L.corpus() / "entries.jsonl";
  std::ifstream in(path);
  if (!in) throw Error("missing artifact " + path.string());
  auto corpus = read_corpus_entries_jsonl(in);
  for (const auto& r : corpus)
    if (r.entry.grid.resolution != c.grid_resolution)
      throw Error("corpus grids have resolution " + std::to_string(r.entry.grid.resolution) + " but the config asks for " +
                  std::to_string(c.grid_resolution) + "; rerun gen-corpus");
  return corpus;
}

std::vector<MatrixEntry> pick(const std::vector<CorpusRecord>& corpus, const json& ids) {
  std::map<std::string, const MatrixEntry*> by_id;
  for (const auto& r : corpus) by_id[r.id] = &r.entry;
  std::vector<MatrixEntry> out;
  for (const auto& id : ids) {
    const auto it = by_id.find(id.get<std::string>());
    if (it == by_id.end()) throw Error("split names matrix '" + id.get<std::string>() + "' that is not in the corpus");
    out.push_back(*it->second);
  }
  return out;
}

Dataset load_dataset(const fs::path& p, const ExperimentConfig& c) {
  std::ifstream in(p);
  if (!in) throw Error("missing artifact " + p.string());
  auto ds = read_dataset_jsonl(in);
  require_oracle(ds.oracle_version, c.oracle.version, "dataset " + p.string());
  return ds;
}

Autoencoder load_autoencoder(const Layout& L, Platform p, const ExperimentConfig& c) {
  const auto path = L.checkpoints() / ("ae_" + std::string(to_string(p)) + ".json");
  const auto j = read_json(path);
  require_oracle(j.value("oracle_version", std::string()), c.oracle.version, "autoencoder " + path.string());
  auto ae = autoencoder_from_json(j);
  if (ae.platform != p) throw PlatformMismatch(path.string() + " holds a " + std::string(to_string(ae.platform)) + " autoencoder");
  return ae;
}

struct Checkpoint {
  CostModel model;
  json training_data = json::array();  // [{beta, samples}] of every dataset the weights saw
};

Checkpoint load_checkpoint(const fs::path& p) {
  const auto j = read_json(p);
  return {cost_model_from_json(j), j.value("training_data", json::array())};
}

void save_checkpoint(const fs::path& p, const Checkpoint& ck, const ExperimentConfig& c) {
  auto j = to_json(ck.model);
  stamp(j, c);
  j["training_data"] = ck.training_data;
  write_json(p, j);
  say("wrote " + p.string());
}

json collection(const Dataset& ds) { return {{"beta", ds.beta}, {"samples", ds.size()}}; }

void write_history(const fs::path& p, const TrainingResult& r) {
  write_with(p, [&](std::ostream& out) { write_metrics_csv(out, r.history); });
}

std::string checkpoint_name(const std::string& variant, const std::string& stage) {
  return variant + "_" + stage + ".json";
}

// ------------------------------------------------------------------ stages

void gen_corpus(const ExperimentConfig& c) {
  const Layout L{c.output_dir};
  fs::create_directories(L.corpus());
  std::vector<fs::path> outputs;
  const auto corpus = build_corpus(c, [&](const CorpusRecord& r, const SparseMatrixCSR& m) {
    say("matrix " + r.id + ": " + std::to_string(m.rows) + " x " + std::to_string(m.cols) + ", " +
        std::to_string(m.nnz()) + " nonzeros");
    if (c.write_matrices && r.kind != "file") {
      const auto p = L.corpus() / (r.id + ".mtx");
      write_with(p, [&](std::ostream& out) { write_matrix_market(out, m); });
      outputs.push_back(p);
    }
  });
  const auto stats = L.corpus() / "manifest.csv", entries = L.corpus() / "entries.jsonl";
  write_with(stats, [&](std::ostream& out) { write_corpus_manifest_csv(out, corpus); });
  write_with(entries, [&](std::ostream& out) { write_corpus_entries_jsonl(out, corpus); });
  outputs.insert(outputs.begin(), {stats, entries});
  std::vector<fs::path> inputs = matrix_market_files(c.corpus_mtx_dir);
  write_manifest(L.corpus() / "manifest.json", "gen-corpus", c, inputs, outputs, {{"matrices", corpus.size()}});
}

void gen_data(const ExperimentConfig& c) {
  const Layout L{c.output_dir};
  const auto corpus = load_corpus(L, c);
  const auto split = split_corpus(entries_of(corpus), c.test_matrices, c.finetune_matrices, c.pretrain_matrices, c.seed);
  const auto ids = [](const std::vector<MatrixEntry>& v) {
    json a = json::array();
    for (const auto& m : v) a.push_back(m.profile.name);
    return a;
  };
  const auto source = build_dataset(default_platform_spec(c.source_platform), c.kernel, split.pretrain,
                                    c.configs_per_matrix, c.seed, c.oracle);
  const auto target = build_dataset(default_platform_spec(c.target_platform), c.kernel, split.finetune,
                                    c.configs_per_matrix, c.seed, c.oracle);
  const json extra = {{"config_hash", config_hash(c)}};
  const auto sp = L.datasets() / "source.jsonl", tp = L.datasets() / "target.jsonl", split_path = L.datasets() / "split.json";
  write_with(sp, [&](std::ostream& out) { write_dataset_jsonl(out, source, extra); });
  write_with(tp, [&](std::ostream& out) { write_dataset_jsonl(out, target, extra); });
  json sj = json::object();
  stamp(sj, c);
  sj["test"] = ids(split.test);
  sj["finetune"] = ids(split.finetune);
  sj["pretrain"] = ids(split.pretrain);
  write_json(split_path, sj);
  say("source: " + std::to_string(source.size()) + " samples over " + std::to_string(source.matrices.size()) +
      " matrices; target: " + std::to_string(target.size()) + " samples over " +
      std::to_string(target.matrices.size()) + " matrices");
  write_manifest(L.datasets() / "manifest.json", "gen-data", c, {L.corpus() / "entries.jsonl"}, {sp, tp, split_path});
}

void train_ae(const ExperimentConfig& c, const std::vector<std::string>& platforms) {
  const Layout L{c.output_dir};
  std::vector<Platform> todo;
  for (const auto& p : platforms) todo.push_back(parse_platform(p));
  if (todo.empty()) todo = {c.source_platform, c.target_platform};
  auto hp = c.hp;
  hp.seed = c.seed;
  std::vector<fs::path> outputs;
  json losses = json::object();
  for (auto p : todo) {
    say("training the " + std::string(to_string(p)) + " autoencoder");
    const auto r = train_autoencoder(p, hp);
    auto j = to_json(r.ae);
    stamp(j, c);
    const auto path = L.checkpoints() / ("ae_" + std::string(to_string(p)) + ".json");
    write_json(path, j);
    outputs.push_back(path);
    losses[std::string(to_string(p))] = {{"initial_mse", r.initial_mse}, {"final_mse", r.final_mse}};
    say("reconstruction mse " + std::to_string(r.initial_mse) + " -> " + std::to_string(r.final_mse));
  }
  write_manifest(L.checkpoints() / "ae.manifest.json", "train-ae", c, {}, outputs, {{"losses", losses}});
}

void pretrain(const ExperimentConfig& c, const std::string& variant_name) {
  const Layout L{c.output_dir};
  const auto v = variant_by_name(variant_name);
  if (!v.transfer) throw Error("variant '" + v.label + "' trains without transfer; use no-transfer");
  const auto corpus = load_corpus(L, c);
  const auto sp = L.datasets() / "source.jsonl";
  const auto source = load_dataset(sp, c);
  if (source.platform != c.source_platform) throw PlatformMismatch(sp.string() + " does not hold source-platform data");
  const auto split = read_json(L.datasets() / "split.json");
  const auto matrices = pick(corpus, split.at("pretrain"));
  Autoencoder ae;
  std::vector<fs::path> inputs = {sp, L.datasets() / "split.json"};
  if (v.encoding == ConfigEncoding::mapped && v.latent == LatentVariant::autoencoder) {
    ae = load_autoencoder(L, c.source_platform, c);
    inputs.push_back(L.checkpoints() / ("ae_" + std::string(to_string(c.source_platform)) + ".json"));
  }
  auto hp = c.hp;
  hp.seed = c.seed;
  say("pre-training '" + v.label + "' on " + std::to_string(source.matrices.size()) + " matrices");
  const auto r = pretrain_source(initial_model(c, c.source_platform, v, ae), source, matrices, hp);
  const auto ck = L.checkpoints() / checkpoint_name(v.label, "pretrained");
  save_checkpoint(ck, {r.model, json::array({collection(source)})}, c);
  const auto hist = L.reports() / (v.label + "_pretrain_history.csv");
  write_history(hist, r);
  write_manifest(L.checkpoints() / (v.label + "_pretrained.manifest.json"), "pretrain", c, inputs, {ck, hist},
                 {{"variant", v.label}, {"best_epoch", r.best_epoch}});
}

void finetune(const ExperimentConfig& c, const std::string& variant_name, std::string checkpoint) {
  const Layout L{c.output_dir};
  const auto v = variant_by_name(variant_name);
  if (checkpoint.empty()) checkpoint = (L.checkpoints() / checkpoint_name(v.label, "pretrained")).string();
  auto source = load_checkpoint(checkpoint);
  require_oracle(source.model.oracle_version, c.oracle.version, "checkpoint " + checkpoint);
  if (source.model.platform != c.source_platform)
    throw PlatformMismatch("checkpoint " + checkpoint + " is a " + std::string(to_string(source.model.platform)) +
                           " model, not a pre-trained source model");
  const auto corpus = load_corpus(L, c);
  const auto tp = L.datasets() / "target.jsonl";
  const auto target = load_dataset(tp, c);
  if (target.platform != c.target_platform) throw PlatformMismatch(tp.string() + " does not hold target-platform data");
  require_oracle(target.oracle_version, source.model.oracle_version, "dataset " + tp.string());
  const auto split = read_json(L.datasets() / "split.json");
  std::vector<fs::path> inputs = {checkpoint, tp, L.datasets() / "split.json"};
  Autoencoder trained;
  if (v.latent == LatentVariant::autoencoder && v.encoding == ConfigEncoding::mapped) {
    trained = load_autoencoder(L, c.target_platform, c);
    inputs.push_back(L.checkpoints() / ("ae_" + std::string(to_string(c.target_platform)) + ".json"));
  }
  auto hp = c.hp;
  hp.seed = c.seed;
  say("fine-tuning '" + v.label + "' on " + std::to_string(target.matrices.size()) + " matrices");
  Autoencoder encoder;
  if (v.encoding == ConfigEncoding::mapped) encoder = variant_encoder(v, c.target_platform, trained);
  else encoder.platform = c.target_platform;  // nothing to swap; only the platform tag moves
  const auto r = finetune_target(source.model, target, encoder, pick(corpus, split.at("finetune")), hp);
  source.training_data.push_back(collection(target));
  const auto ck = L.checkpoints() / checkpoint_name(v.label, "finetuned");
  save_checkpoint(ck, {r.model, source.training_data}, c);
  const auto hist = L.reports() / (v.label + "_finetune_history.csv");
  write_history(hist, r);
  write_manifest(L.checkpoints() / (v.label + "_finetuned.manifest.json"), "finetune", c, inputs, {ck, hist},
                 {{"variant", v.label}, {"best_epoch", r.best_epoch}});
}

void no_transfer(const ExperimentConfig& c) {
  const Layout L{c.output_dir};
  const auto v = variant_by_name("nt");
  const auto corpus = load_corpus(L, c);
  const auto tp = L.datasets() / "target.jsonl";
  const auto target = load_dataset(tp, c);
  if (target.platform != c.target_platform) throw PlatformMismatch(tp.string() + " does not hold target-platform data");
  const auto split = read_json(L.datasets() / "split.json");
  const auto ae = load_autoencoder(L, c.target_platform, c);
  auto hp = c.hp;
  hp.seed = c.seed;
  say("training on " + std::to_string(target.matrices.size()) + " target matrices without transfer");
  const auto r = train_no_transfer(initial_model(c, c.target_platform, v, ae), target, pick(corpus, split.at("finetune")), hp);
  const auto ck = L.checkpoints() / "nt_trained.json";
  save_checkpoint(ck, {r.model, json::array({collection(target)})}, c);
  const auto hist = L.reports() / "nt_history.csv";
  write_history(hist, r);
  write_manifest(L.checkpoints() / "nt_trained.manifest.json", "no-transfer", c,
                 {tp, L.datasets() / "split.json", L.checkpoints() / ("ae_" + std::string(to_string(c.target_platform)) + ".json")},
                 {ck, hist}, {{"variant", "nt"}, {"best_epoch", r.best_epoch}});
}

void evaluate(const ExperimentConfig& c, const std::string& checkpoint, std::string platform_name, std::string label) {
  const Layout L{c.output_dir};
  const Platform platform = platform_name.empty() ? c.target_platform : parse_platform(platform_name);
  const auto ck = load_checkpoint(checkpoint);
  if (ck.model.platform != platform)
    throw PlatformMismatch("refusing to evaluate: checkpoint " + checkpoint + " is a " +
                           std::string(to_string(ck.model.platform)) + " model but " +
                           std::string(to_string(platform)) + " was requested");
  require_oracle(ck.model.oracle_version, c.oracle.version, "checkpoint " + checkpoint);
  const auto corpus = load_corpus(L, c);
  const auto split = read_json(L.datasets() / "split.json");
  if (label.empty()) label = fs::path(checkpoint).stem().string();
  say("evaluating " + label + " on " + std::to_string(split.at("test").size()) + " test matrices");
  auto report = evaluate_model(ck.model, default_platform_spec(platform), c.kernel, pick(corpus, split.at("test")), c.oracle);
  report.label = label;
  std::vector<CollectionCost> costs;
  for (const auto& d : ck.training_data) costs.push_back({d.at("beta").get<double>(), d.at("samples").get<std::size_t>()});
  report.dce = dce(costs);
  const auto per_matrix = L.reports() / (label + ".csv"), speedups = L.reports() / (label + "_speedups.csv"),
             summary = L.reports() / (label + ".json");
  write_with(per_matrix, [&](std::ostream& out) { write_report_csv(out, report); });
  write_with(speedups, [&](std::ostream& out) { write_speedup_long_csv(out, std::vector<MetricsReport>{report}); });
  auto sj = summary_json(report);
  stamp(sj, c);
  write_json(summary, sj);
  say("top-1 speedup " + std::to_string(report.speedup_top1) + ", top-5 " + std::to_string(report.speedup_top5) +
      ", optimal " + std::to_string(report.speedup_optimal) + ", APE " + std::to_string(report.ape_top1) + "%");
  write_manifest(L.reports() / (label + ".manifest.json"), "eval", c,
                 {checkpoint, L.corpus() / "entries.jsonl", L.datasets() / "split.json"}, {per_matrix, speedups, summary});
}

void ablate(const ExperimentConfig& c, const std::string& which) {
  const Layout L{c.output_dir};
  const auto kind = parse_ablation(which);
  const auto corpus = load_corpus(L, c);
  const auto rows = run_ablation(kind, c, entries_of(corpus), say);
  const auto path = L.reports() / ("ablation_" + which + ".csv");
  write_with(path, [&](std::ostream& out) { write_ablation_csv(out, rows); });
  write_manifest(L.reports() / ("ablation_" + which + ".manifest.json"), "ablate", c, {L.corpus() / "entries.jsonl"},
                 {path}, {{"ablation", which}});
}

void tune(const std::string& matrix_path, const std::string& checkpoint, std::size_t k, const std::string& kernel_name) {
  const auto ck = load_checkpoint(checkpoint);
  std::ifstream in(matrix_path);
  if (!in) throw Error("cannot open matrix " + matrix_path);
  const auto m = parse_matrix_market(in, fs::path(matrix_path).stem().string());
  (void)parse_kernel(kernel_name);
  const auto spec = default_platform_spec(ck.model.platform);
  const auto configs = enumerate_configs(spec, m.cols);
  const auto entry = prepare_matrix(m, ck.model.grid_resolution);
  const auto scores = score_configs(ck.model, entry, configs);
  const auto order = ranking_order(scores);
  k = std::min(k, order.size());
  say(std::to_string(configs.size()) + " " + std::string(to_string(spec.id)) + " configurations ranked for " + m.name);
  const auto header = config_to_json(configs[order[0]]);
  std::cout << "rank,predicted_cost";
  for (const auto& [key, v] : header.items()) std::cout << ',' << key;
  std::cout << '\n';
  for (std::size_t r = 0; r < k; ++r) {
    std::cout << r + 1 << ',' << scores[order[r]];
    const auto fields = config_to_json(configs[order[r]]);
    for (const auto& [key, v] : fields.items()) std::cout << ',' << (v.is_string() ? v.get<std::string>() : v.dump());
    std::cout << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transfer-learned cost models for sparse tensor programs"};
  app.require_subcommand(1);

  Common o;
  auto* gc = app.add_subcommand("gen-corpus", "generate the matrix corpus and its statistics manifest");
  add_common(gc, o);
  auto* gd = app.add_subcommand("gen-data", "split the corpus and sample source and target datasets");
  add_common(gd, o);

  std::vector<std::string> ae_platforms;
  auto* ta = app.add_subcommand("train-ae", "train the per-platform autoencoders");
  add_common(ta, o);
  ta->add_option("--platform", ae_platforms, "platforms to train (default: source and target)");

  std::string variant = "tl", checkpoint, platform, label;
  auto* pt = app.add_subcommand("pretrain", "train on the source platform");
  add_common(pt, o);
  pt->add_option("--variant", variant, "tl, fa, drop_ife, drop_fm, drop_le, latent_raw or latent_pca");

  auto* ft = app.add_subcommand("finetune", "carry a pre-trained model over to the target platform");
  add_common(ft, o);
  ft->add_option("--variant", variant, "variant whose pre-trained checkpoint is used");
  ft->add_option("--checkpoint", checkpoint, "pre-trained checkpoint (default: from the run directory)");

  auto* nt = app.add_subcommand("no-transfer", "train on the target data alone");
  add_common(nt, o);

  auto* ev = app.add_subcommand("eval", "rank every configuration of the test matrices and report");
  add_common(ev, o);
  ev->add_option("--checkpoint", checkpoint, "model to evaluate")->required();
  ev->add_option("--platform", platform, "platform to evaluate on (default: target)");
  ev->add_option("--label", label, "report name (default: checkpoint file stem)");

  std::string which;
  auto* ab = app.add_subcommand("ablate", "run one ablation or sensitivity study end to end");
  add_common(ab, o);
  ab->add_option("--which", which,
                 "drop_ife, drop_fm, drop_le, source_size_sweep, finetune_size_sweep or latent_variant")
      ->required();

  std::string matrix, kernel = "spmm";
  std::size_t k = 5;
  auto* tn = app.add_subcommand("tune", "print the top-k configurations of one matrix");
  tn->add_option("--matrix", matrix, "Matrix Market file")->required();
  tn->add_option("--checkpoint", checkpoint, "trained model")->required();
  tn->add_option("-k,--k", k, "number of configurations to print");
  tn->add_option("--kernel", kernel, "spmm or sddmm");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*tn) {
      tune(matrix, checkpoint, k, kernel);
      return 0;
    }
    const auto c = resolve_config(o);
    if (*gc) gen_corpus(c);
    else if (*gd) gen_data(c);
    else if (*ta) train_ae(c, ae_platforms);
    else if (*pt) pretrain(c, variant);
    else if (*ft) finetune(c, variant, checkpoint);
    else if (*nt) no_transfer(c);
    else if (*ev) evaluate(c, checkpoint, platform, label);
    else if (*ab) ablate(c, which);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}
