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

// Trains a small transfer model (cpu source, spade target) and uses it to
// pick configurations for a matrix it has never seen.
//
//   demo_rank [matrix.mtx]
//
// Without an argument a banded matrix is generated. The demo shrinks the
// protocol so it finishes in well under a minute.

#include <fstream>
#include <iomanip>
#include <iostream>

#include "sparsetl/experiment.hpp"

using namespace sparsetl;

int main(int argc, char** argv) {
  try {
    ExperimentConfig c;
    c.corpus_size = 40;
    c.corpus_max_rows = 8192;
    c.test_matrices = 5;
    c.finetune_matrices = 5;
    c.pretrain_matrices = 20;
    c.hp.epochs = 5;
    c.hp.pairs_per_matrix = 128;

    const auto corpus = entries_of(build_corpus(c));
    const auto ctx = make_protocol_context(c, corpus, [](const std::string& s) { std::cerr << s << '\n'; });
    const auto tl = run_variant(ctx, variant_by_name("tl"));
    const CostModel& model = tl.finetune.model;

    SparseMatrixCSR m;
    if (argc > 1) {
      std::ifstream in(argv[1]);
      if (!in) throw Error(std::string("cannot open ") + argv[1]);
      m = parse_matrix_market(in, argv[1]);
    } else {
      m = generate_synthetic_matrix(MatrixKind::banded, 6000, 6000, 48000, 12345, "unseen_banded");
    }
    const auto entry = prepare_matrix(m, model.grid_resolution);
    const auto spec = default_platform_spec(Platform::spade);
    const auto configs = enumerate_configs(spec, m.cols);
    const auto picks = top_k(ModelScorer{&model}, entry, configs, 5);

    const auto runtime = [&](const ProgramConfig& cfg) {
      return surrogate_runtime(Platform::spade, c.kernel, entry.profile, cfg, ctx.config.oracle);
    };
    const auto best = brute_force_optimum(spec, c.kernel, entry.profile, ctx.config.oracle);
    const double base = runtime(default_config(spec));

    std::cout << m.name << ": " << m.rows << " x " << m.cols << ", " << m.nnz() << " nonzeros, " << configs.size()
              << " spade configurations\n\n";
    std::cout << "rank  speedup  config\n";
    for (std::size_t i = 0; i < picks.size(); ++i)
      std::cout << std::setw(4) << i + 1 << "  " << std::setw(7) << std::setprecision(3) << base / runtime(picks[i])
                << "  " << config_to_json(picks[i]).dump() << '\n';
    std::cout << "\nexhaustive optimum: " << std::setprecision(3) << base / best.runtime << "x over the default\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
