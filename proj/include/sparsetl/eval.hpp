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
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "sparsetl/costmodel.hpp"
#include "sparsetl/metrics.hpp"
#include "sparsetl/training.hpp"

namespace sparsetl {

/// Baseline configuration per platform: mid-range tiles, every flag off.
inline ProgramConfig default_config(const PlatformSpec& spec) {
  switch (spec.id) {
    case Platform::spade: return SpadeConfig{32, 1024, 32, false, false, false};
    case Platform::cpu: return CpuConfig{32, 1024, 32, spec.orders.empty() ? kCpuSlots : spec.orders.front(), false};
    case Platform::gpu: return GpuConfig{32, 512, 32, spec.orders.empty() ? kGpuSlots : spec.orders.front(), 0, 0};
  }
  throw Error("unreachable");
}

struct MatrixResult {
  std::string matrix_id;
  double top1 = 0.0;     // runtime of the model's first pick
  double top5 = 0.0;     // best runtime among the first five picks
  double baseline = 0.0; // default configuration
  double optimal = 0.0;  // exhaustive optimum
  double opa = std::nan("");
  double ktau = std::nan("");
};

struct MetricsReport {
  std::string label;
  Platform platform = Platform::spade;
  Kernel kernel = Kernel::spmm;
  std::vector<MatrixResult> matrices;  // sorted by matrix id
  double speedup_top1 = 0.0, speedup_top5 = 0.0, speedup_optimal = 0.0;
  double ape_top1 = 0.0, ape_top5 = 0.0;
  double opa = std::nan(""), ktau = std::nan("");
  double dce = 0.0;
};

/// Ranks every enumerated configuration of each test matrix with `scorer`,
/// charges the surrogate for the top-k picks and aggregates all metrics.
template <typename Scorer>
MetricsReport evaluate_scorer(const Scorer& scorer, const PlatformSpec& spec, Kernel kernel,
                              std::span<const MatrixEntry> tests, const SurrogateConstants& constants = {}) {
  if (tests.empty()) throw Error("evaluation needs at least one test matrix");
  MetricsReport r;
  r.platform = spec.id;
  r.kernel = kernel;
  const auto base_config = default_config(spec);
  double opa_sum = 0.0, ktau_sum = 0.0;
  std::size_t rank_terms = 0;
  for (const auto& m : tests) {
    const auto configs = enumerate_configs(spec, m.profile.cols);
    std::vector<double> runtimes;
    runtimes.reserve(configs.size());
    for (const auto& c : configs) runtimes.push_back(surrogate_runtime(spec.id, kernel, m.profile, c, constants));
    const auto scores = scorer(m, std::span<const ProgramConfig>(configs));
    const auto order = ranking_order(scores);
    MatrixResult mr;
    mr.matrix_id = m.profile.name;
    mr.top1 = runtimes[order[0]];
    mr.top5 = mr.top1;
    for (std::size_t k = 1; k < std::min<std::size_t>(5, order.size()); ++k) mr.top5 = std::min(mr.top5, runtimes[order[k]]);
    mr.baseline = surrogate_runtime(spec.id, kernel, m.profile, base_config, constants);
    mr.optimal = *std::min_element(runtimes.begin(), runtimes.end());
    try {
      mr.opa = ordered_pair_accuracy(scores, runtimes);
      mr.ktau = kendall_tau(scores, runtimes);
      opa_sum += mr.opa;
      ktau_sum += mr.ktau;
      ++rank_terms;
    } catch (const Error&) {
      // a constant scorer has no rank statistics
    }
    r.matrices.push_back(mr);
  }
  std::sort(r.matrices.begin(), r.matrices.end(),
            [](const MatrixResult& a, const MatrixResult& b) { return a.matrix_id < b.matrix_id; });
  std::vector<double> base, t1, t5, opt;
  std::vector<std::pair<double, double>> gap1, gap5;
  for (const auto& mr : r.matrices) {
    base.push_back(mr.baseline);
    t1.push_back(mr.top1);
    t5.push_back(mr.top5);
    opt.push_back(mr.optimal);
    gap1.emplace_back(mr.top1, mr.optimal);
    gap5.emplace_back(mr.top5, mr.optimal);
  }
  r.speedup_top1 = geomean_speedup(base, t1);
  r.speedup_top5 = geomean_speedup(base, t5);
  r.speedup_optimal = geomean_speedup(base, opt);
  r.ape_top1 = ape(gap1);
  r.ape_top5 = ape(gap5);
  if (rank_terms) {
    r.opa = opa_sum / static_cast<double>(rank_terms);
    r.ktau = ktau_sum / static_cast<double>(rank_terms);
  }
  return r;
}

inline MetricsReport evaluate_model(const CostModel& model, const PlatformSpec& spec, Kernel kernel,
                                    std::span<const MatrixEntry> tests, const SurrogateConstants& constants = {}) {
  if (model.platform != spec.id)
    throw PlatformMismatch("a " + std::string(to_string(model.platform)) + " model cannot be evaluated on " +
                           std::string(to_string(spec.id)));
  return evaluate_scorer(ModelScorer{&model}, spec, kernel, tests, constants);
}

// -------------------------------------------------------------------- reports

inline void write_report_csv(std::ostream& out, const MetricsReport& r) {
  out << "matrix_id,top1_runtime,top5_runtime,default_runtime,optimal_runtime,opa,ktau\n";
  for (const auto& m : r.matrices)
    out << m.matrix_id << ',' << m.top1 << ',' << m.top5 << ',' << m.baseline << ',' << m.optimal << ',' << m.opa
        << ',' << m.ktau << '\n';
}

/// Long-format per-matrix speedups over the default configuration.
inline void write_speedup_long_csv(std::ostream& out, std::span<const MetricsReport> reports) {
  out << "method,matrix_id,selection,speedup\n";
  for (const auto& r : reports)
    for (const auto& m : r.matrices) {
      out << r.label << ',' << m.matrix_id << ",top1," << m.baseline / m.top1 << '\n';
      out << r.label << ',' << m.matrix_id << ",top5," << m.baseline / m.top5 << '\n';
      out << r.label << ',' << m.matrix_id << ",optimal," << m.baseline / m.optimal << '\n';
    }
}

inline nlohmann::json summary_json(const MetricsReport& r) {
  const auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); };
  return {{"label", r.label},
          {"platform", to_string(r.platform)},
          {"kernel", to_string(r.kernel)},
          {"matrices", r.matrices.size()},
          {"speedup_top1", r.speedup_top1},
          {"speedup_top5", r.speedup_top5},
          {"speedup_optimal", r.speedup_optimal},
          {"ape_top1", r.ape_top1},
          {"ape_top5", r.ape_top5},
          {"opa", num(r.opa)},
          {"ktau", num(r.ktau)},
          {"dce", r.dce}};
}

// ----------------------------------------------------------- latent variants

enum class LatentVariant { autoencoder, raw, pca };

inline std::string to_string(LatentVariant v) {
  switch (v) {
    case LatentVariant::autoencoder: return "autoencoder";
    case LatentVariant::raw: return "raw";
    case LatentVariant::pca: return "pca";
  }
  return "?";
}

/// Fixed linear encoders that stand in for the trained autoencoder. `raw`
/// copies the heterogeneous vector into the first latent slots; `pca` writes
/// its centred principal-component coordinates there. Remaining slots are 0.
inline Autoencoder linear_latent_encoder(Platform platform, LatentVariant variant) {
  if (variant == LatentVariant::autoencoder) throw Error("the autoencoder variant is trained, not constructed");
  const std::size_t w = heterogeneous_width(platform);
  nn::Dense d{w, kLatentWidth, nn::Tensor({kLatentWidth, w}), nn::Tensor({kLatentWidth})};
  if (variant == LatentVariant::raw) {
    for (std::size_t i = 0; i < w; ++i) d.weight.data[i * w + i] = 1.0;
  } else {
    const auto points = enumerate_heterogeneous(platform);
    Eigen::MatrixXd X(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(w));
    for (std::size_t r = 0; r < points.size(); ++r)
      for (std::size_t c = 0; c < w; ++c) X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = points[r].values[c];
    const Eigen::RowVectorXd mean = X.colwise().mean();
    const Eigen::MatrixXd centred = X.rowwise() - mean;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(centred.transpose() * centred);
    // Eigen sorts eigenvalues ascending; the leading component goes first.
    for (std::size_t k = 0; k < w; ++k) {
      const auto col = eig.eigenvectors().col(static_cast<Eigen::Index>(w - 1 - k));
      double bias = 0.0;
      for (std::size_t c = 0; c < w; ++c) {
        d.weight.data[k * w + c] = col(static_cast<Eigen::Index>(c));
        bias -= col(static_cast<Eigen::Index>(c)) * mean(static_cast<Eigen::Index>(c));
      }
      d.bias.data[k] = bias;
    }
  }
  Autoencoder ae;
  ae.platform = platform;
  ae.encoder.input_shape = {w};
  ae.encoder.layers.emplace_back(std::move(d));
  nn::validate_network(ae.encoder);
  return ae;
}

}  // namespace sparsetl
