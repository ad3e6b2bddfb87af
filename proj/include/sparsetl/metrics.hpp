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

#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "sparsetl/error.hpp"

namespace sparsetl {

namespace detail {

inline void check_aligned(std::span<const double> a, std::span<const double> b, const char* what) {
  if (a.size() != b.size()) throw Error(std::string(what) + ": score and runtime lists differ in length");
  if (a.size() < 2) throw Error(std::string(what) + ": needs at least two entries");
}

inline int sign(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace detail

/// Fraction of pairs with distinct true runtimes whose predicted order agrees.
/// Lower score means faster. Pairs the model scores as tied count as wrong.
inline double ordered_pair_accuracy(std::span<const double> scores, std::span<const double> runtimes) {
  detail::check_aligned(scores, runtimes, "ordered_pair_accuracy");
  std::size_t total = 0, agree = 0;
  for (std::size_t i = 0; i < scores.size(); ++i)
    for (std::size_t j = i + 1; j < scores.size(); ++j) {
      const int t = detail::sign(runtimes[i] - runtimes[j]);
      if (t == 0) continue;
      ++total;
      if (detail::sign(scores[i] - scores[j]) == t) ++agree;
    }
  if (total == 0) throw Error("ordered_pair_accuracy: every runtime pair is tied");
  return static_cast<double>(agree) / static_cast<double>(total);
}

/// Kendall's tau-b between predicted scores and true runtimes.
inline double kendall_tau(std::span<const double> scores, std::span<const double> runtimes) {
  detail::check_aligned(scores, runtimes, "kendall_tau");
  double concordant = 0, discordant = 0, ties_x = 0, ties_y = 0, pairs = 0;
  for (std::size_t i = 0; i < scores.size(); ++i)
    for (std::size_t j = i + 1; j < scores.size(); ++j) {
      const int a = detail::sign(scores[i] - scores[j]);
      const int b = detail::sign(runtimes[i] - runtimes[j]);
      ++pairs;
      if (a == 0) ++ties_x;
      if (b == 0) ++ties_y;
      if (a * b > 0) ++concordant;
      if (a * b < 0) ++discordant;
    }
  const double denom = std::sqrt((pairs - ties_x) * (pairs - ties_y));
  if (denom == 0.0) throw Error("kendall_tau: one of the lists has zero variance");
  return (concordant - discordant) / denom;
}

/// Mean absolute percentage gap between the model-selected runtime and the optimum.
inline double ape(std::span<const std::pair<double, double>> model_and_optimal) {
  if (model_and_optimal.empty()) throw Error("ape: no matrices");
  double sum = 0.0;
  for (const auto& [t_cm, t_star] : model_and_optimal) {
    if (!(t_star > 0.0)) throw Error("ape: optimal runtime must be positive");
    sum += std::abs(t_cm - t_star) / t_star;
  }
  return sum / static_cast<double>(model_and_optimal.size()) * 100.0;
}

/// exp(mean(log(default / achieved)))
inline double geomean_speedup(std::span<const double> default_runtimes, std::span<const double> achieved) {
  if (default_runtimes.size() != achieved.size()) throw Error("geomean_speedup: lists differ in length");
  if (achieved.empty()) throw Error("geomean_speedup: no matrices");
  double acc = 0.0;
  for (std::size_t i = 0; i < achieved.size(); ++i) {
    if (!(default_runtimes[i] > 0.0) || !(achieved[i] > 0.0)) throw Error("geomean_speedup: runtimes must be positive");
    acc += std::log(default_runtimes[i] / achieved[i]);
  }
  return std::exp(acc / static_cast<double>(achieved.size()));
}

struct CollectionCost {
  double beta = 0.0;
  std::size_t samples = 0;
};

/// Data-collection expense in units of 10^6.
inline double dce(std::span<const CollectionCost> datasets) {
  double total = 0.0;
  for (const auto& d : datasets) total += d.beta * static_cast<double>(d.samples);
  return total / 1e6;
}

}  // namespace sparsetl
