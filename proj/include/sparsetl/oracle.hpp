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
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sparsetl/config_space.hpp"
#include "sparsetl/matrix_io.hpp"

namespace sparsetl {

/// Structural summary the surrogate runtimes depend on.
struct MatrixProfile {
  std::string name;
  std::size_t rows = 0, cols = 0, nnz = 0;
  MatrixStats stats;
};

inline MatrixProfile make_profile(const SparseMatrixCSR& m) {
  return {m.name, m.rows, m.cols, m.nnz(), compute_stats(m)};
}

/// Constants of the analytical surrogates. Any change must bump `version`,
/// which is stamped into every dataset row and checkpoint.
struct SurrogateConstants {
  std::string version = "surrogate-v1";
  double dense_width = 128;  // N

  struct Spade {
    double buffer = 1 << 20;  // S_buf, elements
    double sync_cost = 50;    // c_s
    double tile_overhead = 200;
    double preprocess_rate = 0.05;  // c_p
  } spade;

  struct Cpu {
    double cache = 1 << 18;  // S_cache, elements
    double order_penalty = 0.3;
    double loop_overhead = 100;  // c_l
  } cpu;

  struct Gpu {
    double cache = 1 << 16;
    double order_penalty = 0.3;
    double loop_overhead = 50;
    std::array<double, 3> category_multipliers = {1.0, 1.15, 1.3};
  } gpu;

  /// Optional seeded multiplicative noise, uniform in [1 - jitter, 1 + jitter].
  double jitter = 0.0;
  std::uint64_t jitter_seed = 0;
};

namespace detail {

inline double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

inline double ceil_div(double a, double b) { return std::ceil(a / b); }

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_text(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t config_hash(const ProgramConfig& c) {
  std::uint64_t h = mix64(static_cast<std::uint64_t>(c.platform()));
  for (double v : raw_config_vector(c)) h = mix64(h ^ std::bit_cast<std::uint64_t>(v));
  return h;
}

}  // namespace detail

/// Deterministic stand-in for a platform's execution-time function.
inline double surrogate_runtime(Platform platform, Kernel kernel, const MatrixProfile& m, const ProgramConfig& c,
                                const SurrogateConstants& k = {}) {
  if (c.platform() != platform)
    throw PlatformMismatch("configuration for " + std::string(to_string(c.platform())) + " evaluated on " +
                           std::string(to_string(platform)));
  const double nnz = static_cast<double>(m.nnz);
  const double rows = static_cast<double>(m.rows);
  const double cols = static_cast<double>(m.cols);
  const double g = m.stats.gini;
  const double w = m.stats.bandwidth;
  const double compute_scale = kernel == Kernel::sddmm ? 2.0 : 1.0;
  double t = 0.0;

  switch (platform) {
    case Platform::spade: {
      const auto& s = c.spade();
      const double nt = detail::ceil_div(rows, double(s.p_row)) * detail::ceil_div(cols, double(s.p_col));
      const double reuse = detail::clamp01(k.spade.buffer / (double(s.p_col) * k.dense_width));
      const double t_comp = compute_scale * nnz * (1.0 + 0.05 * std::abs(std::log2(double(s.s_split)) - 6.0));
      double t_mem = nnz * (2.0 - reuse);
      double t_pre = 0.0;
      if (s.bypass) t_mem *= 0.65 + 0.5 * reuse;
      if (s.barrier) t_mem *= 1.0 - 0.2 * g;
      if (s.reorder) {
        t_mem *= 1.0 - 0.35 * w;
        t_pre = k.spade.preprocess_rate * nnz;
      }
      const double t_sync = s.barrier ? k.spade.sync_cost * nt : 0.0;
      t = t_comp + t_mem + t_sync + t_pre + k.spade.tile_overhead * nt;
      break;
    }
    case Platform::cpu: {
      const auto& p = c.cpu();
      const auto nest = map_pi(Platform::cpu, p.i_split, p.j_split, p.k_split, p.order);
      const LoopSlot inner = nest.order.back();
      const double ord = (inner == LoopSlot::k1 || inner == LoopSlot::k3) ? 1.0 : 1.0 + k.cpu.order_penalty;
      const double overflow = detail::clamp01(double(p.j_split) * k.dense_width / k.cpu.cache);
      const double fr = p.format_reorder ? 1.1 - 0.4 * g : 1.0;
      t = compute_scale * nnz * ord * (1.0 + 0.8 * overflow) * fr +
          k.cpu.loop_overhead * (rows / double(p.i_split) + cols / double(p.j_split));
      break;
    }
    case Platform::gpu: {
      const auto& p = c.gpu();
      const auto nest = map_pi(Platform::gpu, p.i_split, p.j_split, p.k_split, p.order);
      const LoopSlot inner = nest.order.back();
      const double ord = (inner == LoopSlot::k1 || inner == LoopSlot::k3) ? 1.0 : 1.0 + k.gpu.order_penalty;
      const double overflow = detail::clamp01(double(p.j_split) * k.dense_width / k.gpu.cache);
      const double mult = k.gpu.category_multipliers.at(static_cast<std::size_t>(p.binding)) *
                          k.gpu.category_multipliers.at(static_cast<std::size_t>(p.unroll));
      t = compute_scale * nnz * ord * (1.0 + 0.8 * overflow) * mult +
          k.gpu.loop_overhead * (rows / double(p.i_split) + cols / double(p.j_split));
      break;
    }
  }

  if (k.jitter > 0.0) {
    const std::uint64_t h = detail::mix64(k.jitter_seed ^ detail::hash_text(m.name) ^ detail::config_hash(c));
    const double u = static_cast<double>(h >> 11) * 0x1.0p-53;  // [0, 1)
    t *= 1.0 + k.jitter * (2.0 * u - 1.0);
  }
  return t;
}

inline double surrogate_runtime(Platform platform, Kernel kernel, const SparseMatrixCSR& m, const ProgramConfig& c,
                                const SurrogateConstants& k = {}) {
  return surrogate_runtime(platform, kernel, make_profile(m), c, k);
}

struct Optimum {
  std::size_t index = 0;  // position in the scanned list
  ProgramConfig config;
  double runtime = 0.0;
};

/// Exhaustive argmin of `runtime_of` over `configs`; the first minimum in
/// list order wins ties.
template <typename RuntimeOf>
Optimum argmin_config(std::span<const ProgramConfig> configs, RuntimeOf&& runtime_of) {
  if (configs.empty()) throw Error("cannot take the optimum of an empty configuration list");
  Optimum best{0, configs[0], std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const double t = runtime_of(configs[i]);
    if (t < best.runtime) best = {i, configs[i], t};
  }
  return best;
}

inline Optimum brute_force_optimum(const PlatformSpec& spec, Kernel kernel, const MatrixProfile& m,
                                   const SurrogateConstants& k = {}) {
  const auto configs = enumerate_configs(spec, m.cols);
  return argmin_config(configs, [&](const ProgramConfig& c) { return surrogate_runtime(spec.id, kernel, m, c, k); });
}

}  // namespace sparsetl
