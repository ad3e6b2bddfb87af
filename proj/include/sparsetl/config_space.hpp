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
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sparsetl/error.hpp"
#include "sparsetl/matrix_io.hpp"

namespace sparsetl {

enum class Platform { cpu, spade, gpu };
enum class Kernel { spmm, sddmm };

inline constexpr std::array<Platform, 3> kAllPlatforms = {Platform::cpu, Platform::spade, Platform::gpu};

inline std::string_view to_string(Platform p) {
  switch (p) {
    case Platform::cpu: return "cpu";
    case Platform::spade: return "spade";
    case Platform::gpu: return "gpu";
  }
  return "?";
}

inline Platform parse_platform(std::string_view s) {
  if (s == "cpu") return Platform::cpu;
  if (s == "spade") return Platform::spade;
  if (s == "gpu") return Platform::gpu;
  throw Error("unknown platform '" + std::string(s) + "'");
}

inline std::string_view to_string(Kernel k) { return k == Kernel::spmm ? "spmm" : "sddmm"; }

inline Kernel parse_kernel(std::string_view s) {
  if (s == "spmm") return Kernel::spmm;
  if (s == "sddmm") return Kernel::sddmm;
  throw Error("unknown kernel '" + std::string(s) + "'");
}

/// Canonical strip-mined loop slots. The gpu loop `j` is stored as j1 and the
/// unit loop inserted after it (j') as j2.
enum class LoopSlot : std::uint8_t { i1, i2, j1, j2, k1, k2, k3 };

inline constexpr std::size_t kCanonicalSlots = 7;
inline constexpr std::size_t kPlatformSlots = 6;

/// 1-based slot id (i1 = 1 ... k3 = 7), the numbering of the loop_1..loop_7 fields.
inline constexpr int slot_id(LoopSlot s) { return static_cast<int>(s) + 1; }

inline std::string_view to_string(LoopSlot s) {
  constexpr std::array<std::string_view, 7> names = {"i1", "i2", "j1", "j2", "k1", "k2", "k3"};
  return names[static_cast<std::size_t>(s)];
}

inline LoopSlot parse_loop_slot(std::string_view s) {
  constexpr std::array<std::string_view, 7> names = {"i1", "i2", "j1", "j2", "k1", "k2", "k3"};
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == s) return static_cast<LoopSlot>(i);
  if (s == "j") return LoopSlot::j1;
  throw Error("unknown loop slot '" + std::string(s) + "'");
}

using LoopOrder6 = std::array<LoopSlot, kPlatformSlots>;
using LoopOrder7 = std::array<LoopSlot, kCanonicalSlots>;

/// The six loops each platform's programming system strip-mines into.
inline constexpr LoopOrder6 kCpuSlots = {LoopSlot::i1, LoopSlot::i2, LoopSlot::j1,
                                         LoopSlot::j2, LoopSlot::k1, LoopSlot::k2};
inline constexpr LoopOrder6 kGpuSlots = {LoopSlot::i1, LoopSlot::i2, LoopSlot::j1,
                                         LoopSlot::k1, LoopSlot::k2, LoopSlot::k3};

struct CpuConfig {
  std::int64_t i_split = 1, j_split = 1, k_split = 1;
  LoopOrder6 order = kCpuSlots;
  bool format_reorder = false;
  friend bool operator==(const CpuConfig&, const CpuConfig&) = default;
};

/// `p_col` holds the resolved column-panel count (NUM_MATRIX_COLS already
/// replaced by the matrix's column count).
struct SpadeConfig {
  std::int64_t p_row = 4, p_col = 1024, s_split = 32;
  bool barrier = false, bypass = false, reorder = false;
  friend bool operator==(const SpadeConfig&, const SpadeConfig&) = default;
};

struct GpuConfig {
  std::int64_t i_split = 1, j_split = 1, k_split = 1;
  LoopOrder6 order = kGpuSlots;
  int binding = 0;  // category index
  int unroll = 0;   // category index
  friend bool operator==(const GpuConfig&, const GpuConfig&) = default;
};

/// A program configuration c_j for one platform.
class ProgramConfig {
 public:
  using Params = std::variant<CpuConfig, SpadeConfig, GpuConfig>;

  ProgramConfig() = default;
  ProgramConfig(CpuConfig c) : params_(c) {}
  ProgramConfig(SpadeConfig c) : params_(c) {}
  ProgramConfig(GpuConfig c) : params_(c) {}

  Platform platform() const noexcept { return static_cast<Platform>(params_.index()); }
  const Params& params() const noexcept { return params_; }

  const CpuConfig& cpu() const { return get<CpuConfig>(Platform::cpu); }
  const SpadeConfig& spade() const { return get<SpadeConfig>(Platform::spade); }
  const GpuConfig& gpu() const { return get<GpuConfig>(Platform::gpu); }

  friend bool operator==(const ProgramConfig&, const ProgramConfig&) = default;

 private:
  template <typename T>
  const T& get(Platform want) const {
    if (const auto* p = std::get_if<T>(&params_)) return *p;
    throw PlatformMismatch("expected a " + std::string(to_string(want)) + " configuration, got " +
                           std::string(to_string(platform())));
  }

  Params params_;
};

static_assert(std::variant_size_v<ProgramConfig::Params> == 3);

inline constexpr std::int64_t kNumMatrixCols = 0;  // placeholder in the spade p_col domain

/// Declared parameter domains and per-sample collection cost of a platform.
/// cpu/gpu use the split/order domains; spade uses the panel domains.
struct PlatformSpec {
  Platform id = Platform::cpu;
  double beta = 1.0;
  std::vector<std::int64_t> i_splits, j_splits, k_splits;
  std::vector<LoopOrder6> orders;
  int binding_categories = 0;
  int unroll_categories = 0;
  std::vector<std::int64_t> row_panels, col_panels, split_factors;
};

inline PlatformSpec default_platform_spec(Platform p) {
  using S = LoopSlot;
  PlatformSpec spec;
  spec.id = p;
  switch (p) {
    case Platform::cpu:
      spec.beta = 1.0;
      spec.i_splits = {4, 32, 256, 2048};
      spec.j_splits = {256, 1024, 16384};
      spec.k_splits = {32, 256};
      spec.orders = {
          {S::i1, S::j1, S::k1, S::i2, S::j2, S::k2}, {S::k2, S::i2, S::j2, S::i1, S::j1, S::k1},
          {S::k2, S::j2, S::i2, S::i1, S::j1, S::k1}, {S::i1, S::k1, S::j1, S::i2, S::k2, S::j2},
          {S::i1, S::j1, S::i2, S::k1, S::k2, S::j2}, {S::k1, S::k2, S::j1, S::i1, S::j2, S::i2},
      };
      break;
    case Platform::spade:
      spec.beta = 1000.0;
      spec.row_panels = {4, 32, 256, 2048};
      spec.col_panels = {1024, 16384, 65536, kNumMatrixCols};
      spec.split_factors = {32, 256};
      break;
    case Platform::gpu:
      spec.beta = 10.0;
      spec.i_splits = {4, 32, 256, 2048};
      spec.j_splits = {64, 512, 4096};
      spec.k_splits = {32};
      spec.orders = {
          {S::i1, S::i2, S::j1, S::k1, S::k2, S::k3},
          {S::i1, S::j1, S::i2, S::k1, S::k2, S::k3},
          {S::i1, S::i2, S::j1, S::k1, S::k3, S::k2},
      };
      spec.binding_categories = 3;
      spec.unroll_categories = 3;
      break;
  }
  return spec;
}

namespace detail {

inline bool is_permutation_of(const LoopOrder6& order, const LoopOrder6& slots) {
  auto a = order, b = slots;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

inline std::vector<std::int64_t> resolved_col_panels(const PlatformSpec& spec, std::size_t cols) {
  std::vector<std::int64_t> out;
  for (auto v : spec.col_panels) out.push_back(v == kNumMatrixCols ? static_cast<std::int64_t>(cols) : v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

/// Throws when a configuration is outside its platform's structural domain
/// (non-positive splits, ω not a permutation, unknown category).
inline void validate_config(const ProgramConfig& c) {
  std::visit(
      [](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SpadeConfig>) {
          if (p.p_row < 1 || p.p_col < 1 || p.s_split < 1) throw Error("spade tiling values must be positive");
        } else {
          if (p.i_split < 1 || p.j_split < 1 || p.k_split < 1) throw Error("split factors must be positive");
          const auto& slots = std::is_same_v<T, CpuConfig> ? kCpuSlots : kGpuSlots;
          if (!detail::is_permutation_of(p.order, slots)) throw Error("loop order is not a permutation of the platform's slots");
          if constexpr (std::is_same_v<T, GpuConfig>) {
            if (p.binding < 0 || p.binding > 2 || p.unroll < 0 || p.unroll > 2)
              throw Error("gpu binding/unroll category out of range");
          }
        }
      },
      c.params());
}

/// Structural checks plus membership of every value in `spec`'s domains.
/// Any p_col is accepted when the spade domain contains NUM_MATRIX_COLS.
inline void validate_config(const ProgramConfig& c, const PlatformSpec& spec) {
  validate_config(c);
  if (c.platform() != spec.id) throw PlatformMismatch("configuration and platform spec disagree");
  const auto in = [](const auto& domain, const auto& v) {
    return std::find(domain.begin(), domain.end(), v) != domain.end();
  };
  if (c.platform() == Platform::spade) {
    const auto& s = c.spade();
    const bool any_cols = in(spec.col_panels, kNumMatrixCols);
    if (!in(spec.row_panels, s.p_row) || !in(spec.split_factors, s.s_split) ||
        (!any_cols && !in(spec.col_panels, s.p_col)))
      throw Error("spade configuration outside the declared domains");
    return;
  }
  const auto check = [&](const auto& p) {
    if (!in(spec.i_splits, p.i_split) || !in(spec.j_splits, p.j_split) || !in(spec.k_splits, p.k_split) ||
        !in(spec.orders, p.order))
      throw Error(std::string(to_string(c.platform())) + " configuration outside the declared domains");
  };
  if (c.platform() == Platform::cpu) {
    check(c.cpu());
  } else {
    check(c.gpu());
    if (c.gpu().binding >= spec.binding_categories || c.gpu().unroll >= spec.unroll_categories)
      throw Error("gpu category outside the declared domains");
  }
}

/// Every configuration of the platform, in lexicographic order of its fields:
/// spade (p_row, p_col, s_split, barrier, bypass, reorder);
/// cpu (I, J, K, ω, format_reorder); gpu (I, J, K, ω, binding, unroll).
/// `cols` resolves NUM_MATRIX_COLS; duplicate panel values collapse.
inline std::vector<ProgramConfig> enumerate_configs(const PlatformSpec& spec, std::size_t cols) {
  std::vector<ProgramConfig> out;
  switch (spec.id) {
    case Platform::spade: {
      const auto pcols = detail::resolved_col_panels(spec, cols);
      for (auto pr : spec.row_panels)
        for (auto pc : pcols)
          for (auto s : spec.split_factors)
            for (int b = 0; b < 2; ++b)
              for (int by = 0; by < 2; ++by)
                for (int ro = 0; ro < 2; ++ro) out.emplace_back(SpadeConfig{pr, pc, s, b != 0, by != 0, ro != 0});
      break;
    }
    case Platform::cpu:
      for (auto i : spec.i_splits)
        for (auto j : spec.j_splits)
          for (auto k : spec.k_splits)
            for (const auto& w : spec.orders)
              for (int fr = 0; fr < 2; ++fr) out.emplace_back(CpuConfig{i, j, k, w, fr != 0});
      break;
    case Platform::gpu:
      for (auto i : spec.i_splits)
        for (auto j : spec.j_splits)
          for (auto k : spec.k_splits)
            for (const auto& w : spec.orders)
              for (int b = 0; b < spec.binding_categories; ++b)
                for (int u = 0; u < spec.unroll_categories; ++u) out.emplace_back(GpuConfig{i, j, k, w, b, u});
      break;
  }
  return out;
}

inline std::vector<ProgramConfig> enumerate_configs(const PlatformSpec& spec, const SparseMatrixCSR& m) {
  return enumerate_configs(spec, m.cols);
}

/// Unified loop-nest representation shared by every platform.
struct CanonicalLoopNest {
  std::int64_t i_split = 1, j_split = 1, k_split = 1;
  LoopOrder7 order{};  // order[pos] = slot executed at depth pos (0 = outermost)

  /// Slot ids in execution order, the loop_1..loop_7 record fields.
  std::array<int, kCanonicalSlots> slot_ids() const {
    std::array<int, kCanonicalSlots> ids{};
    for (std::size_t p = 0; p < kCanonicalSlots; ++p) ids[p] = slot_id(order[p]);
    return ids;
  }

  std::size_t position_of(LoopSlot s) const {
    return static_cast<std::size_t>(std::find(order.begin(), order.end(), s) - order.begin());
  }

  bool is_permutation() const {
    std::array<bool, kCanonicalSlots> seen{};
    for (auto s : order) {
      const auto i = static_cast<std::size_t>(s);
      if (i >= kCanonicalSlots || seen[i]) return false;
      seen[i] = true;
    }
    return true;
  }

  friend bool operator==(const CanonicalLoopNest&, const CanonicalLoopNest&) = default;
};

/// Which spade tiling parameter feeds which canonical split.
/// `worked_example`: i <- p_row, j <- p_col (default).
/// `loop_text`: i <- p_col, j <- p_row.
enum class TilingOrientation { worked_example, loop_text };

/// Inserts `inserted` directly after `anchor`, shifting later slots outward.
inline LoopOrder7 insert_after(const LoopOrder6& order, LoopSlot anchor, LoopSlot inserted) {
  LoopOrder7 out{};
  std::size_t p = 0;
  for (auto s : order) {
    out[p++] = s;
    if (s == anchor) out[p++] = inserted;
  }
  return out;
}

/// Maps spade tiling + barrier onto the canonical strip-mined nest. The barrier
/// bit selects the core order; k3 (unit split) is then placed right after k2.
inline CanonicalLoopNest map_phi(const ProgramConfig& c,
                                 TilingOrientation orientation = TilingOrientation::worked_example) {
  if (c.platform() != Platform::spade) throw PlatformMismatch("map_phi applies to spade configurations only");
  const auto& s = c.spade();
  using S = LoopSlot;
  const LoopOrder6 core = s.barrier ? LoopOrder6{S::k2, S::j2, S::i2, S::i1, S::j1, S::k1}
                                    : LoopOrder6{S::k2, S::i2, S::j2, S::i1, S::j1, S::k1};
  CanonicalLoopNest nest;
  if (orientation == TilingOrientation::worked_example) {
    nest.i_split = s.p_row;
    nest.j_split = s.p_col;
  } else {
    nest.i_split = s.p_col;
    nest.j_split = s.p_row;
  }
  nest.k_split = s.s_split;
  nest.order = insert_after(core, S::k2, S::k3);
  return nest;
}

/// Extends a cpu or gpu six-loop nest to the canonical seven slots:
/// cpu gains k3 right after k2, gpu gains j' (stored as j2) right after j.
inline CanonicalLoopNest map_pi(Platform platform, std::int64_t i_split, std::int64_t j_split, std::int64_t k_split,
                                const LoopOrder6& order) {
  CanonicalLoopNest nest{i_split, j_split, k_split, {}};
  switch (platform) {
    case Platform::cpu:
      if (!detail::is_permutation_of(order, kCpuSlots)) throw Error("cpu loop order is not a permutation of its slots");
      nest.order = insert_after(order, LoopSlot::k2, LoopSlot::k3);
      break;
    case Platform::gpu:
      if (!detail::is_permutation_of(order, kGpuSlots)) throw Error("gpu loop order is not a permutation of its slots");
      nest.order = insert_after(order, LoopSlot::j1, LoopSlot::j2);
      break;
    case Platform::spade:
      throw PlatformMismatch("map_pi applies to cpu and gpu configurations only");
  }
  return nest;
}

/// Hardware-specific parameters with no cross-platform analogue.
/// spade: [bypass, reorder]; cpu: [format_reorder];
/// gpu: one-hot(binding, 3) followed by one-hot(unroll, 3).
struct HeterogeneousParams {
  Platform platform = Platform::cpu;
  std::vector<double> values;
  friend bool operator==(const HeterogeneousParams&, const HeterogeneousParams&) = default;
};

inline std::size_t heterogeneous_width(Platform p) {
  switch (p) {
    case Platform::cpu: return 1;
    case Platform::spade: return 2;
    case Platform::gpu: return 6;
  }
  return 0;
}

/// Every distinct heterogeneous vector of a platform (the autoencoder's training set).
inline std::vector<HeterogeneousParams> enumerate_heterogeneous(Platform p) {
  std::vector<HeterogeneousParams> out;
  switch (p) {
    case Platform::cpu:
      for (int fr = 0; fr < 2; ++fr) out.push_back({p, {double(fr)}});
      break;
    case Platform::spade:
      for (int by = 0; by < 2; ++by)
        for (int ro = 0; ro < 2; ++ro) out.push_back({p, {double(by), double(ro)}});
      break;
    case Platform::gpu:
      for (int b = 0; b < 3; ++b)
        for (int u = 0; u < 3; ++u) {
          std::vector<double> v(6, 0.0);
          v[static_cast<std::size_t>(b)] = 1.0;
          v[3 + static_cast<std::size_t>(u)] = 1.0;
          out.push_back({p, std::move(v)});
        }
      break;
  }
  return out;
}

struct SplitConfig {
  CanonicalLoopNest homogeneous;
  HeterogeneousParams heterogeneous;
};

inline SplitConfig split_config(const ProgramConfig& c,
                                TilingOrientation orientation = TilingOrientation::worked_example) {
  validate_config(c);
  switch (c.platform()) {
    case Platform::spade: {
      const auto& s = c.spade();
      return {map_phi(c, orientation), {Platform::spade, {double(s.bypass), double(s.reorder)}}};
    }
    case Platform::cpu: {
      const auto& p = c.cpu();
      return {map_pi(Platform::cpu, p.i_split, p.j_split, p.k_split, p.order),
              {Platform::cpu, {double(p.format_reorder)}}};
    }
    case Platform::gpu: {
      const auto& p = c.gpu();
      std::vector<double> v(6, 0.0);
      v[static_cast<std::size_t>(p.binding)] = 1.0;
      v[3 + static_cast<std::size_t>(p.unroll)] = 1.0;
      return {map_pi(Platform::gpu, p.i_split, p.j_split, p.k_split, p.order), {Platform::gpu, std::move(v)}};
    }
  }
  throw Error("unreachable");
}

namespace detail {

inline int argmax_block(const std::vector<double>& v, std::size_t begin, std::size_t n) {
  return static_cast<int>(std::max_element(v.begin() + static_cast<std::ptrdiff_t>(begin),
                                           v.begin() + static_cast<std::ptrdiff_t>(begin + n)) -
                          (v.begin() + static_cast<std::ptrdiff_t>(begin)));
}

inline LoopOrder6 drop_slot(const LoopOrder7& order, LoopSlot removed) {
  LoopOrder6 out{};
  std::size_t p = 0;
  for (auto s : order)
    if (s != removed) out[p++] = s;
  return out;
}

}  // namespace detail

/// Inverse of split_config over the enumerated domains.
inline ProgramConfig recombine_config(const CanonicalLoopNest& nest, const HeterogeneousParams& h,
                                      TilingOrientation orientation = TilingOrientation::worked_example) {
  if (h.values.size() != heterogeneous_width(h.platform))
    throw ShapeError("heterogeneous vector has the wrong width for its platform");
  switch (h.platform) {
    case Platform::spade: {
      SpadeConfig s;
      const bool worked = orientation == TilingOrientation::worked_example;
      s.p_row = worked ? nest.i_split : nest.j_split;
      s.p_col = worked ? nest.j_split : nest.i_split;
      s.s_split = nest.k_split;
      s.barrier = nest.position_of(LoopSlot::j2) < nest.position_of(LoopSlot::i2);
      s.bypass = h.values[0] > 0.5;
      s.reorder = h.values[1] > 0.5;
      return s;
    }
    case Platform::cpu:
      return CpuConfig{nest.i_split, nest.j_split, nest.k_split, detail::drop_slot(nest.order, LoopSlot::k3),
                       h.values[0] > 0.5};
    case Platform::gpu:
      return GpuConfig{nest.i_split, nest.j_split, nest.k_split, detail::drop_slot(nest.order, LoopSlot::j2),
                       detail::argmax_block(h.values, 0, 3), detail::argmax_block(h.values, 3, 3)};
  }
  throw Error("unreachable");
}

inline constexpr std::size_t kHomogeneousWidth = 3 + kCanonicalSlots * kCanonicalSlots;  // 52
inline constexpr std::size_t kConfigEmbeddingInput = 53;  // homogeneous vector + one zero pad
inline constexpr double kSplitLog2Scale = 24.0;

/// [log2 splits / 24] followed by the 7x7 one-hot (row = position, column =
/// slot) of the loop order, flattened row-major.
inline std::array<double, kHomogeneousWidth> encode_homogeneous_vector(const CanonicalLoopNest& nest) {
  std::array<double, kHomogeneousWidth> v{};
  v[0] = std::log2(static_cast<double>(nest.i_split)) / kSplitLog2Scale;
  v[1] = std::log2(static_cast<double>(nest.j_split)) / kSplitLog2Scale;
  v[2] = std::log2(static_cast<double>(nest.k_split)) / kSplitLog2Scale;
  for (std::size_t pos = 0; pos < kCanonicalSlots; ++pos)
    v[3 + pos * kCanonicalSlots + static_cast<std::size_t>(nest.order[pos])] = 1.0;
  return v;
}

/// The 53-wide configuration-mapper input: the homogeneous vector, zero padded.
inline std::array<double, kConfigEmbeddingInput> config_embedding_input(const CanonicalLoopNest& nest) {
  std::array<double, kConfigEmbeddingInput> out{};
  const auto v = encode_homogeneous_vector(nest);
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

/// Raw per-platform parameter vectors, used by the feature-augmentation
/// baseline. No cross-platform mapping is applied.
///  cpu:   [log2 I, log2 J, log2 K]/24, 6x6 one-hot of ω, format_reorder     (40)
///  spade: [log2 p_row, log2 p_col, log2 s_split]/24, barrier, bypass, reorder (6)
///  gpu:   [log2 I, log2 J, log2 K]/24, 6x6 one-hot of ω, one-hot binding(3), one-hot unroll(3) (45)
inline std::size_t raw_config_width(Platform p) {
  switch (p) {
    case Platform::cpu: return 40;
    case Platform::spade: return 6;
    case Platform::gpu: return 45;
  }
  return 0;
}

inline std::vector<double> raw_config_vector(const ProgramConfig& c) {
  std::vector<double> v(raw_config_width(c.platform()), 0.0);
  const auto lg = [](std::int64_t x) { return std::log2(static_cast<double>(x)) / kSplitLog2Scale; };
  const auto one_hot_order = [&v](const LoopOrder6& order, const LoopOrder6& slots) {
    for (std::size_t pos = 0; pos < kPlatformSlots; ++pos) {
      const auto idx = static_cast<std::size_t>(std::find(slots.begin(), slots.end(), order[pos]) - slots.begin());
      v[3 + pos * kPlatformSlots + idx] = 1.0;
    }
  };
  switch (c.platform()) {
    case Platform::cpu: {
      const auto& p = c.cpu();
      v[0] = lg(p.i_split), v[1] = lg(p.j_split), v[2] = lg(p.k_split);
      one_hot_order(p.order, kCpuSlots);
      v[39] = p.format_reorder ? 1.0 : 0.0;
      break;
    }
    case Platform::spade: {
      const auto& p = c.spade();
      v = {lg(p.p_row), lg(p.p_col), lg(p.s_split), double(p.barrier), double(p.bypass), double(p.reorder)};
      break;
    }
    case Platform::gpu: {
      const auto& p = c.gpu();
      v[0] = lg(p.i_split), v[1] = lg(p.j_split), v[2] = lg(p.k_split);
      one_hot_order(p.order, kGpuSlots);
      v[39 + static_cast<std::size_t>(p.binding)] = 1.0;
      v[42 + static_cast<std::size_t>(p.unroll)] = 1.0;
      break;
    }
  }
  return v;
}

/// Concatenation of all platforms' raw vectors (cpu, spade, gpu) with the
/// slots of the other platforms zeroed.
inline std::size_t feature_augmented_width() {
  return raw_config_width(Platform::cpu) + raw_config_width(Platform::spade) + raw_config_width(Platform::gpu);
}

inline std::vector<double> feature_augmented_vector(const ProgramConfig& c) {
  std::vector<double> v(feature_augmented_width(), 0.0);
  std::size_t offset = 0;
  for (auto p : kAllPlatforms) {
    if (p == c.platform()) {
      const auto raw = raw_config_vector(c);
      std::copy(raw.begin(), raw.end(), v.begin() + static_cast<std::ptrdiff_t>(offset));
    }
    offset += raw_config_width(p);
  }
  return v;
}

}  // namespace sparsetl
