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

#include <algorithm>
#include <set>

#include "sparsetl/config_space.hpp"

using namespace sparsetl;
using S = LoopSlot;

namespace {

std::vector<ProgramConfig> spade_space(std::size_t cols = 5000) {
  return enumerate_configs(default_platform_spec(Platform::spade), cols);
}

SpadeConfig spade(std::int64_t p_row, std::int64_t p_col, std::int64_t s, bool b, bool by = false, bool ro = false) {
  return {p_row, p_col, s, b, by, ro};
}

// Reference insertion written as "shift every later position by one".
LoopOrder7 insert_by_positions(const LoopOrder6& w, LoopSlot anchor, LoopSlot extra) {
  std::array<int, 7> pos{};
  pos.fill(-1);
  int anchor_pos = -1;
  for (int p = 0; p < 6; ++p) {
    pos[static_cast<std::size_t>(w[static_cast<std::size_t>(p)])] = p;
    if (w[static_cast<std::size_t>(p)] == anchor) anchor_pos = p;
  }
  for (auto& p : pos)
    if (p > anchor_pos) ++p;
  pos[static_cast<std::size_t>(extra)] = anchor_pos + 1;
  LoopOrder7 out{};
  for (std::size_t s = 0; s < 7; ++s)
    if (pos[s] >= 0) out[static_cast<std::size_t>(pos[s])] = static_cast<LoopSlot>(s);
  return out;
}

}  // namespace

TEST(Enumerate, SpadeHas256Configs) {
  const auto space = spade_space();
  EXPECT_EQ(space.size(), 256u);
  std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t, bool, bool, bool>> distinct;
  for (const auto& c : space) {
    const auto& s = c.spade();
    distinct.emplace(s.p_row, s.p_col, s.s_split, s.barrier, s.bypass, s.reorder);
  }
  EXPECT_EQ(distinct.size(), 256u);
}

TEST(Enumerate, NumMatrixColsDeduplicates) {
  EXPECT_EQ(spade_space(65536).size(), 192u);
  EXPECT_EQ(spade_space(1024).size(), 192u);
}

TEST(Enumerate, DeterministicAndLexicographic) {
  const auto a = spade_space(), b = spade_space();
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.front().spade(), spade(4, 1024, 32, false));
  EXPECT_EQ(a[1].spade(), spade(4, 1024, 32, false, false, true));
  EXPECT_EQ(a.back().spade(), spade(2048, 65536, 256, true, true, true));
}

TEST(Enumerate, CpuAndGpuSizes) {
  EXPECT_EQ(enumerate_configs(default_platform_spec(Platform::cpu), 100).size(), 288u);
  EXPECT_EQ(enumerate_configs(default_platform_spec(Platform::gpu), 100).size(), 324u);
  for (auto p : kAllPlatforms)
    for (const auto& c : enumerate_configs(default_platform_spec(p), 777))
      EXPECT_NO_THROW(validate_config(c, default_platform_spec(p)));
}

TEST(MapPhi, WorkedRecord) {
  // Record fields: id 144, p_row 4, p_col 1024, split index 1 -> 32, b 0, bypass 0, reorder 0.
  const auto nest = map_phi(spade(4, 1024, 32, false));
  EXPECT_EQ(nest.i_split, 4);
  EXPECT_EQ(nest.j_split, 1024);
  EXPECT_EQ(nest.k_split, 32);
  EXPECT_EQ(nest.slot_ids(), (std::array<int, 7>{6, 7, 2, 4, 1, 3, 5}));
}

TEST(MapPhi, BarrierOrders) {
  const auto b1 = map_phi(spade(32, 16384, 256, true));
  const auto b0 = map_phi(spade(32, 16384, 256, false));
  EXPECT_EQ(b1.order, (LoopOrder7{S::k2, S::k3, S::j2, S::i2, S::i1, S::j1, S::k1}));
  EXPECT_EQ(b0.order, (LoopOrder7{S::k2, S::k3, S::i2, S::j2, S::i1, S::j1, S::k1}));
  auto swapped = b0.order;
  std::swap(swapped[2], swapped[3]);
  EXPECT_EQ(swapped, b1.order);
  EXPECT_EQ(b0.i_split, b1.i_split);
}

TEST(MapPhi, LoopTextOrientation) {
  const auto nest = map_phi(spade(4, 1024, 32, false), TilingOrientation::loop_text);
  EXPECT_EQ(nest.i_split, 1024);
  EXPECT_EQ(nest.j_split, 4);
}

TEST(MapPhi, RejectsOtherPlatforms) { EXPECT_THROW(map_phi(CpuConfig{}), PlatformMismatch); }

TEST(MapPi, Examples) {
  EXPECT_EQ(map_pi(Platform::cpu, 1, 1, 1, {S::i1, S::j1, S::k1, S::i2, S::j2, S::k2}).order,
            (LoopOrder7{S::i1, S::j1, S::k1, S::i2, S::j2, S::k2, S::k3}));
  EXPECT_EQ(map_pi(Platform::cpu, 1, 1, 1, {S::k2, S::i2, S::j2, S::i1, S::j1, S::k1}).order,
            (LoopOrder7{S::k2, S::k3, S::i2, S::j2, S::i1, S::j1, S::k1}));
  EXPECT_EQ(map_pi(Platform::gpu, 1, 1, 1, {S::i1, S::i2, S::j1, S::k1, S::k2, S::k3}).order,
            (LoopOrder7{S::i1, S::i2, S::j1, S::j2, S::k1, S::k2, S::k3}));
}

TEST(MapPi, AllPermutations) {
  for (auto [platform, slots, anchor, extra] :
       {std::tuple{Platform::cpu, kCpuSlots, S::k2, S::k3}, std::tuple{Platform::gpu, kGpuSlots, S::j1, S::j2}}) {
    auto w = slots;
    std::sort(w.begin(), w.end());
    int count = 0;
    do {
      const auto nest = map_pi(platform, 8, 16, 32, w);
      ASSERT_TRUE(nest.is_permutation());
      EXPECT_EQ(nest.order, insert_by_positions(w, anchor, extra));
      EXPECT_EQ(nest.position_of(extra), nest.position_of(anchor) + 1);
      // order embedding: the original six keep their relative order
      LoopOrder6 kept{};
      std::size_t p = 0;
      for (auto s : nest.order)
        if (s != extra) kept[p++] = s;
      EXPECT_EQ(kept, w);
      ++count;
    } while (std::next_permutation(w.begin(), w.end()));
    EXPECT_EQ(count, 720);
  }
}

TEST(MapPi, RejectsInvalidOrders) {
  EXPECT_THROW(map_pi(Platform::cpu, 1, 1, 1, {S::i1, S::i1, S::k1, S::i2, S::j2, S::k2}), Error);
  EXPECT_THROW(map_pi(Platform::gpu, 1, 1, 1, kCpuSlots), Error);
  EXPECT_THROW(map_pi(Platform::spade, 1, 1, 1, kCpuSlots), PlatformMismatch);
}

TEST(SplitConfig, HeterogeneousVectors) {
  EXPECT_EQ(split_config(spade(4, 1024, 32, false, true, false)).heterogeneous.values, (std::vector<double>{1, 0}));
  CpuConfig cpu{32, 1024, 32, kCpuSlots, true};
  EXPECT_EQ(split_config(cpu).heterogeneous.values, (std::vector<double>{1}));
  GpuConfig gpu{32, 512, 32, kGpuSlots, 2, 1};
  EXPECT_EQ(split_config(gpu).heterogeneous.values, (std::vector<double>{0, 0, 1, 0, 1, 0}));
}

TEST(SplitConfig, BarrierOnlyChangesOrder) {
  for (const auto& c : spade_space()) {
    auto s = c.spade();
    if (s.barrier) continue;
    auto flipped = s;
    flipped.barrier = true;
    const auto a = split_config(s), b = split_config(flipped);
    EXPECT_EQ(a.heterogeneous, b.heterogeneous);
    EXPECT_NE(a.homogeneous.order, b.homogeneous.order);
  }
}

TEST(SplitConfig, RecombinationIsLossless) {
  for (auto p : kAllPlatforms)
    for (auto orientation : {TilingOrientation::worked_example, TilingOrientation::loop_text})
      for (const auto& c : enumerate_configs(default_platform_spec(p), 3000)) {
        const auto split = split_config(c, orientation);
        EXPECT_EQ(recombine_config(split.homogeneous, split.heterogeneous, orientation), c);
      }
}

TEST(Encoding, HomogeneousVector) {
  CanonicalLoopNest unit{1, 1, 1, {S::i1, S::i2, S::j1, S::j2, S::k1, S::k2, S::k3}};
  const auto v = encode_homogeneous_vector(unit);
  ASSERT_EQ(v.size(), 52u);
  EXPECT_EQ(v[0], 0.0);
  EXPECT_EQ(v[1], 0.0);
  EXPECT_EQ(v[2], 0.0);
  for (std::size_t r = 0; r < 7; ++r)
    for (std::size_t c = 0; c < 7; ++c) EXPECT_EQ(v[3 + r * 7 + c], r == c ? 1.0 : 0.0);
  const auto padded = config_embedding_input(unit);
  EXPECT_EQ(padded.size(), 53u);
  EXPECT_EQ(padded[52], 0.0);
}

TEST(Encoding, OneHotIsPermutationMatrixAndInjective) {
  for (auto p : kAllPlatforms) {
    std::set<std::vector<double>> seen;
    std::set<std::pair<LoopOrder7, std::array<std::int64_t, 3>>> nests;
    for (const auto& c : enumerate_configs(default_platform_spec(p), 3000)) {
      const auto split = split_config(c);
      const auto v = encode_homogeneous_vector(split.homogeneous);
      for (std::size_t r = 0; r < 7; ++r) {
        double row = 0, col = 0;
        for (std::size_t k = 0; k < 7; ++k) {
          row += v[3 + r * 7 + k];
          col += v[3 + k * 7 + r];
        }
        EXPECT_EQ(row, 1.0);
        EXPECT_EQ(col, 1.0);
      }
      const auto& n = split.homogeneous;
      if (nests.emplace(n.order, std::array<std::int64_t, 3>{n.i_split, n.j_split, n.k_split}).second) {
        EXPECT_TRUE(seen.emplace(v.begin(), v.end()).second);
      }
    }
    EXPECT_EQ(seen.size(), nests.size());
  }
}

TEST(Encoding, FeatureAugmented) {
  EXPECT_EQ(feature_augmented_width(), 91u);
  CpuConfig cpu{32, 1024, 32, kCpuSlots, true};
  const auto v = feature_augmented_vector(cpu);
  ASSERT_EQ(v.size(), 91u);
  for (std::size_t i = 40; i < 46; ++i) EXPECT_EQ(v[i], 0.0);
  for (std::size_t i = 46; i < 91; ++i) EXPECT_EQ(v[i], 0.0);
  const auto s = feature_augmented_vector(spade(4, 1024, 32, true, false, true));
  EXPECT_EQ(std::count_if(s.begin(), s.begin() + 40, [](double x) { return x != 0; }), 0);
  EXPECT_EQ(s[43], 1.0);
  EXPECT_EQ(s[45], 1.0);
}

TEST(Validate, RejectsOutOfDomain) {
  const auto spade_spec = default_platform_spec(Platform::spade);
  EXPECT_THROW(validate_config(spade(5, 1024, 32, false), spade_spec), Error);
  EXPECT_THROW(validate_config(spade(4, 1024, 64, false), spade_spec), Error);
  EXPECT_NO_THROW(validate_config(spade(4, 777, 32, false), spade_spec));
  EXPECT_THROW(validate_config(CpuConfig{33, 1024, 32, kCpuSlots, false}, default_platform_spec(Platform::cpu)),
               Error);
  EXPECT_THROW(validate_config(spade(0, 1024, 32, false)), Error);
  EXPECT_THROW(validate_config(GpuConfig{32, 512, 32, kGpuSlots, 3, 0}), Error);
  EXPECT_THROW(validate_config(CpuConfig{32, 1024, 32, kGpuSlots, false}), Error);
  EXPECT_THROW(ProgramConfig(CpuConfig{}).spade(), PlatformMismatch);
}
