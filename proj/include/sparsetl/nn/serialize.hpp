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

#include <string>

#include "json.hpp"
#include "sparsetl/error.hpp"
#include "sparsetl/nn/network.hpp"

namespace sparsetl::nn {

inline constexpr int kNetworkFormatVersion = 1;

inline std::string to_string(ActivationKind k) {
  switch (k) {
    case ActivationKind::relu: return "relu";
    case ActivationKind::tanh: return "tanh";
    case ActivationKind::sigmoid: return "sigmoid";
  }
  return "?";
}

inline ActivationKind parse_activation(const std::string& s) {
  if (s == "relu") return ActivationKind::relu;
  if (s == "tanh") return ActivationKind::tanh;
  if (s == "sigmoid") return ActivationKind::sigmoid;
  throw Error("unknown activation '" + s + "'");
}

/// Layer metadata plus parameters as decimal numbers (shortest round-trip form).
inline nlohmann::json network_to_json(const Network& net) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& layer : net.layers) {
    nlohmann::json j;
    j["kind"] = layer_kind(layer);
    std::visit(
        [&j](const auto& l) {
          using T = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<T, Dense>) {
            j["in"] = l.in;
            j["out"] = l.out;
            j["weight"] = l.weight.data;
            j["bias"] = l.bias.data;
          } else if constexpr (std::is_same_v<T, Conv2d>) {
            j["in"] = l.in_channels;
            j["out"] = l.out_channels;
            j["kernel"] = l.kernel;
            j["weight"] = l.weight.data;
            j["bias"] = l.bias.data;
          } else if constexpr (std::is_same_v<T, MaxPool2d>) {
            j["window"] = l.window;
          } else if constexpr (std::is_same_v<T, Activation>) {
            j["activation"] = to_string(l.kind);
          }
        },
        layer);
    layers.push_back(std::move(j));
  }
  return {{"format", "sparsetl-network"}, {"version", kNetworkFormatVersion}, {"input_shape", net.input_shape},
          {"layers", std::move(layers)}};
}

/// Rebuilds a network and checks that its layer shapes compose.
inline Network network_from_json(const nlohmann::json& j) {
  if (j.value("format", "") != "sparsetl-network") throw Error("not a network document");
  if (j.value("version", 0) != kNetworkFormatVersion)
    throw Error("unsupported network format version " + std::to_string(j.value("version", 0)));
  Network net;
  net.input_shape = j.at("input_shape").get<Shape>();
  const auto tensor = [](const nlohmann::json& values, Shape shape) {
    return Tensor(std::move(shape), values.get<std::vector<double>>());
  };
  for (const auto& lj : j.at("layers")) {
    const auto kind = lj.at("kind").get<std::string>();
    if (kind == "dense") {
      const auto in = lj.at("in").get<std::size_t>(), out = lj.at("out").get<std::size_t>();
      net.layers.emplace_back(Dense{in, out, tensor(lj.at("weight"), {out, in}), tensor(lj.at("bias"), {out})});
    } else if (kind == "conv") {
      const auto in = lj.at("in").get<std::size_t>(), out = lj.at("out").get<std::size_t>();
      const auto k = lj.at("kernel").get<std::size_t>();
      net.layers.emplace_back(
          Conv2d{in, out, k, tensor(lj.at("weight"), {out, in, k, k}), tensor(lj.at("bias"), {out})});
    } else if (kind == "pool") {
      net.layers.emplace_back(MaxPool2d{lj.at("window").get<std::size_t>()});
    } else if (kind == "activation") {
      net.layers.emplace_back(Activation{parse_activation(lj.at("activation").get<std::string>())});
    } else if (kind == "global_pool") {
      net.layers.emplace_back(GlobalAvgPool{});
    } else {
      throw Error("unknown layer kind '" + kind + "'");
    }
  }
  validate_network(net);
  return net;
}

}  // namespace sparsetl::nn
