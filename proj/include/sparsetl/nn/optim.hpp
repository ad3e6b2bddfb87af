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
#include <cstdint>
#include <vector>

#include "sparsetl/error.hpp"
#include "sparsetl/nn/network.hpp"

namespace sparsetl::nn {

struct AdamConfig {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// Per-parameter first/second moments of one network.
struct OptimizerState {
  AdamConfig config;
  std::uint64_t step = 0;
  std::vector<Tensor> m, v;
};

inline OptimizerState make_adam(const Network& net, AdamConfig config = {}) {
  OptimizerState s;
  s.config = config;
  s.m = zero_gradients(net);
  s.v = zero_gradients(net);
  return s;
}

/// One bias-corrected Adam update. Non-finite gradients abort training.
inline void adam_step(OptimizerState& state, Network& net, const std::vector<Tensor>& grads) {
  auto params = net.parameters();
  if (grads.size() != params.size() || state.m.size() != params.size())
    throw ShapeError("optimizer state, gradients and parameters disagree in count");
  for (std::size_t i = 0; i < grads.size(); ++i) {
    if (grads[i].shape != params[i]->shape || state.m[i].shape != params[i]->shape)
      throw ShapeError("gradient " + std::to_string(i) + " has shape " + shape_string(grads[i].shape) +
                       ", parameter has " + shape_string(params[i]->shape));
    for (double g : grads[i].data)
      if (!std::isfinite(g)) throw DivergenceError("non-finite gradient in parameter tensor " + std::to_string(i));
  }
  const auto& c = state.config;
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(c.beta1, t);
  const double correction2 = 1.0 - std::pow(c.beta2, t);
  for (std::size_t i = 0; i < grads.size(); ++i) {
    auto& p = params[i]->data;
    auto& m = state.m[i].data;
    auto& v = state.v[i].data;
    const auto& g = grads[i].data;
    for (std::size_t j = 0; j < p.size(); ++j) {
      m[j] = c.beta1 * m[j] + (1.0 - c.beta1) * g[j];
      v[j] = c.beta2 * v[j] + (1.0 - c.beta2) * g[j] * g[j];
      const double m_hat = m[j] / correction1;
      const double v_hat = v[j] / correction2;
      p[j] -= c.lr * m_hat / (std::sqrt(v_hat) + c.eps);
    }
  }
  ++net.version;
}

}  // namespace sparsetl::nn
