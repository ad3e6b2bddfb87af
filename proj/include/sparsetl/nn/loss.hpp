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

#include "sparsetl/error.hpp"
#include "sparsetl/nn/tensor.hpp"

namespace sparsetl::nn {

struct PairLoss {
  double loss = 0.0;
  double d_r1 = 0.0;
  double d_r2 = 0.0;
};

/// max(0, -y * (r1 - r2) + margin). With y = sign(t1 - t2) the slower
/// configuration is pushed to the higher score. y = 0 contributes nothing.
inline PairLoss margin_ranking_loss(double r1, double r2, int y, double margin = 1.0) {
  if (y == 0) return {};
  const double hinge = -static_cast<double>(y) * (r1 - r2) + margin;
  if (hinge <= 0.0) return {};
  return {hinge, -static_cast<double>(y), static_cast<double>(y)};
}

inline int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

struct MseResult {
  double loss = 0.0;
  Tensor grad;
};

/// Mean squared error over all elements and its gradient 2 (x - target) / n.
inline MseResult mse_loss(const Tensor& x, const Tensor& target) {
  if (x.shape != target.shape)
    throw ShapeError("mse_loss shapes differ: " + shape_string(x.shape) + " vs " + shape_string(target.shape));
  MseResult r{0.0, Tensor(x.shape)};
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x.data[i] - target.data[i];
    r.loss += d * d;
    r.grad.data[i] = 2.0 * d / n;
  }
  r.loss /= n;
  return r;
}

}  // namespace sparsetl::nn
