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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "sparsetl/error.hpp"
#include "sparsetl/nn/tensor.hpp"

namespace sparsetl::nn {

/// Fully connected layer, weight is [out, in]. Accepts [in] or [batch, in].
struct Dense {
  std::size_t in = 0, out = 0;
  Tensor weight, bias;
};

/// Square-kernel convolution with stride 1 and "same" zero padding.
/// Input and output are [channels, height, width]; weight is [out, in, k, k].
struct Conv2d {
  std::size_t in_channels = 0, out_channels = 0, kernel = 3;
  Tensor weight, bias;
};

/// Non-overlapping max pooling; odd trailing rows/columns are dropped.
struct MaxPool2d {
  std::size_t window = 2;
};

enum class ActivationKind { relu, tanh, sigmoid };

struct Activation {
  ActivationKind kind = ActivationKind::relu;
};

/// [channels, height, width] -> [channels]
struct GlobalAvgPool {};

using Layer = std::variant<Dense, Conv2d, MaxPool2d, Activation, GlobalAvgPool>;

inline std::string layer_kind(const Layer& l) {
  constexpr const char* names[] = {"dense", "conv", "pool", "activation", "global_pool"};
  return names[l.index()];
}

/// Ordered layer list plus its learnable parameters. `version` changes on
/// every parameter update so that tapes recorded earlier can be rejected.
struct Network {
  Shape input_shape;  // per-sample shape; dense-first networks also take a leading batch dimension
  std::vector<Layer> layers;
  std::uint64_t version = 0;

  std::vector<Tensor*> parameters() {
    std::vector<Tensor*> out;
    for (auto& l : layers) {
      if (auto* d = std::get_if<Dense>(&l)) out.insert(out.end(), {&d->weight, &d->bias});
      if (auto* c = std::get_if<Conv2d>(&l)) out.insert(out.end(), {&c->weight, &c->bias});
    }
    return out;
  }

  std::vector<const Tensor*> parameters() const {
    std::vector<const Tensor*> out;
    for (const auto& l : layers) {
      if (const auto* d = std::get_if<Dense>(&l)) out.insert(out.end(), {&d->weight, &d->bias});
      if (const auto* c = std::get_if<Conv2d>(&l)) out.insert(out.end(), {&c->weight, &c->bias});
    }
    return out;
  }

  std::size_t parameter_count() const {
    std::size_t n = 0;
    for (const auto* p : parameters()) n += p->size();
    return n;
  }
};

/// Glorot-uniform initialisation: U(-a, a) with a = sqrt(6 / (fan_in + fan_out)).
inline void glorot_fill(Tensor& t, double fan_in, double fan_out, std::mt19937_64& rng) {
  const double a = std::sqrt(6.0 / (fan_in + fan_out));
  std::uniform_real_distribution<double> u(-a, a);
  for (auto& x : t.data) x = u(rng);
}

inline Dense make_dense(std::size_t in, std::size_t out, std::mt19937_64& rng) {
  Dense d{in, out, Tensor({out, in}), Tensor({out})};
  glorot_fill(d.weight, double(in), double(out), rng);
  return d;
}

inline Conv2d make_conv(std::size_t in, std::size_t out, std::size_t kernel, std::mt19937_64& rng) {
  if (kernel % 2 == 0) throw ShapeError("convolution kernels must have odd size");
  Conv2d c{in, out, kernel, Tensor({out, in, kernel, kernel}), Tensor({out})};
  glorot_fill(c.weight, double(in * kernel * kernel), double(out * kernel * kernel), rng);
  return c;
}

/// Shape produced by `layer` for a per-sample input shape, or ShapeError.
inline Shape output_shape(const Layer& layer, const Shape& in, std::size_t index) {
  const auto fail = [&](const std::string& why) {
    return ShapeError("layer " + std::to_string(index) + " (" + layer_kind(layer) + "): " + why + ", got input " +
                      shape_string(in));
  };
  return std::visit(
      [&](const auto& l) -> Shape {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, Dense>) {
          if (in.empty() || in.back() != l.in) throw fail("expects trailing dimension " + std::to_string(l.in));
          if (in.size() > 2) throw fail("expects a vector or a batch of vectors");
          Shape out = in;
          out.back() = l.out;
          return out;
        } else if constexpr (std::is_same_v<T, Conv2d>) {
          if (in.size() != 3 || in[0] != l.in_channels)
            throw fail("expects [" + std::to_string(l.in_channels) + ", H, W]");
          return {l.out_channels, in[1], in[2]};
        } else if constexpr (std::is_same_v<T, MaxPool2d>) {
          if (in.size() != 3 || in[1] < l.window || in[2] < l.window) throw fail("expects [C, H, W] with H, W >= window");
          return {in[0], in[1] / l.window, in[2] / l.window};
        } else if constexpr (std::is_same_v<T, GlobalAvgPool>) {
          if (in.size() != 3) throw fail("expects [C, H, W]");
          return {in[0]};
        } else {
          return in;
        }
      },
      layer);
}

/// Throws ShapeError unless every adjacent pair of layers composes.
inline Shape validate_network(const Network& net) {
  Shape s = net.input_shape;
  for (std::size_t i = 0; i < net.layers.size(); ++i) s = output_shape(net.layers[i], s, i);
  return s;
}

/// Cached intermediates of one forward pass.
struct Tape {
  const Network* network = nullptr;
  std::uint64_t version = 0;
  std::vector<Tensor> inputs;                       // input of every layer
  std::vector<std::vector<std::uint32_t>> argmax;   // max-pool winners, per layer
  Tensor output;
};

struct Gradients {
  std::vector<Tensor> params;  // aligned with Network::parameters()
  Tensor input;
};

namespace detail {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapMat = Eigen::Map<RowMat>;
using CMapMat = Eigen::Map<const RowMat>;
using CMapVec = Eigen::Map<const Eigen::VectorXd>;

// Output columns [x0, x1) whose input column x + d lies inside [0, W).
inline std::pair<std::size_t, std::size_t> valid_columns(std::size_t W, std::ptrdiff_t d) {
  const auto w = static_cast<std::ptrdiff_t>(W);
  const auto lo = std::clamp<std::ptrdiff_t>(-d, 0, w);
  const auto hi = std::clamp<std::ptrdiff_t>(w - d, lo, w);
  return {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
}

inline void im2col(const Tensor& x, std::size_t k, RowMat& col) {
  const std::size_t C = x.dim(0), H = x.dim(1), W = x.dim(2);
  const auto pad = static_cast<std::ptrdiff_t>(k / 2);
  col.setZero(static_cast<Eigen::Index>(C * k * k), static_cast<Eigen::Index>(H * W));
  for (std::size_t c = 0; c < C; ++c)
    for (std::size_t ky = 0; ky < k; ++ky)
      for (std::size_t kx = 0; kx < k; ++kx) {
        double* row = col.data() + ((c * k + ky) * k + kx) * H * W;
        const auto dy = static_cast<std::ptrdiff_t>(ky) - pad;
        const auto dx = static_cast<std::ptrdiff_t>(kx) - pad;
        for (std::size_t y = 0; y < H; ++y) {
          const auto iy = static_cast<std::ptrdiff_t>(y) + dy;
          if (iy < 0 || iy >= static_cast<std::ptrdiff_t>(H)) continue;
          const double* src = x.data.data() + (c * H + static_cast<std::size_t>(iy)) * W;
          const auto [x0, x1] = valid_columns(W, dx);
          for (std::size_t xo = x0; xo < x1; ++xo) row[y * W + xo] = src[static_cast<std::ptrdiff_t>(xo) + dx];
        }
      }
}

inline void col2im(const RowMat& col, std::size_t k, Tensor& dx) {
  const std::size_t C = dx.dim(0), H = dx.dim(1), W = dx.dim(2);
  const auto pad = static_cast<std::ptrdiff_t>(k / 2);
  for (std::size_t c = 0; c < C; ++c)
    for (std::size_t ky = 0; ky < k; ++ky)
      for (std::size_t kx = 0; kx < k; ++kx) {
        const double* row = col.data() + ((c * k + ky) * k + kx) * H * W;
        const auto dy = static_cast<std::ptrdiff_t>(ky) - pad;
        const auto dxo = static_cast<std::ptrdiff_t>(kx) - pad;
        for (std::size_t y = 0; y < H; ++y) {
          const auto iy = static_cast<std::ptrdiff_t>(y) + dy;
          if (iy < 0 || iy >= static_cast<std::ptrdiff_t>(H)) continue;
          double* dst = dx.data.data() + (c * H + static_cast<std::size_t>(iy)) * W;
          const auto [x0, x1] = valid_columns(W, dxo);
          for (std::size_t xo = x0; xo < x1; ++xo) dst[static_cast<std::ptrdiff_t>(xo) + dxo] += row[y * W + xo];
        }
      }
}

inline double activate(ActivationKind k, double x) {
  switch (k) {
    case ActivationKind::relu: return x > 0.0 ? x : 0.0;
    case ActivationKind::tanh: return std::tanh(x);
    case ActivationKind::sigmoid: return 1.0 / (1.0 + std::exp(-x));
  }
  return x;
}

// derivative expressed through the input x
inline double activate_grad(ActivationKind k, double x) {
  switch (k) {
    case ActivationKind::relu: return x > 0.0 ? 1.0 : 0.0;
    case ActivationKind::tanh: {
      const double t = std::tanh(x);
      return 1.0 - t * t;
    }
    case ActivationKind::sigmoid: {
      const double s = 1.0 / (1.0 + std::exp(-x));
      return s * (1.0 - s);
    }
  }
  return 1.0;
}

inline Tensor layer_forward(const Layer& layer, const Tensor& x, std::vector<std::uint32_t>* argmax) {
  return std::visit(
      [&](const auto& l) -> Tensor {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, Dense>) {
          const std::size_t batch = x.rank() == 2 ? x.dim(0) : 1;
          Shape shape = x.shape;
          shape.back() = l.out;
          Tensor y(shape);
          CMapMat X(x.data.data(), Eigen::Index(batch), Eigen::Index(l.in));
          CMapMat Wt(l.weight.data.data(), Eigen::Index(l.out), Eigen::Index(l.in));
          MapMat Y(y.data.data(), Eigen::Index(batch), Eigen::Index(l.out));
          Y.noalias() = X * Wt.transpose();
          Y.rowwise() += CMapVec(l.bias.data.data(), Eigen::Index(l.out)).transpose();
          return y;
        } else if constexpr (std::is_same_v<T, Conv2d>) {
          const std::size_t H = x.dim(1), W = x.dim(2);
          RowMat col;
          im2col(x, l.kernel, col);
          Tensor y({l.out_channels, H, W});
          CMapMat Wt(l.weight.data.data(), Eigen::Index(l.out_channels),
                     Eigen::Index(l.in_channels * l.kernel * l.kernel));
          MapMat Y(y.data.data(), Eigen::Index(l.out_channels), Eigen::Index(H * W));
          Y.noalias() = Wt * col;
          Y.colwise() += CMapVec(l.bias.data.data(), Eigen::Index(l.out_channels));
          return y;
        } else if constexpr (std::is_same_v<T, MaxPool2d>) {
          const std::size_t C = x.dim(0), H = x.dim(1), W = x.dim(2), w = l.window;
          const std::size_t Ho = H / w, Wo = W / w;
          Tensor y({C, Ho, Wo});
          if (argmax) argmax->assign(y.size(), 0);
          for (std::size_t c = 0; c < C; ++c)
            for (std::size_t oy = 0; oy < Ho; ++oy)
              for (std::size_t ox = 0; ox < Wo; ++ox) {
                double best = -std::numeric_limits<double>::infinity();
                std::size_t at = 0;
                for (std::size_t dy = 0; dy < w; ++dy)
                  for (std::size_t dx = 0; dx < w; ++dx) {
                    const std::size_t idx = (c * H + oy * w + dy) * W + ox * w + dx;
                    if (x.data[idx] > best) best = x.data[idx], at = idx;
                  }
                const std::size_t o = (c * Ho + oy) * Wo + ox;
                y.data[o] = best;
                if (argmax) (*argmax)[o] = static_cast<std::uint32_t>(at);
              }
          return y;
        } else if constexpr (std::is_same_v<T, Activation>) {
          Tensor y(x.shape);
          for (std::size_t i = 0; i < x.size(); ++i) y.data[i] = activate(l.kind, x.data[i]);
          return y;
        } else {
          const std::size_t C = x.dim(0), HW = x.dim(1) * x.dim(2);
          Tensor y({C});
          for (std::size_t c = 0; c < C; ++c) {
            double s = 0.0;
            for (std::size_t i = 0; i < HW; ++i) s += x.data[c * HW + i];
            y.data[c] = s / double(HW);
          }
          return y;
        }
      },
      layer);
}

}  // namespace detail

inline void check_input(const Network& net, const Tensor& input) {
  if (net.layers.empty()) return;
  const Shape& want = net.input_shape;
  const bool batched = std::holds_alternative<Dense>(net.layers.front()) && input.rank() == want.size() + 1 &&
                       std::equal(want.begin(), want.end(), input.shape.begin() + 1);
  if (input.shape != want && !batched)
    throw ShapeError("layer 0 (" + layer_kind(net.layers.front()) + "): expected input " + shape_string(want) +
                     ", got " + shape_string(input.shape));
}

/// Forward pass that also records the tape needed by `backward`.
inline std::pair<Tensor, Tape> forward(const Network& net, Tensor input) {
  check_input(net, input);
  Tape tape;
  tape.network = &net;
  tape.version = net.version;
  tape.inputs.reserve(net.layers.size());
  tape.argmax.resize(net.layers.size());
  Tensor x = std::move(input);
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    output_shape(net.layers[i], x.shape, i);
    Tensor y = detail::layer_forward(net.layers[i], x, &tape.argmax[i]);
    tape.inputs.push_back(std::move(x));
    x = std::move(y);
  }
  tape.output = x;
  return {std::move(x), std::move(tape)};
}

/// Forward pass without a tape.
inline Tensor infer(const Network& net, Tensor input) {
  check_input(net, input);
  Tensor x = std::move(input);
  for (std::size_t i = 0; i < net.layers.size(); ++i) x = detail::layer_forward(net.layers[i], x, nullptr);
  return x;
}

/// Exact reverse-mode gradients of sum(output * output_grad).
inline Gradients backward(const Network& net, const Tape& tape, const Tensor& output_grad) {
  if (tape.network != &net || tape.version != net.version || tape.inputs.size() != net.layers.size())
    throw Error("stale tape: the network changed since the forward pass");
  if (output_grad.shape != tape.output.shape)
    throw ShapeError("output gradient " + shape_string(output_grad.shape) + " does not match output " +
                     shape_string(tape.output.shape));
  using namespace detail;
  Gradients g;
  std::vector<Tensor> per_layer;  // collected in reverse, two tensors per parametrised layer
  Tensor dy = output_grad;
  for (std::size_t li = net.layers.size(); li-- > 0;) {
    const Tensor& x = tape.inputs[li];
    Tensor dx(x.shape);
    std::visit(
        [&](const auto& l) {
          using T = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<T, Dense>) {
            const std::size_t batch = x.rank() == 2 ? x.dim(0) : 1;
            Tensor dw({l.out, l.in}), db({l.out});
            CMapMat X(x.data.data(), Eigen::Index(batch), Eigen::Index(l.in));
            CMapMat dY(dy.data.data(), Eigen::Index(batch), Eigen::Index(l.out));
            CMapMat Wt(l.weight.data.data(), Eigen::Index(l.out), Eigen::Index(l.in));
            MapMat(dw.data.data(), Eigen::Index(l.out), Eigen::Index(l.in)).noalias() = dY.transpose() * X;
            Eigen::Map<Eigen::VectorXd>(db.data.data(), Eigen::Index(l.out)) = dY.colwise().sum().transpose();
            MapMat(dx.data.data(), Eigen::Index(batch), Eigen::Index(l.in)).noalias() = dY * Wt;
            per_layer.push_back(std::move(db));
            per_layer.push_back(std::move(dw));
          } else if constexpr (std::is_same_v<T, Conv2d>) {
            const std::size_t H = x.dim(1), W = x.dim(2);
            const auto K = Eigen::Index(l.in_channels * l.kernel * l.kernel);
            RowMat col;
            im2col(x, l.kernel, col);
            CMapMat dY(dy.data.data(), Eigen::Index(l.out_channels), Eigen::Index(H * W));
            CMapMat Wt(l.weight.data.data(), Eigen::Index(l.out_channels), K);
            Tensor dw(l.weight.shape), db({l.out_channels});
            MapMat(dw.data.data(), Eigen::Index(l.out_channels), K).noalias() = dY * col.transpose();
            Eigen::Map<Eigen::VectorXd>(db.data.data(), Eigen::Index(l.out_channels)) = dY.rowwise().sum();
            RowMat dcol = Wt.transpose() * dY;
            col2im(dcol, l.kernel, dx);
            per_layer.push_back(std::move(db));
            per_layer.push_back(std::move(dw));
          } else if constexpr (std::is_same_v<T, MaxPool2d>) {
            const auto& am = tape.argmax[li];
            for (std::size_t o = 0; o < am.size(); ++o) dx.data[am[o]] += dy.data[o];
          } else if constexpr (std::is_same_v<T, Activation>) {
            for (std::size_t i = 0; i < x.size(); ++i) dx.data[i] = dy.data[i] * activate_grad(l.kind, x.data[i]);
          } else {
            const std::size_t C = x.dim(0), HW = x.dim(1) * x.dim(2);
            for (std::size_t c = 0; c < C; ++c)
              for (std::size_t i = 0; i < HW; ++i) dx.data[c * HW + i] = dy.data[c] / double(HW);
          }
        },
        net.layers[li]);
    dy = std::move(dx);
  }
  g.params.assign(std::make_move_iterator(per_layer.rbegin()), std::make_move_iterator(per_layer.rend()));
  g.input = std::move(dy);
  return g;
}

/// Zero-valued gradients shaped like the network's parameters.
inline std::vector<Tensor> zero_gradients(const Network& net) {
  std::vector<Tensor> out;
  for (const auto* p : net.parameters()) out.emplace_back(p->shape);
  return out;
}

inline void accumulate(std::vector<Tensor>& into, const std::vector<Tensor>& g) {
  if (into.size() != g.size()) throw ShapeError("gradient lists differ in length");
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (into[i].shape != g[i].shape) throw ShapeError("gradient shapes differ");
    for (std::size_t j = 0; j < g[i].size(); ++j) into[i].data[j] += g[i].data[j];
  }
}

}  // namespace sparsetl::nn
