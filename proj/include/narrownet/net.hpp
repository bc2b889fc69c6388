// Copyright 2026 The narrownet Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NARROWNET_NET_HPP_
#define NARROWNET_NET_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "narrownet/affine.hpp"
#include "narrownet/errors.hpp"

namespace narrownet {

enum class Activation { Relu, Linear };

/// One affine stage of a feed-forward net, followed by its activation.
/// Every layer is Relu except possibly the last layer of a net.
template <typename Scalar>
struct Layer {
  AffineMap<Scalar> map;
  Activation activation = Activation::Relu;
};

// Provenance keys with structural meaning. A net whose first layer merely
// embeds the input into a wider space marks it with kTagInputEmbedding; a
// net whose final ReLU layer is a readout marks it with kTagReluReadout.
// Both are excluded from the hidden-block count.
inline constexpr const char* kTagInputEmbedding = "tag.input_embedding";
inline constexpr const char* kTagReluReadout = "tag.relu_readout";

/// Feed-forward ReLU net: a chain of affine layers, each followed by ReLU
/// except for an optional linear readout. Immutable once built.
template <typename Scalar>
struct ReluNet {
  int input_dim = 0;
  std::vector<Layer<Scalar>> layers;
  std::map<std::string, std::string> provenance;

  bool has_tag(const std::string& key) const {
    auto it = provenance.find(key);
    return it != provenance.end() && it->second == "true";
  }

  Eigen::Index output_dim() const { return layers.back().map.out_dim(); }
};

/// Validates the dimension chain and activation placement; throws on
/// violation. Used by constructors of compiled nets and by deserialization.
template <typename Scalar>
void validate_net(const ReluNet<Scalar>& net) {
  if (net.input_dim < 1)
    throw ValidationError("net: input_dim must be >= 1");
  if (net.layers.empty()) throw ValidationError("net: no layers");
  Eigen::Index prev = net.input_dim;
  for (std::size_t j = 0; j < net.layers.size(); ++j) {
    const auto& layer = net.layers[j];
    if (layer.map.in_dim() != prev)
      throw ValidationError("net: layer " + std::to_string(j) +
                            " input dim " + std::to_string(layer.map.in_dim()) +
                            " does not chain from " + std::to_string(prev));
    if (layer.activation == Activation::Linear &&
        j + 1 != net.layers.size())
      throw ValidationError("net: layer " + std::to_string(j) +
                            " has linear activation but is not the last layer");
    prev = layer.map.out_dim();
  }
}

/// Width/depth/parameter accounting for a net.
///
/// hidden_width is the maximum output width over all layers but the last.
/// relu_depth counts layers with ReLU activation. hidden_blocks subtracts a
/// tagged input embedding and a tagged ReLU readout from relu_depth; it is
/// the depth count the compilation guarantees are stated in.
struct NetMetrics {
  int input_dim = 0;
  int output_dim = 0;
  int hidden_width = 0;
  int relu_depth = 0;
  int hidden_blocks = 0;
  std::int64_t parameter_count = 0;
};

template <typename Scalar>
NetMetrics metrics(const ReluNet<Scalar>& net) {
  NetMetrics m;
  m.input_dim = net.input_dim;
  m.output_dim = static_cast<int>(net.output_dim());
  for (std::size_t j = 0; j < net.layers.size(); ++j) {
    const auto& layer = net.layers[j];
    if (j + 1 < net.layers.size())
      m.hidden_width =
          std::max(m.hidden_width, static_cast<int>(layer.map.out_dim()));
    if (layer.activation == Activation::Relu) ++m.relu_depth;
    m.parameter_count += static_cast<std::int64_t>(layer.map.weights.size()) +
                         static_cast<std::int64_t>(layer.map.bias.size());
  }
  m.hidden_blocks = m.relu_depth;
  if (net.has_tag(kTagInputEmbedding) &&
      net.layers.front().activation == Activation::Relu)
    --m.hidden_blocks;
  if (net.has_tag(kTagReluReadout) &&
      net.layers.back().activation == Activation::Relu)
    --m.hidden_blocks;
  return m;
}

/// Evaluates the net at a point. Defined on all of R^d; the compilation
/// guarantees only hold on the unit cube.
template <typename Scalar, typename Derived>
Vector<Scalar> eval_net(const ReluNet<Scalar>& net,
                        const Eigen::MatrixBase<Derived>& x) {
  if (x.size() != net.input_dim)
    throw DimensionError("eval_net: input dimension mismatch");
  Vector<Scalar> v = x;
  for (const auto& layer : net.layers) {
    v = layer.map.weights * v + layer.map.bias;
    if (layer.activation == Activation::Relu)
      v = v.cwiseMax(Scalar(0));
  }
  return v;
}

/// Scalar convenience for output-dimension-1 nets.
template <typename Scalar, typename Derived>
Scalar eval_net1(const ReluNet<Scalar>& net,
                 const Eigen::MatrixBase<Derived>& x) {
  Vector<Scalar> y = eval_net(net, x);
  if (y.size() != 1)
    throw DimensionError("eval_net1: net output is not scalar");
  return y[0];
}

/// Evaluates a batch of points, elementwise equal to mapping eval_net.
/// Sequential and order-preserving, so results are reproducible bit for bit.
template <typename Scalar>
std::vector<Vector<Scalar>> eval_batch(const ReluNet<Scalar>& net,
                                       const std::vector<Vector<Scalar>>& xs) {
  std::vector<Vector<Scalar>> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(eval_net(net, x));
  return out;
}

/// Per-layer pre- and post-activation values, for instrumented checks of
/// the internal channel invariants (running max, memory channel, prefix
/// positivity certificates).
template <typename Scalar>
struct EvalTrace {
  std::vector<Vector<Scalar>> pre;   // affine output of each layer
  std::vector<Vector<Scalar>> post;  // after activation
};

template <typename Scalar, typename Derived>
EvalTrace<Scalar> eval_trace(const ReluNet<Scalar>& net,
                             const Eigen::MatrixBase<Derived>& x) {
  if (x.size() != net.input_dim)
    throw DimensionError("eval_trace: input dimension mismatch");
  EvalTrace<Scalar> trace;
  trace.pre.reserve(net.layers.size());
  trace.post.reserve(net.layers.size());
  Vector<Scalar> v = x;
  for (const auto& layer : net.layers) {
    v = layer.map.weights * v + layer.map.bias;
    trace.pre.push_back(v);
    if (layer.activation == Activation::Relu)
      v = v.cwiseMax(Scalar(0));
    trace.post.push_back(v);
  }
  return trace;
}

using Layerd = Layer<double>;
using ReluNetd = ReluNet<double>;

}  // namespace narrownet

#endif  // NARROWNET_NET_HPP_
