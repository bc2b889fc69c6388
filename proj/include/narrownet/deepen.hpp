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

#ifndef NARROWNET_DEEPEN_HPP_
#define NARROWNET_DEEPEN_HPP_

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "narrownet/affine.hpp"
#include "narrownet/net.hpp"
#include "narrownet/net_json.hpp"

namespace narrownet {

/// One-hidden-layer ReLU net d -> n -> 1,
/// x -> ReLU(bias + sum_j coeffs[j] * ReLU(hidden[j](x))).
template <typename Scalar>
struct ShallowNet {
  std::vector<AffineFunctional<Scalar>> hidden;
  Vector<Scalar> coeffs;
  Scalar bias = Scalar(0);

  int dim() const { return static_cast<int>(hidden.front().dim()); }
  int width() const { return static_cast<int>(hidden.size()); }

  void validate() const {
    if (hidden.empty()) throw ValidationError("shallow net: no hidden units");
    if (coeffs.size() != static_cast<Eigen::Index>(hidden.size()))
      throw DimensionError("shallow net: coeffs length != hidden units");
    for (const auto& h : hidden)
      if (h.dim() != hidden.front().dim())
        throw DimensionError("shallow net: mixed hidden dimensions");
  }
};

template <typename Scalar, typename Derived>
Scalar eval_shallow(const ShallowNet<Scalar>& s,
                    const Eigen::MatrixBase<Derived>& x) {
  Scalar acc = s.bias;
  for (int j = 0; j < s.width(); ++j)
    acc += s.coeffs[j] * std::max(Scalar(0), s.hidden[j](x));
  return std::max(Scalar(0), acc);
}

/// Shift constant certifying that every prefix
/// T + sum_{j<=k} c_j ReLU(A_j(x)) stays positive on the cube: each term is
/// at least -max(0, -c_j) * max(0, cube_max(A_j)), so summing the worst
/// cases and adding 1 gives a closed-form certificate.
template <typename Scalar>
Scalar deepen_shift(const ShallowNet<Scalar>& s) {
  Scalar t = Scalar(1);
  for (int j = 0; j < s.width(); ++j)
    t += std::max(Scalar(0), -s.coeffs[j]) *
         std::max(Scalar(0), cube_bounds(s.hidden[j]).hi);
  return t;
}

/// Rewrites a one-hidden-layer net of width n as an equivalent net with
/// n+2 ReLU layers of hidden width d+2: width d copies the input, one
/// channel computes each A_j in turn, one channel accumulates the weighted
/// sum, offset by the certificate T so the accumulator never clips.
/// Equivalence holds on [0,1]^d; outside the cube it is not claimed.
template <typename Scalar>
ReluNet<Scalar> deepen(const ShallowNet<Scalar>& s) {
  s.validate();
  const int d = s.dim();
  const int n = s.width();
  const int y = d, z = d + 1;
  const Scalar t = deepen_shift(s);

  ReluNet<Scalar> net;
  net.input_dim = d;
  net.layers.reserve(n + 2);

  // Layer 1: x -> (x, A_1(x), T).
  {
    Matrix<Scalar> w = Matrix<Scalar>::Zero(d + 2, d);
    w.topRows(d).setIdentity();
    w.row(y) = s.hidden[0].a.transpose();
    Vector<Scalar> b = Vector<Scalar>::Zero(d + 2);
    b[y] = s.hidden[0].b;
    b[z] = t;
    net.layers.push_back(
        {AffineMap<Scalar>(std::move(w), std::move(b)), Activation::Relu});
  }

  // Layers 2..n+1: (x, y, z) -> (x, A_j(x), z + c_{j-1} y). The y slot of
  // layer n+1 has no successor to feed, so it is zeroed.
  for (int j = 2; j <= n + 1; ++j) {
    Matrix<Scalar> w = Matrix<Scalar>::Zero(d + 2, d + 2);
    w.topLeftCorner(d, d).setIdentity();
    Vector<Scalar> b = Vector<Scalar>::Zero(d + 2);
    if (j <= n) {
      w.row(y).head(d) = s.hidden[j - 1].a.transpose();
      b[y] = s.hidden[j - 1].b;
    }
    w(z, z) = Scalar(1);
    w(z, y) = s.coeffs[j - 2];
    net.layers.push_back(
        {AffineMap<Scalar>(std::move(w), std::move(b)), Activation::Relu});
  }

  // Layer n+2: z - T + bias, terminal ReLU matching the shallow net's own.
  {
    Matrix<Scalar> w = Matrix<Scalar>::Zero(1, d + 2);
    w(0, z) = Scalar(1);
    Vector<Scalar> b(1);
    b[0] = s.bias - t;
    net.layers.push_back(
        {AffineMap<Scalar>(std::move(w), std::move(b)), Activation::Relu});
  }

  net.provenance["compiler"] = "deepen";
  net.provenance["shallow_width"] = std::to_string(n);
  net.provenance["shift"] = std::to_string(t);
  validate_net(net);
  return net;
}

// Shallow-net documents come in two forms: the compact format
// { "pieces": [{"a": [...], "b": ...}, ...], "coeffs": [...], "bias": b }
// or a standard net file with exactly two ReLU layers (d -> n -> 1).

inline ShallowNet<double> shallow_from_json(const nlohmann::json& doc) {
  if (!doc.is_object())
    throw ParseError("shallow document: expected an object");
  if (doc.contains("layers")) {
    ReluNetd net = net_from_json(doc);
    if (net.layers.size() != 2)
      throw ValidationError(
          "shallow net file: expected exactly 2 affine layers, got " +
          std::to_string(net.layers.size()));
    for (const auto& layer : net.layers)
      if (layer.activation != Activation::Relu)
        throw ValidationError(
            "shallow net file: both layers must have relu activation");
    if (net.output_dim() != 1)
      throw ValidationError("shallow net file: output dimension must be 1");
    ShallowNet<double> s;
    const auto& h = net.layers[0].map;
    for (Eigen::Index r = 0; r < h.out_dim(); ++r)
      s.hidden.emplace_back(VectorD(h.weights.row(r).transpose()), h.bias[r]);
    s.coeffs = net.layers[1].map.weights.row(0).transpose();
    s.bias = net.layers[1].map.bias[0];
    s.validate();
    return s;
  }
  for (const char* key : {"pieces", "coeffs", "bias"})
    if (!doc.contains(key))
      throw ParseError(std::string("shallow document: missing field '") +
                       key + "'");
  ShallowNet<double> s;
  const auto& jp = doc["pieces"];
  if (!jp.is_array() || jp.empty())
    throw ParseError("pieces: expected a nonempty array");
  for (std::size_t j = 0; j < jp.size(); ++j) {
    const std::string where = "pieces[" + std::to_string(j) + "]";
    if (!jp[j].is_object() || !jp[j].contains("a") || !jp[j].contains("b"))
      throw ParseError(where + ": expected {\"a\": [...], \"b\": ...}");
    const auto& ja = jp[j]["a"];
    if (!ja.is_array() || ja.empty())
      throw ParseError(where + ".a: expected a nonempty array");
    VectorD a(ja.size());
    for (std::size_t i = 0; i < ja.size(); ++i)
      a[i] = detail::json_number(ja[i], where + ".a");
    s.hidden.emplace_back(std::move(a),
                          detail::json_number(jp[j]["b"], where + ".b"));
  }
  const auto& jc = doc["coeffs"];
  if (!jc.is_array() || jc.size() != jp.size())
    throw ParseError("coeffs: expected " + std::to_string(jp.size()) +
                     " entries");
  s.coeffs = VectorD(jc.size());
  for (std::size_t j = 0; j < jc.size(); ++j)
    s.coeffs[j] = detail::json_number(jc[j], "coeffs");
  s.bias = detail::json_number(doc["bias"], "bias");
  s.validate();
  return s;
}

inline nlohmann::json shallow_to_json(const ShallowNet<double>& s) {
  nlohmann::json doc;
  doc["pieces"] = nlohmann::json::array();
  for (const auto& h : s.hidden) {
    nlohmann::json jp;
    jp["a"] = std::vector<double>(h.a.data(), h.a.data() + h.a.size());
    jp["b"] = h.b;
    doc["pieces"].push_back(std::move(jp));
  }
  doc["coeffs"] =
      std::vector<double>(s.coeffs.data(), s.coeffs.data() + s.coeffs.size());
  doc["bias"] = s.bias;
  return doc;
}

inline ShallowNet<double> load_shallow(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file for reading: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return shallow_from_json(doc);
}

using ShallowNetd = ShallowNet<double>;

}  // namespace narrownet

#endif  // NARROWNET_DEEPEN_HPP_
