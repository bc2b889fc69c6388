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

#ifndef NARROWNET_NET_JSON_HPP_
#define NARROWNET_NET_JSON_HPP_

#include <cmath>
#include <fstream>
#include <string>

#include <json.hpp>

#include "narrownet/net.hpp"

namespace narrownet {

// Net file format, version 1:
// {
//   "format_version": 1,
//   "input_dim": d,
//   "layers": [
//     { "rows": m, "cols": n,
//       "weights": [m*n reals, row-major], "bias": [m reals],
//       "activation": "relu" | "linear" },
//     ...
//   ],
//   "provenance": { "key": "value", ... }
// }
// Doubles are emitted as shortest round-trip decimals, so a load of a saved
// net evaluates bit-identically to the original.

inline nlohmann::json net_to_json(const ReluNetd& net) {
  nlohmann::json doc;
  doc["format_version"] = 1;
  doc["input_dim"] = net.input_dim;
  doc["layers"] = nlohmann::json::array();
  for (const auto& layer : net.layers) {
    nlohmann::json jl;
    const auto& w = layer.map.weights;
    jl["rows"] = w.rows();
    jl["cols"] = w.cols();
    auto weights = nlohmann::json::array();
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c) weights.push_back(w(r, c));
    jl["weights"] = std::move(weights);
    auto bias = nlohmann::json::array();
    for (Eigen::Index r = 0; r < layer.map.bias.size(); ++r)
      bias.push_back(layer.map.bias[r]);
    jl["bias"] = std::move(bias);
    jl["activation"] =
        layer.activation == Activation::Relu ? "relu" : "linear";
    doc["layers"].push_back(std::move(jl));
  }
  doc["provenance"] = net.provenance;
  return doc;
}

namespace detail {

inline double json_number(const nlohmann::json& j, const std::string& field) {
  if (!j.is_number())
    throw ParseError(field + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v))
    throw ValidationError(field + ": non-finite value");
  return v;
}

inline int json_int(const nlohmann::json& j, const std::string& field) {
  if (!j.is_number_integer())
    throw ParseError(field + ": expected an integer");
  return j.get<int>();
}

}  // namespace detail

inline ReluNetd net_from_json(const nlohmann::json& doc) {
  using detail::json_int;
  using detail::json_number;
  if (!doc.is_object()) throw ParseError("net document: expected an object");
  if (!doc.contains("format_version"))
    throw ParseError("format_version: missing");
  if (json_int(doc["format_version"], "format_version") != 1)
    throw ParseError("format_version: unsupported version");
  if (!doc.contains("input_dim")) throw ParseError("input_dim: missing");

  ReluNetd net;
  net.input_dim = json_int(doc["input_dim"], "input_dim");
  if (net.input_dim < 1)
    throw ValidationError("input_dim: must be >= 1");

  if (!doc.contains("layers") || !doc["layers"].is_array())
    throw ParseError("layers: missing or not an array");
  const auto& layers = doc["layers"];
  if (layers.empty()) throw ValidationError("layers: must be nonempty");

  for (std::size_t j = 0; j < layers.size(); ++j) {
    const std::string where = "layers[" + std::to_string(j) + "]";
    const auto& jl = layers[j];
    if (!jl.is_object()) throw ParseError(where + ": expected an object");
    for (const char* key : {"rows", "cols", "weights", "bias", "activation"})
      if (!jl.contains(key)) throw ParseError(where + "." + key + ": missing");
    const int rows = json_int(jl["rows"], where + ".rows");
    const int cols = json_int(jl["cols"], where + ".cols");
    if (rows < 1 || cols < 1)
      throw ValidationError(where + ": rows and cols must be >= 1");
    const auto& jw = jl["weights"];
    if (!jw.is_array() ||
        jw.size() != static_cast<std::size_t>(rows) * cols)
      throw ValidationError(where + ".weights: expected " +
                            std::to_string(rows * cols) + " entries");
    const auto& jb = jl["bias"];
    if (!jb.is_array() || jb.size() != static_cast<std::size_t>(rows))
      throw ValidationError(where + ".bias: expected " +
                            std::to_string(rows) + " entries, got " +
                            std::to_string(jb.size()));
    MatrixD w(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        w(r, c) = json_number(jw[static_cast<std::size_t>(r) * cols + c],
                              where + ".weights");
    VectorD b(rows);
    for (int r = 0; r < rows; ++r)
      b[r] = json_number(jb[r], where + ".bias");
    const std::string act = jl["activation"].is_string()
                                ? jl["activation"].get<std::string>()
                                : throw ParseError(where +
                                                   ".activation: expected a string");
    Layerd layer;
    layer.map = AffineMapd(std::move(w), std::move(b));
    if (act == "relu") {
      layer.activation = Activation::Relu;
    } else if (act == "linear") {
      layer.activation = Activation::Linear;
    } else {
      throw ValidationError(where + ".activation: unknown value '" + act +
                            "'");
    }
    net.layers.push_back(std::move(layer));
  }

  if (doc.contains("provenance")) {
    const auto& jp = doc["provenance"];
    if (!jp.is_object()) throw ParseError("provenance: expected an object");
    for (auto it = jp.begin(); it != jp.end(); ++it) {
      if (!it.value().is_string())
        throw ParseError("provenance." + it.key() + ": expected a string");
      net.provenance[it.key()] = it.value().get<std::string>();
    }
  }

  validate_net(net);
  return net;
}

inline void save_net(const ReluNetd& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open file for writing: " + path);
  out << net_to_json(net).dump(2) << "\n";
}

inline ReluNetd load_net(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file for reading: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return net_from_json(doc);
}

}  // namespace narrownet

#endif  // NARROWNET_NET_JSON_HPP_
