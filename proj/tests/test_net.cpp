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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "narrownet/compile_convex.hpp"
#include "narrownet/net.hpp"
#include "narrownet/net_json.hpp"
#include "prop.hpp"
#include "properties.hpp"

using namespace narrownet;
using namespace narrownet::testing;

TEST_CASE("identity-relu layer clamps negatives coordinatewise") {
  ReluNetd net;
  net.input_dim = 2;
  net.layers.push_back({AffineMapd::identity(2), Activation::Relu});
  VectorD x(2);
  x << -1.0, 2.0;
  const VectorD y = eval_net(net, x);
  CHECK(y[0] == 0.0);
  CHECK(y[1] == 2.0);
}

TEST_CASE("net compiled from the hat complement evaluates through eval_net") {
  std::vector<AffineFunctionald> pieces;
  pieces.emplace_back(VectorD::Constant(1, 1.0), 0.0);
  pieces.emplace_back(VectorD::Constant(1, -1.0), 1.0);
  const MaxAffineFnd f(1, std::move(pieces));
  const auto net = compile_convex(f);
  CHECK(eval_net1(net, VectorD::Constant(1, 0.25)) == doctest::Approx(0.75));
}

TEST_CASE("constant-zero net stays zero everywhere") {
  ReluNetd net;
  net.input_dim = 2;
  net.layers.push_back(
      {AffineMapd(MatrixD::Zero(1, 2), VectorD::Zero(1)), Activation::Relu});
  Rng rng(3);
  for (int i = 0; i < 10; ++i)
    CHECK(eval_net1(net, rng.vector(2, -3.0, 3.0)) == 0.0);
}

TEST_CASE("eval_net rejects dimension mismatch") {
  ReluNetd net;
  net.input_dim = 2;
  net.layers.push_back({AffineMapd::identity(2), Activation::Relu});
  CHECK_THROWS_AS(eval_net(net, VectorD::Zero(3)), DimensionError);
}

TEST_CASE("eval_batch is elementwise eval_net, empty batch included") {
  Rng rng(5);
  const auto net = random_net(rng, 2, {3, 1});
  CHECK(eval_batch(net, {}).empty());
  std::vector<VectorD> xs;
  for (int i = 0; i < 3; ++i) xs.push_back(rng.cube_point(2));
  const auto batch = eval_batch(net, xs);
  for (std::size_t i = 0; i < xs.size(); ++i)
    CHECK(batch[i] == VectorD(eval_net(net, xs[i])));
}

TEST_CASE("metrics: accounting for a compiled and a hand-built net") {
  Rng rng(7);
  const auto f = shifted_nonnegative(random_max_affine(rng, 2, 4));
  const auto net = compile_convex(f);
  const auto m = metrics(net);
  CHECK(m.input_dim == 2);
  CHECK(m.output_dim == 1);
  CHECK(m.hidden_width == 3);   // d+1
  CHECK(m.relu_depth == 6);     // embedding + 4 blocks + readout
  CHECK(m.hidden_blocks == 4);  // N

  std::int64_t params = 0;
  for (const auto& layer : net.layers)
    params += layer.map.weights.size() + layer.map.bias.size();
  CHECK(m.parameter_count == params);
}

TEST_CASE("serialization round-trip is bit-exact on evaluations") {
  Rng rng(11);
  const auto f = shifted_nonnegative(random_max_affine(rng, 2, 3));
  auto net = compile_convex(f);
  const std::string path = "roundtrip_net.json";
  save_net(net, path);
  const auto back = load_net(path);
  for (int i = 0; i < 100; ++i) {
    const VectorD x = rng.cube_point(2);
    CHECK(eval_net1(net, x) == eval_net1(back, x));
  }
  CHECK(back.provenance.at("compiler") == "compile_convex");
  CHECK(metrics(back).hidden_blocks == metrics(net).hidden_blocks);
  std::remove(path.c_str());
}

TEST_CASE("deserialization rejects malformed documents") {
  const char* mismatched_bias = R"({
    "format_version": 1, "input_dim": 2,
    "layers": [{"rows": 2, "cols": 2, "weights": [1,0,0,1],
                "bias": [0], "activation": "relu"}]
  })";
  CHECK_THROWS_AS(net_from_json(nlohmann::json::parse(mismatched_bias)),
                  ValidationError);

  const char* linear_middle = R"({
    "format_version": 1, "input_dim": 1,
    "layers": [
      {"rows": 1, "cols": 1, "weights": [1], "bias": [0], "activation": "linear"},
      {"rows": 1, "cols": 1, "weights": [1], "bias": [0], "activation": "relu"}
    ]
  })";
  CHECK_THROWS_AS(net_from_json(nlohmann::json::parse(linear_middle)),
                  ValidationError);

  const char* broken_chain = R"({
    "format_version": 1, "input_dim": 1,
    "layers": [
      {"rows": 2, "cols": 1, "weights": [1,1], "bias": [0,0], "activation": "relu"},
      {"rows": 1, "cols": 3, "weights": [1,1,1], "bias": [0], "activation": "relu"}
    ]
  })";
  CHECK_THROWS_AS(net_from_json(nlohmann::json::parse(broken_chain)),
                  ValidationError);

  CHECK_THROWS_AS(net_from_json(nlohmann::json::parse("{\"input_dim\": 1}")),
                  ParseError);
}

TEST_CASE("extreme doubles survive the round trip losslessly") {
  ReluNetd net;
  net.input_dim = 1;
  MatrixD w(2, 1);
  w << 0.1, -1.0 / 3.0;
  VectorD b(2);
  b << 1e-300, 12345.678901234567;
  net.layers.push_back({AffineMapd(w, b), Activation::Relu});
  MatrixD w2(1, 2);
  w2 << -0.0, 2.2250738585072014e-308;  // negative zero and DBL_MIN
  net.layers.push_back(
      {AffineMapd(w2, VectorD::Constant(1, 1.7976931348623157e308)),
       Activation::Linear});
  const auto back =
      net_from_json(nlohmann::json::parse(net_to_json(net).dump()));
  for (std::size_t j = 0; j < net.layers.size(); ++j) {
    CHECK(net.layers[j].map.weights == back.layers[j].map.weights);
    CHECK(net.layers[j].map.bias == back.layers[j].map.bias);
  }
}

TEST_CASE("property: relu-terminated nets are nonnegative") {
  const auto r = prop_net_relu_output_nonneg(201, 1000);
  INFO(r.msg);
  CHECK(r.ok);
}

TEST_CASE("property: serialization round-trips bit-exactly") {
  const auto r = prop_net_serialization_roundtrip(202, 1000);
  INFO(r.msg);
  CHECK(r.ok);
}

TEST_CASE("property: batch evaluation matches sequential") {
  const auto r = prop_net_batch_matches_sequential(203, 1000);
  INFO(r.msg);
  CHECK(r.ok);
}
