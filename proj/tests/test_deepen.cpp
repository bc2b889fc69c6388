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

#include "narrownet/deepen.hpp"
#include "prop.hpp"
#include "properties.hpp"

using namespace narrownet;
using namespace narrownet::testing;

TEST_CASE("single-neuron identity deepens to width 3, 3 layers") {
  ShallowNetd s;
  s.hidden.emplace_back(VectorD::Constant(1, 1.0), 0.0);
  s.coeffs = VectorD::Constant(1, 1.0);
  s.bias = 0.0;
  const auto net = deepen(s);
  const auto m = metrics(net);
  CHECK(m.hidden_width == 3);
  CHECK(m.relu_depth == 3);
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const VectorD x = rng.cube_point(1);
    CHECK(eval_net1(net, x) == doctest::Approx(x[0]).epsilon(1e-12));
  }
}

TEST_CASE("random n=3 shallow net in d=2 deepens within 1e-9") {
  Rng rng(5);
  const auto s = random_shallow(rng, 2, 3);
  const auto net = deepen(s);
  CHECK(metrics(net).hidden_width == 4);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const VectorD x = rng.cube_point(2);
    worst = std::max(worst, std::abs(eval_net1(net, x) - eval_shallow(s, x)));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("all-nonnegative coefficients need only T = 1") {
  Rng rng(7);
  ShallowNetd s = random_shallow(rng, 2, 4);
  s.coeffs = s.coeffs.cwiseAbs();
  CHECK(deepen_shift(s) == 1.0);
  const auto net = deepen(s);
  // T lands in the z-channel bias of the first layer.
  CHECK(net.layers[0].map.bias[3] == 1.0);
}

TEST_CASE("shift certificate covers worst-case negative coefficients") {
  ShallowNetd s;
  s.hidden.emplace_back(VectorD::Constant(1, 1.0), 1.0);   // A(x) = x + 1
  s.coeffs = VectorD::Constant(1, -2.0);
  s.bias = 0.5;
  // max(0,-c) * max(0, hi) = 2 * 2 = 4, so T = 5.
  CHECK(deepen_shift(s) == 5.0);
  const auto net = deepen(s);
  Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    const VectorD x = rng.cube_point(1);
    CHECK(std::abs(eval_net1(net, x) - eval_shallow(s, x)) <= 1e-9);
  }
}

TEST_CASE("shallow nets load from both document forms") {
  const char* compact = R"({
    "pieces": [{"a": [1.0], "b": 0.0}, {"a": [-0.5], "b": 0.25}],
    "coeffs": [1.0, 2.0],
    "bias": 0.125
  })";
  const auto s = shallow_from_json(nlohmann::json::parse(compact));
  CHECK(s.width() == 2);
  CHECK(s.bias == 0.125);

  const char* as_net = R"({
    "format_version": 1, "input_dim": 1,
    "layers": [
      {"rows": 2, "cols": 1, "weights": [1.0, -0.5], "bias": [0.0, 0.25],
       "activation": "relu"},
      {"rows": 1, "cols": 2, "weights": [1.0, 2.0], "bias": [0.125],
       "activation": "relu"}
    ]
  })";
  const auto s2 = shallow_from_json(nlohmann::json::parse(as_net));
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const VectorD x = rng.cube_point(1);
    CHECK(eval_shallow(s, x) == eval_shallow(s2, x));
  }

  // Round trip through the compact form.
  const auto s3 = shallow_from_json(shallow_to_json(s));
  for (int i = 0; i < 50; ++i) {
    const VectorD x = rng.cube_point(1);
    CHECK(eval_shallow(s, x) == eval_shallow(s3, x));
  }

  const char* three_layers = R"({
    "format_version": 1, "input_dim": 1,
    "layers": [
      {"rows": 1, "cols": 1, "weights": [1], "bias": [0], "activation": "relu"},
      {"rows": 1, "cols": 1, "weights": [1], "bias": [0], "activation": "relu"},
      {"rows": 1, "cols": 1, "weights": [1], "bias": [0], "activation": "relu"}
    ]
  })";
  CHECK_THROWS_AS(shallow_from_json(nlohmann::json::parse(three_layers)),
                  ValidationError);
}

TEST_CASE("property: deepened nets stay within 1e-9 of their source") {
  const auto r = prop_deepen_equivalence(501, 1000);
  INFO(r.msg);
  CHECK(r.ok);
}

TEST_CASE("property: accumulator channel stays positive at every prefix") {
  const auto r = prop_deepen_prefix_positive(502, 1000);
  INFO(r.msg);
  CHECK(r.ok);
}
