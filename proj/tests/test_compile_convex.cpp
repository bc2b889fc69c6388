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
#include "prop.hpp"
#include "properties.hpp"

using namespace narrownet;
using namespace narrownet::testing;

namespace {

MaxAffineFnd hat_complement() {
  std::vector<AffineFunctionald> pieces;
  pieces.emplace_back(VectorD::Constant(1, 1.0), 0.0);
  pieces.emplace_back(VectorD::Constant(1, -1.0), 1.0);
  return MaxAffineFnd(1, std::move(pieces));
}

}  // namespace

TEST_CASE("hat complement compiles to width 2, two blocks") {
  const auto net = compile_convex(hat_complement());
  const auto m = metrics(net);
  CHECK(m.hidden_width == 2);
  CHECK(m.hidden_blocks == 2);
  CHECK(eval_net1(net, VectorD::Constant(1, 0.5)) == doctest::Approx(0.5));
  CHECK(eval_net1(net, VectorD::Constant(1, 0.1)) == doctest::Approx(0.9));
}

TEST_CASE("single nonnegative piece compiles to one block") {
  std::vector<AffineFunctionald> pieces;
  VectorD a = VectorD::Zero(2);
  a[0] = 1.0;
  pieces.emplace_back(a, 0.0);  // x -> x_1
  const MaxAffineFnd f(2, std::move(pieces));
  const auto net = compile_convex(f);
  CHECK(metrics(net).hidden_blocks == 1);
  CHECK(metrics(net).hidden_width == 3);
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const VectorD x = rng.cube_point(2);
    CHECK(eval_net1(net, x) == doctest::Approx(x[0]).epsilon(1e-12));
  }
}

TEST_CASE("8 random nonnegative pieces in d=3 compile exactly") {
  Rng rng(7);
  const auto f = shifted_nonnegative(random_max_affine(rng, 3, 8));
  const auto net = compile_convex(f);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const VectorD x = rng.cube_point(3);
    worst = std::max(worst,
                     std::abs(eval_net1(net, x) - eval_max_affine(f, x)));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("linear readout with auto shift reproduces signed functions") {
  Rng rng(9);
  // Deliberately negative somewhere on the cube.
  auto f = random_max_affine(rng, 2, 5);
  for (auto& p : f.pieces) p.b -= 2.0;
  const auto net = compile_convex(
      f, ConvexCompileOptions{OutputMode::LinearReadout,
                              PositivityShift::Auto});
  for (int i = 0; i < 1000; ++i) {
    const VectorD x = rng.cube_point(2);
    CHECK(std::abs(eval_net1(net, x) - eval_max_affine(f, x)) <= 1e-9);
  }
}

TEST_CASE("relu readout without shift rejects negative targets") {
  Rng rng(11);
  auto f = random_max_affine(rng, 2, 4);
  for (auto& p : f.pieces) p.b -= 3.0;  // provably negative near 0
  CHECK_THROWS_AS(
      compile_convex(f, ConvexCompileOptions{OutputMode::ReluReadout,
                                             PositivityShift::None}),
      CompileError);
  // With the shift the same compile succeeds (and computes max(0, f)).
  const auto net = compile_convex(
      f, ConvexCompileOptions{OutputMode::ReluReadout, PositivityShift::Auto});
  for (int i = 0; i < 100; ++i) {
    const VectorD x = rng.cube_point(2);
    CHECK(std::abs(eval_net1(net, x) -
                   std::max(0.0, eval_max_affine(f, x))) <= 1e-9);
  }
}

TEST_CASE("relu readout without shift accepts certified-nonnegative pieces") {
  const auto net = compile_convex(
      hat_complement(), ConvexCompileOptions{OutputMode::ReluReadout,
                                             PositivityShift::None});
  CHECK(eval_net1(net, VectorD::Constant(1, 0.25)) == doctest::Approx(0.75));
}

TEST_CASE("exactness sweep over d and N at 1e-9") {
  Rng rng(13);
  for (const int d : {1, 2, 3, 5}) {
    for (const int n : {1, 4, 20}) {
      const auto f = shifted_nonnegative(random_max_affine(rng, d, n));
      const auto net = compile_convex(f);
      const auto m = metrics(net);
      CHECK(m.hidden_width == d + 1);
      CHECK(m.hidden_blocks == n);
      double worst = 0.0;
      for (int i = 0; i < 2000; ++i) {
        const VectorD x = rng.cube_point(d);
        worst = std::max(worst,
                         std::abs(eval_net1(net, x) - eval_max_affine(f, x)));
      }
      CHECK(worst <= 1e-9);
    }
  }
}

TEST_CASE("property: compiled nets match the piece-scan oracle") {
  const auto r = prop_convex_compile_exact(301, 1000);
  INFO(r.msg);
  CHECK(r.ok);
}

TEST_CASE("property: graph propagation at every depth prefix") {
  const auto r = prop_convex_graph_propagation(302, 1000);
  INFO(r.msg);
  CHECK(r.ok);
}

TEST_CASE("property: piece order does not change the function") {
  const auto r = prop_convex_order_invariance(303, 1000);
  INFO(r.msg);
  CHECK(r.ok);
}

TEST_CASE("property: input copies pass through untouched at width d+1") {
  const auto r = prop_convex_input_copy(304, 1000);
  INFO(r.msg);
  CHECK(r.ok);
}
