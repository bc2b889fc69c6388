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

#include "narrownet/compile_dc.hpp"
#include "narrownet/dc_decompose.hpp"
#include "narrownet/targets.hpp"
#include "prop.hpp"
#include "properties.hpp"

using namespace narrownet;
using namespace narrownet::testing;

namespace {

VectorD vec2(double x, double y) {
  VectorD v(2);
  v << x, y;
  return v;
}

}  // namespace

TEST_CASE("max gadget computes max{x, y} for y >= 0") {
  const auto gadget = max_gadget<double>();
  const auto m = metrics(gadget);
  CHECK(m.hidden_width == 2);
  CHECK(m.relu_depth == 2);
  CHECK(eval_net1(gadget, vec2(3.0, 5.0)) == 5.0);
  CHECK(eval_net1(gadget, vec2(-1.0, 0.0)) == 0.0);
  CHECK(eval_net1(gadget, vec2(2.0, 2.0)) == 2.0);
}

TEST_CASE("hat-vs-ramp DC function compiles to 8 blocks") {
  // g = max(x, 1-x), h = max(0, 2x-1); f(0.75) = 0.75 - 0.5 = 0.25.
  std::vector<AffineFunctionald> gp, hp;
  gp.emplace_back(VectorD::Constant(1, 1.0), 0.0);
  gp.emplace_back(VectorD::Constant(1, -1.0), 1.0);
  hp.emplace_back(VectorD::Constant(1, 0.0), 0.0);
  hp.emplace_back(VectorD::Constant(1, 2.0), -1.0);
  const DCFnd f(MaxAffineFnd(1, std::move(gp)), MaxAffineFnd(1, std::move(hp)));
  const auto net = compile_dc(f);
  const auto m = metrics(net);
  CHECK(m.hidden_blocks == 8);
  CHECK(m.hidden_width == 4);
  CHECK(eval_net1(net, VectorD::Constant(1, 0.75)) == doctest::Approx(0.25));
}

TEST_CASE("g == h cancels to the zero function") {
  Rng rng(3);
  const auto g = random_max_affine(rng, 2, 5);
  const DCFnd f(g, g);
  const auto net =
      compile_dc(f, DcCompileOptions{OutputMode::LinearReadout});
  for (int i = 0; i < 1000; ++i)
    CHECK(std::abs(eval_net1(net, rng.cube_point(2))) <= 1e-9);
}

TEST_CASE("interpolated hat via decomposition compiles exactly") {
  const auto inst = make_target("hat", 1);
  auto fn = to_target_fn(inst);
  const auto interp = build_interpolant<double>(fn, 0.1);
  const auto dc = decompose(interp).fn;
  const auto net = compile_dc(dc);
  const auto m = metrics(dc.dim() ? net : net);
  CHECK(m.hidden_width == 4);  // d+3
  CHECK(m.hidden_blocks == 2 * (dc.g.piece_count() + dc.h.piece_count()));
  Rng rng(5);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const VectorD x = rng.cube_point(1);
    worst = std::max(worst, std::abs(eval_net1(net, x) -
                                     eval_interpolant(interp, x)));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("degenerate N=1 and M=1 still cost two blocks each") {
  std::vector<AffineFunctionald> gp, hp;
  gp.emplace_back(VectorD::Constant(1, 1.0), 0.0);
  hp.emplace_back(VectorD::Constant(1, 0.0), 0.0);
  const DCFnd f(MaxAffineFnd(1, std::move(gp)), MaxAffineFnd(1, std::move(hp)));
  const auto net = compile_dc(f);
  CHECK(metrics(net).hidden_blocks == 4);  // 2(1+1)
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const VectorD x = rng.cube_point(1);
    CHECK(eval_net1(net, x) == doctest::Approx(x[0]).epsilon(1e-12));
  }
}

TEST_CASE("relu readout rejects certified-negative differences") {
  std::vector<AffineFunctionald> gp, hp;
  gp.emplace_back(VectorD::Constant(1, 0.0), 0.0);   // g = 0
  hp.emplace_back(VectorD::Constant(1, 0.0), 1.0);   // h = 1
  const DCFnd f(MaxAffineFnd(1, std::move(gp)), MaxAffineFnd(1, std::move(hp)));
  CHECK_THROWS_AS(compile_dc(f), CompileError);
  const auto net = compile_dc(f, DcCompileOptions{OutputMode::LinearReadout});
  CHECK(eval_net1(net, VectorD::Constant(1, 0.3)) == doctest::Approx(-1.0));
}

TEST_CASE("dimension mismatch between g and h is rejected") {
  Rng rng(9);
  const auto g = random_max_affine(rng, 2, 3);
  const auto h = random_max_affine(rng, 3, 3);
  CHECK_THROWS_AS(DCFnd(g, h), DimensionError);
}

TEST_CASE("property: DC nets match the piece-scan oracle") {
  const auto r = prop_dc_compile_exact(401, 1000);
  INFO(r.msg);
  CHECK(r.ok);
}

TEST_CASE("property: memory channel holds g + T_g through phase 2") {
  const auto r = prop_dc_memory_channel(402, 1000);
  INFO(r.msg);
  CHECK(r.ok);
}

TEST_CASE("property: gadget y-input never goes negative") {
  const auto r = prop_dc_gadget_precondition(403, 1000);
  INFO(r.msg);
  CHECK(r.ok);
}
