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

#include "narrownet/simplex.hpp"
#include "narrownet/targets.hpp"
#include "prop.hpp"
#include "properties.hpp"

using namespace narrownet;
using namespace narrownet::testing;

TEST_CASE("affine targets interpolate exactly") {
  TargetFnd f;
  f.dim = 1;
  f.evaluator = [](const VectorD& x) { return x[0]; };
  f.lipschitz = 1.0;
  const auto p = build_interpolant<double>(f, 0.3);
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const VectorD x = rng.cube_point(1);
    CHECK(std::abs(eval_interpolant(p, x) - x[0]) <= 1e-15);
  }
}

TEST_CASE("parabola at eps=0.25 uses resolution 8 and meets the bound") {
  const auto inst = make_target("parabola", 1);
  const auto p = build_interpolant<double>(to_target_fn(inst), 0.25);
  CHECK(p.resolution == 8);
  double worst = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const VectorD x = VectorD::Constant(1, i / 10000.0);
    worst = std::max(worst,
                     std::abs(eval_interpolant(p, x) - inst.eval(x)));
  }
  CHECK(worst <= 0.25);
  // Exact error of linear interpolation of x^2: spacing^2 / 4.
  CHECK(worst == doctest::Approx(1.0 / 256.0).epsilon(1e-6));
}

TEST_CASE("abs-diff creases align with the complex: interpolation is exact") {
  TargetFnd f;
  f.dim = 2;
  f.evaluator = [](const VectorD& x) { return std::abs(x[0] - x[1]); };
  f.lipschitz = 1.0;  // asserted; the crease sits on a difference plane
  const auto p = build_interpolant<double>(f, 0.1);
  CHECK(p.resolution == 15);
  Rng rng(5);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const VectorD x = rng.cube_point(2);
    worst = std::max(worst,
                     std::abs(eval_interpolant(p, x) - f.evaluator(x)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("eval reproduces lattice vertices exactly, even awkward ones") {
  // n = 49 makes i/n * n != i in floating point without snapping.
  const int n = 49;
  std::vector<double> values(static_cast<std::size_t>(n) + 1);
  Rng rng(7);
  for (auto& v : values) v = rng.uniform(-1.0, 1.0);
  const SimplicialInterpolantd p(1, n, values);
  for (int i = 0; i <= n; ++i) {
    const VectorD x = VectorD::Constant(1, double(i) / n);
    CHECK(eval_interpolant(p, x) == values[static_cast<std::size_t>(i)]);
  }
}

TEST_CASE("d=1 midpoint example") {
  const SimplicialInterpolantd p(1, 2, {0.0, 0.25, 1.0});
  CHECK(eval_interpolant(p, VectorD::Constant(1, 0.25)) == 0.125);
}

TEST_CASE("eval agrees with an independent per-simplex linear solve") {
  Rng rng(9);
  const auto inst = make_target("sin2d-positive", 2);
  const auto p = build_interpolant<double>(to_target_fn(inst), 0.4);
  const int n = p.resolution;
  for (int i = 0; i < 1000; ++i) {
    const VectorD x = rng.cube_point(2);
    // Locate the simplex the same way evaluation does.
    Eigen::VectorXi cell(2);
    VectorD t(2);
    for (int k = 0; k < 2; ++k) {
      const double scaled = x[k] * n;
      cell[k] = std::min(static_cast<int>(std::floor(scaled)), n - 1);
      t[k] = scaled - cell[k];
    }
    KuhnSimplex s;
    s.cell = cell;
    s.perm = t[0] >= t[1] ? std::vector<int>{0, 1} : std::vector<int>{1, 0};
    // Solve for the affine function through the three path vertices.
    const auto verts = path_vertices(s);
    MatrixD lhs(3, 3);
    VectorD rhs(3);
    for (int r = 0; r < 3; ++r) {
      lhs(r, 0) = double(verts[r][0]) / n;
      lhs(r, 1) = double(verts[r][1]) / n;
      lhs(r, 2) = 1.0;
      rhs[r] = p.value_at_vertex(verts[r]);
    }
    const VectorD coef = lhs.colPivHouseholderQr().solve(rhs);
    const double oracle = coef[0] * x[0] + coef[1] * x[1] + coef[2];
    CHECK(std::abs(eval_interpolant(p, x) - oracle) <= 1e-12);
  }
}

TEST_CASE("out-of-cube points clamp with a warning flag") {
  const SimplicialInterpolantd p(1, 2, {1.0, 2.0, 3.0});
  bool clamped = false;
  CHECK(eval_interpolant(p, VectorD::Constant(1, -0.5), &clamped) == 1.0);
  CHECK(clamped);
  clamped = false;
  CHECK(eval_interpolant(p, VectorD::Constant(1, 1.5), &clamped) == 3.0);
  CHECK(clamped);
  clamped = false;
  eval_interpolant(p, VectorD::Constant(1, 0.5), &clamped);
  CHECK_FALSE(clamped);
}

TEST_CASE("build_interpolant rejects bad eps and enforces the budget") {
  TargetFnd f;
  f.dim = 3;
  f.evaluator = [](const VectorD& x) { return x.sum(); };
  f.lipschitz = 3.0;
  CHECK_THROWS_AS(build_interpolant<double>(f, -1.0), ValidationError);
  CHECK_THROWS_AS(build_interpolant<double>(f, 0.001, /*budget=*/1000),
                  ResourceError);
  TargetFnd no_l = f;
  no_l.lipschitz.reset();
  CHECK_THROWS_AS(build_interpolant<double>(no_l, 0.5), ValidationError);
}

TEST_CASE("vertex files round-trip") {
  Rng rng(11);
  const auto p = random_interpolant(rng, 2, 4);
  const std::string path = "vertices_roundtrip.dat";
  save_vertex_file(p, path);
  const auto back = load_vertex_file(path);
  CHECK(back.dim == p.dim);
  CHECK(back.resolution == p.resolution);
  CHECK(back.vertex_values == p.vertex_values);
  std::remove(path.c_str());
}

TEST_CASE("vertex file count mismatch is a parse error") {
  const std::string path = "vertices_bad.dat";
  std::ofstream(path) << "1 2\n0.0\n1.0\n";  // needs 3 values
  CHECK_THROWS_AS(load_vertex_file(path), ParseError);
  std::remove(path.c_str());
}

TEST_CASE("property: lattice vertices evaluate exactly") {
  const auto r = prop_interp_vertex_exact(601, 1000);
  INFO(r.msg);
  CHECK(r.ok);
}

TEST_CASE("property: affine within each simplex") {
  const auto r = prop_interp_affine_on_simplices(602, 1000);
  INFO(r.msg);
  CHECK(r.ok);
}

TEST_CASE("property: continuity across interior facets") {
  const auto r = prop_interp_facet_continuity(603, 1000);
  INFO(r.msg);
  CHECK(r.ok);
}

TEST_CASE("property: Lipschitz convex-combination bound holds") {
  const auto r = prop_interp_lipschitz_bound(604, 1000);
  INFO(r.msg);
  CHECK(r.ok);
}
