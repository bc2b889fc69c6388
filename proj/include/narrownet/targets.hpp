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

#ifndef NARROWNET_TARGETS_HPP_
#define NARROWNET_TARGETS_HPP_

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "narrownet/affine.hpp"
#include "narrownet/errors.hpp"
#include "narrownet/maxaffine_fit.hpp"
#include "narrownet/simplex.hpp"

namespace narrownet {

/// A builtin analytic target instantiated at a concrete dimension. The two
/// Lipschitz constants serve different consumers: the sup-metric one sizes
/// interpolation grids, the Euclidean one enters the max-affine
/// approximation bound.
struct TargetInstance {
  std::string name;
  int dim = 0;
  bool convex = false;
  double lipschitz_sup = 0;
  double lipschitz_l2 = 0;
  std::function<double(const VectorD&)> eval;
  std::function<VectorD(const VectorD&)> subgrad;  // empty for nonconvex targets
};

struct TargetDescriptor {
  std::string name;
  int min_dim = 1;
  int max_dim = -1;  // -1 = any
  bool convex = false;
  std::string summary;
};

inline const std::vector<TargetDescriptor>& builtin_targets() {
  static const std::vector<TargetDescriptor> registry = {
      {"affine", 1, -1, true, "c.x + 0.1 with c_i = 1/(i+2)"},
      {"parabola", 1, 1, true, "x^2"},
      {"norm2-sq", 1, -1, true, "squared Euclidean norm"},
      {"hat", 1, 1, false, "min(x, 1-x)"},
      {"hat-complement", 1, 1, true, "max(x, 1-x)"},
      {"abs-diff", 2, 2, true, "|x1 - x2|"},
      {"sin2d-positive", 2, 2, false, "0.5 + 0.5 sin(pi x1) sin(pi x2)"},
  };
  return registry;
}

inline TargetInstance make_target(const std::string& name, int dim) {
  const double pi = std::acos(-1.0);
  TargetInstance t;
  t.name = name;
  t.dim = dim;

  const TargetDescriptor* desc = nullptr;
  for (const auto& candidate : builtin_targets())
    if (candidate.name == name) desc = &candidate;
  if (!desc)
    throw ValidationError("unknown builtin target '" + name + "'");
  if (dim < desc->min_dim || (desc->max_dim > 0 && dim > desc->max_dim))
    throw ValidationError("target '" + name + "' does not support dim " +
                          std::to_string(dim));
  t.convex = desc->convex;

  if (name == "affine") {
    VectorD c(dim);
    for (int i = 0; i < dim; ++i) c[i] = 1.0 / (i + 2);
    t.lipschitz_sup = c.cwiseAbs().sum();
    t.lipschitz_l2 = c.norm();
    t.eval = [c](const VectorD& x) { return c.dot(x) + 0.1; };
    t.subgrad = [c](const VectorD&) { return c; };
  } else if (name == "parabola") {
    t.lipschitz_sup = t.lipschitz_l2 = 2.0;
    t.eval = [](const VectorD& x) { return x[0] * x[0]; };
    t.subgrad = [](const VectorD& x) {
      return VectorD::Constant(1, 2.0 * x[0]);
    };
  } else if (name == "norm2-sq") {
    t.lipschitz_sup = 2.0 * dim;
    t.lipschitz_l2 = 2.0 * std::sqrt(static_cast<double>(dim));
    t.eval = [](const VectorD& x) { return x.squaredNorm(); };
    t.subgrad = [](const VectorD& x) { return VectorD(2.0 * x); };
  } else if (name == "hat") {
    t.lipschitz_sup = t.lipschitz_l2 = 1.0;
    t.eval = [](const VectorD& x) { return std::min(x[0], 1.0 - x[0]); };
  } else if (name == "hat-complement") {
    t.lipschitz_sup = t.lipschitz_l2 = 1.0;
    t.eval = [](const VectorD& x) { return std::max(x[0], 1.0 - x[0]); };
    t.subgrad = [](const VectorD& x) {
      return VectorD::Constant(1, x[0] >= 0.5 ? 1.0 : -1.0);
    };
  } else if (name == "abs-diff") {
    t.lipschitz_sup = 2.0;
    t.lipschitz_l2 = std::sqrt(2.0);
    t.eval = [](const VectorD& x) { return std::abs(x[0] - x[1]); };
    t.subgrad = [](const VectorD& x) {
      VectorD g(2);
      const double s = x[0] >= x[1] ? 1.0 : -1.0;
      g << s, -s;
      return g;
    };
  } else {  // sin2d-positive
    // |grad|_1 = (pi/2)(|cos sin| + |sin cos|) <= (pi/2) sin(a+b) bound.
    t.lipschitz_sup = t.lipschitz_l2 = pi / 2.0;
    t.eval = [pi](const VectorD& x) {
      return 0.5 + 0.5 * std::sin(pi * x[0]) * std::sin(pi * x[1]);
    };
  }
  return t;
}

inline TargetFnd to_target_fn(const TargetInstance& t) {
  TargetFnd f;
  f.dim = t.dim;
  f.evaluator = t.eval;
  f.lipschitz = t.lipschitz_sup;
  return f;
}

inline ConvexTargetd to_convex_target(const TargetInstance& t) {
  if (!t.convex)
    throw ValidationError("target '" + t.name + "' is not convex");
  ConvexTargetd c;
  c.dim = t.dim;
  c.evaluator = t.eval;
  c.subgradient = t.subgrad;
  c.lipschitz = t.lipschitz_l2;
  return c;
}

}  // namespace narrownet

#endif  // NARROWNET_TARGETS_HPP_
