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

// Shared random generators for the test and property suites.

#pragma once

#include <string>

#include "narrownet/affine.hpp"
#include "narrownet/deepen.hpp"
#include "narrownet/net.hpp"
#include "narrownet/rng.hpp"

namespace narrownet::testing {

inline AffineFunctionald random_functional(Rng& rng, int d, double lo = -1.0,
                                           double hi = 1.0) {
  return AffineFunctionald(rng.vector(d, lo, hi), rng.uniform(lo, hi));
}

inline MaxAffineFnd random_max_affine(Rng& rng, int d, int pieces,
                                      double lo = -1.0, double hi = 1.0) {
  std::vector<AffineFunctionald> ps;
  ps.reserve(pieces);
  for (int i = 0; i < pieces; ++i) ps.push_back(random_functional(rng, d, lo, hi));
  return MaxAffineFnd(d, std::move(ps));
}

/// Adds a constant to every piece so the certified cube minimum is >= 0.
inline MaxAffineFnd shifted_nonnegative(MaxAffineFnd f) {
  const double lift = std::max(0.0, -certified_cube_min(f));
  for (auto& p : f.pieces) p.b += lift;
  return f;
}

inline AffineMapd random_affine_map(Rng& rng, int rows, int cols,
                                    double lo = -1.0, double hi = 1.0) {
  MatrixD w(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) w(r, c) = rng.uniform(lo, hi);
  return AffineMapd(std::move(w), rng.vector(rows, lo, hi));
}

/// Random valid net with the given layer widths; last layer may be linear.
inline ReluNetd random_net(Rng& rng, int input_dim,
                           const std::vector<int>& widths,
                           bool linear_readout = false) {
  ReluNetd net;
  net.input_dim = input_dim;
  int prev = input_dim;
  for (std::size_t j = 0; j < widths.size(); ++j) {
    Layerd layer;
    layer.map = random_affine_map(rng, widths[j], prev);
    layer.activation = (linear_readout && j + 1 == widths.size())
                           ? Activation::Linear
                           : Activation::Relu;
    net.layers.push_back(std::move(layer));
    prev = widths[j];
  }
  return net;
}

inline ShallowNetd random_shallow(Rng& rng, int d, int n) {
  ShallowNetd s;
  for (int j = 0; j < n; ++j) s.hidden.push_back(random_functional(rng, d));
  s.coeffs = rng.vector(n, -1.0, 1.0);
  s.bias = rng.uniform(-1.0, 1.0);
  return s;
}

}  // namespace narrownet::testing
