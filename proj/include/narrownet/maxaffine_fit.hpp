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

#ifndef NARROWNET_MAXAFFINE_FIT_HPP_
#define NARROWNET_MAXAFFINE_FIT_HPP_

#include <cmath>
#include <functional>
#include <vector>

#include "narrownet/affine.hpp"
#include "narrownet/errors.hpp"
#include "narrownet/rng.hpp"

namespace narrownet {

/// Convex Lipschitz target for max-affine under-approximation. When no
/// analytic subgradient is supplied, central finite differences with step
/// 1e-6 stand in (adequate for smooth evaluators only).
template <typename Scalar>
struct ConvexTarget {
  int dim = 0;
  std::function<Scalar(const Vector<Scalar>&)> evaluator;
  std::function<Vector<Scalar>(const Vector<Scalar>&)> subgradient;  // may be empty
  Scalar lipschitz = Scalar(0);
};

/// Random midpoint convexity spot-check:
/// f((x+y)/2) <= (f(x)+f(y))/2 + tol on `samples` random cube pairs.
template <typename Scalar>
bool spot_check_convex(const ConvexTarget<Scalar>& t, int samples = 256,
                       Scalar tol = Scalar(1e-9),
                       std::uint64_t seed = 0x636f6e76ull) {
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    const Vector<Scalar> x = rng.cube_point(t.dim).template cast<Scalar>();
    const Vector<Scalar> y = rng.cube_point(t.dim).template cast<Scalar>();
    const Vector<Scalar> mid = (x + y) / Scalar(2);
    if (t.evaluator(mid) >
        (t.evaluator(x) + t.evaluator(y)) / Scalar(2) + tol)
      return false;
  }
  return true;
}

template <typename Scalar>
Vector<Scalar> fd_subgradient(
    const std::function<Scalar(const Vector<Scalar>&)>& f,
    const Vector<Scalar>& x, Scalar step = Scalar(1e-6)) {
  Vector<Scalar> g(x.size());
  Vector<Scalar> probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + step;
    const Scalar up = f(probe);
    probe[i] = x[i] - step;
    const Scalar down = f(probe);
    probe[i] = x[i];
    g[i] = (up - down) / (Scalar(2) * step);
  }
  return g;
}

/// Largest m with m^d <= k, computed without trusting pow rounding.
inline int grid_side(int k, int d) {
  int m = std::max(1, static_cast<int>(std::floor(
                          std::pow(static_cast<double>(k), 1.0 / d))));
  auto pow_int = [d](int base) {
    std::int64_t r = 1;
    for (int i = 0; i < d; ++i) r *= base;
    return r;
  };
  while (pow_int(m + 1) <= k) ++m;
  while (m > 1 && pow_int(m) > k) --m;
  return m;
}

/// k-piece max-affine under-approximation of a convex target: places
/// floor(k^{1/d}) cell centers per axis and takes the supporting plane at
/// each center, l_j(x) = f(c_j) + <s_j, x - c_j>. Supporting planes of a
/// convex function never exceed it, so the fit is a pointwise minorant (up
/// to finite-difference tolerance) with at most k pieces.
template <typename Scalar>
MaxAffineFn<Scalar> fit_max_affine(const ConvexTarget<Scalar>& t, int k) {
  if (k < 1) throw ValidationError("fit_max_affine: k must be >= 1");
  if (t.dim < 1) throw DimensionError("fit_max_affine: dim must be >= 1");
  const int d = t.dim;
  const int m = grid_side(k, d);

  std::vector<AffineFunctional<Scalar>> pieces;
  pieces.reserve(static_cast<std::size_t>(std::pow(m, d)));
  Eigen::VectorXi idx = Eigen::VectorXi::Zero(d);
  Vector<Scalar> center(d);
  while (true) {
    for (int i = 0; i < d; ++i)
      center[i] = (Scalar(idx[i]) + Scalar(0.5)) / Scalar(m);
    const Scalar value = t.evaluator(center);
    const Vector<Scalar> slope = t.subgradient
                                     ? t.subgradient(center)
                                     : fd_subgradient<Scalar>(t.evaluator,
                                                              center);
    pieces.emplace_back(slope, value - slope.dot(center));
    int i = d - 1;
    for (; i >= 0; --i) {
      if (++idx[i] < m) break;
      idx[i] = 0;
    }
    if (i < 0) break;
  }
  return MaxAffineFn<Scalar>(d, std::move(pieces));
}

/// Approximation guarantee for a k-piece max-affine fit of a convex
/// function with Lipschitz constant L on [0,1]^d: 72 L d^{3/2} k^{-2/d}.
inline double max_affine_error_bound(double lipschitz, int d, int k) {
  return 72.0 * lipschitz * std::pow(static_cast<double>(d), 1.5) *
         std::pow(static_cast<double>(k), -2.0 / d);
}

using ConvexTargetd = ConvexTarget<double>;

}  // namespace narrownet

#endif  // NARROWNET_MAXAFFINE_FIT_HPP_
