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

#ifndef NARROWNET_AFFINE_HPP_
#define NARROWNET_AFFINE_HPP_

#include <algorithm>
#include <vector>

#include <Eigen/Dense>

#include "narrownet/errors.hpp"

namespace narrownet {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Affine map x -> weights * x + bias from R^n to R^m.
template <typename Scalar>
struct AffineMap {
  Matrix<Scalar> weights;  // m x n
  Vector<Scalar> bias;     // m

  AffineMap() = default;
  AffineMap(Matrix<Scalar> w, Vector<Scalar> b)
      : weights(std::move(w)), bias(std::move(b)) {
    if (weights.rows() != bias.size())
      throw DimensionError("AffineMap: weight rows != bias length");
    if (!weights.allFinite() || !bias.allFinite())
      throw ValidationError("AffineMap: non-finite entry");
  }

  Eigen::Index in_dim() const { return weights.cols(); }
  Eigen::Index out_dim() const { return weights.rows(); }

  template <typename Derived>
  Vector<Scalar> operator()(const Eigen::MatrixBase<Derived>& x) const {
    if (x.size() != weights.cols())
      throw DimensionError("AffineMap: input dimension mismatch");
    return weights * x + bias;
  }

  static AffineMap identity(Eigen::Index n) {
    return AffineMap(Matrix<Scalar>::Identity(n, n), Vector<Scalar>::Zero(n));
  }
};

/// Scalar-valued affine functional x -> <a, x> + b on R^d.
template <typename Scalar>
struct AffineFunctional {
  Vector<Scalar> a;
  Scalar b = Scalar(0);

  AffineFunctional() = default;
  AffineFunctional(Vector<Scalar> grad, Scalar offset)
      : a(std::move(grad)), b(offset) {
    if (!a.allFinite() || !std::isfinite(static_cast<double>(b)))
      throw ValidationError("AffineFunctional: non-finite entry");
  }

  Eigen::Index dim() const { return a.size(); }

  template <typename Derived>
  Scalar operator()(const Eigen::MatrixBase<Derived>& x) const {
    if (x.size() != a.size())
      throw DimensionError("AffineFunctional: input dimension mismatch");
    return a.dot(x) + b;
  }
};

/// Pointwise maximum of finitely many affine functionals; convex by
/// construction.
template <typename Scalar>
struct MaxAffineFn {
  int dim = 0;
  std::vector<AffineFunctional<Scalar>> pieces;

  MaxAffineFn() = default;
  MaxAffineFn(int d, std::vector<AffineFunctional<Scalar>> ps)
      : dim(d), pieces(std::move(ps)) {
    if (dim < 1) throw DimensionError("MaxAffineFn: dim must be >= 1");
    if (pieces.empty()) throw ValidationError("MaxAffineFn: no pieces");
    for (const auto& p : pieces)
      if (p.dim() != dim)
        throw DimensionError("MaxAffineFn: piece dimension mismatch");
  }

  int piece_count() const { return static_cast<int>(pieces.size()); }
};

/// Difference of two max-affine functions over the same domain, g - h.
template <typename Scalar>
struct DCFn {
  MaxAffineFn<Scalar> g;
  MaxAffineFn<Scalar> h;

  DCFn() = default;
  DCFn(MaxAffineFn<Scalar> gg, MaxAffineFn<Scalar> hh)
      : g(std::move(gg)), h(std::move(hh)) {
    if (g.dim != h.dim) throw DimensionError("DCFn: g.dim != h.dim");
  }

  int dim() const { return g.dim; }
};

/// Evaluates a max-affine function by direct scan over its pieces. This is
/// the brute-force oracle every compiled net is checked against.
template <typename Scalar, typename Derived>
Scalar eval_max_affine(const MaxAffineFn<Scalar>& f,
                       const Eigen::MatrixBase<Derived>& x_expr) {
  const Vector<Scalar> x = x_expr;
  if (x.size() != f.dim)
    throw DimensionError("eval_max_affine: input dimension mismatch");
  Scalar best = f.pieces.front()(x);
  for (std::size_t i = 1; i < f.pieces.size(); ++i)
    best = std::max(best, f.pieces[i](x));
  return best;
}

template <typename Scalar, typename Derived>
Scalar eval_dc(const DCFn<Scalar>& f, const Eigen::MatrixBase<Derived>& x) {
  return eval_max_affine(f.g, x) - eval_max_affine(f.h, x);
}

template <typename Scalar>
struct CubeBounds {
  Scalar lo;
  Scalar hi;
};

/// Exact range of <a,x> + b over the unit cube [0,1]^d. An affine function
/// on a box attains its extremes at the vertex matching the sign pattern of
/// a, so the bounds reduce to coordinatewise sums.
template <typename Scalar>
CubeBounds<Scalar> cube_bounds(const AffineFunctional<Scalar>& f) {
  const Scalar lo = f.b + f.a.cwiseMin(Scalar(0)).sum();
  const Scalar hi = f.b + f.a.cwiseMax(Scalar(0)).sum();
  return {lo, hi};
}

template <typename Scalar>
CubeBounds<Scalar> cube_bounds(const AffineFunctional<Scalar>& f, int d) {
  if (d < 1) throw DimensionError("cube_bounds: dim must be >= 1");
  if (f.dim() != d) throw DimensionError("cube_bounds: dimension mismatch");
  return cube_bounds(f);
}

/// Certified lower bound for min over the cube of a max-affine function:
/// the best of its pieces' exact lower bounds.
template <typename Scalar>
Scalar certified_cube_min(const MaxAffineFn<Scalar>& f) {
  Scalar best = cube_bounds(f.pieces.front()).lo;
  for (std::size_t i = 1; i < f.pieces.size(); ++i)
    best = std::max(best, cube_bounds(f.pieces[i]).lo);
  return best;
}

/// Certified upper bound for max over the cube of a max-affine function.
template <typename Scalar>
Scalar certified_cube_max(const MaxAffineFn<Scalar>& f) {
  Scalar worst = cube_bounds(f.pieces.front()).hi;
  for (std::size_t i = 1; i < f.pieces.size(); ++i)
    worst = std::max(worst, cube_bounds(f.pieces[i]).hi);
  return worst;
}

/// Fuses two affine maps so that the result computes A(B(x)).
template <typename Scalar>
AffineMap<Scalar> compose_affine(const AffineMap<Scalar>& a,
                                 const AffineMap<Scalar>& b) {
  if (a.in_dim() != b.out_dim())
    throw DimensionError("compose_affine: inner dimension mismatch");
  return AffineMap<Scalar>(a.weights * b.weights,
                           a.weights * b.bias + a.bias);
}

/// Removes exactly duplicated pieces (bitwise-equal coefficients). Dominated
/// but non-identical pieces are kept.
template <typename Scalar>
MaxAffineFn<Scalar> dedup_pieces(const MaxAffineFn<Scalar>& f) {
  std::vector<AffineFunctional<Scalar>> kept;
  kept.reserve(f.pieces.size());
  for (const auto& p : f.pieces) {
    bool dup = false;
    for (const auto& q : kept) {
      if (p.b == q.b && p.a == q.a) {
        dup = true;
        break;
      }
    }
    if (!dup) kept.push_back(p);
  }
  return MaxAffineFn<Scalar>(f.dim, std::move(kept));
}

using AffineMapd = AffineMap<double>;
using AffineFunctionald = AffineFunctional<double>;
using MaxAffineFnd = MaxAffineFn<double>;
using DCFnd = DCFn<double>;
using VectorD = Vector<double>;
using MatrixD = Matrix<double>;

}  // namespace narrownet

#endif  // NARROWNET_AFFINE_HPP_
