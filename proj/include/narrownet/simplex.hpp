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

#ifndef NARROWNET_SIMPLEX_HPP_
#define NARROWNET_SIMPLEX_HPP_

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "narrownet/affine.hpp"
#include "narrownet/errors.hpp"

namespace narrownet {

/// Black-box target for interpolation: an evaluator on [0,1]^d plus an
/// optional sup-metric Lipschitz constant used for grid sizing.
template <typename Scalar>
struct TargetFn {
  int dim = 0;
  std::function<Scalar(const Vector<Scalar>&)> evaluator;
  std::optional<Scalar> lipschitz;
};

inline constexpr std::uint64_t kDefaultVertexBudget = std::uint64_t(1) << 24;

/// Number of lattice vertices (n+1)^d, with overflow reported as "over any
/// budget".
inline std::uint64_t lattice_vertex_count(int d, int n) {
  std::uint64_t count = 1;
  const auto side = static_cast<std::uint64_t>(n) + 1;
  for (int i = 0; i < d; ++i) {
    if (count > UINT64_MAX / side) return UINT64_MAX;
    count *= side;
  }
  return count;
}

inline std::int64_t factorial(int d) {
  std::int64_t f = 1;
  for (int i = 2; i <= d; ++i) f *= i;
  return f;
}

/// Piecewise-linear interpolant of a function on the uniform grid of
/// resolution n over [0,1]^d, affine on each simplex of the Kuhn
/// triangulation (each cell split into d! simplices by the orderings of its
/// local coordinates). Vertex values are stored in lexicographic lattice
/// order with the first coordinate most significant.
template <typename Scalar>
struct SimplicialInterpolant {
  int dim = 0;
  int resolution = 0;  // cells per axis; spacing 1/resolution
  std::vector<Scalar> vertex_values;

  SimplicialInterpolant() = default;
  SimplicialInterpolant(int d, int n, std::vector<Scalar> values)
      : dim(d), resolution(n), vertex_values(std::move(values)) {
    if (d < 1) throw DimensionError("interpolant: dim must be >= 1");
    if (n < 1) throw ValidationError("interpolant: resolution must be >= 1");
    const std::uint64_t expect = lattice_vertex_count(d, n);
    if (vertex_values.size() != expect)
      throw ValidationError("interpolant: expected " + std::to_string(expect) +
                            " vertex values, got " +
                            std::to_string(vertex_values.size()));
    for (const Scalar v : vertex_values)
      if (!std::isfinite(static_cast<double>(v)))
        throw ValidationError("interpolant: non-finite vertex value");
  }

  std::uint64_t flat_index(const Eigen::VectorXi& v) const {
    std::uint64_t idx = 0;
    for (int i = 0; i < dim; ++i)
      idx = idx * (resolution + 1) + static_cast<std::uint64_t>(v[i]);
    return idx;
  }

  Scalar value_at_vertex(const Eigen::VectorXi& v) const {
    return vertex_values[flat_index(v)];
  }

  /// Grid spacing 1/n.
  Scalar spacing() const { return Scalar(1) / Scalar(resolution); }

  double simplex_count() const {
    return static_cast<double>(factorial(dim)) *
           std::pow(static_cast<double>(resolution), dim);
  }
};

// ---------------------------------------------------------------------------
// Kuhn complex combinatorics.
// ---------------------------------------------------------------------------

/// One simplex of the Kuhn triangulation: a grid cell plus a coordinate
/// ordering. Its vertices are the path cell, cell+e_{perm[0]},
/// cell+e_{perm[0]}+e_{perm[1]}, ..., ending at the opposite cell corner.
struct KuhnSimplex {
  Eigen::VectorXi cell;
  std::vector<int> perm;
};

inline std::vector<Eigen::VectorXi> path_vertices(const KuhnSimplex& s) {
  const int d = static_cast<int>(s.cell.size());
  std::vector<Eigen::VectorXi> verts;
  verts.reserve(d + 1);
  Eigen::VectorXi v = s.cell;
  verts.push_back(v);
  for (int j = 0; j < d; ++j) {
    v[s.perm[j]] += 1;
    verts.push_back(v);
  }
  return verts;
}

/// Visits every simplex of the complex in canonical order: cells
/// lexicographically, permutations lexicographically within each cell.
inline void for_each_simplex(int d, int n,
                             const std::function<void(const KuhnSimplex&)>& fn) {
  KuhnSimplex s;
  s.cell = Eigen::VectorXi::Zero(d);
  while (true) {
    s.perm.resize(d);
    std::iota(s.perm.begin(), s.perm.end(), 0);
    do {
      fn(s);
    } while (std::next_permutation(s.perm.begin(), s.perm.end()));
    int i = d - 1;
    for (; i >= 0; --i) {
      if (++s.cell[i] < n) break;
      s.cell[i] = 0;
    }
    if (i < 0) break;
  }
}

/// Canonical rank of a simplex matching the for_each_simplex order.
inline std::int64_t simplex_rank(const KuhnSimplex& s, int n) {
  const int d = static_cast<int>(s.cell.size());
  std::int64_t cell_flat = 0;
  for (int i = 0; i < d; ++i) cell_flat = cell_flat * n + s.cell[i];
  // Lehmer code of the permutation.
  std::int64_t perm_rank = 0;
  for (int i = 0; i < d; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < d; ++j)
      if (s.perm[j] < s.perm[i]) ++smaller;
    perm_rank += smaller * factorial(d - 1 - i);
  }
  return cell_flat * factorial(d) + perm_rank;
}

/// The neighbor simplex across the facet opposite path vertex j, together
/// with the unit normal oriented from `s` into the neighbor. Returns nullopt
/// for boundary facets.
///
/// The three cases are the standard Freudenthal adjacency rules: swapping
/// adjacent permutation entries for interior facets of a cell, and rotating
/// the permutation when stepping to the next / previous cell along the
/// first / last path direction.
inline std::optional<std::pair<KuhnSimplex, Eigen::VectorXd>>
neighbor_across(const KuhnSimplex& s, int j, int n) {
  const int d = static_cast<int>(s.cell.size());
  KuhnSimplex out;
  Eigen::VectorXd normal = Eigen::VectorXd::Zero(d);
  if (j > 0 && j < d) {
    out = s;
    std::swap(out.perm[j - 1], out.perm[j]);
    // Facet on x_{perm[j-1]} - x_{perm[j]} = const; s lies on the >= side.
    normal[s.perm[j]] = 1.0 / std::sqrt(2.0);
    normal[s.perm[j - 1]] = -1.0 / std::sqrt(2.0);
    return std::make_pair(std::move(out), std::move(normal));
  }
  if (j == 0) {
    const int axis = s.perm[0];
    if (s.cell[axis] + 1 >= n) return std::nullopt;
    out.cell = s.cell;
    out.cell[axis] += 1;
    out.perm.assign(s.perm.begin() + 1, s.perm.end());
    out.perm.push_back(axis);
    normal[axis] = 1.0;
    return std::make_pair(std::move(out), std::move(normal));
  }
  // j == d: facet opposite the far corner.
  const int axis = s.perm[d - 1];
  if (s.cell[axis] == 0) return std::nullopt;
  out.cell = s.cell;
  out.cell[axis] -= 1;
  out.perm.clear();
  out.perm.push_back(axis);
  out.perm.insert(out.perm.end(), s.perm.begin(), s.perm.end() - 1);
  normal[axis] = -1.0;
  return std::make_pair(std::move(out), std::move(normal));
}

/// Extracts the affine piece of the interpolant on one simplex. Along the
/// path, coordinate perm[j] changes value by the j-th vertex difference, so
/// the gradient is n * (successive differences) and no linear solve is
/// needed.
template <typename Scalar>
AffineFunctional<Scalar> simplex_piece(const SimplicialInterpolant<Scalar>& p,
                                       const KuhnSimplex& s) {
  const int d = p.dim;
  const auto verts = path_vertices(s);
  Vector<Scalar> a = Vector<Scalar>::Zero(d);
  Scalar prev = p.value_at_vertex(verts[0]);
  for (int j = 0; j < d; ++j) {
    const Scalar next = p.value_at_vertex(verts[j + 1]);
    a[s.perm[j]] = Scalar(p.resolution) * (next - prev);
    prev = next;
  }
  Scalar b = p.value_at_vertex(verts[0]);
  for (int i = 0; i < d; ++i)
    b -= a[i] * (Scalar(s.cell[i]) / Scalar(p.resolution));
  return AffineFunctional<Scalar>(std::move(a), b);
}

// ---------------------------------------------------------------------------
// Construction and evaluation.
// ---------------------------------------------------------------------------

/// Builds the interpolant of f with sup error at most eps: picks
/// n = ceil(L * sqrt(d) / eps) so every simplex has Euclidean diameter
/// (the cell's long diagonal sqrt(d)/n) at most eps / L, then samples f at
/// all lattice vertices. The convex-combination bound then gives
/// ||f - f_eps|| <= L * sqrt(d) / n <= eps.
template <typename Scalar>
SimplicialInterpolant<Scalar> build_interpolant(
    const TargetFn<Scalar>& f, Scalar eps,
    std::uint64_t vertex_budget = kDefaultVertexBudget) {
  if (!(eps > Scalar(0)))
    throw ValidationError("build_interpolant: eps must be > 0");
  if (f.dim < 1)
    throw DimensionError("build_interpolant: dim must be >= 1");
  if (!f.lipschitz || !(*f.lipschitz > Scalar(0)))
    throw ValidationError(
        "build_interpolant: a positive Lipschitz constant is required");
  const Scalar lip = *f.lipschitz;
  const double raw =
      std::ceil(static_cast<double>(lip) * std::sqrt(double(f.dim)) /
                static_cast<double>(eps));
  const int n = std::max(1, static_cast<int>(raw));

  const std::uint64_t count = lattice_vertex_count(f.dim, n);
  if (count > vertex_budget)
    throw ResourceError(
        "build_interpolant: grid needs " + std::to_string(count) +
        " vertices (resolution " + std::to_string(n) + ", dim " +
        std::to_string(f.dim) + "), exceeding the budget of " +
        std::to_string(vertex_budget));

  std::vector<Scalar> values(count);
  Eigen::VectorXi v = Eigen::VectorXi::Zero(f.dim);
  Vector<Scalar> x(f.dim);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    for (int i = 0; i < f.dim; ++i) x[i] = Scalar(v[i]) / Scalar(n);
    values[idx] = f.evaluator(x);
    for (int i = f.dim - 1; i >= 0; --i) {
      if (++v[i] <= n) break;
      v[i] = 0;
    }
  }
  return SimplicialInterpolant<Scalar>(f.dim, n, std::move(values));
}

/// Evaluates the interpolant at x in [0,1]^d. Coordinates outside the cube
/// are clamped (reported through `clamped` when given). The cell comes from
/// floor(x * n) with the top face mapped to the last cell; sorting the
/// fractional parts in decreasing order identifies the Kuhn simplex, and
/// the value is the barycentric combination of the d+1 path vertices.
///
/// Scaled coordinates within 1e-9 of a lattice plane are snapped onto it,
/// so lattice vertices evaluate to their stored values exactly even when
/// x_i = k/n is not representable.
template <typename Scalar, typename Derived>
Scalar eval_interpolant(const SimplicialInterpolant<Scalar>& p,
                        const Eigen::MatrixBase<Derived>& x_expr,
                        bool* clamped = nullptr) {
  const int d = p.dim;
  const int n = p.resolution;
  const Vector<Scalar> x = x_expr;
  if (x.size() != d)
    throw DimensionError("eval_interpolant: input dimension mismatch");
  if (clamped) *clamped = false;

  Eigen::VectorXi cell(d);
  Vector<Scalar> t(d);
  bool on_lattice = true;
  for (int i = 0; i < d; ++i) {
    Scalar c = x[i];
    if (c < Scalar(0) || c > Scalar(1)) {
      c = std::min(Scalar(1), std::max(Scalar(0), c));
      if (clamped) *clamped = true;
    }
    Scalar scaled = c * Scalar(n);
    const Scalar rounded = std::round(scaled);
    if (std::abs(scaled - rounded) <= Scalar(1e-9)) scaled = rounded;
    int k = static_cast<int>(std::floor(scaled));
    k = std::min(std::max(k, 0), n - 1);
    cell[i] = k;
    t[i] = scaled - Scalar(k);
    if (t[i] != Scalar(0) && t[i] != Scalar(1)) on_lattice = false;
  }

  if (on_lattice) {
    Eigen::VectorXi v(d);
    for (int i = 0; i < d; ++i) v[i] = cell[i] + (t[i] == Scalar(1) ? 1 : 0);
    return p.value_at_vertex(v);
  }

  // Sort coordinates by decreasing fractional part (ties by index for
  // determinism); walk the path accumulating value differences.
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (t[i] != t[j]) return t[i] > t[j];
    return i < j;
  });

  std::vector<std::uint64_t> strides(d);
  std::uint64_t stride = 1;
  for (int i = d - 1; i >= 0; --i) {
    strides[i] = stride;
    stride *= static_cast<std::uint64_t>(n) + 1;
  }
  std::uint64_t idx = 0;
  for (int i = 0; i < d; ++i)
    idx += strides[i] * static_cast<std::uint64_t>(cell[i]);

  Scalar value = p.vertex_values[idx];
  Scalar prev = value;
  for (int j = 0; j < d; ++j) {
    idx += strides[order[j]];
    const Scalar next = p.vertex_values[idx];
    value += (next - prev) * t[order[j]];
    prev = next;
  }
  return value;
}

// ---------------------------------------------------------------------------
// Vertex-value file format: a "d n" header line, then (n+1)^d values in
// lexicographic lattice order, one per line, shortest round-trip decimals.
// ---------------------------------------------------------------------------

inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline void save_vertex_file(const SimplicialInterpolant<double>& p,
                             const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open file for writing: " + path);
  out << p.dim << " " << p.resolution << "\n";
  for (const double v : p.vertex_values) out << format_double(v) << "\n";
}

inline SimplicialInterpolant<double> load_vertex_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file for reading: " + path);
  int d = 0, n = 0;
  if (!(in >> d >> n))
    throw ParseError(path + ": expected header line 'd n'");
  if (d < 1 || n < 1)
    throw ValidationError(path + ": header dims must be >= 1");
  const std::uint64_t count = lattice_vertex_count(d, n);
  std::vector<double> values;
  values.reserve(count);
  double v = 0;
  while (values.size() < count && (in >> v)) values.push_back(v);
  if (values.size() != count)
    throw ParseError(path + ": expected " + std::to_string(count) +
                     " vertex values, found " + std::to_string(values.size()));
  return SimplicialInterpolant<double>(d, n, std::move(values));
}

using TargetFnd = TargetFn<double>;
using SimplicialInterpolantd = SimplicialInterpolant<double>;

}  // namespace narrownet

#endif  // NARROWNET_SIMPLEX_HPP_
