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

#ifndef NARROWNET_DC_DECOMPOSE_HPP_
#define NARROWNET_DC_DECOMPOSE_HPP_

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "narrownet/affine.hpp"
#include "narrownet/errors.hpp"
#include "narrownet/simplex.hpp"

namespace narrownet {

/// One potential crease hyperplane of the Kuhn complex at resolution n,
/// <a, x> = k/n with integer a, so membership and side tests are exact
/// integer arithmetic on lattice data.
struct CreaseHyperplane {
  Eigen::VectorXi a;
  int k = 0;
};

/// All hyperplanes that can carry a crease of an interpolant on the Kuhn
/// complex at resolution n: the axis planes x_i = k/n (k = 1..n-1) and the
/// difference planes x_i - x_j = m/n (i < j, m = -(n-1)..n-1). Every facet
/// shared by two simplices of the complex lies inside one of them.
struct CreaseSet {
  int dim = 0;
  int resolution = 0;
  std::vector<CreaseHyperplane> hyperplanes;

  static CreaseSet build(int d, int n) {
    CreaseSet set;
    set.dim = d;
    set.resolution = n;
    for (int i = 0; i < d; ++i) {
      for (int k = 1; k <= n - 1; ++k) {
        CreaseHyperplane h;
        h.a = Eigen::VectorXi::Zero(d);
        h.a[i] = 1;
        h.k = k;
        set.hyperplanes.push_back(std::move(h));
      }
    }
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        for (int m = -(n - 1); m <= n - 1; ++m) {
          CreaseHyperplane h;
          h.a = Eigen::VectorXi::Zero(d);
          h.a[i] = 1;
          h.a[j] = -1;
          h.k = m;
          set.hyperplanes.push_back(std::move(h));
        }
      }
    }
    return set;
  }
};

/// Side of a simplex relative to a crease hyperplane, decided exactly: the
/// centroid's scaled coordinates are (cell*(d+1) + cnt)/(n*(d+1)) with
/// integer cnt, and the resulting integer numerator is never zero because
/// a full-dimensional simplex cannot lie inside a hyperplane.
inline int simplex_side(const KuhnSimplex& s, const CreaseHyperplane& h) {
  const int d = static_cast<int>(s.cell.size());
  std::int64_t num = 0;
  for (int i = 0; i < d; ++i)
    num += static_cast<std::int64_t>(h.a[i]) * s.cell[i];
  num = (num - h.k) * (d + 1);
  for (int j = 0; j < d; ++j)
    num += static_cast<std::int64_t>(h.a[s.perm[j]]) * (d - j);
  return num > 0 ? 1 : -1;
}

struct FacetWitness {
  KuhnSimplex simplex;
  int facet = 0;     // opposite path vertex index
  double jump = 0;   // slope change along the unit normal into the neighbor
};

struct ConvexityReport {
  bool convex = true;
  double min_jump = 0;
  std::optional<FacetWitness> witness;  // facet attaining min_jump, if < 0
};

/// Checks convexity of a CPWL function given as an interpolant on the Kuhn
/// complex: the function is convex iff the normal-direction slope jump
/// across every interior facet is >= -tol. Returns the worst facet as a
/// witness when violated.
template <typename Scalar>
ConvexityReport convexity_check(const SimplicialInterpolant<Scalar>& p,
                                double tol = 1e-12) {
  const int d = p.dim;
  const int n = p.resolution;

  std::vector<AffineFunctional<Scalar>> pieces(
      static_cast<std::size_t>(factorial(d)) *
      static_cast<std::size_t>(std::llround(std::pow(double(n), d))));
  for_each_simplex(d, n, [&](const KuhnSimplex& s) {
    pieces[simplex_rank(s, n)] = simplex_piece(p, s);
  });

  ConvexityReport report;
  bool first = true;
  for_each_simplex(d, n, [&](const KuhnSimplex& s) {
    const std::int64_t rank = simplex_rank(s, n);
    for (int j = 0; j <= d; ++j) {
      auto nb = neighbor_across(s, j, n);
      if (!nb) continue;
      const std::int64_t other = simplex_rank(nb->first, n);
      if (other <= rank) continue;  // visit each interior facet once
      const Eigen::VectorXd diff =
          (pieces[other].a - pieces[rank].a).template cast<double>();
      const double jump = diff.dot(nb->second);
      if (first || jump < report.min_jump) {
        report.min_jump = jump;
        report.witness = FacetWitness{s, j, jump};
        first = false;
      }
    }
  });
  if (first) report.min_jump = 0;  // single-simplex complex, no facets
  report.convex = report.min_jump >= -tol;
  if (report.convex) report.witness.reset();
  return report;
}

struct DecomposeOptions {
  double convexity_tol = 1e-12;
  std::uint64_t piece_budget = std::uint64_t(1) << 22;
  int max_doublings = 64;
};

template <typename Scalar>
struct DecomposeResult {
  DCFn<Scalar> fn;
  Scalar lambda0 = Scalar(0);      // closed-form starting weight
  Scalar lambda = Scalar(0);       // accepted hinge weight
  int doublings = 0;
  Scalar positivity_shift = Scalar(0);
  CreaseSet creases;
};

namespace detail {

/// Rounds coefficients to multiples of 1e-12 to serve as dedup keys.
template <typename Scalar>
std::vector<std::int64_t> quantized_key(const AffineFunctional<Scalar>& f) {
  std::vector<std::int64_t> key;
  key.reserve(f.a.size() + 1);
  for (Eigen::Index i = 0; i < f.a.size(); ++i)
    key.push_back(std::llround(static_cast<double>(f.a[i]) * 1e12));
  key.push_back(std::llround(static_cast<double>(f.b) * 1e12));
  return key;
}

}  // namespace detail

/// Splits an interpolant into a difference of convex positive max-affine
/// functions, f = g - h.
///
/// h is lambda times the sum of hinge functions |<a,x> - k/n| over the
/// crease set, which is linear on every simplex of the complex; g = f + h
/// is again an interpolant on the same complex. lambda starts at the
/// closed form (worst negative facet jump) / (smallest hinge jump 2) and
/// doubles until the convexity oracle accepts g. Both parts are then read
/// off simplex by simplex as max-affine functions (deduplicated) and
/// lifted by a common constant so their exact cube bounds are nonnegative.
template <typename Scalar>
DecomposeResult<Scalar> decompose(const SimplicialInterpolant<Scalar>& p,
                                  const DecomposeOptions& opts = {}) {
  const int d = p.dim;
  const int n = p.resolution;
  const double simplices = p.simplex_count();
  if (simplices > static_cast<double>(opts.piece_budget))
    throw ResourceError(
        "decompose: complex has " + std::to_string(simplices) +
        " simplices (dim " + std::to_string(d) + ", resolution " +
        std::to_string(n) + "), exceeding the piece budget of " +
        std::to_string(opts.piece_budget));

  DecomposeResult<Scalar> result;
  result.creases = CreaseSet::build(d, n);
  const auto& planes = result.creases.hyperplanes;

  const ConvexityReport base = convexity_check(p, opts.convexity_tol);

  SimplicialInterpolant<Scalar> g_interp = p;
  if (!base.convex) {
    result.lambda0 = Scalar(-base.min_jump / 2.0);
    Scalar lambda = result.lambda0;

    // Vertex values of the hinge sum, scaled by lambda afterwards:
    // h(v) = (lambda / n) * sum_H |a_H . v - k_H| with integer summands.
    std::vector<Scalar> hinge(p.vertex_values.size());
    {
      Eigen::VectorXi v = Eigen::VectorXi::Zero(d);
      for (std::size_t idx = 0; idx < hinge.size(); ++idx) {
        std::int64_t total = 0;
        for (const auto& h : planes) {
          std::int64_t dot = -h.k;
          for (int i = 0; i < d; ++i)
            dot += static_cast<std::int64_t>(h.a[i]) * v[i];
          total += dot < 0 ? -dot : dot;
        }
        hinge[idx] = Scalar(total) / Scalar(n);
        for (int i = d - 1; i >= 0; --i) {
          if (++v[i] <= n) break;
          v[i] = 0;
        }
      }
    }

    bool accepted = false;
    for (int iter = 0; iter < opts.max_doublings; ++iter) {
      std::vector<Scalar> vals(p.vertex_values.size());
      for (std::size_t i = 0; i < vals.size(); ++i)
        vals[i] = p.vertex_values[i] + lambda * hinge[i];
      SimplicialInterpolant<Scalar> candidate(d, n, std::move(vals));
      if (convexity_check(candidate, opts.convexity_tol).convex) {
        g_interp = std::move(candidate);
        result.lambda = lambda;
        result.doublings = iter;
        accepted = true;
        break;
      }
      lambda *= Scalar(2);
    }
    if (!accepted)
      throw Error("decompose: hinge weight search did not converge in " +
                  std::to_string(opts.max_doublings) + " doublings");
  }

  // Extract g piece by piece, deduplicating affine-equal pieces.
  std::vector<AffineFunctional<Scalar>> g_pieces;
  {
    std::map<std::vector<std::int64_t>, int> seen;
    for_each_simplex(d, n, [&](const KuhnSimplex& s) {
      AffineFunctional<Scalar> piece = simplex_piece(g_interp, s);
      if (seen.emplace(detail::quantized_key(piece), 1).second)
        g_pieces.push_back(std::move(piece));
    });
  }

  // Extract h: on each simplex the hinge sum is lambda * sum_H side * (a_H
  // . x - k_H/n), with sides determined exactly. Integer accumulators make
  // deduplication exact.
  std::vector<AffineFunctional<Scalar>> h_pieces;
  if (result.lambda > Scalar(0)) {
    std::map<std::pair<std::vector<std::int64_t>, std::int64_t>, int> seen;
    for_each_simplex(d, n, [&](const KuhnSimplex& s) {
      std::vector<std::int64_t> grad(d, 0);
      std::int64_t offset_num = 0;
      for (const auto& h : planes) {
        const int side = simplex_side(s, h);
        for (int i = 0; i < d; ++i)
          grad[i] += static_cast<std::int64_t>(side) * h.a[i];
        offset_num -= static_cast<std::int64_t>(side) * h.k;
      }
      if (!seen.emplace(std::make_pair(grad, offset_num), 1).second) return;
      Vector<Scalar> a(d);
      for (int i = 0; i < d; ++i) a[i] = result.lambda * Scalar(grad[i]);
      const Scalar b = result.lambda * Scalar(offset_num) / Scalar(n);
      h_pieces.emplace_back(std::move(a), b);
    });
  } else {
    h_pieces.emplace_back(Vector<Scalar>::Zero(d), Scalar(0));
  }

  if (g_pieces.size() > opts.piece_budget ||
      h_pieces.size() > opts.piece_budget)
    throw ResourceError("decompose: extracted " +
                        std::to_string(g_pieces.size()) + " + " +
                        std::to_string(h_pieces.size()) +
                        " pieces, exceeding the piece budget of " +
                        std::to_string(opts.piece_budget));

  MaxAffineFn<Scalar> g(d, std::move(g_pieces));
  MaxAffineFn<Scalar> h(d, std::move(h_pieces));

  // Lift both parts by the same constant so their exact cube bounds are
  // nonnegative; the difference is unchanged.
  const Scalar shift = std::max(Scalar(0),
                                std::max(-certified_cube_min(g),
                                         -certified_cube_min(h)));
  if (shift > Scalar(0)) {
    for (auto& piece : g.pieces) piece.b += shift;
    for (auto& piece : h.pieces) piece.b += shift;
  }
  result.positivity_shift = shift;
  result.fn = DCFn<Scalar>(std::move(g), std::move(h));
  return result;
}

// ---------------------------------------------------------------------------
// DC document: { "format_version": 1, "dim": d,
//                "g": [{"a": [...], "b": ...}, ...], "h": [...] }
// ---------------------------------------------------------------------------

inline nlohmann::json dc_to_json(const DCFnd& f) {
  nlohmann::json doc;
  doc["format_version"] = 1;
  doc["dim"] = f.dim();
  for (const char* part : {"g", "h"}) {
    const auto& fn = part[0] == 'g' ? f.g : f.h;
    auto arr = nlohmann::json::array();
    for (const auto& piece : fn.pieces) {
      nlohmann::json jp;
      jp["a"] = std::vector<double>(piece.a.data(),
                                    piece.a.data() + piece.a.size());
      jp["b"] = piece.b;
      arr.push_back(std::move(jp));
    }
    doc[part] = std::move(arr);
  }
  return doc;
}

inline DCFnd dc_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("dc document: expected an object");
  for (const char* key : {"format_version", "dim", "g", "h"})
    if (!doc.contains(key))
      throw ParseError(std::string("dc document: missing field '") + key +
                       "'");
  if (!doc["format_version"].is_number_integer() ||
      doc["format_version"].get<int>() != 1)
    throw ParseError("format_version: unsupported version");
  if (!doc["dim"].is_number_integer())
    throw ParseError("dim: expected an integer");
  const int d = doc["dim"].get<int>();
  if (d < 1) throw ValidationError("dim: must be >= 1");

  auto parse_part = [&](const char* name) {
    const auto& arr = doc[name];
    if (!arr.is_array() || arr.empty())
      throw ParseError(std::string(name) + ": expected a nonempty array");
    std::vector<AffineFunctionald> pieces;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where =
          std::string(name) + "[" + std::to_string(i) + "]";
      if (!arr[i].is_object() || !arr[i].contains("a") ||
          !arr[i].contains("b"))
        throw ParseError(where + ": expected {\"a\": [...], \"b\": ...}");
      const auto& ja = arr[i]["a"];
      if (!ja.is_array() || ja.size() != static_cast<std::size_t>(d))
        throw ValidationError(where + ".a: expected " + std::to_string(d) +
                              " entries");
      VectorD a(d);
      for (int c = 0; c < d; ++c) {
        if (!ja[c].is_number())
          throw ParseError(where + ".a: expected numbers");
        a[c] = ja[c].get<double>();
      }
      if (!arr[i]["b"].is_number())
        throw ParseError(where + ".b: expected a number");
      pieces.emplace_back(std::move(a), arr[i]["b"].get<double>());
    }
    return MaxAffineFnd(d, std::move(pieces));
  };

  return DCFnd(parse_part("g"), parse_part("h"));
}

inline void save_dc(const DCFnd& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open file for writing: " + path);
  out << dc_to_json(f).dump(2) << "\n";
}

inline DCFnd load_dc(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file for reading: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return dc_from_json(doc);
}

}  // namespace narrownet

#endif  // NARROWNET_DC_DECOMPOSE_HPP_
