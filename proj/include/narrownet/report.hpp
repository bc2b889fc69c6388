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

#ifndef NARROWNET_REPORT_HPP_
#define NARROWNET_REPORT_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "narrownet/errors.hpp"
#include "narrownet/net.hpp"
#include "narrownet/rng.hpp"

namespace narrownet {

/// Description of a point scan over the cube. Either a full grid with
/// `per_axis` points per axis (endpoints included) or `count` seeded
/// uniform points. Deterministic given its fields.
struct ScanSpec {
  enum class Kind { Grid, Random };
  Kind kind = Kind::Random;
  int per_axis = 0;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;

  static ScanSpec grid(int per_axis) {
    ScanSpec s;
    s.kind = Kind::Grid;
    s.per_axis = per_axis;
    return s;
  }
  static ScanSpec random(std::uint64_t count, std::uint64_t seed) {
    ScanSpec s;
    s.kind = Kind::Random;
    s.count = count;
    s.seed = seed;
    return s;
  }

  std::string describe() const {
    if (kind == Kind::Grid)
      return "grid:" + std::to_string(per_axis);
    return "random:" + std::to_string(count) + ",seed=" +
           std::to_string(seed);
  }
};

inline std::vector<VectorD> scan_points(int dim, const ScanSpec& spec,
                                        std::uint64_t max_points = 20000000) {
  std::vector<VectorD> points;
  if (spec.kind == ScanSpec::Kind::Random) {
    if (spec.count > max_points)
      throw ResourceError("scan: " + std::to_string(spec.count) +
                          " random points exceed the limit of " +
                          std::to_string(max_points));
    Rng rng(spec.seed);
    points.reserve(spec.count);
    for (std::uint64_t i = 0; i < spec.count; ++i)
      points.push_back(rng.cube_point(dim));
    return points;
  }
  const int g = spec.per_axis;
  if (g < 2) throw ValidationError("scan: grid needs >= 2 points per axis");
  std::uint64_t total = 1;
  for (int i = 0; i < dim; ++i) {
    if (total > max_points / static_cast<std::uint64_t>(g))
      throw ResourceError("scan: grid of " + std::to_string(g) + "^" +
                          std::to_string(dim) + " points exceeds the limit");
    total *= static_cast<std::uint64_t>(g);
  }
  points.reserve(total);
  Eigen::VectorXi idx = Eigen::VectorXi::Zero(dim);
  while (true) {
    VectorD x(dim);
    for (int i = 0; i < dim; ++i)
      x[i] = static_cast<double>(idx[i]) / static_cast<double>(g - 1);
    points.push_back(std::move(x));
    int i = dim - 1;
    for (; i >= 0; --i) {
      if (++idx[i] < g) break;
      idx[i] = 0;
    }
    if (i < 0) break;
  }
  return points;
}

/// Sup over a point list of |a(x) - b(x)|.
inline double sup_abs_error(const std::function<double(const VectorD&)>& a,
                            const std::function<double(const VectorD&)>& b,
                            const std::vector<VectorD>& points) {
  double sup = 0;
  for (const auto& x : points)
    sup = std::max(sup, std::abs(a(x) - b(x)));
  return sup;
}

/// One checked bound: a named claim, the claimed value, the measured value
/// and whether the check passed.
struct BoundAssertion {
  std::string name;
  double claimed = 0;
  double measured = 0;
  bool pass = false;
};

/// Deterministic verification record for a net against a target.
struct VerifyReport {
  NetMetrics metrics;
  double sup_error = 0;
  std::string scan;
  std::vector<BoundAssertion> assertions;

  bool pass() const {
    for (const auto& a : assertions)
      if (!a.pass) return false;
    return true;
  }
};

inline nlohmann::json report_to_json(const VerifyReport& r) {
  nlohmann::json doc;
  doc["metrics"] = {{"input_dim", r.metrics.input_dim},
                    {"output_dim", r.metrics.output_dim},
                    {"hidden_width", r.metrics.hidden_width},
                    {"relu_depth", r.metrics.relu_depth},
                    {"hidden_blocks", r.metrics.hidden_blocks},
                    {"parameter_count", r.metrics.parameter_count}};
  doc["sup_error"] = r.sup_error;
  doc["scan"] = r.scan;
  auto arr = nlohmann::json::array();
  for (const auto& a : r.assertions) {
    nlohmann::json ja;
    ja["name"] = a.name;
    ja["claimed"] = a.claimed;
    ja["measured"] = a.measured;
    ja["pass"] = a.pass;
    arr.push_back(std::move(ja));
  }
  doc["assertions"] = std::move(arr);
  doc["pass"] = r.pass();
  return doc;
}

}  // namespace narrownet

#endif  // NARROWNET_REPORT_HPP_
