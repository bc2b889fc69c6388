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

#ifndef NARROWNET_RNG_HPP_
#define NARROWNET_RNG_HPP_

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace narrownet {

/// Seeded 64-bit PRNG with a fully specified uniform mapping, so that the
/// same seed produces the same stream on every platform. std::mt19937_64 is
/// pinned by the standard; std::uniform_real_distribution is not, so we map
/// raw bits to [0,1) ourselves.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi] inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(eng_() % span);
  }

  /// Uniform point in the unit cube [0,1]^d.
  Eigen::VectorXd cube_point(int d) {
    Eigen::VectorXd x(d);
    for (int i = 0; i < d; ++i) x[i] = uniform();
    return x;
  }

  /// Vector with entries uniform in [lo, hi].
  Eigen::VectorXd vector(int d, double lo, double hi) {
    Eigen::VectorXd x(d);
    for (int i = 0; i < d; ++i) x[i] = uniform(lo, hi);
    return x;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace narrownet

#endif  // NARROWNET_RNG_HPP_
