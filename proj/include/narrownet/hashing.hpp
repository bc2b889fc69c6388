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

#ifndef NARROWNET_HASHING_HPP_
#define NARROWNET_HASHING_HPP_

#include <cstdint>
#include <cstring>
#include <string>

#include "narrownet/affine.hpp"

namespace narrownet {

/// FNV-1a over raw bytes; used to fingerprint source functions in net
/// provenance.
class Fnv1a {
 public:
  void update(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      state_ ^= p[i];
      state_ *= 0x100000001b3ull;
    }
  }

  void update(double v) { update(&v, sizeof(v)); }

  std::string hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    std::uint64_t v = state_;
    for (int i = 15; i >= 0; --i) {
      s[i] = digits[v & 0xf];
      v >>= 4;
    }
    return s;
  }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ull;
};

template <typename Scalar>
std::string source_hash(const MaxAffineFn<Scalar>& f) {
  Fnv1a h;
  h.update(static_cast<double>(f.dim));
  for (const auto& p : f.pieces) {
    for (Eigen::Index i = 0; i < p.a.size(); ++i)
      h.update(static_cast<double>(p.a[i]));
    h.update(static_cast<double>(p.b));
  }
  return h.hex();
}

template <typename Scalar>
std::string source_hash(const DCFn<Scalar>& f) {
  Fnv1a h;
  const std::string hg = source_hash(f.g);
  const std::string hh = source_hash(f.h);
  h.update(hg.data(), hg.size());
  h.update(hh.data(), hh.size());
  return h.hex();
}

}  // namespace narrownet

#endif  // NARROWNET_HASHING_HPP_
