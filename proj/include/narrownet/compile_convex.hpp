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

#ifndef NARROWNET_COMPILE_CONVEX_HPP_
#define NARROWNET_COMPILE_CONVEX_HPP_

#include <string>

#include "narrownet/affine.hpp"
#include "narrownet/hashing.hpp"
#include "narrownet/net.hpp"
#include "narrownet/rng.hpp"

namespace narrownet {

enum class OutputMode { ReluReadout, LinearReadout };
enum class PositivityShift { Auto, None };

struct ConvexCompileOptions {
  OutputMode output_mode = OutputMode::ReluReadout;
  PositivityShift positivity_shift = PositivityShift::Auto;
  // Tolerance for the nonnegativity certificate under ReluReadout + None.
  double certify_tol = 1e-9;
};

namespace detail {

/// Looks for a cube point where f is provably negative, to sharpen the
/// error message when a ReLU readout would clamp. Deterministic sampling.
template <typename Scalar>
bool find_negative_witness(const MaxAffineFn<Scalar>& f, Scalar tol,
                           Vector<Scalar>* witness) {
  Rng rng(0x6e61727277ull);  // fixed seed: the check must be reproducible
  for (int i = 0; i < 4096; ++i) {
    Vector<Scalar> x = rng.cube_point(f.dim).template cast<Scalar>();
    if (eval_max_affine(f, x) < -tol) {
      *witness = x;
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Compiles a max-affine function with N pieces into a ReLU net of hidden
/// width d+1 and N hidden blocks that computes it exactly on [0,1]^d.
///
/// Construction: conjugate each ReLU through the shear
/// A_a(x, y) = (x, g_a(x) + y), so one block replaces the carried value by
/// its max with one more piece; adjacent shears fuse into a single affine
/// layer, keeping one affine+ReLU stage per piece. An input embedding
/// (x, 0) opens the chain and a readout of the last coordinate closes it.
///
/// The running max starts at 0 from the embedding, so the net computes
/// max(0, f). With PositivityShift::Auto every piece is lifted by
/// C = max(0, -min_a cube_min(g_a)) inside the first block, which makes
/// all shifted pieces nonnegative on the cube, and C is removed again in
/// the readout layer. The net then computes f exactly under a linear
/// readout, and max(0, f) under a ReLU readout (equal to f whenever
/// f >= 0 on the cube).
template <typename Scalar>
ReluNet<Scalar> compile_convex(const MaxAffineFn<Scalar>& f,
                               const ConvexCompileOptions& opts = {}) {
  const int d = f.dim;
  const int n_pieces = f.piece_count();

  Scalar shift = Scalar(0);
  if (opts.positivity_shift == PositivityShift::Auto) {
    Scalar min_lo = cube_bounds(f.pieces.front()).lo;
    for (const auto& p : f.pieces)
      min_lo = std::min(min_lo, cube_bounds(p).lo);
    shift = std::max(Scalar(0), -min_lo);
  } else if (opts.output_mode == OutputMode::ReluReadout) {
    // Without a shift the terminal ReLU clamps negative values, so the
    // target must be certified nonnegative on the cube.
    const Scalar certified_lo = certified_cube_min(f);
    if (certified_lo < -Scalar(opts.certify_tol)) {
      Vector<Scalar> witness;
      if (detail::find_negative_witness(f, Scalar(opts.certify_tol),
                                        &witness)) {
        throw CompileError(
            "compile_convex: target is negative on the cube (witness found), "
            "so a ReLU readout would clamp it; use positivity_shift=auto or "
            "a linear readout");
      }
      throw CompileError(
          "compile_convex: cannot certify the target nonnegative on the cube "
          "(best piece lower bound " + std::to_string(certified_lo) +
          "), so a ReLU readout may clamp it; use positivity_shift=auto or "
          "a linear readout");
    }
  }

  ReluNet<Scalar> net;
  net.input_dim = d;
  net.layers.reserve(n_pieces + 2);

  // Input embedding x -> (x, 0). ReLU is transparent on cube inputs.
  {
    Matrix<Scalar> w = Matrix<Scalar>::Zero(d + 1, d);
    w.topRows(d).setIdentity();
    net.layers.push_back(
        {AffineMap<Scalar>(std::move(w), Vector<Scalar>::Zero(d + 1)),
         Activation::Relu});
  }

  // Block a carries (x, y) -> (x, y + g~_{a-1}(x) - g~_a(x)); the shift
  // cancels between consecutive pieces and appears only in block 1.
  for (int alpha = 0; alpha < n_pieces; ++alpha) {
    Matrix<Scalar> w = Matrix<Scalar>::Zero(d + 1, d + 1);
    w.topLeftCorner(d, d).setIdentity();
    w(d, d) = Scalar(1);
    Vector<Scalar> b = Vector<Scalar>::Zero(d + 1);
    if (alpha == 0) {
      w.row(d).head(d) = -f.pieces[0].a.transpose();
      b[d] = -f.pieces[0].b - shift;
    } else {
      w.row(d).head(d) =
          (f.pieces[alpha - 1].a - f.pieces[alpha].a).transpose();
      b[d] = f.pieces[alpha - 1].b - f.pieces[alpha].b;
    }
    net.layers.push_back(
        {AffineMap<Scalar>(std::move(w), std::move(b)), Activation::Relu});
  }

  // Readout (x, y) -> y + g~_N(x) - C = f(x).
  {
    Matrix<Scalar> w(1, d + 1);
    w.row(0).head(d) = f.pieces.back().a.transpose();
    w(0, d) = Scalar(1);
    Vector<Scalar> b(1);
    b[0] = f.pieces.back().b;
    net.layers.push_back({AffineMap<Scalar>(std::move(w), std::move(b)),
                          opts.output_mode == OutputMode::ReluReadout
                              ? Activation::Relu
                              : Activation::Linear});
  }

  net.provenance["compiler"] = "compile_convex";
  net.provenance["source_hash"] = source_hash(f);
  net.provenance["pieces"] = std::to_string(n_pieces);
  net.provenance["positivity_shift"] = std::to_string(shift);
  net.provenance[kTagInputEmbedding] = "true";
  if (opts.output_mode == OutputMode::ReluReadout)
    net.provenance[kTagReluReadout] = "true";
  validate_net(net);
  return net;
}

}  // namespace narrownet

#endif  // NARROWNET_COMPILE_CONVEX_HPP_
