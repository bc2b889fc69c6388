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

#ifndef NARROWNET_COMPILE_DC_HPP_
#define NARROWNET_COMPILE_DC_HPP_

#include <string>

#include "narrownet/affine.hpp"
#include "narrownet/compile_convex.hpp"
#include "narrownet/hashing.hpp"
#include "narrownet/net.hpp"

namespace narrownet {

struct DcCompileOptions {
  OutputMode output_mode = OutputMode::ReluReadout;
  double certify_tol = 1e-9;
};

/// Fixed 2 -> 2 -> 1 net computing max{x, y} for any x and y >= 0:
/// A1(x, y) = (x - y, y), A2(z, w) = z + w, a ReLU after each.
template <typename Scalar = double>
ReluNet<Scalar> max_gadget() {
  ReluNet<Scalar> net;
  net.input_dim = 2;
  Matrix<Scalar> w1(2, 2);
  w1 << Scalar(1), Scalar(-1), Scalar(0), Scalar(1);
  net.layers.push_back(
      {AffineMap<Scalar>(std::move(w1), Vector<Scalar>::Zero(2)),
       Activation::Relu});
  Matrix<Scalar> w2(1, 2);
  w2 << Scalar(1), Scalar(1);
  net.layers.push_back(
      {AffineMap<Scalar>(std::move(w2), Vector<Scalar>::Zero(1)),
       Activation::Relu});
  net.provenance["compiler"] = "max_gadget";
  validate_net(net);
  return net;
}

/// Compiles g - h (both max-affine, N and M pieces) into a ReLU net of
/// hidden width d+3 and exactly 2(M+N) hidden blocks that computes it on
/// [0,1]^d.
///
/// Channel layout in every hidden layer: coordinates 0..d-1 copy the input
/// (nonnegative on the cube, so ReLU-transparent), coordinates d and d+1
/// are the compute pair of the embedded max gadget, coordinate d+2 is the
/// memory channel.
///
/// Every piece is lifted by T_g = max(0, -min_a cube_min(g_a)) (resp. T_h)
/// so the gadget precondition y >= 0 holds as a theorem, not a sampling
/// claim. Each piece costs two blocks: block 2a-1 loads
/// (piece - running, running) into the compute pair, block 2a sums it.
/// The first piece of each phase runs a degenerate gadget max(piece, piece)
/// computed straight from the input copies, which keeps the 2(M+N) count
/// exact for N = 1 or M = 1. The layer completing phase 1 also moves
/// g(x) + T_g into the memory channel, so the transition costs no block.
/// The readout computes (memory) - (compute) + (T_h - T_g) = g - h.
template <typename Scalar>
ReluNet<Scalar> compile_dc(const DCFn<Scalar>& f,
                           const DcCompileOptions& opts = {}) {
  const int d = f.dim();
  const int n_g = f.g.piece_count();
  const int n_h = f.h.piece_count();
  const int width = d + 3;
  const int u = d, v = d + 1, mem = d + 2;

  Scalar t_g = Scalar(0), t_h = Scalar(0);
  for (const auto& p : f.g.pieces)
    t_g = std::max(t_g, -cube_bounds(p).lo);
  for (const auto& p : f.h.pieces)
    t_h = std::max(t_h, -cube_bounds(p).lo);

  if (opts.output_mode == OutputMode::ReluReadout) {
    const Scalar certified_lo =
        certified_cube_min(f.g) - certified_cube_max(f.h);
    if (certified_lo < -Scalar(opts.certify_tol)) {
      Rng rng(0x64632d636bull);
      for (int i = 0; i < 4096; ++i) {
        Vector<Scalar> x = rng.cube_point(d).template cast<Scalar>();
        if (eval_dc(f, x) < -Scalar(opts.certify_tol))
          throw CompileError(
              "compile_dc: g - h is negative on the cube, so a ReLU readout "
              "would clamp it; use a linear readout");
      }
    }
  }

  ReluNet<Scalar> net;
  net.input_dim = d;
  net.layers.reserve(2 * (n_g + n_h) + 1);

  // Emits the two blocks of one running-max step. `piece` is the shifted
  // affine functional read from the input copies; `first_of_phase` loads the
  // running value from the input as well (degenerate gadget); `move_to_memory`
  // is set on the phase transition, where the finished g-value leaves the
  // compute pair.
  auto emit_blocks = [&](const AffineFunctional<Scalar>& piece, Scalar lift,
                         bool first_of_phase, bool first_layer_of_net,
                         bool move_to_memory) {
    const int in_w = first_layer_of_net ? d : width;
    Matrix<Scalar> w1 = Matrix<Scalar>::Zero(width, in_w);
    Vector<Scalar> b1 = Vector<Scalar>::Zero(width);
    w1.topLeftCorner(d, d).setIdentity();
    if (first_of_phase) {
      // u <- piece - piece = 0, v <- piece(x).
      w1.row(v).head(d) = piece.a.transpose();
      b1[v] = piece.b + lift;
    } else {
      // u <- piece(x) - running, v <- running.
      w1.row(u).head(d) = piece.a.transpose();
      w1(u, u) = Scalar(-1);
      b1[u] = piece.b + lift;
      w1(v, u) = Scalar(1);
    }
    if (!first_layer_of_net)
      w1(mem, move_to_memory ? u : mem) = Scalar(1);
    net.layers.push_back(
        {AffineMap<Scalar>(std::move(w1), std::move(b1)), Activation::Relu});

    // Sum layer of the gadget: u <- u + v, v <- 0, memory passes through.
    Matrix<Scalar> w2 = Matrix<Scalar>::Zero(width, width);
    w2.topLeftCorner(d, d).setIdentity();
    w2(u, u) = Scalar(1);
    w2(u, v) = Scalar(1);
    w2(mem, mem) = Scalar(1);
    net.layers.push_back(
        {AffineMap<Scalar>(std::move(w2), Vector<Scalar>::Zero(width)),
         Activation::Relu});
  };

  for (int alpha = 0; alpha < n_g; ++alpha)
    emit_blocks(f.g.pieces[alpha], t_g, alpha == 0, alpha == 0, false);
  for (int beta = 0; beta < n_h; ++beta)
    emit_blocks(f.h.pieces[beta], t_h, beta == 0, false, beta == 0);

  // Readout: (memory) - (compute) + (T_h - T_g) = g - h.
  {
    Matrix<Scalar> w = Matrix<Scalar>::Zero(1, width);
    w(0, u) = Scalar(-1);
    w(0, mem) = Scalar(1);
    Vector<Scalar> b(1);
    b[0] = t_h - t_g;
    net.layers.push_back({AffineMap<Scalar>(std::move(w), std::move(b)),
                          opts.output_mode == OutputMode::ReluReadout
                              ? Activation::Relu
                              : Activation::Linear});
  }

  net.provenance["compiler"] = "compile_dc";
  net.provenance["source_hash"] = source_hash(f);
  net.provenance["pieces_g"] = std::to_string(n_g);
  net.provenance["pieces_h"] = std::to_string(n_h);
  net.provenance["shift_g"] = std::to_string(t_g);
  net.provenance["shift_h"] = std::to_string(t_h);
  if (opts.output_mode == OutputMode::ReluReadout)
    net.provenance[kTagReluReadout] = "true";
  validate_net(net);
  return net;
}

}  // namespace narrownet

#endif  // NARROWNET_COMPILE_DC_HPP_
