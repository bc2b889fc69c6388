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

#include "narrownet/cli_app.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "narrownet/compile_convex.hpp"
#include "narrownet/compile_dc.hpp"
#include "narrownet/dc_decompose.hpp"
#include "narrownet/deepen.hpp"
#include "narrownet/maxaffine_fit.hpp"
#include "narrownet/net_json.hpp"
#include "narrownet/report.hpp"
#include "narrownet/simplex.hpp"
#include "narrownet/targets.hpp"

namespace narrownet {
namespace {

// ---------------------------------------------------------------------------
// Shared argument handling
// ---------------------------------------------------------------------------

std::uint64_t resolve_vertex_budget(std::uint64_t flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("NARROWNET_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    throw ValidationError("NARROWNET_BUDGET must be a positive integer, got '" +
                          std::string(env) + "'");
  }
  return kDefaultVertexBudget;
}

ScanSpec parse_scan(const std::string& text, std::uint64_t default_seed) {
  if (text.rfind("grid:", 0) == 0) {
    const int per_axis = std::atoi(text.c_str() + 5);
    if (per_axis < 2)
      throw ValidationError("scan '" + text + "': grid needs >= 2 per axis");
    return ScanSpec::grid(per_axis);
  }
  if (text.rfind("random:", 0) == 0) {
    const std::string rest = text.substr(7);
    const auto comma = rest.find(',');
    const std::uint64_t count =
        std::strtoull(rest.substr(0, comma).c_str(), nullptr, 10);
    if (count == 0)
      throw ValidationError("scan '" + text + "': needs a positive count");
    std::uint64_t seed = default_seed;
    if (comma != std::string::npos)
      seed = std::strtoull(rest.substr(comma + 1).c_str(), nullptr, 10);
    return ScanSpec::random(count, seed);
  }
  throw ValidationError("scan '" + text +
                        "': expected grid:<n> or random:<count>[,<seed>]");
}

/// Dense default scan: full grids while they stay around 10^4 points, seeded
/// random points in higher dimension.
ScanSpec default_scan(int dim, std::uint64_t seed) {
  switch (dim) {
    case 1:
      return ScanSpec::grid(10001);
    case 2:
      return ScanSpec::grid(101);
    case 3:
      return ScanSpec::grid(22);
    default:
      return ScanSpec::random(10000, seed);
  }
}

struct ResolvedTarget {
  enum class Kind { Builtin, VertexFile, DcFile, ShallowFile };
  Kind kind = Kind::Builtin;
  std::string spec;
  std::optional<TargetInstance> builtin;
  std::optional<SimplicialInterpolantd> interp;
  std::optional<DCFnd> dc;
  std::optional<ShallowNetd> shallow;

  int dim() const {
    switch (kind) {
      case Kind::Builtin:
        return builtin->dim;
      case Kind::VertexFile:
        return interp->dim;
      case Kind::DcFile:
        return dc->dim();
      case Kind::ShallowFile:
        return shallow->dim();
    }
    return 0;
  }

  std::function<double(const VectorD&)> evaluator() const {
    switch (kind) {
      case Kind::Builtin:
        return builtin->eval;
      case Kind::VertexFile: {
        const auto& p = *interp;
        return [&p](const VectorD& x) { return eval_interpolant(p, x); };
      }
      case Kind::DcFile: {
        const auto& f = *dc;
        return [&f](const VectorD& x) { return eval_dc(f, x); };
      }
      case Kind::ShallowFile: {
        const auto& s = *shallow;
        return [&s](const VectorD& x) { return eval_shallow(s, x); };
      }
    }
    return {};
  }
};

ResolvedTarget resolve_target(const std::string& spec, int dim,
                              std::optional<double> lipschitz) {
  ResolvedTarget t;
  t.spec = spec;
  if (spec.rfind("vertex-file:", 0) == 0) {
    t.kind = ResolvedTarget::Kind::VertexFile;
    t.interp = load_vertex_file(spec.substr(12));
  } else if (spec.rfind("dc-file:", 0) == 0) {
    t.kind = ResolvedTarget::Kind::DcFile;
    t.dc = load_dc(spec.substr(8));
  } else if (spec.rfind("shallow-file:", 0) == 0) {
    t.kind = ResolvedTarget::Kind::ShallowFile;
    t.shallow = load_shallow(spec.substr(13));
  } else {
    t.kind = ResolvedTarget::Kind::Builtin;
    int use_dim = dim;
    if (use_dim == 0) {
      for (const auto& d : builtin_targets())
        if (d.name == spec) use_dim = d.min_dim;
    }
    t.builtin = make_target(spec, use_dim == 0 ? 1 : use_dim);
    if (lipschitz) {
      t.builtin->lipschitz_sup = *lipschitz;
      t.builtin->lipschitz_l2 = *lipschitz;
    }
  }
  return t;
}

void assert_eq(VerifyReport& report, const std::string& name, double claimed,
               double measured) {
  report.assertions.push_back({name, claimed, measured, claimed == measured});
}

void assert_le(VerifyReport& report, const std::string& name, double measured,
               double bound) {
  report.assertions.push_back({name, bound, measured, measured <= bound});
}

// ---------------------------------------------------------------------------
// CSV points
// ---------------------------------------------------------------------------

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

std::vector<VectorD> read_points_csv(const std::string& path,
                                     int expected_dim) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file for reading: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw ParseError(path + ": missing header row");
  const auto header = split_csv_row(line);
  if (static_cast<int>(header.size()) != expected_dim)
    throw ParseError(path + ": header has " + std::to_string(header.size()) +
                     " columns, the net expects " +
                     std::to_string(expected_dim));
  std::vector<VectorD> points;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto cells = split_csv_row(line);
    if (static_cast<int>(cells.size()) != expected_dim)
      throw ParseError(path + " row " + std::to_string(row) + ": expected " +
                       std::to_string(expected_dim) + " columns, got " +
                       std::to_string(cells.size()));
    VectorD x(expected_dim);
    for (int c = 0; c < expected_dim; ++c) {
      char* end = nullptr;
      x[c] = std::strtod(cells[c].c_str(), &end);
      if (end == cells[c].c_str() || *end != '\0')
        throw ParseError(path + " row " + std::to_string(row) + " column " +
                         std::to_string(c + 1) + ": not a number: '" +
                         cells[c] + "'");
    }
    points.push_back(std::move(x));
  }
  return points;
}

// ---------------------------------------------------------------------------
// compile
// ---------------------------------------------------------------------------

struct CompileArgs {
  std::string target;
  std::string mode;
  int dim = 0;
  double eps = 0;
  int k = 0;
  std::string out;
  std::string out_dc;
  std::string output_mode = "relu";
  std::uint64_t seed = 1;
  std::uint64_t budget_vertices = 0;
  std::string scan;
  double lipschitz = 0;
};

OutputMode parse_output_mode(const std::string& text) {
  if (text == "relu") return OutputMode::ReluReadout;
  if (text == "linear") return OutputMode::LinearReadout;
  throw ValidationError("output-mode must be 'relu' or 'linear', got '" +
                        text + "'");
}

int emit_report(const VerifyReport& report, const nlohmann::json& extras,
                std::ostream& out) {
  nlohmann::json doc = report_to_json(report);
  for (auto it = extras.begin(); it != extras.end(); ++it)
    doc[it.key()] = it.value();
  out << doc.dump(2) << "\n";
  return report.pass() ? kExitOk : kExitAssertionFailed;
}

int cmd_compile(const CompileArgs& args, std::ostream& out) {
  const auto output_mode = parse_output_mode(args.output_mode);
  const auto target = resolve_target(
      args.target, args.dim,
      args.lipschitz > 0 ? std::optional<double>(args.lipschitz)
                         : std::nullopt);
  const int d = target.dim();
  const std::uint64_t budget = resolve_vertex_budget(args.budget_vertices);
  const ScanSpec scan = args.scan.empty() ? default_scan(d, args.seed)
                                          : parse_scan(args.scan, args.seed);
  const auto points = scan_points(d, scan);

  ReluNetd net;
  VerifyReport report;
  report.scan = scan.describe();
  nlohmann::json extras;
  extras["target"] = args.target;
  extras["mode"] = args.mode;
  std::optional<DCFnd> dc_out;

  auto net_eval = [&net](const VectorD& x) { return eval_net1(net, x); };

  if (args.mode == "convex") {
    MaxAffineFnd pieces(1, {AffineFunctionald(VectorD::Zero(1), 0.0)});
    if (target.kind == ResolvedTarget::Kind::Builtin) {
      if (args.k < 1)
        throw ValidationError(
            "convex mode with a builtin target needs --k (number of "
            "supporting planes)");
      const auto convex = to_convex_target(*target.builtin);
      pieces = fit_max_affine(convex, args.k);
      extras["k"] = args.k;
      extras["fit_pieces"] = pieces.piece_count();
    } else if (target.kind == ResolvedTarget::Kind::DcFile) {
      for (const auto& piece : target.dc->h.pieces)
        if (!piece.a.isZero() || piece.b != 0.0)
          throw ValidationError(
              "convex mode accepts dc-file targets only when h is the zero "
              "functional; use --mode dc");
      pieces = target.dc->g;
    } else {
      throw ValidationError(
          "convex mode needs a builtin convex target or a dc-file");
    }
    net = compile_convex(pieces, ConvexCompileOptions{output_mode});
    report.metrics = metrics(net);
    assert_eq(report, "hidden_width == d+1", d + 1, report.metrics.hidden_width);
    if (target.kind == ResolvedTarget::Kind::Builtin)
      assert_le(report, "hidden_blocks <= k", report.metrics.hidden_blocks,
                args.k);
    else
      assert_eq(report, "hidden_blocks == N", pieces.piece_count(),
                report.metrics.hidden_blocks);
    const double vs_pieces = sup_abs_error(
        net_eval,
        [&](const VectorD& x) {
          const double v = eval_max_affine(pieces, x);
          return output_mode == OutputMode::ReluReadout ? std::max(0.0, v) : v;
        },
        points);
    assert_le(report, "sup |net - compiled pieces| <= 1e-9", vs_pieces, 1e-9);
    report.sup_error = sup_abs_error(net_eval, target.evaluator(), points);
    if (target.kind == ResolvedTarget::Kind::Builtin) {
      const double bound =
          max_affine_error_bound(target.builtin->lipschitz_l2, d, args.k);
      assert_le(report, "sup |net - target| <= 72 L d^{3/2} k^{-2/d}",
                report.sup_error, bound);
    }
  } else if (args.mode == "dc" || args.mode == "continuous") {
    DCFnd fn(MaxAffineFnd(1, {AffineFunctionald(VectorD::Zero(1), 0.0)}),
             MaxAffineFnd(1, {AffineFunctionald(VectorD::Zero(1), 0.0)}));
    std::optional<SimplicialInterpolantd> interp;
    if (target.kind == ResolvedTarget::Kind::DcFile) {
      if (args.mode == "continuous")
        throw ValidationError(
            "continuous mode builds its own decomposition; use --mode dc "
            "for dc-file targets");
      fn = *target.dc;
    } else {
      if (target.kind == ResolvedTarget::Kind::VertexFile) {
        interp = *target.interp;
      } else if (target.kind == ResolvedTarget::Kind::Builtin) {
        if (!(args.eps > 0))
          throw ValidationError(args.mode +
                                " mode with a builtin target needs --eps");
        interp = build_interpolant<double>(to_target_fn(*target.builtin),
                                           args.eps, budget);
        extras["eps"] = args.eps;
      } else {
        throw ValidationError(args.mode +
                              " mode cannot use a shallow-file target");
      }
      const auto dec = decompose(*interp);
      fn = dec.fn;
      extras["resolution"] = interp->resolution;
      extras["simplices"] = interp->simplex_count();
      extras["lambda0"] = dec.lambda0;
      extras["lambda"] = dec.lambda;
      extras["positivity_shift"] = dec.positivity_shift;
      if (target.kind == ResolvedTarget::Kind::Builtin) {
        // The source text ties depth to the simplex count through the
        // modulus omega(eps) = L * eps; both counts are reported.
        const double omega = target.builtin->lipschitz_sup * args.eps;
        const double literal =
            static_cast<double>(factorial(d)) / std::pow(omega, d);
        extras["modulus_literal_partition_count"] = literal;
        extras["modulus_literal_depth"] = 2.0 * literal;
      }
    }
    extras["pieces_g"] = fn.g.piece_count();
    extras["pieces_h"] = fn.h.piece_count();
    net = compile_dc(fn, DcCompileOptions{output_mode});
    dc_out = fn;
    report.metrics = metrics(net);
    assert_eq(report, "hidden_width == d+3", d + 3, report.metrics.hidden_width);
    assert_eq(report, "hidden_blocks == 2(M+N)",
              2.0 * (fn.g.piece_count() + fn.h.piece_count()),
              report.metrics.hidden_blocks);
    const double vs_dc = sup_abs_error(
        net_eval,
        [&](const VectorD& x) {
          const double v = eval_dc(fn, x);
          return output_mode == OutputMode::ReluReadout ? std::max(0.0, v) : v;
        },
        points);
    assert_le(report, "sup |net - (g - h)| <= 1e-9", vs_dc, 1e-9);
    if (interp) {
      const auto& p = *interp;
      const double vs_interp = sup_abs_error(
          net_eval,
          [&p](const VectorD& x) { return eval_interpolant(p, x); }, points);
      assert_le(report, "sup |net - interpolant| <= 1e-9", vs_interp, 1e-9);
    }
    report.sup_error = sup_abs_error(net_eval, target.evaluator(), points);
    if (target.kind == ResolvedTarget::Kind::Builtin && args.eps > 0)
      assert_le(report, "sup |net - target| <= eps", report.sup_error,
                args.eps);
  } else if (args.mode == "deepen") {
    if (target.kind != ResolvedTarget::Kind::ShallowFile)
      throw ValidationError("deepen mode needs a shallow-file target");
    const auto& s = *target.shallow;
    net = deepen(s);
    report.metrics = metrics(net);
    assert_eq(report, "hidden_width == d+2", d + 2, report.metrics.hidden_width);
    assert_eq(report, "relu_depth == n+2", s.width() + 2,
              report.metrics.relu_depth);
    report.sup_error = sup_abs_error(net_eval, target.evaluator(), points);
    assert_le(report, "sup |net - shallow| <= 1e-9", report.sup_error, 1e-9);
  } else {
    throw ValidationError("unknown mode '" + args.mode +
                          "'; expected convex, dc, continuous or deepen");
  }

  net.provenance["cli.target"] = args.target;
  net.provenance["cli.mode"] = args.mode;
  save_net(net, args.out);
  extras["net_file"] = args.out;
  if (!args.out_dc.empty()) {
    if (!dc_out)
      throw ValidationError("--out-dc is only available in dc/continuous mode");
    save_dc(*dc_out, args.out_dc);
    extras["dc_file"] = args.out_dc;
  }
  return emit_report(report, extras, out);
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

int cmd_eval(const std::string& net_path, const std::string& points_path,
             const std::string& out_path, std::ostream& out) {
  const auto net = load_net(net_path);
  const auto points = read_points_csv(points_path, net.input_dim);
  const auto outputs = eval_batch(net, points);

  std::ofstream file;
  std::ostream* sink = &out;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw Error("cannot open file for writing: " + out_path);
    sink = &file;
  }
  const int out_dim = static_cast<int>(net.output_dim());
  for (int c = 0; c < out_dim; ++c)
    (*sink) << (c ? "," : "") << "y" << (c + 1);
  (*sink) << "\n";
  for (const auto& y : outputs) {
    for (int c = 0; c < out_dim; ++c)
      (*sink) << (c ? "," : "") << format_double(y[c]);
    (*sink) << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string net_path;
  std::string target;
  int dim = 0;
  std::string scan;
  std::uint64_t seed = 1;
  double max_sup_error = -1;
  int expect_width = -1;
  int expect_blocks = -1;
  int expect_relu_depth = -1;
  double lipschitz = 0;
};

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
  const auto net = load_net(args.net_path);
  const auto target = resolve_target(
      args.target, args.dim ? args.dim : net.input_dim,
      args.lipschitz > 0 ? std::optional<double>(args.lipschitz)
                         : std::nullopt);
  if (target.dim() != net.input_dim)
    throw ValidationError("target dimension " + std::to_string(target.dim()) +
                          " does not match net input dimension " +
                          std::to_string(net.input_dim));
  const ScanSpec scan = args.scan.empty()
                            ? default_scan(net.input_dim, args.seed)
                            : parse_scan(args.scan, args.seed);
  const auto points = scan_points(net.input_dim, scan);

  VerifyReport report;
  report.scan = scan.describe();
  report.metrics = metrics(net);
  report.sup_error = sup_abs_error(
      [&net](const VectorD& x) { return eval_net1(net, x); },
      target.evaluator(), points);
  if (args.max_sup_error >= 0)
    assert_le(report, "sup_error <= requested bound", report.sup_error,
              args.max_sup_error);
  if (args.expect_width >= 0)
    assert_eq(report, "hidden_width == expected", args.expect_width,
              report.metrics.hidden_width);
  if (args.expect_blocks >= 0)
    assert_eq(report, "hidden_blocks == expected", args.expect_blocks,
              report.metrics.hidden_blocks);
  if (args.expect_relu_depth >= 0)
    assert_eq(report, "relu_depth == expected", args.expect_relu_depth,
              report.metrics.relu_depth);

  nlohmann::json extras;
  extras["net_file"] = args.net_path;
  extras["target"] = args.target;
  return emit_report(report, extras, out);
}

// ---------------------------------------------------------------------------
// rate
// ---------------------------------------------------------------------------

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (end == item.c_str() || *end != '\0')
      throw ValidationError(std::string(what) + ": not a number: '" + item +
                            "'");
    values.push_back(static_cast<T>(v));
  }
  if (values.empty())
    throw ValidationError(std::string(what) + ": empty list");
  return values;
}

struct RateArgs {
  std::string target;
  int dim = 0;
  std::string k_list;
  std::string eps_list;
  std::string out_path;
  std::uint64_t seed = 1;
  std::uint64_t budget_vertices = 0;
};

int cmd_rate(const RateArgs& args, std::ostream& out) {
  if (args.k_list.empty() == args.eps_list.empty())
    throw ValidationError("rate needs exactly one of --k-list or --eps-list");
  const auto target = resolve_target(args.target, args.dim, std::nullopt);
  if (target.kind != ResolvedTarget::Kind::Builtin)
    throw ValidationError("rate sweeps run on builtin targets");
  const int d = target.dim();
  const auto points = scan_points(d, default_scan(d, args.seed));

  std::ofstream file;
  std::ostream* sink = &out;
  if (!args.out_path.empty()) {
    file.open(args.out_path);
    if (!file) throw Error("cannot open file for writing: " + args.out_path);
    sink = &file;
  }

  if (!args.k_list.empty()) {
    const auto ks = parse_list<int>(args.k_list, "--k-list");
    const auto convex = to_convex_target(*target.builtin);
    (*sink) << "k,depth,width,sup_error,paper_bound\n";
    for (const int k : ks) {
      if (k < 1) throw ValidationError("--k-list: k must be >= 1");
      const auto fit = fit_max_affine(convex, k);
      const auto net = compile_convex(
          fit, ConvexCompileOptions{OutputMode::LinearReadout});
      const auto m = metrics(net);
      const double err = sup_abs_error(
          [&net](const VectorD& x) { return eval_net1(net, x); },
          target.builtin->eval, points);
      (*sink) << k << "," << m.hidden_blocks << "," << m.hidden_width << ","
              << format_double(err) << ","
              << format_double(max_affine_error_bound(convex.lipschitz, d, k))
              << "\n";
    }
    return kExitOk;
  }

  const auto epss = parse_list<double>(args.eps_list, "--eps-list");
  const std::uint64_t budget = resolve_vertex_budget(args.budget_vertices);
  (*sink) << "eps,depth,width,sup_error,paper_bound\n";
  for (const double eps : epss) {
    if (!(eps > 0)) throw ValidationError("--eps-list: eps must be > 0");
    const auto interp = build_interpolant<double>(
        to_target_fn(*target.builtin), eps, budget);
    const auto fn = decompose(interp).fn;
    const auto net = compile_dc(fn, DcCompileOptions{OutputMode::LinearReadout});
    const auto m = metrics(net);
    const double err = sup_abs_error(
        [&net](const VectorD& x) { return eval_net1(net, x); },
        target.builtin->eval, points);
    (*sink) << format_double(eps) << "," << m.hidden_blocks << ","
            << m.hidden_width << "," << format_double(err) << ","
            << format_double(eps) << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "narrownet: compile piecewise-affine and continuous functions on "
      "[0,1]^d into narrow ReLU nets with checkable width/depth/error "
      "guarantees"};
  app.require_subcommand(1);

  CompileArgs compile_args;
  auto* compile = app.add_subcommand(
      "compile", "Compile a target function into a ReLU net file");
  compile->add_option("--target", compile_args.target,
                      "Builtin target name, vertex-file:<path>, "
                      "dc-file:<path>, or shallow-file:<path>")
      ->required();
  compile->add_option("--mode", compile_args.mode,
                      "convex | dc | continuous | deepen")
      ->required();
  compile->add_option("--dim", compile_args.dim, "Input dimension");
  compile->add_option("--eps", compile_args.eps,
                      "Target sup-error for dc/continuous pipelines");
  compile->add_option("--k", compile_args.k,
                      "Supporting-plane count for convex mode");
  compile->add_option("--out", compile_args.out, "Output net file")
      ->required();
  compile->add_option("--out-dc", compile_args.out_dc,
                      "Also write the difference-of-convex document");
  compile->add_option("--output-mode", compile_args.output_mode,
                      "relu (default) or linear readout");
  compile->add_option("--seed", compile_args.seed, "Scan seed");
  compile->add_option("--budget-vertices", compile_args.budget_vertices,
                      "Lattice vertex budget (default 2^24, env "
                      "NARROWNET_BUDGET)");
  compile->add_option("--scan", compile_args.scan,
                      "grid:<n> or random:<count>[,<seed>]");
  compile->add_option("--lipschitz", compile_args.lipschitz,
                      "Assert a Lipschitz constant for the target");

  std::string eval_net_path, eval_points, eval_out;
  auto* eval = app.add_subcommand("eval", "Evaluate a net file on CSV points");
  eval->add_option("--net", eval_net_path, "Net file")->required();
  eval->add_option("--points", eval_points, "CSV of points (header row)")
      ->required();
  eval->add_option("--out", eval_out, "Output CSV (stdout when absent)");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand(
      "verify", "Scan a net against a target and assert requested bounds");
  verify->add_option("--net", verify_args.net_path, "Net file")->required();
  verify->add_option("--target", verify_args.target, "Target spec")
      ->required();
  verify->add_option("--dim", verify_args.dim, "Target dimension");
  verify->add_option("--scan", verify_args.scan,
                     "grid:<n> or random:<count>[,<seed>]");
  verify->add_option("--seed", verify_args.seed, "Scan seed");
  verify->add_option("--max-sup-error", verify_args.max_sup_error,
                     "Assert sup error at most this");
  verify->add_option("--expect-width", verify_args.expect_width,
                     "Assert hidden width");
  verify->add_option("--expect-blocks", verify_args.expect_blocks,
                     "Assert hidden block count");
  verify->add_option("--expect-relu-depth", verify_args.expect_relu_depth,
                     "Assert ReLU layer count");
  verify->add_option("--lipschitz", verify_args.lipschitz,
                     "Assert a Lipschitz constant for the target");

  RateArgs rate_args;
  auto* rate = app.add_subcommand(
      "rate", "Sweep k or eps and tabulate depth/width/error vs the bound");
  rate->add_option("--target", rate_args.target, "Builtin target")->required();
  rate->add_option("--dim", rate_args.dim, "Target dimension");
  rate->add_option("--k-list", rate_args.k_list, "Comma-separated k sweep");
  rate->add_option("--eps-list", rate_args.eps_list,
                   "Comma-separated eps sweep");
  rate->add_option("--out", rate_args.out_path, "Output CSV (stdout when "
                   "absent)");
  rate->add_option("--seed", rate_args.seed, "Scan seed");
  rate->add_option("--budget-vertices", rate_args.budget_vertices,
                   "Lattice vertex budget");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (compile->parsed()) return cmd_compile(compile_args, out);
    if (eval->parsed())
      return cmd_eval(eval_net_path, eval_points, eval_out, out);
    if (verify->parsed()) return cmd_verify(verify_args, out);
    return cmd_rate(rate_args, out);
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace narrownet
