// encoder/encoder.cc

// Copyright 2026  The arsg Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "arsg/encoder/encoder.h"

#include <stdexcept>

namespace arsg {

GruCell GruCell::Create(ParameterSet& params, const std::string& prefix,
                        int input_dim, int hidden, bool with_bias) {
  using K = Parameter::Kind;
  GruCell c;
  c.input_dim = input_dim;
  c.hidden = hidden;
  c.w_xz = &params.Add(prefix + ".W_xz", {hidden, input_dim}, K::kMatrix);
  c.u_hz = &params.Add(prefix + ".U_hz", {hidden, hidden}, K::kMatrix);
  c.w_xr = &params.Add(prefix + ".W_xr", {hidden, input_dim}, K::kMatrix);
  c.u_hr = &params.Add(prefix + ".U_hr", {hidden, hidden}, K::kMatrix);
  c.w_xh = &params.Add(prefix + ".W_xh", {hidden, input_dim}, K::kMatrix);
  c.u_rh = &params.Add(prefix + ".U_rh", {hidden, hidden}, K::kMatrix);
  if (with_bias) {
    c.b_z = &params.Add(prefix + ".b_z", {hidden}, K::kBias);
    c.b_r = &params.Add(prefix + ".b_r", {hidden}, K::kBias);
    c.b_h = &params.Add(prefix + ".b_h", {hidden}, K::kBias);
  }
  return c;
}

Var GruStepProjected(Graph& g, const GruCell& cell, Var xz, Var xr, Var xh,
                     Var h_prev) {
  CheckShape(g.Value(h_prev), {cell.hidden}, "h_prev");
  if (cell.has_bias()) {
    xz = g.Add(xz, g.Param(*cell.b_z));
    xr = g.Add(xr, g.Param(*cell.b_r));
    xh = g.Add(xh, g.Param(*cell.b_h));
  }
  Var z = g.Sigmoid(g.Add(xz, g.MatVec(g.Param(*cell.u_hz), h_prev)));
  Var r = g.Sigmoid(g.Add(xr, g.MatVec(g.Param(*cell.u_hr), h_prev)));
  Var candidate =
      g.Tanh(g.Add(xh, g.MatVec(g.Param(*cell.u_rh), g.Mul(r, h_prev))));
  return g.GruBlend(z, h_prev, candidate);
}

Var GruStep(Graph& g, const GruCell& cell, Var x, Var h_prev) {
  CheckShape(g.Value(x), {cell.input_dim}, "x");
  return GruStepProjected(g, cell, g.MatVec(g.Param(*cell.w_xz), x),
                          g.MatVec(g.Param(*cell.w_xr), x),
                          g.MatVec(g.Param(*cell.w_xh), x), h_prev);
}

Tensor GruStep(const GruCell& cell, const Tensor& x, const Tensor& h_prev) {
  Graph g(false);
  return g.Value(GruStep(g, cell, g.ConstantRef(x), g.ConstantRef(h_prev)));
}

int PooledLength(int length, int factor) {
  return (length + factor - 1) / factor;
}

std::vector<Var> Pool(Graph& g, std::span<const Var> seq, PoolingSpec spec) {
  if (spec.factor < 1)
    throw std::invalid_argument("pooling factor must be >= 1");
  if (seq.empty()) throw std::invalid_argument("pooling an empty sequence");
  if (spec.factor == 1) return {seq.begin(), seq.end()};
  const int n = static_cast<int>(seq.size());
  std::vector<Var> out;
  out.reserve(PooledLength(n, spec.factor));
  for (int start = 0; start < n; start += spec.factor) {
    int stop = std::min(n, start + spec.factor);
    if (spec.mode == PoolMode::kSubsample) {
      out.push_back(seq[stop - 1]);
    } else {
      Var sum = g.AddN(seq.subspan(start, stop - start));
      out.push_back(g.Scale(sum, Real(1) / (stop - start)));
    }
  }
  return out;
}

namespace {

// Runs one direction over precomputed input projections.
std::vector<Var> RunDirection(Graph& g, const GruCell& cell, Var xz, Var xr,
                              Var xh, int length, bool reverse) {
  std::vector<Var> states(length);
  Var h = g.Constant(Tensor::Zeros(cell.hidden));
  for (int i = 0; i < length; ++i) {
    int t = reverse ? length - 1 - i : i;
    h = GruStepProjected(g, cell, g.Row(xz, t), g.Row(xr, t), g.Row(xh, t), h);
    states[t] = h;
  }
  return states;
}

}  // namespace

std::vector<Var> BiGruForward(Graph& g, const BiGruLayer& layer,
                              std::span<const Var> seq) {
  if (seq.empty())
    throw std::invalid_argument("bidirectional GRU: empty sequence");
  const int length = static_cast<int>(seq.size());
  Var x = g.Stack(seq);
  if (g.Value(x).cols() != layer.forward.input_dim)
    throw DimensionError("x: expected " +
                         std::to_string(layer.forward.input_dim) +
                         " features, got " + std::to_string(g.Value(x).cols()));
  auto project = [&](const GruCell& c, bool reverse) {
    return RunDirection(g, c, g.MatMulT(x, g.Param(*c.w_xz)),
                        g.MatMulT(x, g.Param(*c.w_xr)),
                        g.MatMulT(x, g.Param(*c.w_xh)), length, reverse);
  };
  std::vector<Var> fwd = project(layer.forward, false);
  std::vector<Var> bwd = project(layer.backward, true);
  std::vector<Var> out(length);
  for (int t = 0; t < length; ++t) {
    Var parts[2] = {fwd[t], bwd[t]};
    out[t] = g.Concat(parts);
  }
  return out;
}

Encoder::Encoder(ParameterSet& params, const EncoderConfig& config,
                 const std::string& prefix)
    : config_(config) {
  if (config.hidden.empty())
    throw std::invalid_argument("encoder needs at least one layer");
  if (config.pooling.size() != config.hidden.size())
    throw std::invalid_argument(
        "one pooling factor per encoder layer required");
  int in = config.input_dim;
  for (size_t i = 0; i < config.hidden.size(); ++i) {
    if (config.pooling[i] < 1)
      throw std::invalid_argument("pooling factor must be >= 1");
    std::string name = prefix + ".l" + std::to_string(i);
    BiGruLayer layer;
    layer.forward = GruCell::Create(params, name + ".fwd", in, config.hidden[i],
                                    config.gru_bias);
    layer.backward = GruCell::Create(params, name + ".bwd", in,
                                     config.hidden[i], config.gru_bias);
    layers_.push_back(layer);
    in = 2 * config.hidden[i];
  }
}

int Encoder::TotalPooling() const {
  int p = 1;
  for (int f : config_.pooling) p *= f;
  return p;
}

int Encoder::OutputLength(int num_frames) const {
  int n = num_frames;
  for (int f : config_.pooling) n = PooledLength(n, f);
  return n;
}

std::vector<Var> Encoder::EncodeSequence(Graph& g,
                                         std::span<const Var> frames) const {
  const int total = TotalPooling();
  if (static_cast<int>(frames.size()) < total)
    throw std::invalid_argument(
        "utterance of " + std::to_string(frames.size()) +
        " frames is shorter than the total pooling factor " +
        std::to_string(total));
  std::vector<Var> seq(frames.begin(), frames.end());
  for (size_t i = 0; i < layers_.size(); ++i) {
    seq = Pool(g, seq, {config_.pooling[i], config_.pool_mode});
    seq = BiGruForward(g, layers_[i], seq);
  }
  return seq;
}

Var Encoder::Encode(Graph& g, const Tensor& frames) const {
  if (frames.rank() != 2 || frames.cols() != config_.input_dim)
    throw DimensionError("frames: expected [T x " +
                         std::to_string(config_.input_dim) + "], got " +
                         frames.ShapeString());
  Var all = g.Constant(frames);
  std::vector<Var> rows(frames.rows());
  for (int t = 0; t < frames.rows(); ++t) rows[t] = g.Row(all, t);
  std::vector<Var> out = EncodeSequence(g, rows);
  return g.Stack(out);
}

}  // namespace arsg
