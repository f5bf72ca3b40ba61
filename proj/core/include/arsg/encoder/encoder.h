// arsg/encoder/encoder.h

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

#ifndef ARSG_ENCODER_ENCODER_H_
#define ARSG_ENCODER_ENCODER_H_

#include <span>
#include <string>
#include <vector>

#include "arsg/nn/graph.h"

namespace arsg {

/// Gated recurrent unit without gate biases (optional biases exist but are
/// off unless requested):
///   z = sigma(W_xz x + U_hz h)        r = sigma(W_xr x + U_hr h)
///   h~ = tanh(W_xh x + U_rh (r * h))  h' = (1 - z) h + z h~
struct GruCell {
  Parameter* w_xz = nullptr;
  Parameter* u_hz = nullptr;
  Parameter* w_xr = nullptr;
  Parameter* u_hr = nullptr;
  Parameter* w_xh = nullptr;
  Parameter* u_rh = nullptr;
  Parameter* b_z = nullptr;
  Parameter* b_r = nullptr;
  Parameter* b_h = nullptr;
  int input_dim = 0;
  int hidden = 0;

  static GruCell Create(ParameterSet& params, const std::string& prefix,
                        int input_dim, int hidden, bool with_bias = false);
  bool has_bias() const { return b_z != nullptr; }
};

/// One GRU step on the graph.
Var GruStep(Graph& g, const GruCell& cell, Var x, Var h_prev);
/// Same step, with input projections already applied: xz = W_xz x etc.
Var GruStepProjected(Graph& g, const GruCell& cell, Var xz, Var xr, Var xh,
                     Var h_prev);
/// Graph-free convenience wrapper.
Tensor GruStep(const GruCell& cell, const Tensor& x, const Tensor& h_prev);

enum class PoolMode { kSubsample, kAverage };

struct PoolingSpec {
  int factor = 1;
  PoolMode mode = PoolMode::kSubsample;
};

/// Temporal pooling. Subsampling keeps the last element of each group of
/// `factor`; averaging emits the group mean. A trailing partial group is kept.
std::vector<Var> Pool(Graph& g, std::span<const Var> seq, PoolingSpec spec);
int PooledLength(int length, int factor);

struct BiGruLayer {
  GruCell forward;
  GruCell backward;
};

/// Runs both directions from zero initial states and concatenates
/// [forward_t ; backward_t] per position.
std::vector<Var> BiGruForward(Graph& g, const BiGruLayer& layer,
                              std::span<const Var> seq);

struct EncoderConfig {
  int input_dim = 123;
  std::vector<int> hidden = {250, 250, 250, 250};
  /// Pooling applied to each layer's input.
  std::vector<int> pooling = {1, 1, 2, 2};
  PoolMode pool_mode = PoolMode::kSubsample;
  bool gru_bias = false;
};

/// Stacked bidirectional GRU encoder with pooling between layers.
class Encoder {
 public:
  Encoder(ParameterSet& params, const EncoderConfig& config,
          const std::string& prefix = "enc");

  /// frames [T0 x input_dim] -> annotations [L x output_dim()].
  Var Encode(Graph& g, const Tensor& frames) const;
  std::vector<Var> EncodeSequence(Graph& g, std::span<const Var> frames) const;

  int output_dim() const { return 2 * config_.hidden.back(); }
  int OutputLength(int num_frames) const;
  int TotalPooling() const;
  const EncoderConfig& config() const { return config_; }
  const std::vector<BiGruLayer>& layers() const { return layers_; }

 private:
  EncoderConfig config_;
  std::vector<BiGruLayer> layers_;
};

}  // namespace arsg

#endif  // ARSG_ENCODER_ENCODER_H_
