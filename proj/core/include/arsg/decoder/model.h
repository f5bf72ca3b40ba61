// arsg/decoder/model.h

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

// The attention-based recurrent sequence generator: pooled BiGRU encoder,
// windowed location-aware attention, and a GRU generator.
//
// Generator wiring: the attention reads s_{t-1}; the GRU consumes
// [embed(y_{t-1}); c_t]; the output layer reads [s_t; c_t]. y_0 is the
// end-of-sequence label and s_0 = 0; alpha_0 is one-hot at position 0.

#ifndef ARSG_DECODER_MODEL_H_
#define ARSG_DECODER_MODEL_H_

#include <optional>
#include <span>
#include <vector>

#include "arsg/attention/attention.h"
#include "arsg/decoder/alphabet.h"
#include "arsg/encoder/encoder.h"
#include "arsg/nn/graph.h"

namespace arsg {

struct ModelConfig {
  EncoderConfig encoder;
  int decoder_hidden = 250;
  int embedding_dim = 0;  // 0: same as decoder_hidden
  int score_dim = 0;      // 0: same as decoder_hidden
  int conv_width = 201;
  int conv_channels = 1;
  bool gru_bias = false;
};

/// How the attention window of each output step is chosen.
struct WindowPolicy {
  enum class Kind { kFull, kMedian, kSchedule };

  Kind kind = Kind::kFull;
  WindowConfig median;
  SchedulePolicy schedule;

  static WindowPolicy Full() { return {}; }
  static WindowPolicy Median(WindowConfig c) {
    WindowPolicy p;
    p.kind = Kind::kMedian;
    p.median = c;
    return p;
  }
  static WindowPolicy Schedule(SchedulePolicy s) {
    WindowPolicy p;
    p.kind = Kind::kSchedule;
    p.schedule = s;
    return p;
  }

  /// Window for 1-based output step t given the previous alignment.
  IndexRange Select(int t, const Alignment& prev) const;
};

/// Graph-free decoder state, used by search.
struct DecoderState {
  Tensor s;
  Alignment alpha;
};

/// Encoder output detached from any graph.
struct EncodedUtterance {
  Tensor h;
  Tensor proj;
  int length() const { return h.rows(); }
};

class Model {
 public:
  Model(const ModelConfig& config, Alphabet alphabet);
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;

  ParameterSet& params() { return params_; }
  const ParameterSet& params() const { return params_; }
  const ModelConfig& config() const { return config_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const Encoder& encoder() const { return encoder_; }
  const Attention& attention() const { return attention_; }
  const GruCell& cell() const { return cell_; }

  struct State {
    Var s;
    Var alpha;
    int alpha_offset = 0;
  };

  struct GraphStep {
    State state;
    Var log_probs;
    Var context;
    IndexRange window;
  };

  Attention::Annotations Encode(Graph& g, const Tensor& frames) const;
  State InitialState(Graph& g) const;
  /// One generator step. Without a window the whole sequence is attended.
  GraphStep DecoderStep(Graph& g, const Attention::Annotations& ann,
                        const State& prev, int y_prev,
                        std::optional<IndexRange> window = std::nullopt) const;

  /// -sum_t log p(y_t | y_<t, x) with ground-truth inputs. The transcript
  /// must end with end-of-sequence.
  Var TeacherForcedNll(Graph& g, const Tensor& frames,
                       std::span<const int> transcript,
                       const WindowPolicy& policy) const;
  double TeacherForcedNll(const Tensor& frames, std::span<const int> transcript,
                          const WindowPolicy& policy) const;

  /// Argmax decoding (ties to the smallest label) until EOS or max_len steps.
  std::vector<int> GenerateGreedy(const Tensor& frames, int max_len,
                                  const WindowPolicy& policy) const;

  // Graph-free interface used by beam search.
  EncodedUtterance EncodeForSearch(const Tensor& frames) const;
  DecoderState InitialDecoderState(int length) const;
  struct StepOutput {
    DecoderState state;
    Tensor log_probs;
    IndexRange window;
  };
  StepOutput Advance(const EncodedUtterance& enc, const DecoderState& prev,
                     int y_prev, IndexRange window) const;

 private:
  ModelConfig config_;
  Alphabet alphabet_;
  ParameterSet params_;
  Encoder encoder_;
  Attention attention_;
  Parameter* embedding_;
  GruCell cell_;
  Parameter* w_out_;
  Parameter* b_out_;
};

Alignment AlignmentFromGraph(const Graph& g, const Model::State& state,
                             int length);

}  // namespace arsg

#endif  // ARSG_DECODER_MODEL_H_
