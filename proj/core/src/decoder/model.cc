// decoder/model.cc

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

#include "arsg/decoder/model.h"

#include <stdexcept>

namespace arsg {

namespace {

AttentionConfig MakeAttentionConfig(const ModelConfig& c, int annotation_dim) {
  AttentionConfig a;
  a.state_dim = c.decoder_hidden;
  a.annotation_dim = annotation_dim;
  a.score_dim = c.score_dim > 0 ? c.score_dim : c.decoder_hidden;
  a.conv_width = c.conv_width;
  a.conv_channels = c.conv_channels;
  return a;
}

int EmbeddingDim(const ModelConfig& c) {
  return c.embedding_dim > 0 ? c.embedding_dim : c.decoder_hidden;
}

}  // namespace

IndexRange WindowPolicy::Select(int t, const Alignment& prev) const {
  switch (kind) {
    case Kind::kFull:
      return {0, prev.length};
    case Kind::kMedian:
      return MedianWindow(prev, median);
    case Kind::kSchedule:
      return ScheduleWindow(t, schedule, prev.length);
  }
  throw std::logic_error("unknown window policy");
}

Model::Model(const ModelConfig& config, Alphabet alphabet)
    : config_(config),
      alphabet_(std::move(alphabet)),
      encoder_(params_, config.encoder, "enc"),
      attention_(params_, MakeAttentionConfig(config, encoder_.output_dim()),
                 "att") {
  using K = Parameter::Kind;
  const int emb = EmbeddingDim(config);
  const int ctx = encoder_.output_dim();
  embedding_ =
      &params_.Add("dec.embedding", {alphabet_.size(), emb}, K::kEmbedding);
  cell_ = GruCell::Create(params_, "dec.gru", emb + ctx, config.decoder_hidden,
                          config.gru_bias);
  w_out_ = &params_.Add(
      "dec.W_hl", {alphabet_.size(), config.decoder_hidden + ctx}, K::kMatrix);
  b_out_ = &params_.Add("dec.b_l", {alphabet_.size()}, K::kBias);
}

Attention::Annotations Model::Encode(Graph& g, const Tensor& frames) const {
  return attention_.Prepare(g, encoder_.Encode(g, frames));
}

Model::State Model::InitialState(Graph& g) const {
  State s;
  s.s = g.Constant(Tensor::Zeros(config_.decoder_hidden));
  s.alpha = g.Constant(Tensor::Vector({1}));
  s.alpha_offset = 0;
  return s;
}

Model::GraphStep Model::DecoderStep(Graph& g, const Attention::Annotations& ann,
                                    const State& prev, int y_prev,
                                    std::optional<IndexRange> window) const {
  if (!alphabet_.IsValid(y_prev))
    throw std::out_of_range("invalid previous label " + std::to_string(y_prev));
  Attention::Result att =
      attention_.Attend(g, ann, prev.s, prev.alpha, prev.alpha_offset, window);
  Var emb = g.Row(g.Param(*embedding_), y_prev);
  Var in_parts[2] = {emb, att.context};
  Var s = GruStep(g, cell_, g.Concat(in_parts), prev.s);
  Var out_parts[2] = {s, att.context};
  Var logits =
      g.Affine(g.Param(*w_out_), g.Concat(out_parts), g.Param(*b_out_));
  GraphStep step;
  step.state = {s, att.alpha, att.window.begin};
  step.log_probs = g.LogSoftmax(logits);
  step.context = att.context;
  step.window = att.window;
  return step;
}

Alignment AlignmentFromGraph(const Graph& g, const Model::State& state,
                             int length) {
  Alignment a;
  a.length = length;
  a.offset = state.alpha_offset;
  auto v = g.Value(state.alpha).values();
  a.weights.assign(v.begin(), v.end());
  return a;
}

Var Model::TeacherForcedNll(Graph& g, const Tensor& frames,
                            std::span<const int> transcript,
                            const WindowPolicy& policy) const {
  if (transcript.empty() || transcript.back() != alphabet_.eos())
    throw std::invalid_argument("transcript must end with end-of-sequence");
  Attention::Annotations ann = Encode(g, frames);
  State state = InitialState(g);
  int y_prev = alphabet_.eos();
  std::vector<Var> terms;
  terms.reserve(transcript.size());
  for (size_t i = 0; i < transcript.size(); ++i) {
    const int t = static_cast<int>(i) + 1;
    IndexRange window =
        policy.Select(t, AlignmentFromGraph(g, state, ann.length));
    GraphStep step = DecoderStep(g, ann, state, y_prev, window);
    if (!alphabet_.IsValid(transcript[i]))
      throw std::out_of_range("transcript label outside alphabet");
    terms.push_back(g.Pick(step.log_probs, transcript[i]));
    state = step.state;
    y_prev = transcript[i];
  }
  return g.Scale(g.AddN(terms), -1);
}

double Model::TeacherForcedNll(const Tensor& frames,
                               std::span<const int> transcript,
                               const WindowPolicy& policy) const {
  Graph g(false);
  return g.Scalar(TeacherForcedNll(g, frames, transcript, policy));
}

std::vector<int> Model::GenerateGreedy(const Tensor& frames, int max_len,
                                       const WindowPolicy& policy) const {
  if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
  EncodedUtterance enc = EncodeForSearch(frames);
  DecoderState state = InitialDecoderState(enc.length());
  std::vector<int> out;
  int y_prev = alphabet_.eos();
  for (int t = 1; t <= max_len; ++t) {
    StepOutput step =
        Advance(enc, state, y_prev, policy.Select(t, state.alpha));
    int best = 0;
    for (int l = 1; l < alphabet_.size(); ++l)
      if (step.log_probs[l] > step.log_probs[best]) best = l;
    out.push_back(best);
    if (best == alphabet_.eos()) break;
    state = std::move(step.state);
    y_prev = best;
  }
  return out;
}

EncodedUtterance Model::EncodeForSearch(const Tensor& frames) const {
  Graph g(false);
  Attention::Annotations ann = Encode(g, frames);
  return {g.Value(ann.h), g.Value(ann.proj)};
}

DecoderState Model::InitialDecoderState(int length) const {
  return {Tensor::Zeros(config_.decoder_hidden), Alignment::OneHot(length, 0)};
}

Model::StepOutput Model::Advance(const EncodedUtterance& enc,
                                 const DecoderState& prev, int y_prev,
                                 IndexRange window) const {
  Graph g(false);
  Attention::Annotations ann{g.ConstantRef(enc.h), g.ConstantRef(enc.proj),
                             enc.length()};
  Tensor alpha_values = Tensor::Vector(prev.alpha.weights);
  State state{g.ConstantRef(prev.s), g.ConstantRef(alpha_values),
              prev.alpha.offset};
  GraphStep step = DecoderStep(g, ann, state, y_prev, window);
  StepOutput out;
  out.state.s = g.Value(step.state.s);
  out.state.alpha = AlignmentFromGraph(g, step.state, enc.length());
  out.log_probs = g.Value(step.log_probs);
  out.window = step.window;
  return out;
}

}  // namespace arsg
