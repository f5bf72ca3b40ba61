// attention/attention.cc

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

#include "arsg/attention/attention.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace arsg {

IndexRange ClipInclusive(long first, long last, int length) {
  if (length < 1) throw std::invalid_argument("window over an empty sequence");
  if (last < first) throw std::invalid_argument("inverted window bounds");
  long lo = std::clamp<long>(first, 0, length - 1);
  long hi = std::clamp<long>(last, 0, length - 1);
  return {static_cast<int>(lo), static_cast<int>(hi) + 1};
}

void SchedulePolicy::Validate() const {
  if (s_min > s_max) throw std::invalid_argument("schedule: s_min > s_max");
  if (!(v_min > 0) || v_min > v_max)
    throw std::invalid_argument("schedule: need 0 < v_min <= v_max");
}

Alignment Alignment::OneHot(int length, int position) {
  if (position < 0 || position >= length)
    throw std::out_of_range("one-hot position outside sequence");
  Alignment a;
  a.length = length;
  a.offset = position;
  a.weights = {1};
  return a;
}

Real Alignment::at(int l) const {
  int i = l - offset;
  if (i < 0 || i >= static_cast<int>(weights.size())) return 0;
  return weights[i];
}

Tensor Alignment::Dense() const {
  Tensor t({length});
  for (size_t i = 0; i < weights.size(); ++i) t[offset + i] = weights[i];
  return t;
}

int AlignmentMedian(const Alignment& alpha) {
  if (alpha.weights.empty()) throw std::invalid_argument("empty alignment");
  Real total = 0;
  for (Real v : alpha.weights) total += v;
  if (!(total > 0)) throw std::invalid_argument("alignment has no mass");
  const Real half = total * (0.5 - 1e-12);
  Real cum = 0;
  for (size_t i = 0; i < alpha.weights.size(); ++i) {
    cum += alpha.weights[i];
    if (cum >= half) return alpha.offset + static_cast<int>(i);
  }
  return alpha.offset + static_cast<int>(alpha.weights.size()) - 1;
}

IndexRange MedianWindow(const Alignment& alpha, const WindowConfig& config) {
  if (config.left < 0 || config.right < 0)
    throw std::invalid_argument("window extents must be nonnegative");
  long m = AlignmentMedian(alpha);
  return ClipInclusive(m - config.left, m + config.right, alpha.length);
}

IndexRange ScheduleWindow(int t, const SchedulePolicy& policy, int length) {
  policy.Validate();
  if (t < 1) throw std::invalid_argument("schedule: output step starts at 1");
  long first = static_cast<long>(std::floor(policy.s_min + t * policy.v_min));
  long last = static_cast<long>(std::ceil(policy.s_max + t * policy.v_max));
  // 1-based inclusive -> 0-based.
  return ClipInclusive(first - 1, last - 1, length);
}

Alignment NormalizeScores(const Tensor& scores, IndexRange window) {
  if (scores.rank() != 1) throw DimensionError("scores: expected a vector");
  const int length = scores.dim(0);
  window.begin = std::max(window.begin, 0);
  window.end = std::min(window.end, length);
  if (window.empty()) throw std::invalid_argument("empty attention window");
  Tensor e({window.size()});
  for (int l = window.begin; l < window.end; ++l)
    e[l - window.begin] = scores[l];
  Tensor a = Softmax(e);
  Alignment out;
  out.length = length;
  out.offset = window.begin;
  out.weights.assign(a.values().begin(), a.values().end());
  return out;
}

Attention::Attention(ParameterSet& params, const AttentionConfig& config,
                     const std::string& prefix)
    : config_(config) {
  using K = Parameter::Kind;
  if (config.conv_width < 1 || config.conv_width % 2 == 0)
    throw std::invalid_argument("attention filter width must be odd");
  if (config.conv_channels < 1 || config.score_dim < 1 ||
      config.state_dim < 1 || config.annotation_dim < 1)
    throw std::invalid_argument("attention dimensions must be positive");
  const int a = config.score_dim;
  w_state_ = &params.Add(prefix + ".W", {a, config.state_dim}, K::kMatrix);
  v_annot_ = &params.Add(prefix + ".V", {a, config.annotation_dim}, K::kMatrix);
  u_conv_ = &params.Add(prefix + ".U", {a, config.conv_channels}, K::kMatrix);
  q_filter_ = &params.Add(
      prefix + ".Q", {config.conv_width, config.conv_channels}, K::kFilter);
  w_out_ = &params.Add(prefix + ".w", {a}, K::kWeightVector);
  b_ = &params.Add(prefix + ".b", {a}, K::kBias);
}

Attention::Annotations Attention::Prepare(Graph& g, Var h) const {
  const Tensor& hv = g.Value(h);
  if (hv.rank() != 2 || hv.cols() != config_.annotation_dim)
    throw DimensionError("annotations: expected [L x " +
                         std::to_string(config_.annotation_dim) + "], got " +
                         hv.ShapeString());
  return {h, g.MatMulT(h, g.Param(*v_annot_)), hv.rows()};
}

Attention::Result Attention::Attend(Graph& g, const Annotations& ann,
                                    Var s_prev, Var alpha_prev,
                                    int alpha_prev_offset,
                                    std::optional<IndexRange> window) const {
  IndexRange win = window.value_or(IndexRange{0, ann.length});
  win.begin = std::max(win.begin, 0);
  win.end = std::min(win.end, ann.length);
  if (win.empty()) throw std::invalid_argument("empty attention window");
  CheckShape(g.Value(s_prev), {config_.state_dim}, "s_prev");

  Var query = g.Affine(g.Param(*w_state_), s_prev, g.Param(*b_));
  Var feats = g.Conv1dWindow(g.Param(*q_filter_), alpha_prev, alpha_prev_offset,
                             win.begin, win.end);
  Var energies = g.AttentionEnergies(query, ann.proj, feats, g.Param(*u_conv_),
                                     g.Param(*w_out_), win.begin);
  score_evaluations_.fetch_add(win.size(), std::memory_order_relaxed);
  Var alpha = g.Softmax(energies);
  Var context = g.WeightedRowSum(alpha, ann.h, win.begin);
  return {alpha, win, context};
}

Tensor Attention::ConvFeatures(const Alignment& alpha_prev) const {
  return Conv1d(q_filter_->value, alpha_prev.Dense());
}

Real Attention::Score(const Tensor& s_prev, const Tensor& h,
                      const Tensor& f) const {
  Tensor pre = Affine(s_prev, w_state_->value, b_->value);
  pre += MatVec(v_annot_->value, h);
  pre += MatVec(u_conv_->value, f);
  Tensor act = Tanh(pre);
  Real e = 0;
  for (size_t i = 0; i < act.size(); ++i) e += w_out_->value[i] * act[i];
  return e;
}

}  // namespace arsg
