// arsg/attention/attention.h

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

// Hybrid location-aware attention with convolutional features of the previous
// alignment, restricted to a window of annotation positions:
//
//   F    = Q * alpha_{t-1}
//   e_l  = w' tanh(W s_{t-1} + V h_l + U f_l + b)        l in window
//   a_l  = exp(e_l) / sum_{l' in window} exp(e_l')
//   c_t  = sum_l a_l h_l
//
// Positions are 0-based here; ranges are half-open.

#ifndef ARSG_ATTENTION_ATTENTION_H_
#define ARSG_ATTENTION_ATTENTION_H_

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arsg/nn/graph.h"

namespace arsg {

struct IndexRange {
  int begin = 0;
  int end = 0;

  int size() const { return end - begin; }
  bool empty() const { return end <= begin; }
  bool Contains(int i) const { return i >= begin && i < end; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Clips the inclusive range [first, last] to [0, length). The result is
/// never empty: a range entirely past either edge collapses onto that edge.
IndexRange ClipInclusive(long first, long last, int length);

struct WindowConfig {
  int left = 100;
  int right = 100;
};

/// Bounds of the scheduled window R_t used in the first training epoch.
/// Units are annotation positions (after pooling) and positions per label.
struct SchedulePolicy {
  double s_min = 0;
  double s_max = 0;
  double v_min = 1;
  double v_max = 1;

  void Validate() const;
};

/// Attention weights over positions [offset, offset + weights.size()) of a
/// sequence of `length` annotations; every other position has weight zero.
struct Alignment {
  int length = 0;
  int offset = 0;
  std::vector<Real> weights;

  static Alignment OneHot(int length, int position);
  Real at(int l) const;
  IndexRange range() const {
    return {offset, offset + static_cast<int>(weights.size())};
  }
  Tensor Dense() const;
};

/// m = smallest position whose cumulative (normalized) weight reaches 0.5;
/// the window is [m - left, m + right] clipped to the sequence.
int AlignmentMedian(const Alignment& alpha);
IndexRange MedianWindow(const Alignment& alpha, const WindowConfig& config);

/// R_t for 1-based output step t:
///   [floor(s_min + t v_min), ceil(s_max + t v_max)]  (1-based, inclusive)
/// clipped to the sequence and returned 0-based, half-open.
IndexRange ScheduleWindow(int t, const SchedulePolicy& policy, int length);

/// Softmax of dense scores restricted to `window`; zero outside.
Alignment NormalizeScores(const Tensor& scores, IndexRange window);

struct AttentionConfig {
  int state_dim = 0;       // decoder state size
  int annotation_dim = 0;  // encoder output size
  int score_dim = 0;       // hidden size of the scoring MLP
  int conv_width = 201;    // odd
  int conv_channels = 1;
};

class Attention {
 public:
  Attention(ParameterSet& params, const AttentionConfig& config,
            const std::string& prefix = "att");

  /// Annotations plus their content projection V h_l, computed once per
  /// utterance.
  struct Annotations {
    Var h;
    Var proj;
    int length = 0;
  };
  Annotations Prepare(Graph& g, Var h) const;

  struct Result {
    Var alpha;  // weights for positions [window.begin, window.end)
    IndexRange window;
    Var context;
  };

  /// `alpha_prev` holds the weights of positions starting at
  /// `alpha_prev_offset`. With no window the full sequence is scored.
  Result Attend(Graph& g, const Annotations& ann, Var s_prev, Var alpha_prev,
                int alpha_prev_offset,
                std::optional<IndexRange> window = std::nullopt) const;

  /// Convolutional features of a full alignment, [length x channels].
  Tensor ConvFeatures(const Alignment& alpha_prev) const;
  /// e = w' tanh(W s + V h + U f + b) for one position.
  Real Score(const Tensor& s_prev, const Tensor& h, const Tensor& f) const;

  const AttentionConfig& config() const { return config_; }
  Parameter& W() const { return *w_state_; }
  Parameter& V() const { return *v_annot_; }
  Parameter& U() const { return *u_conv_; }
  Parameter& Q() const { return *q_filter_; }
  Parameter& w() const { return *w_out_; }
  Parameter& b() const { return *b_; }

  /// Number of position scores evaluated so far.
  int64_t score_evaluations() const { return score_evaluations_.load(); }
  void ResetCounter() { score_evaluations_.store(0); }

 private:
  AttentionConfig config_;
  Parameter* w_state_;
  Parameter* v_annot_;
  Parameter* u_conv_;
  Parameter* q_filter_;
  Parameter* w_out_;
  Parameter* b_;
  mutable std::atomic<int64_t> score_evaluations_{0};
};

}  // namespace arsg

#endif  // ARSG_ATTENTION_ATTENTION_H_
