// arsg/search/beam-search.h

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

// Left-to-right beam search minimizing
//   cost = -ln p_ED(y | x) - beta ln p_LM(y) - gamma T,
// where T counts emitted labels other than end-of-sequence.

#ifndef ARSG_SEARCH_BEAM_SEARCH_H_
#define ARSG_SEARCH_BEAM_SEARCH_H_

#include <memory>
#include <stdexcept>
#include <vector>

#include "arsg/decoder/model.h"
#include "arsg/lm/prefix-scorer.h"

namespace arsg {

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DecodeConfig {
  int beam = 200;
  double lm_weight = 0.5;     // beta
  double length_bonus = 1.0;  // gamma; 0.1 is the customary value without LM
  bool count_eos_in_length = false;
  int max_len = 200;
  /// Attention window during decoding; median-centered with a short left
  /// extent by default.
  WindowPolicy window = WindowPolicy::Median({10, 100});
};

struct Hypothesis {
  std::vector<int> labels;
  std::shared_ptr<const DecoderState> state;  // state after the last step
  PrefixScorer::State lm_state;
  double ed_cost = 0;  // -ln p_ED
  double lm_cost = 0;  // -ln p_LM
  int length = 0;
  bool terminated = false;
};

double JointCost(const Hypothesis& hyp, const DecodeConfig& config,
                 bool has_lm);

struct DecodeResult {
  std::vector<int> labels;  // includes EOS when terminated
  double ed_cost = 0;
  double lm_cost = 0;
  int length = 0;
  double cost = 0;
  bool terminated = false;
  int steps = 0;
};

class BeamSearch {
 public:
  /// `lm` may be null for decoding without a language model. A zero LM
  /// weight detaches the LM.
  BeamSearch(const Model& model, const PrefixScorer* lm, DecodeConfig config);
  bool has_lm() const { return lm_ != nullptr; }

  Hypothesis Initial(const EncodedUtterance& enc) const;
  /// One candidate per label, minus those the LM rules out.
  std::vector<Hypothesis> Expand(const EncodedUtterance& enc,
                                 const Hypothesis& hyp) const;
  /// Each step keeps the k cheapest candidates; finished ones move out of
  /// the beam. Stops once k finished hypotheses are cheaper than every live
  /// one, or after max_len steps. Returns the cheapest finished hypothesis,
  /// or the cheapest live one (terminated == false) if none finished.
  DecodeResult Decode(const EncodedUtterance& enc) const;
  DecodeResult Decode(const Tensor& frames) const;

  /// Cost of a given label sequence, recomputed from scratch.
  DecodeResult Rescore(const EncodedUtterance& enc,
                       const std::vector<int>& labels) const;

  const DecodeConfig& config() const { return config_; }

 private:
  const Model& model_;
  const PrefixScorer* lm_;
  DecodeConfig config_;
};

}  // namespace arsg

#endif  // ARSG_SEARCH_BEAM_SEARCH_H_
