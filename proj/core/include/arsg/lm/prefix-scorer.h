// arsg/lm/prefix-scorer.h

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

#ifndef ARSG_LM_PREFIX_SCORER_H_
#define ARSG_LM_PREFIX_SCORER_H_

#include <utility>
#include <vector>

#include "arsg/decoder/alphabet.h"
#include "arsg/lm/wfst.h"

namespace arsg {

/// Scores character prefixes against a character-level LM by tracking every
/// path the prefix can be on. Works for deterministic and nondeterministic
/// machines. The cost of a prefix is -ln of the total weight of the paths
/// that end with its last character; the empty prefix costs 0.
class PrefixScorer {
 public:
  struct State {
    // Epsilon-closed (fst state, weight relative to `cost`) pairs, sorted.
    std::vector<std::pair<int, double>> entries;
    double cost = 0;
    bool needs_separator = false;  // last label was a non-space character
    bool finished = false;
  };

  /// `fst` must outlive the scorer.
  PrefixScorer(const Wfst& fst, const Alphabet& alphabet);

  State Start() const;
  /// Consumes one alphabet label. Returns the new state and the cost
  /// increment (+inf when the prefix leaves the language). The
  /// end-of-sequence label closes the last word with an implied space when
  /// needed and applies the final weights.
  std::pair<State, double> Step(const State& state, int label) const;

  /// Summed increments over a whole label sequence (which may end in EOS).
  double Score(const std::vector<int>& labels) const;

  const Alphabet& alphabet() const { return alphabet_; }

 private:
  std::pair<State, double> Advance(const State& state, int fst_label) const;

  const Wfst& fst_;
  Alphabet alphabet_;
};

}  // namespace arsg

#endif  // ARSG_LM_PREFIX_SCORER_H_
