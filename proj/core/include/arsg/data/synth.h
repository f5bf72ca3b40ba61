// arsg/data/synth.h

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

// Synthetic speech-like corpora: each character is a fixed random pattern
// held for a random number of frames, with Gaussian noise and silent
// margins.

#ifndef ARSG_DATA_SYNTH_H_
#define ARSG_DATA_SYNTH_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "arsg/data/dataset-io.h"
#include "arsg/decoder/alphabet.h"

namespace arsg {

struct IntRange {
  int min = 0;
  int max = 0;
};

struct SyntheticTaskSpec {
  /// Character mode: text drawn uniformly from these characters (a space
  /// never starts, ends or doubles).
  std::string characters = "abcdefgh ";
  IntRange text_length = {3, 8};
  /// Word mode (used when non-empty): space-separated words drawn uniformly.
  std::vector<std::string> words;
  IntRange words_per_utterance = {1, 3};

  int base_dim = 16;
  IntRange frames_per_char = {6, 10};
  double noise_std = 0.3;
  IntRange leading_silence = {2, 6};
  IntRange trailing_silence = {2, 6};
  double pattern_scale = 1.0;  // per-entry RMS of a character pattern
  /// Pairs whose second pattern is pulled toward the first; the distance
  /// between the two patterns is confusable_distance * pattern norm.
  std::vector<std::pair<char, char>> confusable;
  double confusable_distance = 0.1;
  bool add_deltas = true;
  uint64_t seed = 1;
  std::string id_prefix = "utt";

  void Validate() const;
  /// Feature dimension of the generated frames.
  int feature_dim() const { return add_deltas ? 3 * base_dim : base_dim; }
};

/// Frame layout of one generated utterance.
struct SynthLayout {
  int leading = 0;
  int trailing = 0;
  std::vector<int> char_frames;
};

/// Base pattern of every character the spec can emit.
std::map<char, std::vector<double>> SyntheticPatterns(
    const SyntheticTaskSpec& spec);

/// Deterministic per (seed, stream). Patterns depend on the seed only, so
/// different streams give disjoint utterances of the same task (e.g. train,
/// dev and test splits). Frames are rounded to float precision so that they
/// survive the feature file format bit-exactly.
std::vector<Utterance> GenerateSynthetic(
    const SyntheticTaskSpec& spec, int count, const Alphabet& alphabet,
    std::vector<SynthLayout>* layouts = nullptr, uint64_t stream = 0);

}  // namespace arsg

#endif  // ARSG_DATA_SYNTH_H_
