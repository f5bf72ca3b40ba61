// arsg/data/text.h

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

#ifndef ARSG_DATA_TEXT_H_
#define ARSG_DATA_TEXT_H_

#include <string>
#include <vector>

#include "arsg/decoder/alphabet.h"

namespace arsg {

struct TextOptions {
  std::string noise_marker = "<noise>";
};

/// Projects raw text onto the alphabet: letters are lowercased, the noise
/// marker becomes the noise label, whitespace becomes a space, anything else
/// outside the alphabet is dropped. Runs of spaces collapse and leading or
/// trailing spaces are removed. EOS is appended.
std::vector<int> NormalizeText(const std::string& raw, const Alphabet& alphabet,
                               const TextOptions& opts = {});

/// Inverse of NormalizeText on its image (EOS is dropped).
std::string RenderText(const std::vector<int>& labels,
                       const Alphabet& alphabet);

/// Splits on spaces, dropping empty pieces.
std::vector<std::string> SplitWords(const std::string& text);

}  // namespace arsg

#endif  // ARSG_DATA_TEXT_H_
