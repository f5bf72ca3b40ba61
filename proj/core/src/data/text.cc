// data/text.cc

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

#include "arsg/data/text.h"

#include <cctype>
#include <sstream>

namespace arsg {

std::vector<int> NormalizeText(const std::string& raw, const Alphabet& alphabet,
                               const TextOptions& opts) {
  std::vector<int> out;
  const int space = alphabet.space();
  auto push_space = [&] {
    if (space >= 0 && !out.empty() && out.back() != space) out.push_back(space);
  };
  for (size_t i = 0; i < raw.size();) {
    if (!opts.noise_marker.empty() && alphabet.noise() >= 0 &&
        raw.compare(i, opts.noise_marker.size(), opts.noise_marker) == 0) {
      out.push_back(alphabet.noise());
      i += opts.noise_marker.size();
      continue;
    }
    const unsigned char c = static_cast<unsigned char>(raw[i++]);
    if (std::isspace(c)) {
      push_space();
      continue;
    }
    auto label = alphabet.FromChar(static_cast<char>(std::tolower(c)));
    if (!label) continue;
    if (*label == space)
      push_space();
    else
      out.push_back(*label);
  }
  if (space >= 0 && !out.empty() && out.back() == space) out.pop_back();
  out.push_back(alphabet.eos());
  return out;
}

std::string RenderText(const std::vector<int>& labels,
                       const Alphabet& alphabet) {
  return alphabet.Render(labels);
}

std::vector<std::string> SplitWords(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace arsg
