// decoder/alphabet.cc

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

#include "arsg/decoder/alphabet.h"

#include <stdexcept>

namespace arsg {

Alphabet Alphabet::Standard() {
  std::vector<std::string> s;
  for (char c = 'a'; c <= 'z'; ++c) s.emplace_back(1, c);
  for (const char* extra : {"'", ".", "-", " ", kNoise, kEos})
    s.emplace_back(extra);
  return FromSymbols(std::move(s));
}

Alphabet Alphabet::FromSymbols(std::vector<std::string> symbols) {
  Alphabet a;
  for (size_t i = 0; i < symbols.size(); ++i) {
    const std::string& s = symbols[i];
    if (s.empty()) throw std::invalid_argument("empty alphabet symbol");
    if (s.size() > 1 && s != kEos && s != kNoise)
      throw std::invalid_argument("alphabet symbols are single characters: '" +
                                  s + "'");
    if (!a.index_.emplace(s, static_cast<int>(i)).second)
      throw std::invalid_argument("duplicate alphabet symbol '" + s + "'");
    if (s == kEos) a.eos_ = static_cast<int>(i);
    if (s == kNoise) a.noise_ = static_cast<int>(i);
    if (s == " ") a.space_ = static_cast<int>(i);
  }
  if (a.eos_ < 0) throw std::invalid_argument("alphabet lacks end-of-sequence");
  a.symbols_ = std::move(symbols);
  return a;
}

std::optional<int> Alphabet::Find(const std::string& symbol) const {
  auto it = index_.find(symbol);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Alphabet::FromChar(char c) const {
  return Find(std::string(1, c));
}

std::string Alphabet::Render(std::span<const int> labels) const {
  std::string out;
  for (int l : labels) {
    if (l == eos_) break;
    out += symbols_.at(l);
  }
  return out;
}

}  // namespace arsg
