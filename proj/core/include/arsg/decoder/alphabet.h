// arsg/decoder/alphabet.h

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

#ifndef ARSG_DECODER_ALPHABET_H_
#define ARSG_DECODER_ALPHABET_H_

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace arsg {

/// Ordered output label set. Ordinary labels are single characters; the
/// special labels are the noise token and end-of-sequence.
class Alphabet {
 public:
  static constexpr const char* kEos = "</s>";
  static constexpr const char* kNoise = "<noise>";

  /// The 32-label character set: a-z, apostrophe, period, dash, space,
  /// noise and end-of-sequence, in that order.
  static Alphabet Standard();
  /// Arbitrary symbols; exactly one must be kEos.
  static Alphabet FromSymbols(std::vector<std::string> symbols);

  int size() const { return static_cast<int>(symbols_.size()); }
  const std::string& symbol(int label) const { return symbols_.at(label); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  std::optional<int> Find(const std::string& symbol) const;
  std::optional<int> FromChar(char c) const;
  bool IsValid(int label) const { return label >= 0 && label < size(); }

  int eos() const { return eos_; }
  /// -1 when absent.
  int space() const { return space_; }
  int noise() const { return noise_; }

  /// Text form of a label sequence; stops at (and drops) EOS.
  std::string Render(std::span<const int> labels) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, int> index_;
  int eos_ = -1;
  int space_ = -1;
  int noise_ = -1;
};

}  // namespace arsg

#endif  // ARSG_DECODER_ALPHABET_H_
