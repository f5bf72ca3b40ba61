// arsg/lm/arpa.h

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

#ifndef ARSG_LM_ARPA_H_
#define ARSG_LM_ARPA_H_

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace arsg {

class ArpaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Backoff n-gram model with log10 probabilities, as stored in ARPA files.
struct ArpaModel {
  static constexpr const char* kBos = "<s>";
  static constexpr const char* kEos = "</s>";

  struct Entry {
    double log10_prob = 0;
    std::optional<double> log10_backoff;
  };
  typedef std::vector<std::string> Ngram;

  /// ngrams[n - 1] holds the n-grams, ordered lexicographically.
  std::vector<std::map<Ngram, Entry>> ngrams;

  int order() const { return static_cast<int>(ngrams.size()); }
  const Entry* Find(const Ngram& ngram) const;

  /// log10 P(word | history) with standard backoff. History is truncated to
  /// order - 1 words. Returns nullopt when the word is not a unigram.
  std::optional<double> Log10Prob(std::span<const std::string> history,
                                  const std::string& word) const;
  /// log10 P(</s> w_1 ... w_n | <s>) summed over the sentence.
  std::optional<double> SentenceLog10Prob(
      std::span<const std::string> words) const;

  /// Unigram words other than <s> and </s>.
  std::vector<std::string> Vocabulary() const;
};

ArpaModel ParseArpa(const std::string& text);
ArpaModel ReadArpaFile(const std::string& path);
/// Values are written with enough digits to re-read the same doubles.
std::string WriteArpa(const ArpaModel& model);

}  // namespace arsg

#endif  // ARSG_LM_ARPA_H_
