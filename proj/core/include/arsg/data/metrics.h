// arsg/data/metrics.h

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

#ifndef ARSG_DATA_METRICS_H_
#define ARSG_DATA_METRICS_H_

#include <algorithm>
#include <span>
#include <string>
#include <vector>

namespace arsg {

/// Levenshtein distance with unit costs.
template <typename T>
int EditDistance(std::span<const T> a, std::span<const T> b) {
  std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (size_t j = 1; j <= b.size(); ++j) {
      int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min(sub, std::min(prev[j], cur[j - 1]) + 1);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

int EditDistance(const std::string& a, const std::string& b);

/// Errors and reference length, summed over a corpus.
struct ErrorCounts {
  long errors = 0;
  long reference_length = 0;
  ErrorCounts& operator+=(const ErrorCounts& o) {
    errors += o.errors;
    reference_length += o.reference_length;
    return *this;
  }
  /// Throws std::domain_error when the reference is empty.
  double Rate() const;
};

ErrorCounts CharErrors(const std::string& hyp, const std::string& ref);
ErrorCounts WordErrors(const std::string& hyp, const std::string& ref);

/// Character and word error rates of one pair; both throw
/// std::domain_error on an empty reference.
double Cer(const std::string& hyp, const std::string& ref);
double Wer(const std::string& hyp, const std::string& ref);

}  // namespace arsg

#endif  // ARSG_DATA_METRICS_H_
