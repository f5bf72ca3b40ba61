// data/metrics.cc

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

#include "arsg/data/metrics.h"

#include <stdexcept>

#include "arsg/data/text.h"

namespace arsg {

int EditDistance(const std::string& a, const std::string& b) {
  return EditDistance<char>(std::span<const char>(a.data(), a.size()),
                            std::span<const char>(b.data(), b.size()));
}

double ErrorCounts::Rate() const {
  if (reference_length <= 0)
    throw std::domain_error("error rate undefined for an empty reference");
  return static_cast<double>(errors) / reference_length;
}

ErrorCounts CharErrors(const std::string& hyp, const std::string& ref) {
  return {EditDistance(hyp, ref), static_cast<long>(ref.size())};
}

ErrorCounts WordErrors(const std::string& hyp, const std::string& ref) {
  auto h = SplitWords(hyp), r = SplitWords(ref);
  return {EditDistance<std::string>(h, r), static_cast<long>(r.size())};
}

double Cer(const std::string& hyp, const std::string& ref) {
  return CharErrors(hyp, ref).Rate();
}

double Wer(const std::string& hyp, const std::string& ref) {
  return WordErrors(hyp, ref).Rate();
}

}  // namespace arsg
