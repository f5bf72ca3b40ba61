// benchmarks/bench-util.h

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

#ifndef ARSG_BENCHMARKS_BENCH_UTIL_H_
#define ARSG_BENCHMARKS_BENCH_UTIL_H_

#include <random>

#include "arsg/nn/graph.h"

namespace arsg::bench {

inline Tensor Gaussian(std::vector<int> shape, std::mt19937_64& rng,
                       double scale = 1.0) {
  Tensor t(std::move(shape));
  std::normal_distribution<double> n(0.0, scale);
  for (size_t i = 0; i < t.size(); ++i) t[i] = n(rng);
  return t;
}

inline void Randomize(ParameterSet& params, std::mt19937_64& rng,
                      double scale) {
  for (auto& p : params) p->value = Gaussian(p->value.shape(), rng, scale);
}

}  // namespace arsg::bench

#endif  // ARSG_BENCHMARKS_BENCH_UTIL_H_
