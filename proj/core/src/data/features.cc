// data/features.cc

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

#include "arsg/data/features.h"

#include <algorithm>

namespace arsg {

Tensor Deltas(const Tensor& x) {
  if (x.rank() != 2 || x.rows() < 1)
    throw DimensionError("deltas: expected a non-empty [T x d] matrix, got " +
                         x.ShapeString());
  const int T = x.rows(), d = x.cols();
  const Real denom = 2 * (1 * 1 + 2 * 2);
  Tensor out({T, d});
  for (int t = 0; t < T; ++t) {
    for (int n = 1; n <= 2; ++n) {
      const int ahead = std::min(t + n, T - 1), behind = std::max(t - n, 0);
      for (int j = 0; j < d; ++j)
        out.at(t, j) += n * (x.at(ahead, j) - x.at(behind, j));
    }
    for (int j = 0; j < d; ++j) out.at(t, j) /= denom;
  }
  return out;
}

Tensor AddDeltas(const Tensor& x) {
  Tensor d1 = Deltas(x);
  Tensor d2 = Deltas(d1);
  const int T = x.rows(), d = x.cols();
  Tensor out({T, 3 * d});
  for (int t = 0; t < T; ++t) {
    auto row = out.row(t);
    std::copy(x.row(t).begin(), x.row(t).end(), row.begin());
    std::copy(d1.row(t).begin(), d1.row(t).end(), row.begin() + d);
    std::copy(d2.row(t).begin(), d2.row(t).end(), row.begin() + 2 * d);
  }
  return out;
}

}  // namespace arsg
