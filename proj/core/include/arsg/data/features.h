// arsg/data/features.h

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

#ifndef ARSG_DATA_FEATURES_H_
#define ARSG_DATA_FEATURES_H_

#include "arsg/nn/tensor.h"

namespace arsg {

/// Appends first and second order regression deltas (window 2, edge frames
/// repeated): [T x d] -> [T x 3d].
///   d_t = sum_{n=1..2} n (x_{t+n} - x_{t-n}) / (2 sum_{n=1..2} n^2)
Tensor AddDeltas(const Tensor& features);

/// Just the delta part of AddDeltas.
Tensor Deltas(const Tensor& features);

}  // namespace arsg

#endif  // ARSG_DATA_FEATURES_H_
