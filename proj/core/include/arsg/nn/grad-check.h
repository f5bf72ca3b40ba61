// arsg/nn/grad-check.h

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

#ifndef ARSG_NN_GRAD_CHECK_H_
#define ARSG_NN_GRAD_CHECK_H_

#include <functional>
#include <span>
#include <string>

#include "arsg/nn/graph.h"

namespace arsg {

struct GradCheckResult {
  double max_relative_error = 0;
  std::string worst_parameter;
  size_t worst_element = 0;
  double analytic = 0;
  double numeric = 0;
};

/// Compares backprop gradients of `forward` with central differences.
/// `forward` must build its loss on the given graph deterministically.
/// The relative error of an element is
///   |analytic - numeric| / max(|analytic|, |numeric|, 1e-12).
GradCheckResult GradCheck(const std::function<Var(Graph&)>& forward,
                          std::span<Parameter* const> params,
                          double step = 1e-5);

}  // namespace arsg

#endif  // ARSG_NN_GRAD_CHECK_H_
