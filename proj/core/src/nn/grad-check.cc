// nn/grad-check.cc

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

#include "arsg/nn/grad-check.h"

#include <algorithm>
#include <cmath>

namespace arsg {

namespace {

double Evaluate(const std::function<Var(Graph&)>& forward) {
  Graph g(false);
  return g.Scalar(forward(g));
}

}  // namespace

GradCheckResult GradCheck(const std::function<Var(Graph&)>& forward,
                          std::span<Parameter* const> params, double step) {
  std::vector<Tensor> saved;
  for (Parameter* p : params) {
    saved.push_back(p->grad);
    p->grad.SetZero();
  }
  {
    Graph g;
    g.Backward(forward(g));
  }

  GradCheckResult result;
  for (size_t pi = 0; pi < params.size(); ++pi) {
    Parameter& p = *params[pi];
    for (size_t i = 0; i < p.value.size(); ++i) {
      const Real orig = p.value[i];
      p.value[i] = orig + step;
      double plus = Evaluate(forward);
      p.value[i] = orig - step;
      double minus = Evaluate(forward);
      p.value[i] = orig;
      double numeric = (plus - minus) / (2 * step);
      double analytic = p.grad[i];
      double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-12});
      double err = std::abs(analytic - numeric) / denom;
      if (err > result.max_relative_error) {
        result.max_relative_error = err;
        result.worst_parameter = p.name;
        result.worst_element = i;
        result.analytic = analytic;
        result.numeric = numeric;
      }
    }
    p.grad = std::move(saved[pi]);
  }
  return result;
}

}  // namespace arsg
