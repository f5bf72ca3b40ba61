// tests/common/op-cases.h

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

// One small loss per differentiable graph op, shared by the unit tests and
// the acceptance run.

#ifndef ARSG_TESTS_COMMON_OP_CASES_H_
#define ARSG_TESTS_COMMON_OP_CASES_H_

#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "arsg/nn/graph.h"
#include "test-util.h"

namespace arsg::testing {

struct OpCase {
  const char* name;
  // Builds parameters; returns the loss builder.
  std::function<std::function<Var(Graph&)>(ParameterSet&, std::mt19937_64&)>
      make;
};

// Scalar projection of any value against a fixed random tensor.
inline Var Project(Graph& g, Var v, const Tensor& r) {
  return g.Dot(v, g.ConstantRef(r));
}

inline Parameter& RandomParam(ParameterSet& ps, const std::string& name,
                              std::vector<int> shape, std::mt19937_64& rng) {
  Parameter& p = ps.Add(name, shape, Parameter::Kind::kMatrix);
  p.value = RandomTensor(shape, rng, 0.8);
  return p;
}

inline std::vector<OpCase> AllOps() {
  using Fn = std::function<Var(Graph&)>;
  auto proj = [](std::mt19937_64& rng, std::vector<int> shape) {
    return std::make_shared<Tensor>(RandomTensor(shape, rng));
  };
  return {
      {"MatVec",
       [=](ParameterSet& ps, std::mt19937_64& rng) -> Fn {
         Parameter& w = RandomParam(ps, "w", {4, 3}, rng);
         Parameter& x = RandomParam(ps, "x", {3}, rng);
         auto r = proj(rng, {4});
         return [&, r](Graph& g) {
           return Project(g, g.MatVec(g.Param(w), g.Param(x)), *r);
         };
       }},
      {"Affine",
       [=](ParameterSet& ps, std::mt19937_64& rng) -> Fn {
         Parameter& w = RandomParam(ps, "w", {3, 5}, rng);
         Parameter& x = RandomParam(ps, "x", {5}, rng);
         Parameter& b = RandomParam(ps, "b", {3}, rng);
         auto r = proj(rng, {3});
         return [&, r](Graph& g) {
           return Project(g, g.Affine(g.Param(w), g.Param(x), g.Param(b)), *r);
         };
       }},
      {"MatMulT",
       [=](ParameterSet& ps, std::mt19937_64& rng) -> Fn {
         Parameter& m = RandomParam(ps, "m", {4, 3}, rng);
         Parameter& w = RandomParam(ps, "w", {2, 3}, rng);
         auto r = proj(rng, {4, 2});
         return [&, r](Graph& g) {
           return Project(g, g.MatMulT(g.Param(m), g.Param(w)), *r);
         };
       }},
      {"Dot",
       [=](ParameterSet& ps, std::mt19937_64& rng) -> Fn {
         Parameter& a = RandomParam(ps, "a", {5}, rng);
         Parameter& b = RandomParam(ps, "b", {5}, rng);
         return [&](Graph& g) { return g.Dot(g.Param(a), g.Param(b)); };
       }},
      {"AddSubMulScale",
       [=](ParameterSet& ps, std::mt19937_64& rng) -> Fn {
         Parameter& a = RandomParam(ps, "a", {4}, rng);
         Parameter& b = RandomParam(ps, "b", {4}, rng);
         auto r = proj(rng, {4});
         return [&, r](Graph& g) {
           Var x = g.Param(a), y = g.Param(b);
           Var s = g.Add(g.Mul(x, y), g.Scale(g.Sub(x, y), -1.7));
           return Project(g, s, *r);
         };
       }},
      {"TanhSigmoid",
       [=](ParameterSet& ps, std::mt19937_64& rng) -> Fn {
         Parameter& a = RandomParam(ps, "a", {6}, rng);
         auto r = proj(rng, {6});
         return [&, r](Graph& g) {
           Var x = g.Param(a);
           return Project(g, g.Add(g.Tanh(x), g.Sigmoid(x)), *r);
         };
       }},
      {"GruBlend",
       [=](ParameterSet& ps, std::mt19937_64& rng) -> Fn {
         Parameter& z = RandomParam(ps, "z", {4}, rng);
         Parameter& h = RandomParam(ps, "h", {4}, rng);
         Parameter& n = RandomParam(ps, "n", {4}, rng);
         auto r = proj(rng, {4});
         return [&, r](Graph& g) {
           return Project(g, g.GruBlend(g.Param(z), g.Param(h), g.Param(n)),
                          *r);
         };
       }},
      {"AddNSumAll",
       [=](ParameterSet& ps, std::mt19937_64& rng) -> Fn {
         Parameter& a = RandomParam(ps, "a", {3}, rng);
         Parameter& b = RandomParam(ps, "b", {3}, rng);
         return [&](Graph& g) {
           Var xs[3] = {g.Param(a), g.Param(b), g.Tanh(g.Param(a))};
           return g.SumAll(g.Mul(g.AddN(xs), g.Param(b)));
         };
       }},
      {"ConcatRowStack",
       [=](ParameterSet& ps, std::mt19937_64& rng) -> Fn {
         Parameter& m = RandomParam(ps, "m", {3, 2}, rng);
         Parameter& v = RandomParam(ps, "v", {3}, rng);
         auto r = proj(rng, {3, 5});
         return [&, r](Graph& g) {
           std::vector<Var> rows;
           for (int i = 0; i < 3; ++i) {
             Var parts[2] = {g.Row(g.Param(m), 2 - i), g.Param(v)};
             rows.push_back(g.Tanh(g.Concat(parts)));
           }
           return Project(g, g.Stack(rows), *r);
         };
       }},
      {"SoftmaxCrossEntropy",
       [=](ParameterSet& ps, std::mt19937_64& rng) -> Fn {
         Parameter& a = RandomParam(ps, "a", {7}, rng);
         auto r = proj(rng, {7});
         return [&, r](Graph& g) {
           Var x = g.Param(a);
           Var parts[2] = {g.Scale(g.Pick(g.LogSoftmax(x), 3), -1),
                           Project(g, g.Softmax(x), *r)};
           return g.AddN(parts);
         };
       }},
      {"Conv1dWindow",
       [=](ParameterSet& ps, std::mt19937_64& rng) -> Fn {
         Parameter& q = RandomParam(ps, "q", {5, 2}, rng);
         Parameter& s = RandomParam(ps, "s", {4}, rng);
         auto r = proj(rng, {7, 2});
         return [&, r](Graph& g) {
           // Signal occupies positions [3, 7); outputs [1, 8).
           return Project(g, g.Conv1dWindow(g.Param(q), g.Param(s), 3, 1, 8),
                          *r);
         };
       }},
      {"AttentionEnergies",
       [=](ParameterSet& ps, std::mt19937_64& rng) -> Fn {
         Parameter& query = RandomParam(ps, "query", {4}, rng);
         Parameter& pr = RandomParam(ps, "proj", {6, 4}, rng);
         Parameter& f = RandomParam(ps, "feats", {3, 2}, rng);
         Parameter& u = RandomParam(ps, "u", {4, 2}, rng);
         Parameter& w = RandomParam(ps, "w", {4}, rng);
         auto r = proj(rng, {3});
         return [&, r](Graph& g) {
           return Project(
               g,
               g.AttentionEnergies(g.Param(query), g.Param(pr), g.Param(f),
                                   g.Param(u), g.Param(w), 2),
               *r);
         };
       }},
      {"WeightedRowSum",
       [=](ParameterSet& ps, std::mt19937_64& rng) -> Fn {
         Parameter& a = RandomParam(ps, "alpha", {3}, rng);
         Parameter& m = RandomParam(ps, "m", {5, 4}, rng);
         auto r = proj(rng, {4});
         return [&, r](Graph& g) {
           return Project(g, g.WeightedRowSum(g.Param(a), g.Param(m), 1), *r);
         };
       }},
  };
}

}  // namespace arsg::testing

#endif  // ARSG_TESTS_COMMON_OP_CASES_H_
