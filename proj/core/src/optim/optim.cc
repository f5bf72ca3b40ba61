// optim/optim.cc

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

#include "arsg/optim/optim.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace arsg {

void InitParams(ParameterSet& params, double variance, uint64_t seed) {
  if (!(variance > 0)) throw std::invalid_argument("init variance must be > 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(variance));
  for (auto& p : params) {
    if (p->kind == Parameter::Kind::kBias) {
      p->value.SetZero();
      continue;
    }
    for (Real& v : p->value.values()) v = static_cast<Real>(normal(rng));
  }
}

double GradientNorm(const ParameterSet& params) {
  double sq = 0;
  for (const auto& p : params)
    for (Real g : p->grad.values()) sq += static_cast<double>(g) * g;
  return std::sqrt(sq);
}

double ClipGradients(ParameterSet& params, double threshold) {
  if (!(threshold > 0))
    throw std::invalid_argument("clip threshold must be > 0");
  double norm = GradientNorm(params);
  if (norm > threshold) {
    Real scale = static_cast<Real>(threshold / norm);
    for (auto& p : params) p->grad *= scale;
  }
  return norm;
}

double ClipGradients(std::vector<Tensor>& grads, double threshold) {
  if (!(threshold > 0))
    throw std::invalid_argument("clip threshold must be > 0");
  double sq = 0;
  for (const Tensor& t : grads)
    for (Real g : t.values()) sq += static_cast<double>(g) * g;
  double norm = std::sqrt(sq);
  if (norm > threshold) {
    Real scale = static_cast<Real>(threshold / norm);
    for (Tensor& t : grads) t *= scale;
  }
  return norm;
}

namespace {

// Calls fn(stride, start, count) for each fan-in vector of p.
template <typename Fn>
void ForEachFanIn(const Parameter& p, Fn&& fn) {
  const Tensor& v = p.value;
  switch (p.kind) {
    case Parameter::Kind::kMatrix:
      for (int r = 0; r < v.rows(); ++r)
        fn(1, static_cast<size_t>(r) * v.cols(), v.cols());
      break;
    case Parameter::Kind::kFilter:
      for (int c = 0; c < v.cols(); ++c) fn(v.cols(), c, v.rows());
      break;
    case Parameter::Kind::kWeightVector:
      fn(1, 0, static_cast<int>(v.size()));
      break;
    default:
      break;
  }
}

}  // namespace

void ProjectFanIn(Parameter& p, double max_norm) {
  if (!(max_norm > 0)) throw std::invalid_argument("max norm must be > 0");
  Real* data = p.value.data();
  ForEachFanIn(p, [&](int stride, size_t start, int count) {
    double sq = 0;
    for (int i = 0; i < count; ++i) {
      double x = data[start + static_cast<size_t>(i) * stride];
      sq += x * x;
    }
    double norm = std::sqrt(sq);
    if (norm > max_norm) {
      Real scale = static_cast<Real>(max_norm / norm);
      for (int i = 0; i < count; ++i)
        data[start + static_cast<size_t>(i) * stride] *= scale;
    }
  });
}

void ProjectRows(Tensor& w, double max_norm) {
  Parameter p;
  p.kind = Parameter::Kind::kMatrix;
  p.value = std::move(w);
  ProjectFanIn(p, max_norm);
  w = std::move(p.value);
}

void ProjectAll(ParameterSet& params, double max_norm) {
  for (auto& p : params)
    if (p->IsNormConstrained()) ProjectFanIn(*p, max_norm);
}

double MaxFanInNorm(const ParameterSet& params) {
  double worst = 0;
  for (const auto& p : params) {
    if (!p->IsNormConstrained()) continue;
    const Real* data = p->value.data();
    ForEachFanIn(*p, [&](int stride, size_t start, int count) {
      double sq = 0;
      for (int i = 0; i < count; ++i) {
        double x = data[start + static_cast<size_t>(i) * stride];
        sq += x * x;
      }
      worst = std::max(worst, std::sqrt(sq));
    });
  }
  return worst;
}

AdaDelta::AdaDelta(const ParameterSet& params, AdaDeltaConfig config)
    : config_(config),
      mean_sq_grad_(params.MakeGradientBuffers()),
      mean_sq_delta_(params.MakeGradientBuffers()) {
  if (!(config.rho > 0 && config.rho < 1))
    throw std::invalid_argument("AdaDelta rho must lie in (0, 1)");
  if (!(config.epsilon > 0))
    throw std::invalid_argument("AdaDelta epsilon must be > 0");
}

void AdaDelta::Step(ParameterSet& params) {
  if (params.size() != mean_sq_grad_.size())
    throw DimensionError("AdaDelta state does not match parameter set");
  const double rho = config_.rho, eps = config_.epsilon;
  for (auto& p : params) {
    Tensor& eg = mean_sq_grad_[p->index];
    Tensor& ed = mean_sq_delta_[p->index];
    if (!eg.SameShape(p->value))
      throw DimensionError("AdaDelta state shape mismatch for " + p->name);
    Real* x = p->value.data();
    const Real* g = p->grad.data();
    Real* egd = eg.data();
    Real* edd = ed.data();
    for (size_t i = 0; i < p->value.size(); ++i) {
      double gi = g[i];
      double e2 = rho * egd[i] + (1 - rho) * gi * gi;
      double dx = -std::sqrt(edd[i] + eps) / std::sqrt(e2 + eps) * gi;
      egd[i] = static_cast<Real>(e2);
      edd[i] = static_cast<Real>(rho * edd[i] + (1 - rho) * dx * dx);
      x[i] += static_cast<Real>(dx);
    }
  }
}

void AdaDelta::Reset() {
  for (Tensor& t : mean_sq_grad_) t.SetZero();
  for (Tensor& t : mean_sq_delta_) t.SetZero();
}

}  // namespace arsg
