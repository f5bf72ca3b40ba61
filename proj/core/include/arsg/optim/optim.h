// arsg/optim/optim.h

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

#ifndef ARSG_OPTIM_OPTIM_H_
#define ARSG_OPTIM_OPTIM_H_

#include <cstdint>
#include <vector>

#include "arsg/nn/graph.h"

namespace arsg {

/// Draws every norm-constrained weight and embedding i.i.d. from
/// N(0, variance); biases start at zero.
void InitParams(ParameterSet& params, double variance, uint64_t seed);

/// Global L2 norm over all gradients.
double GradientNorm(const ParameterSet& params);

/// Rescales all gradients by threshold / norm when the global norm exceeds
/// the threshold. Returns the norm before clipping.
double ClipGradients(ParameterSet& params, double threshold);
double ClipGradients(std::vector<Tensor>& grads, double threshold);

/// Rescales every fan-in vector whose L2 norm exceeds max_norm to exactly
/// max_norm: rows of kMatrix, columns of kFilter, the whole kWeightVector.
void ProjectFanIn(Parameter& p, double max_norm);
/// Row-wise projection of a plain matrix.
void ProjectRows(Tensor& w, double max_norm);
void ProjectAll(ParameterSet& params, double max_norm);
/// Largest fan-in norm over all constrained parameters.
double MaxFanInNorm(const ParameterSet& params);

struct AdaDeltaConfig {
  double rho = 0.95;
  double epsilon = 1e-8;
};

/// AdaDelta:
///   E[g^2]  <- rho E[g^2] + (1 - rho) g^2
///   dx      <- -sqrt(E[dx^2] + eps) / sqrt(E[g^2] + eps) * g
///   E[dx^2] <- rho E[dx^2] + (1 - rho) dx^2
///   x       <- x + dx
class AdaDelta {
 public:
  AdaDelta(const ParameterSet& params, AdaDeltaConfig config);

  /// Applies one update from each Parameter::grad.
  void Step(ParameterSet& params);
  /// Zeroes both accumulators.
  void Reset();

  const AdaDeltaConfig& config() const { return config_; }
  void set_epsilon(double eps) { config_.epsilon = eps; }
  void set_rho(double rho) { config_.rho = rho; }

  const std::vector<Tensor>& mean_sq_grad() const { return mean_sq_grad_; }
  const std::vector<Tensor>& mean_sq_delta() const { return mean_sq_delta_; }
  std::vector<Tensor>& mean_sq_grad() { return mean_sq_grad_; }
  std::vector<Tensor>& mean_sq_delta() { return mean_sq_delta_; }

 private:
  AdaDeltaConfig config_;
  std::vector<Tensor> mean_sq_grad_;
  std::vector<Tensor> mean_sq_delta_;
};

}  // namespace arsg

#endif  // ARSG_OPTIM_OPTIM_H_
