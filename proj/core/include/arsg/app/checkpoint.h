// arsg/app/checkpoint.h

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

#ifndef ARSG_APP_CHECKPOINT_H_
#define ARSG_APP_CHECKPOINT_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arsg/decoder/model.h"
#include "arsg/optim/optim.h"

namespace arsg {

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TrainingProgress {
  int epoch = 0;  // completed epochs
  double best_cer = 1e300;
  int best_epoch = 0;
  bool annealing = false;
};

/// Binary layout (little-endian):
///   "ARSGCKPT" magic, uint32 version,
///   uint64 length + config JSON bytes,
///   int32 epoch, float64 best CER, int32 best epoch, uint8 annealing,
///   uint32 parameter count, then per parameter:
///     uint32 name length + name, uint32 rank, uint32 dims..., float64 values,
///   uint8 has optimizer; if set: float64 rho, float64 epsilon and, per
///   parameter in the same order, the E[g^2] then E[dx^2] values.
struct Checkpoint {
  static constexpr uint32_t kVersion = 1;

  std::string config_json;
  TrainingProgress progress;
  std::vector<std::pair<std::string, Tensor>> params;
  bool has_optimizer = false;
  AdaDeltaConfig optimizer_config;
  std::vector<Tensor> mean_sq_grad;
  std::vector<Tensor> mean_sq_delta;
};

Checkpoint MakeCheckpoint(const std::string& config_json, const Model& model,
                          const AdaDelta* optimizer,
                          const TrainingProgress& progress);
void SaveCheckpoint(const std::string& path, const Checkpoint& ckpt);
Checkpoint LoadCheckpoint(const std::string& path);

/// Copies parameter values into the model; names and shapes must match.
void RestoreParameters(const Checkpoint& ckpt, Model& model);
/// Copies accumulators and hyperparameters; throws when absent.
void RestoreOptimizer(const Checkpoint& ckpt, AdaDelta& optimizer);

}  // namespace arsg

#endif  // ARSG_APP_CHECKPOINT_H_
