// arsg/app/trainer.h

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

// Training loop: scheduled window for the first epoch(s), median window
// afterwards, dev evaluation, best-model tracking and an optional annealing
// phase with a smaller AdaDelta epsilon.

#ifndef ARSG_APP_TRAINER_H_
#define ARSG_APP_TRAINER_H_

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arsg/app/checkpoint.h"
#include "arsg/app/config.h"
#include "arsg/data/dataset-io.h"

namespace arsg {

/// Raised when the loss or gradient stops being finite. The model has been
/// rolled back to the last good state when this is thrown.
class TrainingDiverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EpochStats {
  int epoch = 0;
  std::string phase;     // "schedule", "median" or "anneal"
  double train_nll = 0;  // mean per utterance
  double train_nll_per_label = 0;
  double dev_nll = 0;  // mean per utterance, median window
  double dev_cer = 0;  // greedy decoding
  double seconds = 0;
  long steps = 0;
  bool best = false;
};

struct TrainerOptions {
  /// Where checkpoints and metrics go; empty keeps everything in memory.
  std::string workdir;
  std::function<void(const EpochStats&)> on_epoch;
  /// Called after every optimizer step with the running step count.
  std::function<void(long)> on_step;
  /// Skip dev CER decoding (dev NLL is still computed).
  bool skip_dev_cer = false;
};

class Trainer {
 public:
  Trainer(const RunConfig& config, Model& model, std::vector<Utterance> train,
          std::vector<Utterance> dev, TrainerOptions options = {});

  /// Random initialization followed by the norm projection.
  void InitializeParameters();
  /// Loads workdir/last.ckpt. Returns false when there is none.
  bool Resume();

  /// Trains until the configured epochs (and anneal epochs) are done.
  std::vector<EpochStats> Run();
  /// One epoch with the given window policy.
  EpochStats RunEpoch(int epoch, const WindowPolicy& policy,
                      const std::string& phase);
  /// Switches to annealing: best parameters, zeroed accumulators, small
  /// epsilon. Throws when no best model exists yet.
  void StartAnneal();

  /// One optimizer step over a batch. Returns the summed NLL.
  double TrainStep(std::span<const Utterance* const> batch,
                   const WindowPolicy& policy);

  double DevNll(const WindowPolicy& policy) const;
  double DevCer(const WindowPolicy& policy) const;

  /// Window policy of a 1-based epoch.
  WindowPolicy PolicyForEpoch(int epoch) const;
  WindowPolicy MedianPolicy() const;

  const TrainingProgress& progress() const { return progress_; }
  const AdaDelta& optimizer() const { return optimizer_; }
  long steps() const { return steps_; }

 private:
  void SaveState(const std::string& name) const;
  void Log(const EpochStats& stats) const;

  RunConfig config_;
  std::string config_json_;
  Model& model_;
  std::vector<Utterance> train_;
  std::vector<Utterance> dev_;
  TrainerOptions options_;
  AdaDelta optimizer_;
  TrainingProgress progress_;
  std::vector<Tensor> best_params_;
  std::vector<Tensor> last_good_params_;
  long steps_ = 0;
};

/// Builds a model whose input dimension and alphabet match the config.
std::unique_ptr<Model> MakeModel(
    const RunConfig& config, const Alphabet& alphabet = Alphabet::Standard());

}  // namespace arsg

#endif  // ARSG_APP_TRAINER_H_
