// arsg/app/config.h

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

// Run configuration shared by the command-line tool. Stored as JSON; every
// field can be overridden with "section.key=value".

#ifndef ARSG_APP_CONFIG_H_
#define ARSG_APP_CONFIG_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arsg/attention/attention.h"
#include "arsg/data/synth.h"
#include "arsg/decoder/model.h"
#include "arsg/optim/optim.h"
#include "arsg/search/beam-search.h"

namespace arsg {

/// A configuration the user got wrong (bad JSON, unknown key, bad value).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct OptimConfig {
  AdaDeltaConfig adadelta;
  double clip = 50;
  double max_norm = 1;
  double init_variance = 0.1;
  uint64_t seed = 1;
  int batch_size = 1;
};

struct WindowPhases {
  /// In input frames; divided by the encoder's total pooling at use.
  std::optional<SchedulePolicy> schedule;
  WindowConfig train = {100, 100};
  WindowConfig decode = {10, 100};
};

struct TrainConfig {
  int epochs = 10;
  int anneal_epochs = 0;
  double anneal_epsilon = 1e-10;
  bool shuffle = true;
  /// Epochs that use the scheduled window before switching to the median.
  int schedule_epochs = 1;
  int dev_max_len = 0;  // 0: twice the longest dev transcript
};

struct DecodeSettings {
  int beam = 200;
  double lm_weight = 0.5;
  double length_bonus = 1.0;
  double length_bonus_no_lm = 0.1;
  int max_len = 0;  // 0: derived from the encoded length
};

struct PathConfig {
  std::string train;
  std::string dev;
  std::string test;
  std::string workdir = "run";
  std::string lm;
};

struct DatagenConfig {
  SyntheticTaskSpec spec;
  int train_count = 2000;
  int dev_count = 200;
  int test_count = 200;
};

struct RunConfig {
  ModelConfig model;
  OptimConfig optim;
  WindowPhases window;
  TrainConfig train;
  DecodeSettings decode;
  PathConfig paths;
  DatagenConfig data;
};

/// Full configuration; defaults are the large-scale setup.
RunConfig DefaultConfig();

/// Parses JSON text over the defaults, then applies "a.b=value" overrides.
/// Unknown keys are errors.
RunConfig ParseConfig(const std::string& json_text,
                      const std::vector<std::string>& overrides = {});
RunConfig LoadConfigFile(const std::string& path,
                         const std::vector<std::string>& overrides = {});
std::string ConfigToJson(const RunConfig& config);

/// Decode configuration for the given LM setting.
DecodeConfig MakeDecodeConfig(const RunConfig& config, bool with_lm);

/// Schedule converted from input frames to annotation positions.
SchedulePolicy PooledSchedule(const SchedulePolicy& frames, int total_pooling);

/// Schedule bounds that contain every character of the given layouts, in
/// input frames: char t (1-based) lies within
/// [s_min + t v_min, s_max + t v_max], and so does the end-of-sequence
/// position in the trailing silence.
SchedulePolicy EstimateSchedule(const std::vector<SynthLayout>& layouts);

}  // namespace arsg

#endif  // ARSG_APP_CONFIG_H_
