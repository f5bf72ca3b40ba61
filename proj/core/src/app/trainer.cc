// app/trainer.cc

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

#include "arsg/app/trainer.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include "arsg/data/metrics.h"
#include "json.hpp"

namespace arsg {

namespace fs = std::filesystem;

std::unique_ptr<Model> MakeModel(const RunConfig& config,
                                 const Alphabet& alphabet) {
  return std::make_unique<Model>(config.model, alphabet);
}

Trainer::Trainer(const RunConfig& config, Model& model,
                 std::vector<Utterance> train, std::vector<Utterance> dev,
                 TrainerOptions options)
    : config_(config),
      config_json_(ConfigToJson(config)),
      model_(model),
      train_(std::move(train)),
      dev_(std::move(dev)),
      options_(std::move(options)),
      optimizer_(model.params(), config.optim.adadelta) {
  if (train_.empty()) throw std::invalid_argument("empty training set");
  const int dim = model.encoder().config().input_dim;
  const int pooling = model.encoder().TotalPooling();
  for (const auto* set : {&train_, &dev_})
    for (const Utterance& u : *set) {
      if (u.frames.rank() != 2 || u.frames.cols() != dim)
        throw std::invalid_argument(
            "utterance " + u.id + " has features " + u.frames.ShapeString() +
            ", model expects " + std::to_string(dim) + " columns");
      if (u.frames.rows() < pooling)
        throw std::invalid_argument("utterance " + u.id +
                                    " is shorter than the total pooling");
    }
  if (!options_.workdir.empty()) fs::create_directories(options_.workdir);
}

void Trainer::InitializeParameters() {
  InitParams(model_.params(), config_.optim.init_variance, config_.optim.seed);
  ProjectAll(model_.params(), config_.optim.max_norm);
}

WindowPolicy Trainer::MedianPolicy() const {
  return WindowPolicy::Median(config_.window.train);
}

WindowPolicy Trainer::PolicyForEpoch(int epoch) const {
  if (epoch <= config_.train.schedule_epochs && !progress_.annealing) {
    if (!config_.window.schedule)
      throw ConfigError(
          "window.schedule is required for the scheduled first epoch");
    return WindowPolicy::Schedule(PooledSchedule(
        *config_.window.schedule, model_.encoder().TotalPooling()));
  }
  return MedianPolicy();
}

double Trainer::TrainStep(std::span<const Utterance* const> batch,
                          const WindowPolicy& policy) {
  ParameterSet& params = model_.params();
  params.ZeroGrad();
  double total = 0;
  for (const Utterance* u : batch) {
    Graph g;
    Var loss = model_.TeacherForcedNll(g, u->frames, u->labels, policy);
    total += g.Scalar(loss);
    g.Backward(loss);
  }
  const Real scale = static_cast<Real>(1.0 / batch.size());
  for (auto& p : params) p->grad *= scale;
  double norm = ClipGradients(params, config_.optim.clip);
  if (!std::isfinite(total) || !std::isfinite(norm)) {
    // Roll back to the last parameters known to be good.
    for (size_t i = 0; i < params.size(); ++i)
      if (i < last_good_params_.size()) params[i].value = last_good_params_[i];
    throw TrainingDiverged("non-finite loss or gradient at step " +
                           std::to_string(steps_ + 1));
  }
  optimizer_.Step(params);
  ProjectAll(params, config_.optim.max_norm);
  ++steps_;
  if (options_.on_step) options_.on_step(steps_);
  return total;
}

EpochStats Trainer::RunEpoch(int epoch, const WindowPolicy& policy,
                             const std::string& phase) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<size_t> order(train_.size());
  std::iota(order.begin(), order.end(), 0);
  if (config_.train.shuffle) {
    std::mt19937_64 rng(config_.optim.seed * 1000003ULL + epoch);
    std::shuffle(order.begin(), order.end(), rng);
  }
  last_good_params_.clear();
  for (const auto& p : model_.params()) last_good_params_.push_back(p->value);

  EpochStats stats;
  stats.epoch = epoch;
  stats.phase = phase;
  double total = 0;
  long labels = 0;
  const size_t bs = static_cast<size_t>(config_.optim.batch_size);
  std::vector<const Utterance*> batch;
  for (size_t i = 0; i < order.size(); i += bs) {
    batch.clear();
    for (size_t k = i; k < std::min(order.size(), i + bs); ++k) {
      batch.push_back(&train_[order[k]]);
      labels += static_cast<long>(train_[order[k]].labels.size());
    }
    total += TrainStep(batch, policy);
    ++stats.steps;
  }
  stats.train_nll = total / train_.size();
  stats.train_nll_per_label = total / std::max(1L, labels);
  if (!dev_.empty()) {
    stats.dev_nll = DevNll(MedianPolicy());
    stats.dev_cer = options_.skip_dev_cer ? 0 : DevCer(MedianPolicy());
  }
  stats.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return stats;
}

double Trainer::DevNll(const WindowPolicy& policy) const {
  if (dev_.empty()) return 0;
  double total = 0;
  for (const Utterance& u : dev_)
    total += model_.TeacherForcedNll(u.frames, u.labels, policy);
  return total / dev_.size();
}

double Trainer::DevCer(const WindowPolicy& policy) const {
  if (dev_.empty()) return 0;
  size_t longest = 0;
  for (const Utterance& u : dev_) longest = std::max(longest, u.labels.size());
  const int max_len = config_.train.dev_max_len > 0
                          ? config_.train.dev_max_len
                          : static_cast<int>(2 * longest + 10);
  ErrorCounts counts;
  for (const Utterance& u : dev_) {
    auto hyp = model_.GenerateGreedy(u.frames, max_len, policy);
    counts += CharErrors(model_.alphabet().Render(hyp), u.text);
  }
  return counts.reference_length > 0 ? counts.Rate() : 0;
}

void Trainer::StartAnneal() {
  if (best_params_.empty()) throw std::logic_error("no best model to anneal");
  ParameterSet& params = model_.params();
  for (size_t i = 0; i < params.size(); ++i) params[i].value = best_params_[i];
  optimizer_.Reset();
  optimizer_.set_epsilon(config_.train.anneal_epsilon);
  progress_.annealing = true;
}

void Trainer::SaveState(const std::string& name) const {
  if (options_.workdir.empty()) return;
  SaveCheckpoint((fs::path(options_.workdir) / name).string(),
                 MakeCheckpoint(config_json_, model_, &optimizer_, progress_));
}

void Trainer::Log(const EpochStats& s) const {
  if (options_.workdir.empty()) return;
  nlohmann::json j = {{"event", "epoch"},
                      {"epoch", s.epoch},
                      {"phase", s.phase},
                      {"train_nll", s.train_nll},
                      {"train_nll_per_label", s.train_nll_per_label},
                      {"dev_nll", s.dev_nll},
                      {"dev_cer", s.dev_cer},
                      {"steps", s.steps},
                      {"seconds", s.seconds},
                      {"best", s.best}};
  std::ofstream out(fs::path(options_.workdir) / "metrics.jsonl",
                    std::ios::app);
  out << j.dump() << '\n';
}

bool Trainer::Resume() {
  if (options_.workdir.empty()) return false;
  const fs::path last = fs::path(options_.workdir) / "last.ckpt";
  if (!fs::exists(last)) return false;
  Checkpoint c = LoadCheckpoint(last.string());
  RestoreParameters(c, model_);
  RestoreOptimizer(c, optimizer_);
  progress_ = c.progress;
  const fs::path best = fs::path(options_.workdir) / "best.ckpt";
  best_params_.clear();
  if (fs::exists(best)) {
    Checkpoint b = LoadCheckpoint(best.string());
    for (auto& [name, t] : b.params) best_params_.push_back(std::move(t));
  }
  return true;
}

std::vector<EpochStats> Trainer::Run() {
  std::vector<EpochStats> all;
  const int main_epochs = config_.train.epochs;
  const int total = main_epochs + config_.train.anneal_epochs;
  while (progress_.epoch < total) {
    const int epoch = progress_.epoch + 1;
    if (epoch > main_epochs && !progress_.annealing) StartAnneal();
    std::string phase = progress_.annealing                      ? "anneal"
                        : epoch <= config_.train.schedule_epochs ? "schedule"
                                                                 : "median";
    EpochStats s = RunEpoch(epoch, PolicyForEpoch(epoch), phase);
    progress_.epoch = epoch;
    const double score = dev_.empty()            ? s.train_nll
                         : options_.skip_dev_cer ? s.dev_nll
                                                 : s.dev_cer;
    if (best_params_.empty() || score < progress_.best_cer) {
      progress_.best_cer = score;
      progress_.best_epoch = epoch;
      best_params_.clear();
      for (const auto& p : model_.params()) best_params_.push_back(p->value);
      s.best = true;
      SaveState("best.ckpt");
    }
    SaveState("last.ckpt");
    Log(s);
    if (options_.on_epoch) options_.on_epoch(s);
    all.push_back(s);
  }
  return all;
}

}  // namespace arsg
