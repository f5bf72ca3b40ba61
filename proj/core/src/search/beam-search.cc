// search/beam-search.cc

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

#include "arsg/search/beam-search.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace arsg {

double JointCost(const Hypothesis& hyp, const DecodeConfig& config,
                 bool has_lm) {
  double cost = hyp.ed_cost - config.length_bonus * hyp.length;
  if (has_lm && config.lm_weight != 0) cost += config.lm_weight * hyp.lm_cost;
  return cost;
}

BeamSearch::BeamSearch(const Model& model, const PrefixScorer* lm,
                       DecodeConfig config)
    : model_(model), lm_(lm), config_(std::move(config)) {
  if (config_.beam < 1) throw std::invalid_argument("beam size must be >= 1");
  if (config_.max_len < 1) throw std::invalid_argument("max_len must be >= 1");
  // With beta = 0 the LM neither scores nor prunes.
  if (config_.lm_weight == 0) lm_ = nullptr;
  if (lm_ && !(lm_->alphabet() == model.alphabet()))
    throw std::invalid_argument("LM and model alphabets differ");
}

Hypothesis BeamSearch::Initial(const EncodedUtterance& enc) const {
  Hypothesis h;
  h.state =
      std::make_shared<DecoderState>(model_.InitialDecoderState(enc.length()));
  if (lm_) h.lm_state = lm_->Start();
  return h;
}

std::vector<Hypothesis> BeamSearch::Expand(const EncodedUtterance& enc,
                                           const Hypothesis& hyp) const {
  if (hyp.terminated) throw std::logic_error("expanding a finished hypothesis");
  const int eos = model_.alphabet().eos();
  const int t = static_cast<int>(hyp.labels.size()) + 1;
  const int y_prev = hyp.labels.empty() ? eos : hyp.labels.back();
  IndexRange window = config_.window.Select(t, hyp.state->alpha);
  Model::StepOutput step = model_.Advance(enc, *hyp.state, y_prev, window);
  auto shared = std::make_shared<const DecoderState>(std::move(step.state));

  std::vector<Hypothesis> out;
  out.reserve(model_.alphabet().size());
  for (int y = 0; y < model_.alphabet().size(); ++y) {
    Hypothesis c;
    if (lm_) {
      auto [next, inc] = lm_->Step(hyp.lm_state, y);
      if (inc == kInfWeight) continue;
      c.lm_state = std::move(next);
      c.lm_cost = hyp.lm_cost + inc;
    }
    c.labels = hyp.labels;
    c.labels.push_back(y);
    c.state = shared;
    c.ed_cost = hyp.ed_cost - step.log_probs[y];
    c.terminated = y == eos;
    c.length = hyp.length + ((y != eos || config_.count_eos_in_length) ? 1 : 0);
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

DecodeResult ToResult(const Hypothesis& h, double cost, int steps) {
  DecodeResult r;
  r.labels = h.labels;
  r.ed_cost = h.ed_cost;
  r.lm_cost = h.lm_cost;
  r.length = h.length;
  r.cost = cost;
  r.terminated = h.terminated;
  r.steps = steps;
  return r;
}

}  // namespace

DecodeResult BeamSearch::Decode(const EncodedUtterance& enc) const {
  const bool has_lm = lm_ != nullptr;
  auto cost = [&](const Hypothesis& h) {
    return JointCost(h, config_, has_lm);
  };
  // Stable ordering: cost, then label sequence, so results do not depend on
  // expansion order.
  auto cheaper = [&](const std::pair<double, Hypothesis*>& a,
                     const std::pair<double, Hypothesis*>& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second->labels < b.second->labels;
  };

  std::vector<Hypothesis> live = {Initial(enc)};
  std::vector<std::pair<double, Hypothesis>> finished;
  int steps = 0;
  for (int t = 1; t <= config_.max_len && !live.empty(); ++t) {
    steps = t;
    std::vector<Hypothesis> cands;
    for (const Hypothesis& h : live) {
      auto ex = Expand(enc, h);
      for (auto& c : ex) cands.push_back(std::move(c));
    }
    // The k cheapest candidates survive; finished ones among them leave the
    // beam.
    std::vector<std::pair<double, Hypothesis*>> ranked;
    ranked.reserve(cands.size());
    for (auto& c : cands) ranked.emplace_back(cost(c), &c);
    std::sort(ranked.begin(), ranked.end(), cheaper);
    if (static_cast<int>(ranked.size()) > config_.beam)
      ranked.resize(config_.beam);
    std::vector<Hypothesis> next;
    for (auto& [c, h] : ranked) {
      if (h->terminated)
        finished.emplace_back(c, std::move(*h));
      else
        next.push_back(std::move(*h));
    }
    live = std::move(next);

    if (!live.empty()) {
      double best_live = cost(live.front());
      int cheaper_done = 0;
      for (const auto& [c, h] : finished)
        if (c < best_live) ++cheaper_done;
      if (cheaper_done >= config_.beam) break;
    }
  }

  if (!finished.empty()) {
    auto best = std::min_element(finished.begin(), finished.end(),
                                 [](const auto& a, const auto& b) {
                                   if (a.first != b.first)
                                     return a.first < b.first;
                                   return a.second.labels < b.second.labels;
                                 });
    return ToResult(best->second, best->first, steps);
  }
  if (live.empty())
    throw DecodeError("beam emptied before any hypothesis ended");
  return ToResult(live.front(), cost(live.front()), steps);
}

DecodeResult BeamSearch::Decode(const Tensor& frames) const {
  return Decode(model_.EncodeForSearch(frames));
}

DecodeResult BeamSearch::Rescore(const EncodedUtterance& enc,
                                 const std::vector<int>& labels) const {
  Hypothesis h = Initial(enc);
  const int eos = model_.alphabet().eos();
  for (int y : labels) {
    if (h.terminated) throw std::invalid_argument("labels continue after EOS");
    const int t = static_cast<int>(h.labels.size()) + 1;
    const int y_prev = h.labels.empty() ? eos : h.labels.back();
    Model::StepOutput step = model_.Advance(
        enc, *h.state, y_prev, config_.window.Select(t, h.state->alpha));
    h.ed_cost -= step.log_probs[y];
    // Once the sequence has left the LM its cost stays infinite.
    if (lm_ && h.lm_cost < kInfWeight) {
      auto [next, inc] = lm_->Step(h.lm_state, y);
      h.lm_cost += inc;
      h.lm_state = std::move(next);
    }
    h.state = std::make_shared<const DecoderState>(std::move(step.state));
    h.labels.push_back(y);
    h.terminated = y == eos;
    if (y != eos || config_.count_eos_in_length) ++h.length;
  }
  return ToResult(h, JointCost(h, config_, lm_ != nullptr),
                  static_cast<int>(labels.size()));
}

}  // namespace arsg
