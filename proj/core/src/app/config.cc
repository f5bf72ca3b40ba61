// app/config.cc

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

#include "arsg/app/config.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace arsg {

using nlohmann::json;

namespace {

json PoolModeJson(PoolMode m) {
  return m == PoolMode::kSubsample ? "subsample" : "average";
}

PoolMode PoolModeFrom(const json& j) {
  const std::string s = j.get<std::string>();
  if (s == "subsample") return PoolMode::kSubsample;
  if (s == "average") return PoolMode::kAverage;
  throw ConfigError("model.pool_mode must be 'subsample' or 'average'");
}

json ToJson(const RunConfig& c) {
  json j;
  const ModelConfig& m = c.model;
  j["model"] = {{"input_dim", m.encoder.input_dim},
                {"encoder_hidden", m.encoder.hidden},
                {"pooling", m.encoder.pooling},
                {"pool_mode", PoolModeJson(m.encoder.pool_mode)},
                {"encoder_bias", m.encoder.gru_bias},
                {"decoder_hidden", m.decoder_hidden},
                {"embedding_dim", m.embedding_dim},
                {"score_dim", m.score_dim},
                {"conv_width", m.conv_width},
                {"conv_channels", m.conv_channels},
                {"decoder_bias", m.gru_bias}};
  const OptimConfig& o = c.optim;
  j["optim"] = {{"rho", o.adadelta.rho},
                {"epsilon", o.adadelta.epsilon},
                {"clip", o.clip},
                {"max_norm", o.max_norm},
                {"init_variance", o.init_variance},
                {"seed", o.seed},
                {"batch_size", o.batch_size}};
  json sched = nullptr;
  if (c.window.schedule)
    sched = {{"s_min", c.window.schedule->s_min},
             {"s_max", c.window.schedule->s_max},
             {"v_min", c.window.schedule->v_min},
             {"v_max", c.window.schedule->v_max}};
  j["window"] = {{"schedule", sched},
                 {"w_left", c.window.train.left},
                 {"w_right", c.window.train.right},
                 {"decode_w_left", c.window.decode.left},
                 {"decode_w_right", c.window.decode.right}};
  j["train"] = {{"epochs", c.train.epochs},
                {"anneal_epochs", c.train.anneal_epochs},
                {"anneal_epsilon", c.train.anneal_epsilon},
                {"shuffle", c.train.shuffle},
                {"schedule_epochs", c.train.schedule_epochs},
                {"dev_max_len", c.train.dev_max_len}};
  j["decode"] = {{"beam", c.decode.beam},
                 {"lm_weight", c.decode.lm_weight},
                 {"length_bonus", c.decode.length_bonus},
                 {"length_bonus_no_lm", c.decode.length_bonus_no_lm},
                 {"max_len", c.decode.max_len}};
  j["paths"] = {{"train", c.paths.train},
                {"dev", c.paths.dev},
                {"test", c.paths.test},
                {"workdir", c.paths.workdir},
                {"lm", c.paths.lm}};
  const SyntheticTaskSpec& s = c.data.spec;
  json confusable = json::array();
  for (const auto& [a, b] : s.confusable)
    confusable.push_back(std::string{a, b});
  j["data"] = {
      {"characters", s.characters},
      {"text_length", {s.text_length.min, s.text_length.max}},
      {"words", s.words},
      {"words_per_utterance",
       {s.words_per_utterance.min, s.words_per_utterance.max}},
      {"base_dim", s.base_dim},
      {"frames_per_char", {s.frames_per_char.min, s.frames_per_char.max}},
      {"noise_std", s.noise_std},
      {"leading_silence", {s.leading_silence.min, s.leading_silence.max}},
      {"trailing_silence", {s.trailing_silence.min, s.trailing_silence.max}},
      {"pattern_scale", s.pattern_scale},
      {"confusable", confusable},
      {"confusable_distance", s.confusable_distance},
      {"add_deltas", s.add_deltas},
      {"seed", s.seed},
      {"train_count", c.data.train_count},
      {"dev_count", c.data.dev_count},
      {"test_count", c.data.test_count}};
  return j;
}

IntRange RangeFrom(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2)
    throw ConfigError(std::string(what) + " must be [min, max]");
  return {j[0].get<int>(), j[1].get<int>()};
}

RunConfig FromJson(const json& j) {
  RunConfig c;
  const json& m = j.at("model");
  c.model.encoder.input_dim = m.at("input_dim").get<int>();
  c.model.encoder.hidden = m.at("encoder_hidden").get<std::vector<int>>();
  c.model.encoder.pooling = m.at("pooling").get<std::vector<int>>();
  c.model.encoder.pool_mode = PoolModeFrom(m.at("pool_mode"));
  c.model.encoder.gru_bias = m.at("encoder_bias").get<bool>();
  c.model.decoder_hidden = m.at("decoder_hidden").get<int>();
  c.model.embedding_dim = m.at("embedding_dim").get<int>();
  c.model.score_dim = m.at("score_dim").get<int>();
  c.model.conv_width = m.at("conv_width").get<int>();
  c.model.conv_channels = m.at("conv_channels").get<int>();
  c.model.gru_bias = m.at("decoder_bias").get<bool>();

  const json& o = j.at("optim");
  c.optim.adadelta.rho = o.at("rho").get<double>();
  c.optim.adadelta.epsilon = o.at("epsilon").get<double>();
  c.optim.clip = o.at("clip").get<double>();
  c.optim.max_norm = o.at("max_norm").get<double>();
  c.optim.init_variance = o.at("init_variance").get<double>();
  c.optim.seed = o.at("seed").get<uint64_t>();
  c.optim.batch_size = o.at("batch_size").get<int>();

  const json& w = j.at("window");
  if (!w.at("schedule").is_null()) {
    const json& s = w.at("schedule");
    SchedulePolicy p;
    p.s_min = s.at("s_min").get<double>();
    p.s_max = s.at("s_max").get<double>();
    p.v_min = s.at("v_min").get<double>();
    p.v_max = s.at("v_max").get<double>();
    c.window.schedule = p;
  }
  c.window.train = {w.at("w_left").get<int>(), w.at("w_right").get<int>()};
  c.window.decode = {w.at("decode_w_left").get<int>(),
                     w.at("decode_w_right").get<int>()};

  const json& t = j.at("train");
  c.train.epochs = t.at("epochs").get<int>();
  c.train.anneal_epochs = t.at("anneal_epochs").get<int>();
  c.train.anneal_epsilon = t.at("anneal_epsilon").get<double>();
  c.train.shuffle = t.at("shuffle").get<bool>();
  c.train.schedule_epochs = t.at("schedule_epochs").get<int>();
  c.train.dev_max_len = t.at("dev_max_len").get<int>();

  const json& d = j.at("decode");
  c.decode.beam = d.at("beam").get<int>();
  c.decode.lm_weight = d.at("lm_weight").get<double>();
  c.decode.length_bonus = d.at("length_bonus").get<double>();
  c.decode.length_bonus_no_lm = d.at("length_bonus_no_lm").get<double>();
  c.decode.max_len = d.at("max_len").get<int>();

  const json& p = j.at("paths");
  c.paths.train = p.at("train").get<std::string>();
  c.paths.dev = p.at("dev").get<std::string>();
  c.paths.test = p.at("test").get<std::string>();
  c.paths.workdir = p.at("workdir").get<std::string>();
  c.paths.lm = p.at("lm").get<std::string>();

  const json& g = j.at("data");
  SyntheticTaskSpec& s = c.data.spec;
  s.characters = g.at("characters").get<std::string>();
  s.text_length = RangeFrom(g.at("text_length"), "data.text_length");
  s.words = g.at("words").get<std::vector<std::string>>();
  s.words_per_utterance =
      RangeFrom(g.at("words_per_utterance"), "data.words_per_utterance");
  s.base_dim = g.at("base_dim").get<int>();
  s.frames_per_char =
      RangeFrom(g.at("frames_per_char"), "data.frames_per_char");
  s.noise_std = g.at("noise_std").get<double>();
  s.leading_silence =
      RangeFrom(g.at("leading_silence"), "data.leading_silence");
  s.trailing_silence =
      RangeFrom(g.at("trailing_silence"), "data.trailing_silence");
  s.pattern_scale = g.at("pattern_scale").get<double>();
  s.confusable.clear();
  for (const auto& pair : g.at("confusable")) {
    std::string ab = pair.get<std::string>();
    if (ab.size() != 2)
      throw ConfigError("data.confusable entries are two-character strings");
    s.confusable.emplace_back(ab[0], ab[1]);
  }
  s.confusable_distance = g.at("confusable_distance").get<double>();
  s.add_deltas = g.at("add_deltas").get<bool>();
  s.seed = g.at("seed").get<uint64_t>();
  c.data.train_count = g.at("train_count").get<int>();
  c.data.dev_count = g.at("dev_count").get<int>();
  c.data.test_count = g.at("test_count").get<int>();
  return c;
}

void Validate(const RunConfig& c) {
  const auto& e = c.model.encoder;
  if (e.hidden.empty() || e.hidden.size() != e.pooling.size())
    throw ConfigError(
        "model.encoder_hidden and model.pooling need equal, "
        "non-zero lengths");
  for (int h : e.hidden)
    if (h < 1) throw ConfigError("model.encoder_hidden entries must be >= 1");
  for (int p : e.pooling)
    if (p < 1) throw ConfigError("model.pooling entries must be >= 1");
  if (e.input_dim < 1 || c.model.decoder_hidden < 1)
    throw ConfigError("model dimensions must be >= 1");
  if (c.model.conv_width < 1 || c.model.conv_width % 2 == 0)
    throw ConfigError("model.conv_width must be a positive odd number");
  if (!(c.optim.adadelta.rho > 0 && c.optim.adadelta.rho < 1))
    throw ConfigError("optim.rho must lie in (0, 1)");
  if (!(c.optim.adadelta.epsilon > 0))
    throw ConfigError("optim.epsilon must be > 0");
  if (!(c.optim.clip > 0)) throw ConfigError("optim.clip must be > 0");
  if (!(c.optim.max_norm > 0)) throw ConfigError("optim.max_norm must be > 0");
  if (!(c.optim.init_variance > 0))
    throw ConfigError("optim.init_variance must be > 0");
  if (c.optim.batch_size < 1)
    throw ConfigError("optim.batch_size must be >= 1");
  if (c.window.schedule) {
    try {
      c.window.schedule->Validate();
    } catch (const std::invalid_argument& ex) {
      throw ConfigError(std::string("window.") + ex.what());
    }
  }
  if (c.window.train.left < 0 || c.window.train.right < 0 ||
      c.window.decode.left < 0 || c.window.decode.right < 0)
    throw ConfigError("window extents must be >= 0");
  if (c.train.epochs < 0 || c.train.anneal_epochs < 0 ||
      c.train.schedule_epochs < 0)
    throw ConfigError("train epoch counts must be >= 0");
  if (c.decode.beam < 1) throw ConfigError("decode.beam must be >= 1");
  if (c.decode.max_len < 0) throw ConfigError("decode.max_len must be >= 0");
  try {
    c.data.spec.Validate();
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(std::string("data: ") + ex.what());
  }
}

// Recursively copies `src` into `dst`, rejecting keys `dst` lacks.
void MergeInto(json& dst, const json& src, const std::string& where) {
  if (!src.is_object())
    throw ConfigError("config" + (where.empty() ? "" : " section " + where) +
                      " must be an object");
  for (auto it = src.begin(); it != src.end(); ++it) {
    const std::string key = where.empty() ? it.key() : where + "." + it.key();
    if (!dst.contains(it.key())) throw ConfigError("unknown config key " + key);
    json& slot = dst[it.key()];
    if (slot.is_object() && it.value().is_object() && key != "window.schedule")
      MergeInto(slot, it.value(), key);
    else
      slot = it.value();
  }
}

void ApplyOverride(json& j, const std::string& spec) {
  size_t eq = spec.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override '" + spec + "' is not key=value");
  const std::string path = spec.substr(0, eq), text = spec.substr(eq + 1);
  json* node = &j;
  std::string walked;
  size_t start = 0;
  while (true) {
    size_t dot = path.find('.', start);
    std::string part = path.substr(start, dot - start);
    walked += (walked.empty() ? "" : ".") + part;
    if (node->is_null() && walked.rfind("window.schedule", 0) == 0)
      *node = json::object(
          {{"s_min", 0}, {"s_max", 0}, {"v_min", 1}, {"v_max", 1}});
    if (!node->is_object() || !node->contains(part))
      throw ConfigError("unknown config key " + walked);
    node = &(*node)[part];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;  // bare strings
  *node = value;
}

}  // namespace

RunConfig DefaultConfig() {
  RunConfig c;
  return c;
}

RunConfig ParseConfig(const std::string& json_text,
                      const std::vector<std::string>& overrides) {
  json j = ToJson(DefaultConfig());
  if (!json_text.empty()) {
    json user = json::parse(json_text, nullptr, false);
    if (user.is_discarded()) throw ConfigError("config is not valid JSON");
    MergeInto(j, user, "");
  }
  for (const auto& o : overrides) ApplyOverride(j, o);
  RunConfig c;
  try {
    c = FromJson(j);
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("bad config value: ") + ex.what());
  }
  Validate(c);
  return c;
}

RunConfig LoadConfigFile(const std::string& path,
                         const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str(), overrides);
}

std::string ConfigToJson(const RunConfig& config) {
  return ToJson(config).dump(2);
}

DecodeConfig MakeDecodeConfig(const RunConfig& c, bool with_lm) {
  DecodeConfig d;
  d.beam = c.decode.beam;
  d.lm_weight = c.decode.lm_weight;
  d.length_bonus =
      with_lm ? c.decode.length_bonus : c.decode.length_bonus_no_lm;
  d.max_len = c.decode.max_len > 0 ? c.decode.max_len : 200;
  d.window = WindowPolicy::Median(c.window.decode);
  return d;
}

SchedulePolicy PooledSchedule(const SchedulePolicy& f, int total_pooling) {
  if (total_pooling < 1) throw std::invalid_argument("pooling must be >= 1");
  SchedulePolicy p = f;
  p.s_min /= total_pooling;
  p.s_max /= total_pooling;
  p.v_min /= total_pooling;
  p.v_max /= total_pooling;
  return p;
}

SchedulePolicy EstimateSchedule(const std::vector<SynthLayout>& layouts) {
  if (layouts.empty())
    throw std::invalid_argument("no layouts to estimate from");
  double v_min = std::numeric_limits<double>::infinity(), v_max = 0;
  for (const auto& l : layouts)
    for (int k : l.char_frames) {
      v_min = std::min<double>(v_min, k);
      v_max = std::max<double>(v_max, k);
    }
  if (v_max == 0) v_min = v_max = 1;
  double s_min = std::numeric_limits<double>::infinity();
  double s_max = -std::numeric_limits<double>::infinity();
  for (const auto& l : layouts) {
    int pos = l.leading;  // frames before the current character
    const int n = static_cast<int>(l.char_frames.size());
    for (int t = 1; t <= n + 1; ++t) {
      int first, last;
      if (t <= n) {
        first = pos + 1;
        last = pos + l.char_frames[t - 1];
        pos = last;
      } else {
        first = pos + 1;
        last = pos + std::max(l.trailing, 1);
        if (l.trailing == 0) first = last = pos;
      }
      s_min = std::min(s_min, first - t * v_min);
      s_max = std::max(s_max, last - t * v_max);
    }
  }
  SchedulePolicy p;
  p.s_min = std::floor(s_min);
  p.s_max = std::ceil(std::max(s_max, p.s_min));
  p.v_min = v_min;
  p.v_max = v_max;
  return p;
}

}  // namespace arsg
