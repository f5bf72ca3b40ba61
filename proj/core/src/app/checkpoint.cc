// app/checkpoint.cc

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

#include "arsg/app/checkpoint.h"

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace arsg {

namespace {

constexpr char kMagic[8] = {'A', 'R', 'S', 'G', 'C', 'K', 'P', 'T'};

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}
  template <typename T>
  void Put(T v) {
    out_.write(reinterpret_cast<const char*>(&v), sizeof(T));
  }
  void PutString(const std::string& s) {
    Put<uint32_t>(static_cast<uint32_t>(s.size()));
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }
  void PutValues(const Tensor& t) {
    for (Real v : t.values()) Put<double>(v);
  }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  Reader(std::istream& in, std::string path)
      : in_(in), path_(std::move(path)) {}
  template <typename T>
  T Get() {
    T v;
    if (!in_.read(reinterpret_cast<char*>(&v), sizeof(T)))
      throw CheckpointError("truncated checkpoint " + path_);
    return v;
  }
  std::string GetString(size_t max_len = 1 << 20) {
    uint32_t n = Get<uint32_t>();
    if (n > max_len) throw CheckpointError("corrupt string in " + path_);
    std::string s(n, '\0');
    if (n && !in_.read(s.data(), n))
      throw CheckpointError("truncated checkpoint " + path_);
    return s;
  }
  void GetValues(Tensor& t) {
    for (Real& v : t.values()) v = static_cast<Real>(Get<double>());
  }

 private:
  std::istream& in_;
  std::string path_;
};

}  // namespace

Checkpoint MakeCheckpoint(const std::string& config_json, const Model& model,
                          const AdaDelta* optimizer,
                          const TrainingProgress& progress) {
  Checkpoint c;
  c.config_json = config_json;
  c.progress = progress;
  for (const auto& p : model.params()) c.params.emplace_back(p->name, p->value);
  if (optimizer) {
    c.has_optimizer = true;
    c.optimizer_config = optimizer->config();
    c.mean_sq_grad = optimizer->mean_sq_grad();
    c.mean_sq_delta = optimizer->mean_sq_delta();
  }
  return c;
}

void SaveCheckpoint(const std::string& path, const Checkpoint& c) {
  namespace fs = std::filesystem;
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw CheckpointError("cannot write " + tmp);
    Writer w(out);
    out.write(kMagic, sizeof(kMagic));
    w.Put<uint32_t>(Checkpoint::kVersion);
    w.Put<uint64_t>(c.config_json.size());
    out.write(c.config_json.data(),
              static_cast<std::streamsize>(c.config_json.size()));
    w.Put<int32_t>(c.progress.epoch);
    w.Put<double>(c.progress.best_cer);
    w.Put<int32_t>(c.progress.best_epoch);
    w.Put<uint8_t>(c.progress.annealing ? 1 : 0);
    w.Put<uint32_t>(static_cast<uint32_t>(c.params.size()));
    for (const auto& [name, t] : c.params) {
      w.PutString(name);
      w.Put<uint32_t>(static_cast<uint32_t>(t.rank()));
      for (int d : t.shape()) w.Put<uint32_t>(static_cast<uint32_t>(d));
      w.PutValues(t);
    }
    w.Put<uint8_t>(c.has_optimizer ? 1 : 0);
    if (c.has_optimizer) {
      w.Put<double>(c.optimizer_config.rho);
      w.Put<double>(c.optimizer_config.epsilon);
      for (size_t i = 0; i < c.params.size(); ++i) {
        w.PutValues(c.mean_sq_grad.at(i));
        w.PutValues(c.mean_sq_delta.at(i));
      }
    }
    if (!out) throw CheckpointError("error writing " + tmp);
  }
  fs::rename(tmp, path);
}

Checkpoint LoadCheckpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open checkpoint " + path);
  char magic[8];
  if (!in.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0)
    throw CheckpointError(path + " is not a checkpoint");
  Reader r(in, path);
  const uint32_t version = r.Get<uint32_t>();
  if (version != Checkpoint::kVersion)
    throw CheckpointError("unsupported checkpoint version " +
                          std::to_string(version));
  Checkpoint c;
  const uint64_t cfg_len = r.Get<uint64_t>();
  if (cfg_len > (1u << 26)) throw CheckpointError("corrupt checkpoint " + path);
  c.config_json.resize(cfg_len);
  if (cfg_len &&
      !in.read(c.config_json.data(), static_cast<std::streamsize>(cfg_len)))
    throw CheckpointError("truncated checkpoint " + path);
  c.progress.epoch = r.Get<int32_t>();
  c.progress.best_cer = r.Get<double>();
  c.progress.best_epoch = r.Get<int32_t>();
  c.progress.annealing = r.Get<uint8_t>() != 0;
  const uint32_t n = r.Get<uint32_t>();
  for (uint32_t i = 0; i < n; ++i) {
    std::string name = r.GetString();
    const uint32_t rank = r.Get<uint32_t>();
    if (rank > 2) throw CheckpointError("corrupt tensor rank in " + path);
    std::vector<int> shape;
    for (uint32_t k = 0; k < rank; ++k)
      shape.push_back(static_cast<int>(r.Get<uint32_t>()));
    Tensor t(shape);
    r.GetValues(t);
    c.params.emplace_back(std::move(name), std::move(t));
  }
  c.has_optimizer = r.Get<uint8_t>() != 0;
  if (c.has_optimizer) {
    c.optimizer_config.rho = r.Get<double>();
    c.optimizer_config.epsilon = r.Get<double>();
    for (const auto& [name, t] : c.params) {
      Tensor g(t.shape()), d(t.shape());
      r.GetValues(g);
      r.GetValues(d);
      c.mean_sq_grad.push_back(std::move(g));
      c.mean_sq_delta.push_back(std::move(d));
    }
  }
  return c;
}

void RestoreParameters(const Checkpoint& c, Model& model) {
  ParameterSet& params = model.params();
  if (c.params.size() != params.size())
    throw CheckpointError("checkpoint has " + std::to_string(c.params.size()) +
                          " parameters, model has " +
                          std::to_string(params.size()));
  for (size_t i = 0; i < params.size(); ++i) {
    Parameter& p = params[i];
    const auto& [name, t] = c.params[i];
    if (name != p.name || !t.SameShape(p.value))
      throw CheckpointError("checkpoint parameter " + name + " " +
                            t.ShapeString() + " does not match " + p.name +
                            " " + p.value.ShapeString());
    p.value = t;
  }
}

void RestoreOptimizer(const Checkpoint& c, AdaDelta& optimizer) {
  if (!c.has_optimizer)
    throw CheckpointError("checkpoint has no optimizer state");
  if (c.mean_sq_grad.size() != optimizer.mean_sq_grad().size())
    throw CheckpointError("optimizer state does not match the model");
  optimizer.mean_sq_grad() = c.mean_sq_grad;
  optimizer.mean_sq_delta() = c.mean_sq_delta;
  optimizer.set_rho(c.optimizer_config.rho);
  optimizer.set_epsilon(c.optimizer_config.epsilon);
}

}  // namespace arsg
