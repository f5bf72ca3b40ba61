// data/dataset-io.cc

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

#include "arsg/data/dataset-io.h"

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "arsg/data/text.h"

namespace arsg {

namespace fs = std::filesystem;

namespace {

static_assert(std::endian::native == std::endian::little,
              "feature I/O assumes a little-endian host");

void PutU32(std::ostream& out, uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), 4);
}

uint32_t GetU32(std::istream& in, const std::string& path) {
  uint32_t v = 0;
  if (!in.read(reinterpret_cast<char*>(&v), 4))
    throw std::runtime_error("truncated feature header in " + path);
  return v;
}

}  // namespace

void WriteFeatureFile(const std::string& path, const Tensor& frames) {
  if (frames.rank() != 2) throw DimensionError("features must be [T x d]");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  PutU32(out, static_cast<uint32_t>(frames.rows()));
  PutU32(out, static_cast<uint32_t>(frames.cols()));
  std::vector<float> buf(frames.values().begin(), frames.values().end());
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(float)));
  if (!out) throw std::runtime_error("error writing " + path);
}

Tensor ReadFeatureFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open feature file " + path);
  const uint32_t rows = GetU32(in, path), cols = GetU32(in, path);
  if (rows == 0 || cols == 0)
    throw std::runtime_error("empty feature matrix in " + path);
  std::vector<float> buf(static_cast<size_t>(rows) * cols);
  if (!in.read(reinterpret_cast<char*>(buf.data()),
               static_cast<std::streamsize>(buf.size() * sizeof(float))))
    throw std::runtime_error("truncated feature data in " + path);
  Tensor t({static_cast<int>(rows), static_cast<int>(cols)});
  for (size_t i = 0; i < buf.size(); ++i) t[i] = buf[i];
  return t;
}

void WriteDataset(const std::string& manifest_path,
                  const std::string& feature_dir,
                  const std::vector<Utterance>& utts) {
  fs::create_directories(feature_dir);
  const fs::path manifest(manifest_path);
  if (manifest.has_parent_path())
    fs::create_directories(manifest.parent_path());
  std::ofstream out(manifest_path);
  if (!out) throw std::runtime_error("cannot write " + manifest_path);
  const fs::path base =
      manifest.has_parent_path() ? manifest.parent_path() : fs::path(".");
  for (const Utterance& u : utts) {
    if (u.id.empty() || u.id.find_first_of("\t\n/") != std::string::npos)
      throw std::invalid_argument("bad utterance id '" + u.id + "'");
    if (u.text.find_first_of("\t\n") != std::string::npos)
      throw std::invalid_argument("transcript of " + u.id + " contains a tab");
    fs::path feat = fs::path(feature_dir) / (u.id + ".feat");
    WriteFeatureFile(feat.string(), u.frames);
    fs::path rel = feat.lexically_proximate(base);
    out << u.id << '\t' << u.text << '\t' << rel.generic_string() << '\n';
  }
  if (!out) throw std::runtime_error("error writing " + manifest_path);
}

std::vector<Utterance> ReadDataset(const std::string& manifest_path,
                                   const Alphabet& alphabet) {
  std::ifstream in(manifest_path);
  if (!in) throw std::runtime_error("cannot open manifest " + manifest_path);
  const fs::path manifest(manifest_path);
  const fs::path base =
      manifest.has_parent_path() ? manifest.parent_path() : fs::path(".");
  std::vector<Utterance> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    size_t a = line.find('\t');
    size_t b = a == std::string::npos ? a : line.find('\t', a + 1);
    if (b == std::string::npos)
      throw std::runtime_error(manifest_path + ":" + std::to_string(line_no) +
                               ": expected id<TAB>transcript<TAB>path");
    Utterance u;
    u.id = line.substr(0, a);
    u.text = line.substr(a + 1, b - a - 1);
    fs::path feat(line.substr(b + 1));
    if (feat.is_relative()) feat = base / feat;
    u.labels = NormalizeText(u.text, alphabet);
    u.frames = ReadFeatureFile(feat.string());
    out.push_back(std::move(u));
  }
  return out;
}

}  // namespace arsg
