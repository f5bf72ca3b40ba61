// data/synth.cc

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

#include "arsg/data/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <stdexcept>

#include "arsg/data/features.h"
#include "arsg/data/text.h"

namespace arsg {

namespace {

void CheckRange(const IntRange& r, int lo, const char* what) {
  if (r.min < lo || r.max < r.min)
    throw std::invalid_argument(std::string("synthetic spec: bad range for ") +
                                what);
}

std::string SpecCharacters(const SyntheticTaskSpec& spec) {
  std::set<char> chars;
  if (spec.words.empty()) {
    chars.insert(spec.characters.begin(), spec.characters.end());
  } else {
    for (const auto& w : spec.words) chars.insert(w.begin(), w.end());
    chars.insert(' ');
  }
  return std::string(chars.begin(), chars.end());
}

int Uniform(std::mt19937_64& rng, const IntRange& r) {
  return std::uniform_int_distribution<int>(r.min, r.max)(rng);
}

}  // namespace

void SyntheticTaskSpec::Validate() const {
  CheckRange(frames_per_char, 1, "frames per character");
  CheckRange(leading_silence, 0, "leading silence");
  CheckRange(trailing_silence, 0, "trailing silence");
  if (!(noise_std >= 0)) throw std::invalid_argument("noise must be >= 0");
  if (base_dim < 1) throw std::invalid_argument("base dimension must be >= 1");
  if (!(pattern_scale > 0))
    throw std::invalid_argument("pattern scale must be > 0");
  if (words.empty()) {
    CheckRange(text_length, 1, "text length");
    if (characters.find_first_not_of(' ') == std::string::npos)
      throw std::invalid_argument("synthetic spec: no non-space characters");
  } else {
    CheckRange(words_per_utterance, 1, "words per utterance");
    for (const auto& w : words)
      if (w.empty() || w.find(' ') != std::string::npos)
        throw std::invalid_argument("synthetic spec: bad word '" + w + "'");
  }
}

std::map<char, std::vector<double>> SyntheticPatterns(
    const SyntheticTaskSpec& spec) {
  spec.Validate();
  const std::string chars = SpecCharacters(spec);
  const int d = spec.base_dim;
  if (static_cast<int>(chars.size()) > d)
    throw std::invalid_argument(
        "synthetic spec: base_dim must be at least the number of characters");
  // Seeded separately from the utterance stream so that the patterns depend
  // only on the seed and the character set.
  std::mt19937_64 rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::vector<double>> basis;
  std::map<char, std::vector<double>> out;
  for (char c : chars) {
    std::vector<double> v(d);
    double norm = 0;
    do {
      for (double& x : v) x = normal(rng);
      for (const auto& b : basis) {
        double dot = 0;
        for (int i = 0; i < d; ++i) dot += v[i] * b[i];
        for (int i = 0; i < d; ++i) v[i] -= dot * b[i];
      }
      norm = 0;
      for (double x : v) norm += x * x;
      norm = std::sqrt(norm);
    } while (norm < 1e-6);
    for (double& x : v) x /= norm;
    basis.push_back(v);
    out[c] = v;
  }
  for (const auto& [a, b] : spec.confusable) {
    if (!out.count(a) || !out.count(b))
      throw std::invalid_argument("confusable pair uses an unknown character");
    // Unit vectors a and b are orthogonal; a + t b has distance
    // sqrt(2 - 2 / sqrt(1 + t^2)) from a after normalization. Solve for t.
    const double dist = spec.confusable_distance;
    if (!(dist >= 0 && dist < std::sqrt(2.0)))
      throw std::invalid_argument(
          "confusable distance must lie in [0, sqrt 2)");
    const double c = 1 - dist * dist / 2;  // cosine between the patterns
    const double t = std::sqrt(1 / (c * c) - 1);
    std::vector<double> v(d);
    double norm = 0;
    for (int i = 0; i < d; ++i) {
      v[i] = out[a][i] + t * out[b][i];
      norm += v[i] * v[i];
    }
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
    out[b] = v;
  }
  const double scale = spec.pattern_scale * std::sqrt(static_cast<double>(d));
  for (auto& [c, v] : out)
    for (double& x : v) x *= scale;
  return out;
}

std::vector<Utterance> GenerateSynthetic(const SyntheticTaskSpec& spec,
                                         int count, const Alphabet& alphabet,
                                         std::vector<SynthLayout>* layouts,
                                         uint64_t stream) {
  if (count < 0) throw std::invalid_argument("count must be >= 0");
  auto patterns = SyntheticPatterns(spec);
  for (const auto& [c, v] : patterns)
    if (!alphabet.FromChar(c))
      throw std::invalid_argument(std::string("character '") + c +
                                  "' is not in the alphabet");
  std::string non_space;
  for (char c : spec.characters)
    if (c != ' ') non_space += c;

  std::seed_seq seq{
      static_cast<uint32_t>(spec.seed), static_cast<uint32_t>(spec.seed >> 32),
      static_cast<uint32_t>(stream), static_cast<uint32_t>(stream >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> noise(0.0, 1.0);
  const int d = spec.base_dim;
  std::vector<Utterance> out;
  out.reserve(count);
  if (layouts) layouts->clear();

  for (int n = 0; n < count; ++n) {
    std::string text;
    if (spec.words.empty()) {
      const int len = Uniform(rng, spec.text_length);
      for (int i = 0; i < len; ++i) {
        const bool space_ok = i > 0 && i + 1 < len && text.back() != ' ';
        const std::string& pool = space_ok ? spec.characters : non_space;
        text += pool[std::uniform_int_distribution<size_t>(
            0, pool.size() - 1)(rng)];
      }
    } else {
      const int nw = Uniform(rng, spec.words_per_utterance);
      for (int i = 0; i < nw; ++i) {
        if (i) text += ' ';
        text += spec.words[std::uniform_int_distribution<size_t>(
            0, spec.words.size() - 1)(rng)];
      }
    }

    SynthLayout layout;
    layout.leading = Uniform(rng, spec.leading_silence);
    std::vector<const std::vector<double>*> frames;
    for (int i = 0; i < layout.leading; ++i) frames.push_back(nullptr);
    for (char c : text) {
      const int k = Uniform(rng, spec.frames_per_char);
      layout.char_frames.push_back(k);
      for (int i = 0; i < k; ++i) frames.push_back(&patterns.at(c));
    }
    layout.trailing = Uniform(rng, spec.trailing_silence);
    for (int i = 0; i < layout.trailing; ++i) frames.push_back(nullptr);

    Tensor base({static_cast<int>(frames.size()), d});
    for (size_t t = 0; t < frames.size(); ++t)
      for (int j = 0; j < d; ++j) {
        double v = frames[t] ? (*frames[t])[j] : 0.0;
        if (spec.noise_std > 0) v += spec.noise_std * noise(rng);
        base.at(static_cast<int>(t), j) = static_cast<Real>(v);
      }
    Utterance u;
    u.frames = spec.add_deltas ? AddDeltas(base) : std::move(base);
    for (Real& v : u.frames.values())
      v = static_cast<Real>(static_cast<float>(v));
    u.labels = NormalizeText(text, alphabet);
    u.text = RenderText(u.labels, alphabet);
    char id[32];
    std::snprintf(id, sizeof(id), "%06d", n);
    u.id = spec.id_prefix + id;
    out.push_back(std::move(u));
    if (layouts) layouts->push_back(std::move(layout));
  }
  return out;
}

}  // namespace arsg
