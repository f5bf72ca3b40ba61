// benchmarks/search-bench.cc

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

// LM prefix scoring and a full beam decode on a small random model.

#include <benchmark/benchmark.h>

#include <sstream>

#include "arsg/lm/arpa.h"
#include "arsg/lm/lm-builder.h"
#include "arsg/search/beam-search.h"
#include "bench-util.h"

namespace arsg {
namespace {

const std::vector<std::string> kWords = {"the", "cat", "sat", "on", "mat",
                                         "a",   "dog", "ran", "to", "hat"};

std::string UniformBigram() {
  std::ostringstream a;
  a << "\\data\\\nngram 1=" << kWords.size() + 2
    << "\nngram 2=" << kWords.size()
    << "\n\n\\1-grams:\n-1.2\t</s>\n-99\t<s>\t-0.3\n";
  for (const auto& w : kWords) a << "-1.1\t" << w << "\t-0.2\n";
  a << "\n\\2-grams:\n";
  for (size_t i = 0; i < kWords.size(); ++i)
    a << "-0.4\t" << kWords[i] << " " << kWords[(i + 1) % kWords.size()]
      << "\n";
  a << "\n\\end\\\n";
  return a.str();
}

void BM_PrefixScorerStep(benchmark::State& state) {
  Alphabet alpha = Alphabet::Standard();
  CharLm lm = BuildCharLm(ParseArpa(UniformBigram()), kWords, alpha);
  PrefixScorer scorer(lm.fst, alpha);
  std::vector<int> labels;
  for (int i = 0; i < 5; ++i)
    for (char c : std::string("the cat sat on a mat "))
      labels.push_back(*alpha.FromChar(c));
  for (auto _ : state) {
    PrefixScorer::State s = scorer.Start();
    for (int y : labels) s = scorer.Step(s, y).first;
    benchmark::DoNotOptimize(s.cost);
  }
  state.SetItemsProcessed(state.iterations() * labels.size());
}
BENCHMARK(BM_PrefixScorerStep);

void BM_BeamDecode(benchmark::State& state) {
  Alphabet alpha = Alphabet::Standard();
  ModelConfig mc;
  mc.encoder.input_dim = 8;
  mc.encoder.hidden = {32, 32};
  mc.encoder.pooling = {1, 2};
  mc.decoder_hidden = 32;
  mc.conv_width = 11;
  mc.conv_channels = 2;
  Model m(mc, alpha);
  std::mt19937_64 rng(3);
  bench::Randomize(m.params(), rng, 0.3);
  EncodedUtterance enc = m.EncodeForSearch(bench::Gaussian({80, 8}, rng));
  CharLm lm = BuildCharLm(ParseArpa(UniformBigram()), kWords, alpha);
  PrefixScorer scorer(lm.fst, alpha);
  DecodeConfig cfg;
  cfg.beam = static_cast<int>(state.range(0));
  cfg.lm_weight = 0.5;
  cfg.max_len = 30;
  cfg.window = WindowPolicy::Median({3, 7});
  BeamSearch search(m, &scorer, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(search.Decode(enc).cost);
}
BENCHMARK(BM_BeamDecode)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace arsg
