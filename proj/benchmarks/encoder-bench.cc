// benchmarks/encoder-bench.cc

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

// Forward pass of the default (large) encoder, with and without gradients.

#include <benchmark/benchmark.h>

#include "arsg/encoder/encoder.h"
#include "bench-util.h"

namespace arsg {
namespace {

void Run(benchmark::State& state, bool with_grad) {
  const int frames = static_cast<int>(state.range(0));
  ParameterSet ps;
  Encoder enc(ps, EncoderConfig{});
  std::mt19937_64 rng(2);
  bench::Randomize(ps, rng, 0.05);
  Tensor x = bench::Gaussian({frames, 123}, rng);
  for (auto _ : state) {
    Graph g(with_grad);
    Var h = enc.Encode(g, x);
    benchmark::DoNotOptimize(g.Value(h)[0]);
  }
  state.SetItemsProcessed(state.iterations() * frames);
}

void BM_EncodeInference(benchmark::State& state) { Run(state, false); }
void BM_EncodeRecording(benchmark::State& state) { Run(state, true); }

BENCHMARK(BM_EncodeInference)
    ->Arg(100)
    ->Arg(400)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EncodeRecording)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace arsg
