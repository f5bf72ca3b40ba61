// benchmarks/attention-bench.cc

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

// One attention step at the default sizes over L annotations: the full
// window grows with L, the windowed one should not.

#include <benchmark/benchmark.h>

#include "arsg/attention/attention.h"
#include "bench-util.h"

namespace arsg {
namespace {

struct Fixture {
  ParameterSet ps;
  Attention att;
  Tensor h, s, prev;
  explicit Fixture(int length)
      : att(ps, AttentionConfig{250, 500, 250, 201, 1}) {
    std::mt19937_64 rng(1);
    bench::Randomize(ps, rng, 0.05);
    h = bench::Gaussian({length, 500}, rng);
    s = bench::Gaussian({250}, rng);
    prev = Tensor({length}, 1.0 / length);
  }
};

void Run(benchmark::State& state, bool windowed) {
  const int length = static_cast<int>(state.range(0));
  Fixture f(length);
  Graph prep(false);
  auto ann = f.att.Prepare(prep, prep.ConstantRef(f.h));
  std::optional<IndexRange> window;
  if (windowed) window = IndexRange{length / 2 - 10, length / 2 + 21};
  for (auto _ : state) {
    // Annotations were projected once, as during decoding.
    auto r = f.att.Attend(prep, ann, prep.ConstantRef(f.s),
                          prep.ConstantRef(f.prev), 0, window);
    benchmark::DoNotOptimize(r.context);
  }
  state.SetComplexityN(length);
}

void BM_AttendFull(benchmark::State& state) { Run(state, false); }
void BM_AttendWindowed(benchmark::State& state) { Run(state, true); }

BENCHMARK(BM_AttendFull)->RangeMultiplier(2)->Range(64, 512)->Complexity();
BENCHMARK(BM_AttendWindowed)->RangeMultiplier(2)->Range(64, 512)->Complexity();

}  // namespace
}  // namespace arsg
