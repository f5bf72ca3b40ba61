// tests/unit/decoder-test.cc

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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "arsg/decoder/model.h"
#include "arsg/nn/grad-check.h"
#include "arsg/optim/optim.h"
#include "test-util.h"

namespace arsg {
namespace {

using testing::RandomTensor;

ModelConfig TinyConfig(int input_dim = 3) {
  ModelConfig c;
  c.encoder.input_dim = input_dim;
  c.encoder.hidden = {4};
  c.encoder.pooling = {1};
  c.decoder_hidden = 5;
  c.embedding_dim = 3;
  c.score_dim = 4;
  c.conv_width = 3;
  c.conv_channels = 2;
  return c;
}

Alphabet Abc() { return Alphabet::FromSymbols({"a", "b", "</s>"}); }

// ----------------------------------------------------------------- alphabet

TEST(AlphabetTest, StandardHas32Labels) {
  Alphabet a = Alphabet::Standard();
  EXPECT_EQ(a.size(), 32);
  EXPECT_EQ(a.symbol(0), "a");
  EXPECT_EQ(a.symbol(25), "z");
  EXPECT_EQ(a.symbol(a.space()), " ");
  EXPECT_EQ(a.symbol(a.noise()), Alphabet::kNoise);
  EXPECT_EQ(a.symbol(a.eos()), Alphabet::kEos);
  EXPECT_EQ(a.eos(), 31);
  for (const char* s : {"'", ".", "-"}) EXPECT_TRUE(a.Find(s).has_value());
}

TEST(AlphabetTest, Validation) {
  EXPECT_THROW(Alphabet::FromSymbols({"a", "b"}), std::invalid_argument);
  EXPECT_THROW(Alphabet::FromSymbols({"a", "a", "</s>"}),
               std::invalid_argument);
  EXPECT_THROW(Alphabet::FromSymbols({"ab", "</s>"}), std::invalid_argument);
}

TEST(AlphabetTest, RenderStopsAtEos) {
  Alphabet a = Alphabet::Standard();
  std::vector<int> labels = {7, 8, a.space(), 0, a.eos(), 1};
  EXPECT_EQ(a.Render(labels), "hi a");
}

// ------------------------------------------------------------ decoder step

TEST(DecoderStepTest, ZeroWeightsGiveUniformDistribution) {
  Model m(TinyConfig(), Alphabet::Standard());
  std::mt19937_64 rng(1);
  EncodedUtterance enc = m.EncodeForSearch(RandomTensor({6, 3}, rng));
  auto out =
      m.Advance(enc, m.InitialDecoderState(6), m.alphabet().eos(), {0, 6});
  ASSERT_EQ(out.log_probs.size(), 32u);
  for (int l = 0; l < 32; ++l)
    EXPECT_NEAR(std::exp(out.log_probs[l]), 1.0 / 32, 1e-15);
}

TEST(DecoderStepTest, SingleAnnotationIsTheContext) {
  std::mt19937_64 rng(2);
  Model m(TinyConfig(), Abc());
  testing::Randomize(m.params(), rng);
  Graph g(false);
  auto ann = m.Encode(g, RandomTensor({1, 3}, rng));
  ASSERT_EQ(ann.length, 1);
  auto step = m.DecoderStep(g, ann, m.InitialState(g), m.alphabet().eos());
  EXPECT_EQ(g.Value(step.context), g.Value(ann.h).row(0).size()
                                       ? Tensor::Vector(std::vector<Real>(
                                             g.Value(ann.h).row(0).begin(),
                                             g.Value(ann.h).row(0).end()))
                                       : Tensor());
}

TEST(DecoderStepTest, MatchesRecomposition) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    Model m(TinyConfig(), Abc());
    testing::Randomize(m.params(), rng);
    Tensor frames = RandomTensor({5, 3}, rng);
    Graph g(false);
    auto ann = m.Encode(g, frames);
    Model::State st = m.InitialState(g);
    st.s = g.Constant(RandomTensor({5}, rng, 0.5));
    const int y_prev = trial % 3;
    auto step = m.DecoderStep(g, ann, st, y_prev);

    // attend -> gru_step -> softmax, recomputed by hand.
    auto att = m.attention().Attend(g, ann, st.s, st.alpha, st.alpha_offset);
    Tensor emb = Tensor::Vector(std::vector<Real>(
        m.params().at("dec.embedding").value.row(y_prev).begin(),
        m.params().at("dec.embedding").value.row(y_prev).end()));
    const Tensor& ctx = g.Value(att.context);
    std::vector<Real> in(emb.values().begin(), emb.values().end());
    in.insert(in.end(), ctx.values().begin(), ctx.values().end());
    Tensor s = GruStep(m.cell(), Tensor::Vector(in), g.Value(st.s));
    std::vector<Real> o(s.values().begin(), s.values().end());
    o.insert(o.end(), ctx.values().begin(), ctx.values().end());
    Tensor logits = Affine(Tensor::Vector(o), m.params().at("dec.W_hl").value,
                           m.params().at("dec.b_l").value);
    Tensor want = LogSoftmax(logits);
    EXPECT_LT(testing::MaxAbsDiff(g.Value(step.log_probs), want), 1e-12);
    EXPECT_LT(testing::MaxAbsDiff(g.Value(step.state.s), s), 1e-12);
  }
}

TEST(DecoderStepTest, InvalidLabelRejected) {
  Model m(TinyConfig(), Abc());
  Graph g(false);
  auto ann = m.Encode(g, Tensor({4, 3}));
  EXPECT_THROW(m.DecoderStep(g, ann, m.InitialState(g), 7), std::out_of_range);
}

TEST(DecoderStepTest, GraphFreeAdvanceMatchesGraphStep) {
  std::mt19937_64 rng(4);
  Model m(TinyConfig(), Abc());
  testing::Randomize(m.params(), rng);
  Tensor frames = RandomTensor({6, 3}, rng);
  EncodedUtterance enc = m.EncodeForSearch(frames);
  Graph g(false);
  auto ann = m.Encode(g, frames);
  Model::State st = m.InitialState(g);
  DecoderState ds = m.InitialDecoderState(6);
  int y = m.alphabet().eos();
  for (int t = 0; t < 4; ++t) {
    IndexRange win = MedianWindow(ds.alpha, {1, 2});
    auto a = m.Advance(enc, ds, y, win);
    auto b = m.DecoderStep(g, ann, st, y, win);
    EXPECT_LT(testing::MaxAbsDiff(a.log_probs, g.Value(b.log_probs)), 1e-14);
    ds = a.state;
    st = b.state;
    y = t % 2;
  }
}

// ------------------------------------------------------ teacher forcing

TEST(TeacherForcedTest, ZeroModelCostsLengthTimesLog32) {
  Model m(TinyConfig(), Alphabet::Standard());
  std::vector<int> y = {0, 1, 2, 31};
  double nll = m.TeacherForcedNll(Tensor({6, 3}), y, WindowPolicy::Full());
  EXPECT_NEAR(nll, 4 * std::log(32.0), 1e-12);
}

TEST(TeacherForcedTest, MissingEosRejected) {
  Model m(TinyConfig(), Abc());
  std::vector<int> y = {0, 1};
  EXPECT_THROW(m.TeacherForcedNll(Tensor({4, 3}), y, WindowPolicy::Full()),
               std::invalid_argument);
}

TEST(TeacherForcedTest, Deterministic) {
  auto run = [] {
    Model m(TinyConfig(), Abc());
    InitParams(m.params(), 0.1, 7);
    std::mt19937_64 rng(9);
    std::vector<int> y = {0, 1, 0, 2};
    return m.TeacherForcedNll(RandomTensor({6, 3}, rng), y,
                              WindowPolicy::Median({1, 2}));
  };
  EXPECT_EQ(run(), run());
}

// Through a whole model the central-difference roundoff at step 1e-5 is
// about 1e-10 absolute, which swamps gradient entries near 1e-6; 1e-4
// balances roundoff against truncation.
constexpr double kModelStep = 1e-4;

TEST(TeacherForcedTest, GradientsMatchFiniteDifferences) {
  for (int seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(400 + seed);
    Model m(TinyConfig(), Abc());
    for (auto& p : m.params())
      p->value = testing::AwayFromZero(p->value.shape(), rng, 0.3, 1.0);
    Tensor frames = testing::AwayFromZero({6, 3}, rng);
    std::vector<int> y = {seed % 2, 1, 0, 2};
    const WindowPolicy policy =
        seed % 2 ? WindowPolicy::Median({1, 2}) : WindowPolicy::Full();
    std::vector<Parameter*> params;
    for (auto& p : m.params()) params.push_back(p.get());
    auto res = GradCheck(
        [&](Graph& g) { return m.TeacherForcedNll(g, frames, y, policy); },
        params, kModelStep);
    EXPECT_LE(res.max_relative_error, 1e-5)
        << "seed " << seed << " " << res.worst_parameter << "["
        << res.worst_element << "] " << res.analytic << " vs " << res.numeric;
  }
}

TEST(TeacherForcedTest, MemorizesOneExample) {
  Model m(TinyConfig(), Abc());
  InitParams(m.params(), 0.1, 3);
  std::mt19937_64 rng(10);
  Tensor frames = RandomTensor({6, 3}, rng);
  std::vector<int> y = {0, 1, 1, 2};
  AdaDelta opt(m.params(), {});
  double prev = m.TeacherForcedNll(frames, y, WindowPolicy::Full());
  for (int step = 0; step < 50; ++step) {
    m.params().ZeroGrad();
    Graph g;
    g.Backward(m.TeacherForcedNll(g, frames, y, WindowPolicy::Full()));
    opt.Step(m.params());
    double nll = m.TeacherForcedNll(frames, y, WindowPolicy::Full());
    EXPECT_LT(nll, prev) << "step " << step;
    prev = nll;
  }
}

// ---------------------------------------------------------------- greedy

TEST(GreedyTest, ZeroModelEmitsLabelZero) {
  Model m(TinyConfig(), Alphabet::Standard());
  auto out = m.GenerateGreedy(Tensor({5, 3}), 7, WindowPolicy::Full());
  EXPECT_EQ(out, std::vector<int>(7, 0));
  EXPECT_THROW(m.GenerateGreedy(Tensor({5, 3}), 0, WindowPolicy::Full()),
               std::invalid_argument);
}

TEST(GreedyTest, DistributionsAreValidAtEveryStep) {
  std::mt19937_64 rng(11);
  Model m(TinyConfig(), Alphabet::Standard());
  InitParams(m.params(), 0.1, 5);
  for (int u = 0; u < 5; ++u) {
    EncodedUtterance enc = m.EncodeForSearch(RandomTensor({8 + u, 3}, rng));
    DecoderState st = m.InitialDecoderState(enc.length());
    int y = m.alphabet().eos();
    for (int t = 1; t <= 10; ++t) {
      auto out = m.Advance(enc, st, y, MedianWindow(st.alpha, {2, 2}));
      double sum = 0;
      for (size_t l = 0; l < out.log_probs.size(); ++l)
        sum += std::exp(out.log_probs[l]);
      EXPECT_NEAR(sum, 1.0, 1e-9);
      st = out.state;
      y = t % 26;
    }
  }
}

}  // namespace
}  // namespace arsg
