// tests/unit/attention-test.cc

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

#include "arsg/attention/attention.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "arsg/nn/grad-check.h"
#include "test-util.h"

namespace arsg {
namespace {

using testing::RandomTensor;

AttentionConfig SmallConfig(int k = 5, int f = 2) {
  AttentionConfig c;
  c.state_dim = 4;
  c.annotation_dim = 6;
  c.score_dim = 5;
  c.conv_width = k;
  c.conv_channels = f;
  return c;
}

Alignment RandomAlignment(int length, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pos(0, length - 1);
  int a = pos(rng), b = pos(rng);
  if (a > b) std::swap(a, b);
  Tensor e = RandomTensor({length}, rng, 2.0);
  return NormalizeScores(e, {a, b + 1});
}

// ------------------------------------------------------------ conv features

TEST(ConvFeaturesTest, DeltaFilterCopiesAlignment) {
  ParameterSet ps;
  Attention att(ps, SmallConfig(3, 1));
  att.Q().value = Tensor::Matrix(3, 1, {0, 1, 0});
  std::mt19937_64 rng(1);
  Alignment a = RandomAlignment(9, rng);
  Tensor f = att.ConvFeatures(a);
  for (int l = 0; l < 9; ++l) EXPECT_EQ(f.at(l, 0), a.at(l));
}

TEST(ConvFeaturesTest, OneHotSupport) {
  ParameterSet ps;
  Attention att(ps, SmallConfig(3, 1));
  att.Q().value = Tensor::Matrix(3, 1, {1, 1, 1});
  Tensor f = att.ConvFeatures(Alignment::OneHot(10, 4));
  for (int l = 0; l < 10; ++l)
    EXPECT_EQ(f.at(l, 0), (l >= 3 && l <= 5) ? 1.0 : 0.0) << l;
}

TEST(ConvFeaturesTest, EvenWidthRejected) {
  ParameterSet ps;
  EXPECT_THROW(Attention(ps, SmallConfig(4, 1)), std::invalid_argument);
}

// ------------------------------------------------------------------ score

Real ScoreOracle(const Attention& att, const Tensor& s, const Tensor& h,
                 const Tensor& f) {
  const int a = att.config().score_dim;
  Real e = 0;
  for (int i = 0; i < a; ++i) {
    Real pre = att.b().value[i];
    for (size_t j = 0; j < s.size(); ++j) pre += att.W().value.at(i, j) * s[j];
    for (size_t j = 0; j < h.size(); ++j) pre += att.V().value.at(i, j) * h[j];
    for (size_t j = 0; j < f.size(); ++j) pre += att.U().value.at(i, j) * f[j];
    e += att.w().value[i] * std::tanh(pre);
  }
  return e;
}

TEST(ScoreTest, ZeroCases) {
  std::mt19937_64 rng(2);
  ParameterSet ps;
  Attention att(ps, SmallConfig());
  Tensor s = RandomTensor({4}, rng), h = RandomTensor({6}, rng),
         f = RandomTensor({2}, rng);
  EXPECT_EQ(att.Score(s, h, f), 0.0);
  testing::Randomize(ps, rng);
  att.w().value.SetZero();
  EXPECT_EQ(att.Score(s, h, f), 0.0);
}

TEST(ScoreTest, MatchesScalarOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    ParameterSet ps;
    Attention att(ps, SmallConfig());
    testing::Randomize(ps, rng);
    Tensor s = RandomTensor({4}, rng), h = RandomTensor({6}, rng),
           f = RandomTensor({2}, rng);
    EXPECT_NEAR(att.Score(s, h, f), ScoreOracle(att, s, h, f), 1e-12);
  }
}

// -------------------------------------------------------------- normalize

TEST(NormalizeTest, Examples) {
  Alignment u = NormalizeScores(Tensor({8}, 3.0), {2, 6});
  for (int l = 0; l < 8; ++l)
    EXPECT_EQ(u.at(l), (l >= 2 && l < 6) ? 0.25 : 0.0);

  Alignment one = NormalizeScores(Tensor::Vector({1, 2, 3}), {1, 2});
  EXPECT_EQ(one.at(1), 1.0);
  EXPECT_EQ(one.at(0), 0.0);

  Alignment r = NormalizeScores(Tensor::Vector({0, std::log(3.0)}), {0, 2});
  EXPECT_NEAR(r.at(0), 0.25, 1e-15);
  EXPECT_NEAR(r.at(1), 0.75, 1e-15);
}

TEST(NormalizeTest, StableForLargeScores) {
  Alignment a = NormalizeScores(Tensor::Vector({1000, -1000, 999}), {0, 3});
  EXPECT_TRUE(std::isfinite(a.at(0)));
  EXPECT_NEAR(a.at(0) + a.at(1) + a.at(2), 1.0, 1e-12);
}

TEST(NormalizeTest, EmptyWindowRejected) {
  EXPECT_THROW(NormalizeScores(Tensor::Vector({1, 2}), {5, 7}),
               std::invalid_argument);
  EXPECT_THROW(NormalizeScores(Tensor::Vector({1, 2}), {1, 1}),
               std::invalid_argument);
}

// ---------------------------------------------------------------- windows

TEST(MedianWindowTest, Examples) {
  EXPECT_EQ(MedianWindow(Alignment::OneHot(20, 6), {2, 2}), (IndexRange{4, 9}));

  Alignment half;
  half.length = 2;
  half.weights = {0.5, 0.5};
  EXPECT_EQ(AlignmentMedian(half), 0);
  EXPECT_EQ(MedianWindow(half, {0, 0}), (IndexRange{0, 1}));

  Alignment uniform;
  uniform.length = 10;
  uniform.weights.assign(10, 0.1);
  EXPECT_EQ(AlignmentMedian(uniform), 4);
  EXPECT_EQ(MedianWindow(uniform, {1, 1}), (IndexRange{3, 6}));
}

TEST(MedianWindowTest, ClippedAndNonEmpty) {
  EXPECT_EQ(MedianWindow(Alignment::OneHot(5, 0), {3, 1}), (IndexRange{0, 2}));
  EXPECT_EQ(MedianWindow(Alignment::OneHot(5, 4), {1, 9}), (IndexRange{3, 5}));
}

// Cumulative-sum oracle on the dense, normalized distribution.
int MedianOracle(const Alignment& a) {
  Tensor d = a.Dense();
  double total = 0;
  for (size_t i = 0; i < d.size(); ++i) total += d[i];
  double cum = 0;
  for (size_t i = 0; i < d.size(); ++i) {
    cum += d[i] / total;
    if (cum >= 0.5 - 1e-12) return static_cast<int>(i);
  }
  return static_cast<int>(d.size()) - 1;
}

TEST(MedianWindowTest, MatchesOracleAndIgnoresScale) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    Alignment a = RandomAlignment(1 + trial % 40, rng);
    EXPECT_EQ(AlignmentMedian(a), MedianOracle(a));
    Alignment scaled = a;
    for (Real& w : scaled.weights) w *= 7.5;
    EXPECT_EQ(AlignmentMedian(scaled), AlignmentMedian(a));
  }
}

TEST(ScheduleWindowTest, Examples) {
  SchedulePolicy p{0, 3, 1, 3};
  // 1-based [2, 9] is 0-based [1, 9).
  EXPECT_EQ(ScheduleWindow(2, p, 20), (IndexRange{1, 9}));

  SchedulePolicy diag{0, 0, 1, 1};
  for (int t = 1; t <= 10; ++t)
    EXPECT_EQ(ScheduleWindow(t, diag, 10), (IndexRange{t - 1, t}));

  EXPECT_EQ(ScheduleWindow(50, diag, 10), (IndexRange{9, 10}));
}

TEST(ScheduleWindowTest, InvalidPolicyRejected) {
  EXPECT_THROW(ScheduleWindow(1, {3, 1, 1, 1}, 10), std::invalid_argument);
  EXPECT_THROW(ScheduleWindow(1, {0, 1, 0, 1}, 10), std::invalid_argument);
  EXPECT_THROW(ScheduleWindow(1, {0, 1, 2, 1}, 10), std::invalid_argument);
}

// ----------------------------------------------------------------- attend

struct Instance {
  Tensor h;
  Tensor s;
  Alignment prev;
};

Instance MakeInstance(int length, std::mt19937_64& rng) {
  return {RandomTensor({length, 6}, rng), RandomTensor({4}, rng, 0.5),
          RandomAlignment(length, rng)};
}

Attention::Result RunAttend(Graph& g, const Attention& att, const Instance& in,
                            std::optional<IndexRange> window,
                            Tensor& alpha_buf) {
  auto ann = att.Prepare(g, g.ConstantRef(in.h));
  alpha_buf = Tensor::Vector(in.prev.weights);
  return att.Attend(g, ann, g.ConstantRef(in.s), g.ConstantRef(alpha_buf),
                    in.prev.offset, window);
}

// Dense attention computed position by position.
std::pair<std::vector<double>, std::vector<double>> DenseOracle(
    const Attention& att, const Instance& in) {
  const int length = in.h.rows();
  Tensor f = att.ConvFeatures(in.prev);
  std::vector<double> e(length);
  for (int l = 0; l < length; ++l) {
    Tensor hl = Tensor::Vector(
        std::vector<Real>(in.h.row(l).begin(), in.h.row(l).end()));
    Tensor fl =
        Tensor::Vector(std::vector<Real>(f.row(l).begin(), f.row(l).end()));
    e[l] = ScoreOracle(att, in.s, hl, fl);
  }
  double mx = *std::max_element(e.begin(), e.end()), z = 0;
  for (double v : e) z += std::exp(v - mx);
  std::vector<double> alpha(length), ctx(6, 0.0);
  for (int l = 0; l < length; ++l) {
    alpha[l] = std::exp(e[l] - mx) / z;
    for (int j = 0; j < 6; ++j) ctx[j] += alpha[l] * in.h.at(l, j);
  }
  return {alpha, ctx};
}

TEST(AttendTest, InvariantsOverRandomCases) {
  std::mt19937_64 rng(5);
  ParameterSet ps;
  Attention att(ps, SmallConfig());
  testing::Randomize(ps, rng);
  for (int trial = 0; trial < 1000; ++trial) {
    std::uniform_int_distribution<int> len(1, 50);
    const int length = len(rng);
    Instance in = MakeInstance(length, rng);
    std::uniform_int_distribution<int> pos(0, length - 1);
    int a = pos(rng), b = pos(rng);
    if (a > b) std::swap(a, b);
    IndexRange win{a, b + 1};
    Graph g(false);
    Tensor buf;
    auto r = RunAttend(g, att, in, win, buf);
    ASSERT_EQ(r.window, win);
    Alignment out{
        length,
        r.window.begin,
        {g.Value(r.alpha).values().begin(), g.Value(r.alpha).values().end()}};
    Tensor dense = out.Dense();
    double sum = 0;
    for (int l = 0; l < length; ++l) {
      EXPECT_GE(dense[l], 0.0);
      if (!win.Contains(l)) EXPECT_EQ(dense[l], 0.0);
      sum += dense[l];
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

TEST(AttendTest, FullWindowMatchesDenseOracle) {
  std::mt19937_64 rng(6);
  ParameterSet ps;
  Attention att(ps, SmallConfig());
  testing::Randomize(ps, rng);
  for (int trial = 0; trial < 100; ++trial) {
    Instance in = MakeInstance(1 + trial % 30, rng);
    const int length = in.h.rows();
    auto [alpha, ctx] = DenseOracle(att, in);
    Graph g1(false), g2(false);
    Tensor b1, b2;
    auto windowed = RunAttend(g1, att, in, IndexRange{0, length}, b1);
    auto unwindowed = RunAttend(g2, att, in, std::nullopt, b2);
    for (int l = 0; l < length; ++l) {
      EXPECT_NEAR(g1.Value(windowed.alpha)[l], alpha[l], 1e-12);
      EXPECT_EQ(g1.Value(windowed.alpha)[l], g2.Value(unwindowed.alpha)[l]);
    }
    for (int j = 0; j < 6; ++j) {
      EXPECT_NEAR(g1.Value(windowed.context)[j], ctx[j], 1e-12);
      EXPECT_EQ(g1.Value(windowed.context)[j], g2.Value(unwindowed.context)[j]);
    }
  }
}

TEST(AttendTest, SingleIndexWindowSelectsAnnotation) {
  std::mt19937_64 rng(7);
  ParameterSet ps;
  Attention att(ps, SmallConfig());
  testing::Randomize(ps, rng);
  Instance in = MakeInstance(12, rng);
  Graph g(false);
  Tensor buf;
  auto r = RunAttend(g, att, in, IndexRange{7, 8}, buf);
  EXPECT_EQ(g.Value(r.alpha)[0], 1.0);
  for (int j = 0; j < 6; ++j) EXPECT_EQ(g.Value(r.context)[j], in.h.at(7, j));
}

TEST(AttendTest, ScoreCountEqualsWindowSize) {
  std::mt19937_64 rng(8);
  ParameterSet ps;
  Attention att(ps, SmallConfig());
  testing::Randomize(ps, rng);
  for (int length : {10, 100, 400}) {
    Instance in = MakeInstance(length, rng);
    att.ResetCounter();
    Graph g(false);
    Tensor buf;
    IndexRange win = MedianWindow(in.prev, {3, 4});
    RunAttend(g, att, in, win, buf);
    EXPECT_EQ(att.score_evaluations(), win.size());
    EXPECT_LE(att.score_evaluations(), 3 + 4 + 1);
  }
}

TEST(AttendTest, GradientsMatchFiniteDifferences) {
  for (int seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(300 + seed);
    ParameterSet ps;
    Attention att(ps, SmallConfig(3, 2));
    // Keep the scoring MLP out of tanh saturation.
    for (auto& p : ps)
      p->value = testing::AwayFromZero(p->value.shape(), rng, 0.1, 0.4);
    Parameter& h = ps.Add("h", {7, 6}, Parameter::Kind::kMatrix);
    Parameter& s = ps.Add("s", {4}, Parameter::Kind::kWeightVector);
    Parameter& prev = ps.Add("alpha_prev", {3}, Parameter::Kind::kWeightVector);
    h.value = testing::AwayFromZero({7, 6}, rng);
    s.value = testing::AwayFromZero({4}, rng);
    prev.value = Tensor::Vector({0.2, 0.5, 0.3});
    Tensor r = RandomTensor({6}, rng);
    std::vector<Parameter*> params;
    for (auto& p : ps) params.push_back(p.get());
    auto res = GradCheck(
        [&](Graph& g) {
          auto ann = att.Prepare(g, g.Param(h));
          auto out = att.Attend(g, ann, g.Param(s), g.Param(prev), 2,
                                IndexRange{1, 6});
          Var parts[2] = {g.Dot(out.context, g.ConstantRef(r)),
                          g.Pick(g.LogSoftmax(out.alpha), 1)};
          return g.AddN(parts);
        },
        params);
    EXPECT_LE(res.max_relative_error, 1e-5)
        << "seed " << seed << " " << res.worst_parameter << "["
        << res.worst_element << "] " << res.analytic << " vs " << res.numeric;
  }
}

}  // namespace
}  // namespace arsg
