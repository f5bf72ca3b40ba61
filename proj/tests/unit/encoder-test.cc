// tests/unit/encoder-test.cc

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

#include "arsg/encoder/encoder.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "arsg/nn/grad-check.h"
#include "test-util.h"

namespace arsg {
namespace {

using testing::RandomTensor;

// Scalar-loop GRU.
std::vector<double> GruOracle(const GruCell& c, const std::vector<double>& x,
                              const std::vector<double>& h) {
  const int n = c.hidden, d = c.input_dim;
  auto sig = [](double v) { return 1 / (1 + std::exp(-v)); };
  std::vector<double> z(n), r(n), out(n);
  for (int i = 0; i < n; ++i) {
    double az = 0, ar = 0;
    for (int j = 0; j < d; ++j) {
      az += c.w_xz->value.at(i, j) * x[j];
      ar += c.w_xr->value.at(i, j) * x[j];
    }
    for (int j = 0; j < n; ++j) {
      az += c.u_hz->value.at(i, j) * h[j];
      ar += c.u_hr->value.at(i, j) * h[j];
    }
    z[i] = sig(az);
    r[i] = sig(ar);
  }
  for (int i = 0; i < n; ++i) {
    double a = 0;
    for (int j = 0; j < d; ++j) a += c.w_xh->value.at(i, j) * x[j];
    for (int j = 0; j < n; ++j) a += c.u_rh->value.at(i, j) * r[j] * h[j];
    out[i] = (1 - z[i]) * h[i] + z[i] * std::tanh(a);
  }
  return out;
}

std::vector<double> ToVec(const Tensor& t) {
  return {t.values().begin(), t.values().end()};
}

TEST(GruTest, ZeroWeightsClosedForm) {
  ParameterSet ps;
  GruCell c = GruCell::Create(ps, "g", 3, 4);
  Tensor p = Tensor::Vector({0.2, -0.4, 0.6, 1.0});
  Tensor h = GruStep(c, Tensor::Vector({1, 2, 3}), p);
  for (int i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(h[i], 0.5 * p[i]);
  Tensor zero = GruStep(c, Tensor::Vector({1, 2, 3}), Tensor::Zeros(4));
  for (int i = 0; i < 4; ++i) EXPECT_EQ(zero[i], 0.0);
}

TEST(GruTest, MatchesScalarOracle) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    ParameterSet ps;
    GruCell c = GruCell::Create(ps, "g", 5, 6);
    testing::Randomize(ps, rng, 0.7);
    Tensor x = RandomTensor({5}, rng);
    Tensor h = testing::AwayFromZero({6}, rng, 0.0, 0.99);
    Tensor got = GruStep(c, x, h);
    auto want = GruOracle(c, ToVec(x), ToVec(h));
    for (int i = 0; i < 6; ++i) {
      EXPECT_NEAR(got[i], want[i], 1e-12);
      EXPECT_LT(std::abs(got[i]), 1.0);
    }
  }
}

TEST(GruTest, DimensionMismatchRejected) {
  ParameterSet ps;
  GruCell c = GruCell::Create(ps, "g", 3, 4);
  EXPECT_ANY_THROW(GruStep(c, Tensor::Zeros(2), Tensor::Zeros(4)));
}

TEST(GruTest, GradientsMatchFiniteDifferences) {
  for (int seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(200 + seed);
    ParameterSet ps;
    GruCell c = GruCell::Create(ps, "g", 3, 4, /*with_bias=*/true);
    testing::Randomize(ps, rng, 0.8);
    Tensor x = testing::AwayFromZero({3}, rng);
    Tensor h = testing::AwayFromZero({4}, rng);
    Tensor r = RandomTensor({4}, rng);
    std::vector<Parameter*> params;
    for (auto& p : ps) params.push_back(p.get());
    auto res = GradCheck(
        [&](Graph& g) {
          return g.Dot(GruStep(g, c, g.ConstantRef(x), g.ConstantRef(h)),
                       g.ConstantRef(r));
        },
        params);
    EXPECT_LE(res.max_relative_error, 1e-5) << "seed " << seed;
  }
}

std::vector<Var> Sequence(Graph& g, const Tensor& m) {
  std::vector<Var> seq;
  for (int t = 0; t < m.rows(); ++t) seq.push_back(g.Row(g.ConstantRef(m), t));
  return seq;
}

TEST(PoolTest, SubsampleKeepsLastOfGroup) {
  Graph g(false);
  Tensor m = Tensor::Matrix(4, 1, {1, 2, 3, 4});
  auto out = Pool(g, Sequence(g, m), {2, PoolMode::kSubsample});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(g.Value(out[0])[0], 2);
  EXPECT_EQ(g.Value(out[1])[0], 4);

  Tensor odd = Tensor::Matrix(3, 1, {1, 2, 3});
  auto out3 = Pool(g, Sequence(g, odd), {2, PoolMode::kSubsample});
  ASSERT_EQ(out3.size(), 2u);
  EXPECT_EQ(g.Value(out3[0])[0], 2);
  EXPECT_EQ(g.Value(out3[1])[0], 3);
}

TEST(PoolTest, AverageEmitsGroupMean) {
  Graph g(false);
  Tensor m = Tensor::Matrix(4, 1, {2, 4, 6, 8});
  auto out = Pool(g, Sequence(g, m), {2, PoolMode::kAverage});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(g.Value(out[0])[0], 3);
  EXPECT_EQ(g.Value(out[1])[0], 7);
  Tensor odd = Tensor::Matrix(5, 1, {2, 4, 6, 8, 9});
  auto out5 = Pool(g, Sequence(g, odd), {2, PoolMode::kAverage});
  EXPECT_EQ(g.Value(out5.back())[0], 9);
}

TEST(PoolTest, FactorOneIsIdentity) {
  std::mt19937_64 rng(1);
  Tensor m = RandomTensor({7, 3}, rng);
  for (PoolMode mode : {PoolMode::kSubsample, PoolMode::kAverage}) {
    Graph g(false);
    auto seq = Sequence(g, m);
    auto out = Pool(g, seq, {1, mode});
    ASSERT_EQ(out.size(), seq.size());
    for (size_t t = 0; t < seq.size(); ++t)
      EXPECT_EQ(g.Value(out[t]), g.Value(seq[t]));
  }
}

BiGruLayer MakeLayer(ParameterSet& ps, int d, int n, bool tied,
                     std::mt19937_64& rng) {
  BiGruLayer layer{GruCell::Create(ps, "f", d, n),
                   GruCell::Create(ps, "b", d, n)};
  testing::Randomize(ps, rng, 0.7);
  if (tied) {
    layer.backward.w_xz->value = layer.forward.w_xz->value;
    layer.backward.u_hz->value = layer.forward.u_hz->value;
    layer.backward.w_xr->value = layer.forward.w_xr->value;
    layer.backward.u_hr->value = layer.forward.u_hr->value;
    layer.backward.w_xh->value = layer.forward.w_xh->value;
    layer.backward.u_rh->value = layer.forward.u_rh->value;
  }
  return layer;
}

TEST(BiGruTest, SingleFrameHalvesEqualWithTiedWeights) {
  std::mt19937_64 rng(2);
  ParameterSet ps;
  BiGruLayer layer = MakeLayer(ps, 3, 4, true, rng);
  Graph g(false);
  Tensor m = RandomTensor({1, 3}, rng);
  auto out = BiGruForward(g, layer, Sequence(g, m));
  const Tensor& v = g.Value(out[0]);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(v[i], v[4 + i]);
}

TEST(BiGruTest, ReversalSwapsHalves) {
  std::mt19937_64 rng(3);
  ParameterSet ps;
  BiGruLayer layer = MakeLayer(ps, 3, 4, true, rng);
  Tensor m = RandomTensor({6, 3}, rng);
  Tensor rev({6, 3});
  for (int t = 0; t < 6; ++t)
    for (int j = 0; j < 3; ++j) rev.at(t, j) = m.at(5 - t, j);
  Graph g(false);
  auto a = BiGruForward(g, layer, Sequence(g, m));
  auto b = BiGruForward(g, layer, Sequence(g, rev));
  for (int t = 0; t < 6; ++t)
    for (int i = 0; i < 4; ++i) {
      EXPECT_NEAR(g.Value(a[t])[i], g.Value(b[5 - t])[4 + i], 1e-15);
      EXPECT_NEAR(g.Value(a[t])[4 + i], g.Value(b[5 - t])[i], 1e-15);
    }
}

TEST(BiGruTest, MatchesUnrolledOracle) {
  std::mt19937_64 rng(5);
  ParameterSet ps;
  BiGruLayer layer = MakeLayer(ps, 3, 4, false, rng);
  Tensor m = RandomTensor({3, 3}, rng);
  std::vector<std::vector<double>> fwd(3), bwd(3);
  std::vector<double> h(4, 0.0);
  for (int t = 0; t < 3; ++t)
    fwd[t] = h = GruOracle(layer.forward,
                           ToVec(Tensor::Vector(std::vector<Real>(
                               m.row(t).begin(), m.row(t).end()))),
                           h);
  h.assign(4, 0.0);
  for (int t = 2; t >= 0; --t)
    bwd[t] = h = GruOracle(layer.backward,
                           ToVec(Tensor::Vector(std::vector<Real>(
                               m.row(t).begin(), m.row(t).end()))),
                           h);
  Graph g(false);
  auto out = BiGruForward(g, layer, Sequence(g, m));
  for (int t = 0; t < 3; ++t)
    for (int i = 0; i < 4; ++i) {
      EXPECT_NEAR(g.Value(out[t])[i], fwd[t][i], 1e-12);
      EXPECT_NEAR(g.Value(out[t])[4 + i], bwd[t][i], 1e-12);
    }
}

TEST(BiGruTest, ZeroRecurrenceIsLocal) {
  std::mt19937_64 rng(6);
  ParameterSet ps;
  BiGruLayer layer = MakeLayer(ps, 3, 4, false, rng);
  for (GruCell* c : {&layer.forward, &layer.backward}) {
    c->u_hz->value.SetZero();
    c->u_hr->value.SetZero();
    c->u_rh->value.SetZero();
  }
  Tensor m = RandomTensor({5, 3}, rng);
  Tensor m2 = m;
  for (int j = 0; j < 3; ++j) m2.at(0, j) += 1.0;
  Graph g(false);
  auto a = BiGruForward(g, layer, Sequence(g, m));
  auto b = BiGruForward(g, layer, Sequence(g, m2));
  // The gates and candidate then see only x_t, and the previous state enters
  // only through the (1 - z) carry.
  for (int t = 1; t < 5; ++t) {
    Tensor x =
        Tensor::Vector(std::vector<Real>(m.row(t).begin(), m.row(t).end()));
    Tensor z = Sigmoid(MatVec(layer.forward.w_xz->value, x));
    Tensor cand = Tanh(MatVec(layer.forward.w_xh->value, x));
    for (int i = 0; i < 4; ++i) {
      EXPECT_NEAR(g.Value(a[t])[i],
                  (1 - z[i]) * g.Value(a[t - 1])[i] + z[i] * cand[i], 1e-12);
      EXPECT_NEAR(g.Value(b[t])[i],
                  (1 - z[i]) * g.Value(b[t - 1])[i] + z[i] * cand[i], 1e-12);
    }
  }
}

TEST(BiGruTest, EmptySequenceRejected) {
  std::mt19937_64 rng(7);
  ParameterSet ps;
  BiGruLayer layer = MakeLayer(ps, 3, 4, false, rng);
  Graph g(false);
  EXPECT_THROW(BiGruForward(g, layer, {}), std::invalid_argument);
}

int CeilRecurrence(int t0, const std::vector<int>& factors) {
  int n = t0;
  for (int f : factors) n = (n + f - 1) / f;
  return n;
}

TEST(EncoderTest, OutputLengthFollowsCeilRecurrence) {
  std::mt19937_64 rng(8);
  EncoderConfig cfg;
  cfg.input_dim = 2;
  cfg.hidden = {3, 3, 3, 3};
  cfg.pooling = {1, 1, 2, 2};
  ParameterSet ps;
  Encoder enc(ps, cfg);
  testing::Randomize(ps, rng, 0.5);
  EXPECT_EQ(enc.OutputLength(16), 4);
  EXPECT_EQ(enc.OutputLength(17), 5);
  for (int t0 = 4; t0 <= 100; t0 += 7) {
    Graph g(false);
    Var h = enc.Encode(g, RandomTensor({t0, 2}, rng));
    EXPECT_EQ(g.Value(h).rows(), CeilRecurrence(t0, cfg.pooling)) << t0;
    EXPECT_EQ(g.Value(h).cols(), 6);
  }
}

TEST(EncoderTest, NoPoolingKeepsLength) {
  EncoderConfig cfg;
  cfg.input_dim = 2;
  cfg.hidden = {3, 3};
  cfg.pooling = {1, 1};
  ParameterSet ps;
  Encoder enc(ps, cfg);
  for (int t0 = 1; t0 < 30; ++t0) EXPECT_EQ(enc.OutputLength(t0), t0);
}

TEST(EncoderTest, TooShortInputRejected) {
  EncoderConfig cfg;
  cfg.input_dim = 2;
  cfg.hidden = {3, 3, 3};
  cfg.pooling = {1, 2, 2};
  ParameterSet ps;
  Encoder enc(ps, cfg);
  Graph g(false);
  EXPECT_THROW(enc.Encode(g, Tensor({3, 2})), std::invalid_argument);
  EXPECT_NO_THROW(enc.Encode(g, Tensor({4, 2})));
}

}  // namespace
}  // namespace arsg
