// tests/unit/fst-test.cc

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
#include <sstream>

#include "arsg/lm/fst-ops.h"
#include "arsg/lm/wfst.h"
#include "fst-oracle.h"

namespace arsg {
namespace {

using testing::LogAdd;
using testing::StringWeights;

void ExpectSameStringWeights(const Wfst& a, const Wfst& b, int max_arcs,
                             double tol) {
  auto wa = StringWeights(a, max_arcs), wb = StringWeights(b, max_arcs);
  ASSERT_EQ(wa.size(), wb.size());
  for (const auto& [s, w] : wa) {
    auto it = wb.find(s);
    ASSERT_NE(it, wb.end());
    EXPECT_NEAR(w, it->second, tol);
    EXPECT_NEAR(InputStringWeight(b, s), w, tol);
  }
}

// ------------------------------------------------------------- semiring

TEST(LogPlusTest, Properties) {
  EXPECT_EQ(LogPlus(2.5, kInfWeight), 2.5);
  EXPECT_EQ(LogPlus(kInfWeight, 2.5), 2.5);
  EXPECT_NEAR(LogPlus(-std::log(0.1), -std::log(0.1)), -std::log(0.2), 1e-15);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-5, 50);
  for (int i = 0; i < 1000; ++i) {
    double a = u(rng), b = u(rng), c = u(rng);
    EXPECT_NEAR(LogPlus(a, b), LogPlus(b, a), 1e-12);
    EXPECT_NEAR(LogPlus(LogPlus(a, b), c), LogPlus(a, LogPlus(b, c)), 1e-12);
  }
  EXPECT_TRUE(std::isfinite(LogPlus(1000, 1001)));
}

// ------------------------------------------------------------- structure

TEST(WfstTest, Validation) {
  Wfst f;
  int s = f.AddState();
  EXPECT_THROW(f.AddArc(s, {1, 1, 0, 5}), FstError);
  EXPECT_THROW(f.AddArc(s, {-1, 1, 0, s}), FstError);
  EXPECT_THROW(f.SetStart(3), FstError);
  EXPECT_THROW(f.SetFinal(s, std::nan("")), FstError);
}

TEST(WfstTest, TextRoundTrip) {
  std::mt19937_64 rng(2);
  Wfst f = testing::RandomAcyclicFst(rng, 8, 3, 0.2);
  f.SetFinal(2, kInfWeight);
  std::stringstream ss;
  WriteWfstText(f, ss);
  Wfst g = ReadWfstText(ss);
  ASSERT_EQ(g.num_states(), f.num_states());
  EXPECT_EQ(g.start(), f.start());
  for (int s = 0; s < f.num_states(); ++s) {
    EXPECT_EQ(g.final_weight(s), f.final_weight(s));
    ASSERT_EQ(g.arcs(s).size(), f.arcs(s).size());
    for (size_t i = 0; i < f.arcs(s).size(); ++i) {
      EXPECT_EQ(g.arcs(s)[i].ilabel, f.arcs(s)[i].ilabel);
      EXPECT_EQ(g.arcs(s)[i].nextstate, f.arcs(s)[i].nextstate);
      EXPECT_EQ(g.arcs(s)[i].weight, f.arcs(s)[i].weight);
    }
  }
}

TEST(WfstTest, MalformedTextRejected) {
  std::stringstream bad("0 1 2 3 x\n");
  EXPECT_THROW(ReadWfstText(bad), FstError);
  std::stringstream bad2("0 1 2\n");
  EXPECT_THROW(ReadWfstText(bad2), FstError);
}

TEST(ConnectTest, DropsUselessStates) {
  Wfst f;
  for (int i = 0; i < 4; ++i) f.AddState();
  f.SetStart(0);
  f.AddArc(0, {1, 1, 0.5, 1});
  f.AddArc(0, {2, 2, 0.5, 2});  // 2 is a dead end
  f.AddArc(3, {1, 1, 0.5, 1});  // 3 is unreachable
  f.SetFinal(1, 0);
  Wfst c = Connect(f);
  EXPECT_EQ(c.num_states(), 2);
  EXPECT_EQ(c.NumArcs(), 1u);
}

TEST(ShortestDistanceTest, ChainAndParallel) {
  Wfst f;
  for (int i = 0; i < 3; ++i) f.AddState();
  f.SetStart(0);
  f.AddArc(0, {1, 1, 1.0, 1});
  f.AddArc(0, {2, 2, 1.0, 1});
  f.AddArc(1, {1, 1, 0.5, 2});
  f.SetFinal(2, 0.25);
  auto fwd = ShortestDistance(f, false);
  EXPECT_NEAR(fwd[1], LogAdd(1.0, 1.0), 1e-12);
  EXPECT_NEAR(fwd[2], LogAdd(1.0, 1.0) + 0.5, 1e-12);
  auto rev = ShortestDistance(f, true);
  EXPECT_NEAR(rev[0], LogAdd(1.0, 1.0) + 0.75, 1e-12);
}

// ----------------------------------------------------------- composition

struct IoPath {
  std::vector<int> in, out;
  double weight;
};

void IoPaths(const Wfst& f, int s, std::vector<int>& in, std::vector<int>& out,
             double w, int left, std::vector<IoPath>& acc) {
  if (f.IsFinal(s)) acc.push_back({in, out, w + f.final_weight(s)});
  if (left == 0) return;
  for (const Arc& a : f.arcs(s)) {
    if (a.ilabel) in.push_back(a.ilabel);
    if (a.olabel) out.push_back(a.olabel);
    IoPaths(f, a.nextstate, in, out, w + a.weight, left - 1, acc);
    if (a.ilabel) in.pop_back();
    if (a.olabel) out.pop_back();
  }
}

std::map<std::pair<std::vector<int>, std::vector<int>>, double> Relation(
    const Wfst& f, int max_arcs) {
  std::vector<IoPath> paths;
  std::vector<int> in, out;
  IoPaths(f, f.start(), in, out, 0, max_arcs, paths);
  std::map<std::pair<std::vector<int>, std::vector<int>>, double> rel;
  for (auto& p : paths) {
    auto key = std::make_pair(p.in, p.out);
    auto it = rel.find(key);
    rel[key] = it == rel.end() ? p.weight : LogAdd(it->second, p.weight);
  }
  return rel;
}

Wfst Identity(int num_labels) {
  Wfst f;
  f.SetStart(f.AddState());
  f.SetFinal(0, 0);
  for (int l = 1; l <= num_labels; ++l) f.AddArc(0, {l, l, 0, 0});
  return f;
}

TEST(ComposeTest, IdentityPreservesWeights) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Wfst a = testing::RandomAcyclicFst(rng, 7, 3, 0.2);
    Wfst c = Compose(a, Identity(3));
    ExpectSameStringWeights(a, c, 12, 1e-12);
  }
}

TEST(ComposeTest, ChainsAddWeights) {
  Wfst a, b;
  a.AddState(), a.AddState();
  a.SetStart(0);
  a.AddArc(0, {1, 2, 0.5, 1});
  a.SetFinal(1, 0.25);
  b.AddState(), b.AddState();
  b.SetStart(0);
  b.AddArc(0, {2, 3, 0.7, 1});
  b.SetFinal(1, 0.1);
  auto rel = Relation(Compose(a, b), 5);
  ASSERT_EQ(rel.size(), 1u);
  EXPECT_EQ(rel.begin()->first.first, std::vector<int>{1});
  EXPECT_EQ(rel.begin()->first.second, std::vector<int>{3});
  EXPECT_NEAR(rel.begin()->second, 1.55, 1e-15);
}

TEST(ComposeTest, AlphabetMismatchRejected) {
  Wfst a;
  a.AddState(), a.AddState();
  a.SetStart(0);
  a.AddArc(0, {1, 9, 0, 1});
  a.SetFinal(1, 0);
  EXPECT_THROW(Compose(a, Identity(3)), FstError);
}

// Relation of A o B by brute force: join on the middle string.
TEST(ComposeTest, EpsilonFilterMatchesBruteForce) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    Wfst a = testing::RandomAcyclicFst(rng, 5, 2, 0.0);
    Wfst b = testing::RandomAcyclicFst(rng, 5, 2, 0.0);
    // Epsilon outputs on A and epsilon inputs on B.
    std::bernoulli_distribution coin(0.3);
    for (int s = 0; s < a.num_states(); ++s)
      for (Arc& arc : a.mutable_arcs(s))
        if (coin(rng)) arc.olabel = kEpsilon;
    for (int s = 0; s < b.num_states(); ++s)
      for (Arc& arc : b.mutable_arcs(s)) {
        arc.olabel = arc.ilabel + 2;
        if (coin(rng)) arc.ilabel = kEpsilon;
      }
    // A dead-end branch that reads every label keeps the alphabet check
    // satisfied without adding accepted pairs.
    int dead = b.AddState();
    for (int l = 1; l <= 2; ++l) b.AddArc(b.start(), {l, l + 2, 0.0, dead});
    auto ra = Relation(a, 10), rb = Relation(b, 10);
    std::map<std::pair<std::vector<int>, std::vector<int>>, double> want;
    for (auto& [xa, wa] : ra)
      for (auto& [xb, wb] : rb)
        if (xa.second == xb.first) {
          auto key = std::make_pair(xa.first, xb.second);
          auto it = want.find(key);
          want[key] = it == want.end() ? wa + wb : LogAdd(it->second, wa + wb);
        }
    auto got = Relation(Compose(a, b), 20);
    ASSERT_EQ(got.size(), want.size()) << "trial " << trial;
    for (auto& [k, w] : want) {
      ASSERT_TRUE(got.count(k)) << "trial " << trial;
      EXPECT_NEAR(got[k], w, 1e-12) << "trial " << trial;
    }
  }
}

// ------------------------------------------------------- determinization

TEST(DeterminizeTest, MergesParallelArcs) {
  Wfst f;
  f.AddState(), f.AddState();
  f.SetStart(0);
  f.AddArc(0, {1, 1, -std::log(0.1), 1});
  f.AddArc(0, {1, 1, -std::log(0.1), 1});
  f.SetFinal(1, 0);
  Wfst d = Determinize(f);
  ASSERT_TRUE(d.IsDeterministic());
  EXPECT_NEAR(InputStringWeight(d, {1}), -std::log(0.2), 1e-12);
  EXPECT_EQ(d.NumArcs(), 1u);
}

TEST(DeterminizeTest, DeterministicInputKeepsWeights) {
  Wfst f;
  for (int i = 0; i < 3; ++i) f.AddState();
  f.SetStart(0);
  f.AddArc(0, {1, 1, 0.3, 1});
  f.AddArc(0, {2, 2, 0.4, 2});
  f.AddArc(1, {1, 1, 0.2, 2});
  f.SetFinal(2, 0.1);
  ASSERT_TRUE(f.IsDeterministic());
  Wfst d = Determinize(f);
  EXPECT_TRUE(d.IsDeterministic());
  ExpectSameStringWeights(f, d, 6, 1e-12);
}

TEST(DeterminizeTest, RandomMachinesKeepStringWeights) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    Wfst f = testing::RandomAcyclicFst(rng, 4 + trial % 20, 3, 0.25);
    Wfst d = Determinize(f);
    ASSERT_TRUE(d.IsDeterministic());
    ExpectSameStringWeights(f, d, 30, 1e-9);
  }
}

TEST(DeterminizeTest, BudgetExceededIsReported) {
  // Two a-branches whose b-loops accumulate different weights: residuals
  // never repeat, so the subset construction does not terminate.
  Wfst f;
  for (int i = 0; i < 3; ++i) f.AddState();
  f.SetStart(0);
  f.AddArc(0, {1, 1, 1, 1});
  f.AddArc(0, {1, 1, 2, 2});
  f.AddArc(1, {2, 2, 1, 1});
  f.AddArc(2, {2, 2, 3, 2});
  f.SetFinal(1, 0);
  f.SetFinal(2, 0);
  DeterminizeOptions opts;
  opts.max_states = 50;
  try {
    Determinize(f, opts);
    FAIL() << "expected a budget error";
  } catch (const DeterminizeBudgetError& e) {
    EXPECT_NE(std::string(e.what()).find("nondeterminizable at budget"),
              std::string::npos);
  }
}

// ------------------------------------------------------- push / minimize

TEST(PushTest, KeepsWeightsAndIsIdempotent) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 30; ++trial) {
    Wfst f = testing::RandomAcyclicFst(rng, 4 + trial % 15, 3, 0.2);
    Wfst p = PushWeights(f);
    ExpectSameStringWeights(f, p, 30, 1e-9);
    Wfst pp = PushWeights(p);
    for (int s = 0; s < p.num_states(); ++s) {
      ASSERT_EQ(p.arcs(s).size(), pp.arcs(s).size());
      for (size_t i = 0; i < p.arcs(s).size(); ++i)
        EXPECT_NEAR(p.arcs(s)[i].weight, pp.arcs(s)[i].weight, 1e-12);
      if (p.IsFinal(s))
        EXPECT_NEAR(p.final_weight(s), pp.final_weight(s), 1e-12);
    }
  }
}

TEST(PushTest, PrefixWeightBoundsEveryCompletion) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    Wfst d =
        PushWeights(Determinize(testing::RandomAcyclicFst(rng, 10, 3, 0.1)));
    // Walk every path; the weight accumulated so far never exceeds the
    // weight of any accepting extension.
    std::function<double(int, double)> walk = [&](int s, double acc) {
      double best = d.IsFinal(s) ? acc + d.final_weight(s) : kInfWeight;
      for (const Arc& a : d.arcs(s))
        best = std::min(best, walk(a.nextstate, acc + a.weight));
      EXPECT_LE(acc, best + 1e-9);
      return best;
    };
    walk(d.start(), 0);
  }
}

TEST(MinimizeTest, MergesEquivalentStates) {
  Wfst f;
  for (int i = 0; i < 4; ++i) f.AddState();
  f.SetStart(0);
  f.AddArc(0, {1, 1, 1.0, 1});
  f.AddArc(0, {2, 2, 1.0, 2});
  f.AddArc(1, {3, 3, 0.5, 3});
  f.AddArc(2, {3, 3, 0.5, 3});
  f.SetFinal(3, 0);
  Wfst m = Minimize(f);
  EXPECT_EQ(m.num_states(), 3);
  ExpectSameStringWeights(f, m, 5, 1e-12);
}

TEST(MinimizeTest, RejectsNondeterministicInput) {
  Wfst f;
  f.AddState(), f.AddState();
  f.SetStart(0);
  f.AddArc(0, {1, 1, 0, 1});
  f.AddArc(0, {1, 1, 0, 0});
  f.SetFinal(1, 0);
  EXPECT_THROW(Minimize(f), FstError);
}

TEST(MinimizeTest, RandomMachinesKeepStringWeights) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    Wfst f = testing::RandomAcyclicFst(rng, 4 + trial % 20, 2, 0.2);
    Wfst d = Determinize(f);
    Wfst m = Minimize(d);
    EXPECT_LE(m.num_states(), d.num_states() + 1);
    ExpectSameStringWeights(f, m, 30, 1e-9);
  }
}

}  // namespace
}  // namespace arsg
