// lm/prefix-scorer.cc

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

#include "arsg/lm/prefix-scorer.h"

#include <map>
#include <stdexcept>

#include "arsg/lm/lm-builder.h"
#include "lm/fst-internal.h"

namespace arsg {

namespace {

constexpr double kClosureDelta = 1e-14;

}  // namespace

PrefixScorer::PrefixScorer(const Wfst& fst, const Alphabet& alphabet)
    : fst_(fst), alphabet_(alphabet) {
  if (fst.start() < 0) throw FstError("prefix scorer: empty machine");
}

PrefixScorer::State PrefixScorer::Start() const {
  State s;
  auto closed =
      internal::Closure(fst_, {{fst_.start(), 0.0}}, true, kClosureDelta);
  s.entries.assign(closed.begin(), closed.end());
  return s;
}

std::pair<PrefixScorer::State, double> PrefixScorer::Advance(
    const State& state, int fst_label) const {
  std::map<int, double> next;
  for (const auto& [q, r] : state.entries)
    for (const Arc& a : fst_.arcs(q))
      if (a.ilabel == fst_label) {
        auto it = next.find(a.nextstate);
        next[a.nextstate] =
            LogPlus(it == next.end() ? kInfWeight : it->second, r + a.weight);
      }
  State out;
  double mass = kInfWeight;
  for (const auto& [q, w] : next) mass = LogPlus(mass, w);
  if (mass == kInfWeight) {
    out.cost = kInfWeight;
    out.finished = true;
    return {out, kInfWeight};
  }
  for (auto& [q, w] : next) w -= mass;
  auto closed = internal::Closure(fst_, next, true, kClosureDelta);
  out.entries.assign(closed.begin(), closed.end());
  out.cost = state.cost + mass;
  return {out, mass};
}

std::pair<PrefixScorer::State, double> PrefixScorer::Step(const State& state,
                                                          int label) const {
  if (state.finished)
    throw std::logic_error("prefix scorer: step after end of sequence");
  if (!alphabet_.IsValid(label))
    throw std::out_of_range("prefix scorer: label outside alphabet");
  if (label != alphabet_.eos()) {
    auto [next, inc] = Advance(state, CharLabel(label));
    next.needs_separator = label != alphabet_.space();
    return {next, inc};
  }
  State cur = state;
  double inc = 0;
  if (state.needs_separator) {
    auto [next, sep] = Advance(state, CharLabel(alphabet_.space()));
    if (sep == kInfWeight) return {next, kInfWeight};
    cur = std::move(next);
    inc = sep;
  }
  double fw = kInfWeight;
  for (const auto& [q, r] : cur.entries)
    fw = LogPlus(fw, r + fst_.final_weight(q));
  State done;
  done.finished = true;
  if (fw == kInfWeight) {
    done.cost = kInfWeight;
    return {done, kInfWeight};
  }
  done.cost = cur.cost + fw;
  return {done, inc + fw};
}

double PrefixScorer::Score(const std::vector<int>& labels) const {
  State s = Start();
  double total = 0;
  for (int l : labels) {
    auto [next, inc] = Step(s, l);
    total += inc;
    if (total == kInfWeight) return kInfWeight;
    s = std::move(next);
  }
  return total;
}

}  // namespace arsg
