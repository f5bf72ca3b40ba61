// lm/fst-ops.cc

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

#include "arsg/lm/fst-ops.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include "lm/fst-internal.h"

namespace arsg {

namespace internal {

// Generic single-source distance (Mohri's relaxation with residuals). With
// `epsilon_only` only input-epsilon arcs are followed.
std::map<int, double> Closure(const Wfst& fst,
                              const std::map<int, double>& init,
                              bool epsilon_only, double delta) {
  std::map<int, double> d = init, r = init;
  std::deque<int> queue;
  std::set<int> queued;
  for (const auto& [s, w] : init) {
    queue.push_back(s);
    queued.insert(s);
  }
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    queued.erase(q);
    double rq = r[q];
    r[q] = kInfWeight;
    if (rq == kInfWeight) continue;
    for (const Arc& a : fst.arcs(q)) {
      if (epsilon_only && a.ilabel != kEpsilon) continue;
      const double nd = rq + a.weight;
      auto it = d.find(a.nextstate);
      double old = it == d.end() ? kInfWeight : it->second;
      double sum = LogPlus(old, nd);
      if (old != kInfWeight && std::abs(sum - old) <= delta) continue;
      d[a.nextstate] = sum;
      auto rit = r.find(a.nextstate);
      r[a.nextstate] = LogPlus(rit == r.end() ? kInfWeight : rit->second, nd);
      if (queued.insert(a.nextstate).second) queue.push_back(a.nextstate);
    }
  }
  return d;
}

}  // namespace internal

namespace {

using internal::Closure;

Wfst Reverse(const Wfst& fst) {
  Wfst rev;
  for (int s = 0; s < fst.num_states(); ++s) rev.AddState();
  for (int s = 0; s < fst.num_states(); ++s)
    for (const Arc& a : fst.arcs(s))
      rev.AddArc(a.nextstate, {a.ilabel, a.olabel, a.weight, s});
  return rev;
}

int64_t Quantize(double w, double delta) {
  if (w == kInfWeight) return std::numeric_limits<int64_t>::max();
  return std::llround(w / delta);
}

}  // namespace

std::vector<double> ShortestDistance(const Wfst& fst, bool reverse,
                                     double delta) {
  std::vector<double> out(fst.num_states(), kInfWeight);
  if (fst.start() < 0) return out;
  std::map<int, double> init;
  std::map<int, double> d;
  if (!reverse) {
    init[fst.start()] = 0;
    d = Closure(fst, init, false, delta);
  } else {
    Wfst rev = Reverse(fst);
    for (int s = 0; s < fst.num_states(); ++s)
      if (fst.IsFinal(s)) init[s] = fst.final_weight(s);
    d = Closure(rev, init, false, delta);
  }
  for (const auto& [s, w] : d) out[s] = w;
  return out;
}

Wfst Connect(const Wfst& fst) {
  const int n = fst.num_states();
  std::vector<char> acc(n, 0), coacc(n, 0);
  if (fst.start() >= 0) {
    std::vector<int> stack = {fst.start()};
    acc[fst.start()] = 1;
    while (!stack.empty()) {
      int s = stack.back();
      stack.pop_back();
      for (const Arc& a : fst.arcs(s))
        if (!acc[a.nextstate]) {
          acc[a.nextstate] = 1;
          stack.push_back(a.nextstate);
        }
    }
  }
  std::vector<std::vector<int>> preds(n);
  for (int s = 0; s < n; ++s)
    for (const Arc& a : fst.arcs(s)) preds[a.nextstate].push_back(s);
  std::vector<int> stack;
  for (int s = 0; s < n; ++s)
    if (fst.IsFinal(s)) {
      coacc[s] = 1;
      stack.push_back(s);
    }
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (int p : preds[s])
      if (!coacc[p]) {
        coacc[p] = 1;
        stack.push_back(p);
      }
  }
  Wfst out;
  std::vector<int> map(n, -1);
  for (int s = 0; s < n; ++s)
    if (acc[s] && coacc[s]) map[s] = out.AddState();
  if (fst.start() < 0 || map[fst.start()] < 0) {
    out = Wfst();
    out.SetStart(out.AddState());
    return out;
  }
  out.SetStart(map[fst.start()]);
  for (int s = 0; s < n; ++s) {
    if (map[s] < 0) continue;
    out.SetFinal(map[s], fst.final_weight(s));
    for (const Arc& a : fst.arcs(s))
      if (map[a.nextstate] >= 0)
        out.AddArc(map[s], {a.ilabel, a.olabel, a.weight, map[a.nextstate]});
  }
  return out;
}

Wfst Compose(const Wfst& a, const Wfst& b, const ComposeOptions& opts) {
  if (a.start() < 0 || b.start() < 0) throw FstError("compose: empty operand");
  std::set<int> b_inputs;
  for (int s = 0; s < b.num_states(); ++s)
    for (const Arc& e : b.arcs(s)) b_inputs.insert(e.ilabel);
  for (int s = 0; s < a.num_states(); ++s)
    for (const Arc& e : a.arcs(s))
      if (e.olabel != kEpsilon && !b_inputs.count(e.olabel))
        throw FstError("compose: alphabet mismatch, label " +
                       std::to_string(e.olabel) +
                       " is never read by the right operand");

  const bool failure = opts.right_epsilon_as_failure;
  // Failure arc per state of B (at most one).
  std::vector<const Arc*> fail(b.num_states(), nullptr);
  if (failure) {
    for (int s = 0; s < b.num_states(); ++s)
      for (const Arc& e : b.arcs(s))
        if (e.ilabel == kEpsilon) {
          if (fail[s]) throw FstError("compose: two failure arcs at a state");
          fail[s] = &e;
        }
  }
  auto follow_failure = [&](int qb, auto&& accept) {
    double w = 0;
    for (int steps = 0; qb >= 0 && steps <= b.num_states(); ++steps) {
      if (accept(qb, w)) return;
      if (!fail[qb]) return;
      w += fail[qb]->weight;
      qb = fail[qb]->nextstate;
    }
    throw FstError("compose: failure arcs form a cycle");
  };

  typedef std::tuple<int, int, int> Triple;
  std::map<Triple, int> ids;
  std::deque<Triple> queue;
  Wfst out;
  auto get = [&](int qa, int qb, int f) {
    Triple t{qa, qb, f};
    auto it = ids.find(t);
    if (it != ids.end()) return it->second;
    int id = out.AddState();
    ids.emplace(t, id);
    queue.push_back(t);
    return id;
  };
  out.SetStart(get(a.start(), b.start(), 0));

  while (!queue.empty()) {
    auto [qa, qb, f] = queue.front();
    queue.pop_front();
    const int src = ids.at({qa, qb, f});

    if (a.IsFinal(qa)) {
      double bf = kInfWeight;
      if (!failure) {
        bf = b.final_weight(qb);
      } else {
        follow_failure(qb, [&](int s, double w) {
          if (!b.IsFinal(s)) return false;
          bf = w + b.final_weight(s);
          return true;
        });
      }
      if (bf < kInfWeight) out.SetFinal(src, a.final_weight(qa) + bf);
    }

    for (const Arc& ea : a.arcs(qa)) {
      if (ea.olabel == kEpsilon) {
        if (f == 0)
          out.AddArc(
              src, {ea.ilabel, kEpsilon, ea.weight, get(ea.nextstate, qb, 0)});
        continue;
      }
      if (!failure) {
        for (const Arc& eb : b.arcs(qb))
          if (eb.ilabel == ea.olabel)
            out.AddArc(src, {ea.ilabel, eb.olabel, ea.weight + eb.weight,
                             get(ea.nextstate, eb.nextstate, 0)});
      } else {
        follow_failure(qb, [&](int s, double w) {
          bool found = false;
          for (const Arc& eb : b.arcs(s))
            if (eb.ilabel == ea.olabel) {
              found = true;
              out.AddArc(src, {ea.ilabel, eb.olabel, ea.weight + w + eb.weight,
                               get(ea.nextstate, eb.nextstate, 0)});
            }
          return found;
        });
      }
    }
    if (!failure) {
      for (const Arc& eb : b.arcs(qb))
        if (eb.ilabel == kEpsilon)
          out.AddArc(
              src, {kEpsilon, eb.olabel, eb.weight, get(qa, eb.nextstate, 1)});
    }
  }
  return Connect(out);
}

Wfst Determinize(const Wfst& fst, const DeterminizeOptions& opts) {
  if (fst.start() < 0) throw FstError("determinize: no start state");
  typedef std::vector<std::pair<int, double>> Subset;
  typedef std::vector<std::pair<int, int64_t>> Key;
  auto key_of = [&](const Subset& s) {
    Key k;
    k.reserve(s.size());
    for (const auto& [q, r] : s) k.emplace_back(q, Quantize(r, opts.delta));
    return k;
  };

  Wfst out;
  std::map<Key, int> ids;
  std::vector<Subset> subsets;
  auto get = [&](Subset s) {
    Key k = key_of(s);
    auto it = ids.find(k);
    if (it != ids.end()) return it->second;
    if (out.num_states() >= opts.max_states)
      throw DeterminizeBudgetError(
          "nondeterminizable at budget: more than " +
          std::to_string(opts.max_states) +
          " states; use the nondeterministic machine instead");
    int id = out.AddState();
    ids.emplace(std::move(k), id);
    subsets.push_back(std::move(s));
    return id;
  };

  auto closed = Closure(fst, {{fst.start(), 0.0}}, true, opts.delta * 1e-3);
  out.SetStart(get(Subset(closed.begin(), closed.end())));

  for (int id = 0; id < out.num_states(); ++id) {
    const Subset cur = subsets[id];
    double fw = kInfWeight;
    for (const auto& [q, r] : cur) fw = LogPlus(fw, r + fst.final_weight(q));
    if (fw < kInfWeight) out.SetFinal(id, fw);

    std::map<int, std::map<int, double>> by_label;
    for (const auto& [q, r] : cur)
      for (const Arc& a : fst.arcs(q)) {
        if (a.ilabel == kEpsilon) continue;
        auto& slot = by_label[a.ilabel];
        auto it = slot.find(a.nextstate);
        double prev = it == slot.end() ? kInfWeight : it->second;
        slot[a.nextstate] = LogPlus(prev, r + a.weight);
      }
    for (auto& [label, dest] : by_label) {
      auto cl = Closure(fst, dest, true, opts.delta * 1e-3);
      double total = kInfWeight;
      for (const auto& [q, w] : cl) total = LogPlus(total, w);
      if (total == kInfWeight) continue;
      Subset next;
      next.reserve(cl.size());
      for (const auto& [q, w] : cl)
        if (w < kInfWeight) next.emplace_back(q, w - total);
      int target = get(std::move(next));
      out.AddArc(id, {label, label, total, target});
    }
  }
  return out;
}

Wfst PushWeights(const Wfst& input, double delta) {
  Wfst fst = Connect(input);
  std::vector<double> v = ShortestDistance(fst, true, delta);
  const int start = fst.start();
  if (v[start] == kInfWeight) return fst;
  Wfst out;
  for (int s = 0; s < fst.num_states(); ++s) out.AddState();
  bool start_has_incoming = false;
  for (int s = 0; s < fst.num_states(); ++s) {
    if (fst.IsFinal(s)) out.SetFinal(s, fst.final_weight(s) - v[s]);
    for (const Arc& a : fst.arcs(s)) {
      if (a.nextstate == start) start_has_incoming = true;
      out.AddArc(s, {a.ilabel, a.olabel, a.weight + v[a.nextstate] - v[s],
                     a.nextstate});
    }
  }
  // Fold the total weight onto the start state's outgoing arcs.
  int new_start = start;
  if (start_has_incoming) new_start = out.AddState();
  for (const Arc& a : std::vector<Arc>(out.arcs(start))) {
    Arc b = a;
    b.weight += v[start];
    if (start_has_incoming) out.AddArc(new_start, b);
  }
  if (!start_has_incoming)
    for (Arc& a : out.mutable_arcs(start)) a.weight += v[start];
  if (fst.IsFinal(start)) out.SetFinal(new_start, fst.final_weight(start));
  out.SetStart(new_start);
  return out;
}

Wfst Minimize(const Wfst& input, double delta) {
  if (!input.IsDeterministic())
    throw FstError("minimize: input must be deterministic");
  Wfst fst = PushWeights(input);
  const int n = fst.num_states();
  std::vector<int> block(n);
  {
    std::map<int64_t, int> ids;
    for (int s = 0; s < n; ++s) {
      auto q = Quantize(fst.final_weight(s), delta);
      auto it = ids.emplace(q, static_cast<int>(ids.size())).first;
      block[s] = it->second;
    }
  }
  int num_blocks = -1;
  typedef std::tuple<int, int, int64_t, int> Edge;
  while (true) {
    std::map<std::pair<int, std::vector<Edge>>, int> ids;
    std::vector<int> next(n);
    for (int s = 0; s < n; ++s) {
      std::vector<Edge> sig;
      for (const Arc& a : fst.arcs(s))
        sig.emplace_back(a.ilabel, a.olabel, Quantize(a.weight, delta),
                         block[a.nextstate]);
      std::sort(sig.begin(), sig.end());
      auto it = ids.emplace(std::make_pair(block[s], std::move(sig)),
                            static_cast<int>(ids.size()))
                    .first;
      next[s] = it->second;
    }
    const int count = static_cast<int>(ids.size());
    block.swap(next);
    if (count == num_blocks) break;
    num_blocks = count;
  }
  // Renumber blocks by first occurrence.
  std::vector<int> renum(num_blocks, -1);
  std::vector<int> rep;
  for (int s = 0; s < n; ++s)
    if (renum[block[s]] < 0) {
      renum[block[s]] = static_cast<int>(rep.size());
      rep.push_back(s);
    }
  Wfst out;
  for (size_t b = 0; b < rep.size(); ++b) out.AddState();
  for (size_t b = 0; b < rep.size(); ++b) {
    int s = rep[b];
    if (fst.IsFinal(s)) out.SetFinal(static_cast<int>(b), fst.final_weight(s));
    for (const Arc& a : fst.arcs(s))
      out.AddArc(static_cast<int>(b),
                 {a.ilabel, a.olabel, a.weight, renum[block[a.nextstate]]});
  }
  out.SetStart(renum[block[fst.start()]]);
  return out;
}

double InputStringWeight(const Wfst& fst, const std::vector<int>& ilabels) {
  if (fst.start() < 0) return kInfWeight;
  auto cur = Closure(fst, {{fst.start(), 0.0}}, true, 1e-14);
  for (int label : ilabels) {
    std::map<int, double> next;
    for (const auto& [q, r] : cur)
      for (const Arc& a : fst.arcs(q))
        if (a.ilabel == label) {
          auto it = next.find(a.nextstate);
          next[a.nextstate] =
              LogPlus(it == next.end() ? kInfWeight : it->second, r + a.weight);
        }
    if (next.empty()) return kInfWeight;
    cur = Closure(fst, next, true, 1e-14);
  }
  double total = kInfWeight;
  for (const auto& [q, r] : cur)
    total = LogPlus(total, r + fst.final_weight(q));
  return total;
}

}  // namespace arsg
