// lm/lm-builder.cc

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

#include "arsg/lm/lm-builder.h"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <unordered_map>

#include "arsg/lm/fst-ops.h"

namespace arsg {

namespace {

double NegLn(double log10_value) { return -log10_value * std::numbers::ln10; }

}  // namespace

Wfst BuildGrammarFst(const ArpaModel& arpa,
                     const std::vector<std::string>& words) {
  if (arpa.order() < 1) throw FstError("grammar: empty ARPA model");
  std::unordered_map<std::string, int> label;
  for (size_t i = 0; i < words.size(); ++i)
    label.emplace(words[i], static_cast<int>(i) + 1);

  typedef ArpaModel::Ngram History;
  Wfst g;
  std::map<History, int> states;
  states[{}] = g.AddState();
  for (int n = 1; n < arpa.order(); ++n)
    for (const auto& [ng, e] : arpa.ngrams[n - 1])
      if (ng.back() != ArpaModel::kEos) states.emplace(ng, g.AddState());

  const size_t max_hist = static_cast<size_t>(arpa.order()) - 1;
  auto dest = [&](const History& h) {
    size_t len = std::min(h.size(), max_hist);
    for (;; --len) {
      History suffix(h.end() - len, h.end());
      auto it = states.find(suffix);
      if (it != states.end()) return it->second;
      if (len == 0) break;
    }
    return states.at({});
  };

  for (int n = 1; n <= arpa.order(); ++n) {
    for (const auto& [ng, e] : arpa.ngrams[n - 1]) {
      History h(ng.begin(), ng.end() - 1);
      auto src_it = states.find(h);
      if (src_it == states.end()) continue;  // context ends in </s>
      const int src = src_it->second;
      const std::string& w = ng.back();
      if (w == ArpaModel::kBos) continue;
      if (w == ArpaModel::kEos) {
        g.SetFinal(src, NegLn(e.log10_prob));
        continue;
      }
      auto lit = label.find(w);
      if (lit == label.end()) continue;
      g.AddArc(src, {lit->second, lit->second, NegLn(e.log10_prob), dest(ng)});
    }
  }
  // Backoff arcs.
  for (const auto& [h, s] : states) {
    if (h.empty()) continue;
    const ArpaModel::Entry* e = arpa.Find(h);
    double bo = e && e->log10_backoff ? NegLn(*e->log10_backoff) : 0.0;
    History shorter(h.begin() + 1, h.end());
    g.AddArc(s, {kEpsilon, kEpsilon, bo, dest(shorter)});
  }
  auto bos = states.find({ArpaModel::kBos});
  g.SetStart(bos != states.end() ? bos->second : states.at({}));
  return g;
}

Wfst BuildLexiconFst(const std::vector<std::string>& words,
                     const Alphabet& alphabet) {
  if (alphabet.space() < 0)
    throw FstError("lexicon: alphabet has no space character");
  Wfst l;
  const int root = l.AddState();
  l.SetStart(root);
  l.SetFinal(root, 0);
  const int space = CharLabel(alphabet.space());
  for (size_t i = 0; i < words.size(); ++i) {
    const std::string& w = words[i];
    if (w.empty()) throw FstError("lexicon: empty word");
    std::vector<int> chars;
    for (char c : w) {
      auto idx = alphabet.FromChar(c);
      if (!idx || *idx == alphabet.space())
        throw FstError("lexicon: word '" + w + "' contains character '" +
                       std::string(1, c) + "' outside the alphabet");
      chars.push_back(CharLabel(*idx));
    }
    int prev = root;
    for (size_t k = 0; k < chars.size(); ++k) {
      int next = l.AddState();
      int out = k == 0 ? static_cast<int>(i) + 1 : kEpsilon;
      l.AddArc(prev, {chars[k], out, 0.0, next});
      prev = next;
    }
    l.AddArc(prev, {space, kEpsilon, 0.0, root});
  }
  return l;
}

CharLm BuildCharLm(const ArpaModel& arpa, std::vector<std::string> vocab,
                   const Alphabet& alphabet, const CharLmOptions& opts) {
  if (vocab.empty()) vocab = arpa.Vocabulary();
  std::set<std::string> seen;
  for (const std::string& w : vocab) {
    if (!arpa.Find({w}))
      throw FstError("word '" + w + "' is not in the language model");
    if (!seen.insert(w).second)
      throw FstError("word '" + w + "' listed twice in the vocabulary");
  }
  Wfst l = BuildLexiconFst(vocab, alphabet);
  Wfst g = BuildGrammarFst(arpa, vocab);
  ComposeOptions copts;
  copts.right_epsilon_as_failure = true;
  CharLm lm;
  lm.words = vocab;
  lm.fst = Compose(l, g, copts);
  if (opts.determinize) {
    DeterminizeOptions dopts;
    dopts.max_states = opts.max_states;
    lm.fst = Minimize(Determinize(lm.fst, dopts));
    lm.determinized = true;
  }
  return lm;
}

std::vector<std::string> ReadVocabulary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FstError("cannot open vocabulary " + path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    size_t e = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace arsg
