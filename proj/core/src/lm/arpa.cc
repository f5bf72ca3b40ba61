// lm/arpa.cc

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

#include "arsg/lm/arpa.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace arsg {

namespace {

std::string Trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double ParseNumber(const std::string& tok, int line_no) {
  // strtod accepts the "-99" and "-inf" conventions; from_chars for doubles
  // is missing from older libstdc++.
  char* end = nullptr;
  double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0')
    throw ArpaError("line " + std::to_string(line_no) + ": bad number '" + tok +
                    "'");
  return v;
}

std::string FormatNumber(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

const ArpaModel::Entry* ArpaModel::Find(const Ngram& ngram) const {
  if (ngram.empty() || ngram.size() > ngrams.size()) return nullptr;
  const auto& table = ngrams[ngram.size() - 1];
  auto it = table.find(ngram);
  return it == table.end() ? nullptr : &it->second;
}

std::optional<double> ArpaModel::Log10Prob(std::span<const std::string> history,
                                           const std::string& word) const {
  size_t keep = std::min(history.size(), ngrams.size() - 1);
  history = history.subspan(history.size() - keep);
  double backoff = 0;
  for (size_t start = 0; start <= history.size(); ++start) {
    Ngram ng(history.begin() + start, history.end());
    ng.push_back(word);
    if (const Entry* e = Find(ng)) return backoff + e->log10_prob;
    Ngram ctx(history.begin() + start, history.end());
    if (!ctx.empty())
      if (const Entry* c = Find(ctx)) backoff += c->log10_backoff.value_or(0);
  }
  return std::nullopt;
}

std::optional<double> ArpaModel::SentenceLog10Prob(
    std::span<const std::string> words) const {
  std::vector<std::string> history = {kBos};
  double total = 0;
  for (const std::string& w : words) {
    auto p = Log10Prob(history, w);
    if (!p) return std::nullopt;
    total += *p;
    history.push_back(w);
  }
  auto p = Log10Prob(history, kEos);
  if (!p) return std::nullopt;
  return total + *p;
}

std::vector<std::string> ArpaModel::Vocabulary() const {
  std::vector<std::string> out;
  if (ngrams.empty()) return out;
  for (const auto& [ng, e] : ngrams[0])
    if (ng[0] != kBos && ng[0] != kEos) out.push_back(ng[0]);
  return out;
}

ArpaModel ParseArpa(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) lines.push_back(Trim(l));
  }
  auto where = [](size_t i) { return "line " + std::to_string(i + 1) + ": "; };
  size_t i = 0;
  while (i < lines.size() && lines[i] != "\\data\\") ++i;
  if (i == lines.size()) throw ArpaError("missing \\data\\ section");
  ++i;

  std::vector<size_t> counts;
  for (; i < lines.size(); ++i) {
    const std::string& t = lines[i];
    if (t.empty()) {
      if (!counts.empty()) break;
      continue;
    }
    if (t.front() == '\\') break;
    if (t.rfind("ngram ", 0) != 0)
      throw ArpaError(where(i) + "expected 'ngram N=count'");
    size_t eq = t.find('=');
    if (eq == std::string::npos) throw ArpaError(where(i) + "missing '='");
    int n = 0;
    long c = 0;
    try {
      n = std::stoi(t.substr(6, eq - 6));
      c = std::stol(t.substr(eq + 1));
    } catch (const std::exception&) {
      throw ArpaError(where(i) + "bad ngram count");
    }
    if (n != static_cast<int>(counts.size()) + 1 || c < 0)
      throw ArpaError(where(i) + "ngram orders must be listed as 1, 2, ...");
    counts.push_back(static_cast<size_t>(c));
  }
  if (counts.empty()) throw ArpaError("\\data\\ section declares no n-grams");

  ArpaModel model;
  model.ngrams.resize(counts.size());
  int current = 0;
  bool ended = false;
  for (; i < lines.size(); ++i) {
    const std::string& t = lines[i];
    if (t.empty()) continue;
    if (t == "\\end\\") {
      ended = true;
      break;
    }
    if (t.front() == '\\') {
      int n = 0;
      char tail = 0;
      if (std::sscanf(t.c_str(), "\\%d-grams%c", &n, &tail) != 2 ||
          tail != ':' || n < 1 || n > static_cast<int>(counts.size()))
        throw ArpaError(where(i) + "malformed section header '" + t + "'");
      current = n;
      continue;
    }
    if (current == 0) throw ArpaError(where(i) + "n-gram outside any section");
    std::istringstream fields(t);
    std::vector<std::string> tok;
    for (std::string s; fields >> s;) tok.push_back(s);
    const size_t n = static_cast<size_t>(current);
    if (tok.size() != n + 1 && tok.size() != n + 2)
      throw ArpaError(where(i) + "expected " + std::to_string(n) + " words");
    ArpaModel::Entry e;
    e.log10_prob = ParseNumber(tok[0], static_cast<int>(i) + 1);
    if (tok.size() == n + 2)
      e.log10_backoff = ParseNumber(tok[n + 1], static_cast<int>(i) + 1);
    ArpaModel::Ngram ng(tok.begin() + 1, tok.begin() + 1 + n);
    if (!model.ngrams[n - 1].emplace(ng, e).second)
      throw ArpaError(where(i) + "duplicate n-gram");
  }
  if (!ended) throw ArpaError("missing \\end\\ marker");

  for (size_t n = 0; n < counts.size(); ++n) {
    if (model.ngrams[n].size() != counts[n])
      throw ArpaError("count mismatch for " + std::to_string(n + 1) +
                      "-grams: declared " + std::to_string(counts[n]) +
                      ", found " + std::to_string(model.ngrams[n].size()));
  }
  for (size_t n = 1; n < counts.size(); ++n) {
    for (const auto& [ng, e] : model.ngrams[n]) {
      ArpaModel::Ngram ctx(ng.begin(), ng.end() - 1);
      if (!model.Find(ctx)) {
        std::string words;
        for (const auto& w : ng) words += (words.empty() ? "" : " ") + w;
        throw ArpaError("n-gram '" + words + "' references unknown context");
      }
    }
  }
  return model;
}

ArpaModel ReadArpaFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArpaError("cannot open ARPA file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseArpa(buf.str());
}

std::string WriteArpa(const ArpaModel& model) {
  std::ostringstream out;
  out << "\\data\\\n";
  for (int n = 0; n < model.order(); ++n)
    out << "ngram " << n + 1 << "=" << model.ngrams[n].size() << "\n";
  for (int n = 0; n < model.order(); ++n) {
    out << "\n\\" << n + 1 << "-grams:\n";
    for (const auto& [ng, e] : model.ngrams[n]) {
      out << FormatNumber(e.log10_prob);
      for (const auto& w : ng) out << "\t" << w;
      if (e.log10_backoff) out << "\t" << FormatNumber(*e.log10_backoff);
      out << "\n";
    }
  }
  out << "\n\\end\\\n";
  return out.str();
}

}  // namespace arsg
