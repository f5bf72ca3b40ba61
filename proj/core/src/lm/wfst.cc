// lm/wfst.cc

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

#include "arsg/lm/wfst.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

namespace arsg {

double LogPlus(double a, double b) {
  if (a == kInfWeight) return b;
  if (b == kInfWeight) return a;
  double lo = std::min(a, b), hi = std::max(a, b);
  return lo - std::log1p(std::exp(lo - hi));
}

int Wfst::AddState() {
  arcs_.emplace_back();
  final_.push_back(kInfWeight);
  return num_states() - 1;
}

void Wfst::AddArc(int state, const Arc& arc) {
  if (state < 0 || state >= num_states() || arc.nextstate < 0 ||
      arc.nextstate >= num_states())
    throw FstError("arc references a nonexistent state");
  if (arc.ilabel < 0 || arc.olabel < 0) throw FstError("negative arc label");
  if (std::isnan(arc.weight)) throw FstError("NaN arc weight");
  arcs_[state].push_back(arc);
}

void Wfst::SetStart(int s) {
  if (s < 0 || s >= num_states()) throw FstError("start state out of range");
  start_ = s;
}

void Wfst::SetFinal(int s, double weight) {
  if (std::isnan(weight)) throw FstError("NaN final weight");
  final_.at(s) = weight;
}

size_t Wfst::NumArcs() const {
  size_t n = 0;
  for (const auto& a : arcs_) n += a.size();
  return n;
}

bool Wfst::HasInputEpsilons() const {
  for (const auto& v : arcs_)
    for (const Arc& a : v)
      if (a.ilabel == kEpsilon) return true;
  return false;
}

bool Wfst::IsDeterministic() const {
  for (const auto& v : arcs_) {
    std::vector<int> labels;
    for (const Arc& a : v) {
      if (a.ilabel == kEpsilon) return false;
      labels.push_back(a.ilabel);
    }
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
      return false;
  }
  return true;
}

void Wfst::SortArcs() {
  for (auto& v : arcs_)
    std::sort(v.begin(), v.end(), [](const Arc& a, const Arc& b) {
      return std::tie(a.ilabel, a.olabel, a.nextstate, a.weight) <
             std::tie(b.ilabel, b.olabel, b.nextstate, b.weight);
    });
}

namespace {

std::string FormatWeight(double w) {
  if (w == kInfWeight) return "Infinity";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", w);
  return buf;
}

double ParseWeight(const std::string& s, int line_no) {
  if (s == "Infinity" || s == "inf") return kInfWeight;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw FstError("line " + std::to_string(line_no) + ": bad weight '" + s +
                   "'");
  return v;
}

int ParseIndex(const std::string& s, int line_no) {
  try {
    size_t used = 0;
    long v = std::stol(s, &used);
    if (used == s.size() && v >= 0 && v < (1L << 31))
      return static_cast<int>(v);
  } catch (const std::exception&) {
  }
  throw FstError("line " + std::to_string(line_no) + ": bad integer '" + s +
                 "'");
}

}  // namespace

void WriteWfstText(const Wfst& fst, std::ostream& out) {
  if (fst.start() < 0) return;
  std::vector<int> order = {fst.start()};
  for (int s = 0; s < fst.num_states(); ++s)
    if (s != fst.start()) order.push_back(s);
  // Guarantee the start state appears first even if it has no arcs.
  bool start_written = false;
  for (int s : order) {
    for (const Arc& a : fst.arcs(s)) {
      out << s << '\t' << a.nextstate << '\t' << a.ilabel << '\t' << a.olabel
          << '\t' << FormatWeight(a.weight) << '\n';
      start_written = true;
    }
    if (fst.IsFinal(s)) {
      out << s << '\t' << FormatWeight(fst.final_weight(s)) << '\n';
      start_written = true;
    }
    if (!start_written)
      throw FstError("start state has neither arcs nor a final weight");
  }
}

Wfst ReadWfstText(std::istream& in) {
  Wfst fst;
  auto ensure = [&fst](int s) {
    while (fst.num_states() <= s) fst.AddState();
  };
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string s; fields >> s;) tok.push_back(s);
    if (tok.empty()) continue;
    if (tok.size() == 5) {
      int src = ParseIndex(tok[0], line_no), dst = ParseIndex(tok[1], line_no);
      ensure(std::max(src, dst));
      if (fst.start() < 0) fst.SetStart(src);
      fst.AddArc(src, {ParseIndex(tok[2], line_no), ParseIndex(tok[3], line_no),
                       ParseWeight(tok[4], line_no), dst});
    } else if (tok.size() == 2 || tok.size() == 1) {
      int s = ParseIndex(tok[0], line_no);
      ensure(s);
      if (fst.start() < 0) fst.SetStart(s);
      fst.SetFinal(s, tok.size() == 2 ? ParseWeight(tok[1], line_no) : 0.0);
    } else {
      throw FstError("line " + std::to_string(line_no) +
                     ": expected 5 fields (arc) or 1-2 fields (final)");
    }
  }
  return fst;
}

void WriteWfstFile(const Wfst& fst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FstError("cannot write " + path);
  WriteWfstText(fst, out);
  if (!out) throw FstError("error writing " + path);
}

Wfst ReadWfstFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FstError("cannot open " + path);
  return ReadWfstText(in);
}

}  // namespace arsg
