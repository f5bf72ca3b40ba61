// arsg/lm/wfst.h

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

// Weighted transducers over the log semiring. Weights are -ln probabilities:
// Times is +, Plus is -ln(e^-a + e^-b), Zero is +inf, One is 0.

#ifndef ARSG_LM_WFST_H_
#define ARSG_LM_WFST_H_

#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace arsg {

class FstError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr double kInfWeight = std::numeric_limits<double>::infinity();
constexpr int kEpsilon = 0;

/// Log-semiring sum, computed stably. LogPlus(a, inf) == a.
double LogPlus(double a, double b);

struct Arc {
  int ilabel = kEpsilon;
  int olabel = kEpsilon;
  double weight = 0;
  int nextstate = -1;
};

class Wfst {
 public:
  int AddState();
  void AddArc(int state, const Arc& arc);
  void SetStart(int s);
  void SetFinal(int s, double weight);

  int start() const { return start_; }
  int num_states() const { return static_cast<int>(arcs_.size()); }
  size_t NumArcs() const;
  const std::vector<Arc>& arcs(int s) const { return arcs_.at(s); }
  std::vector<Arc>& mutable_arcs(int s) { return arcs_.at(s); }
  double final_weight(int s) const { return final_.at(s); }
  bool IsFinal(int s) const { return final_.at(s) < kInfWeight; }

  /// At most one arc per (state, input label) and no input epsilons.
  bool IsDeterministic() const;
  bool HasInputEpsilons() const;
  /// Sorts each state's arcs by (ilabel, olabel, nextstate).
  void SortArcs();

 private:
  int start_ = -1;
  std::vector<std::vector<Arc>> arcs_;
  std::vector<double> final_;
};

/// Text form, one entry per line:
///   src dst ilabel olabel weight   (arc)
///   state weight                   (final state)
/// The first field of the first line is the start state. Weights are -ln.
void WriteWfstText(const Wfst& fst, std::ostream& out);
Wfst ReadWfstText(std::istream& in);
void WriteWfstFile(const Wfst& fst, const std::string& path);
Wfst ReadWfstFile(const std::string& path);

}  // namespace arsg

#endif  // ARSG_LM_WFST_H_
