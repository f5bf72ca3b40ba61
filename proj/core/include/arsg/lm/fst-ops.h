// arsg/lm/fst-ops.h

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

#ifndef ARSG_LM_FST_OPS_H_
#define ARSG_LM_FST_OPS_H_

#include <vector>

#include "arsg/lm/wfst.h"

namespace arsg {

/// Raised when determinization exceeds its state budget. Callers fall back
/// to scoring with the nondeterministic machine.
class DeterminizeBudgetError : public FstError {
 public:
  using FstError::FstError;
};

struct ComposeOptions {
  /// Treat input-epsilon arcs of the right operand as failure transitions:
  /// taken only when the requested label has no arc at the current state.
  /// This gives exact backoff semantics for n-gram grammars.
  bool right_epsilon_as_failure = false;
};

/// Composition in the log semiring. Epsilons are handled with a sequencing
/// filter so that each pair of epsilon moves is counted once. Throws when A
/// emits a label that B never reads.
Wfst Compose(const Wfst& a, const Wfst& b, const ComposeOptions& opts = {});

/// Keeps only states that are both reachable and can reach a final state.
Wfst Connect(const Wfst& fst);

/// Log-semiring distances. Forward: from the start state to each state.
/// Reverse: from each state to the final states (including final weights).
/// Converges to `delta` on cyclic machines.
std::vector<double> ShortestDistance(const Wfst& fst, bool reverse,
                                     double delta = 1e-12);

struct DeterminizeOptions {
  int max_states = 1000000;
  double delta = 1e-10;  // residual quantization for subset identity
};

/// Determinizes the input-label acceptor of `fst` (output labels are
/// replaced by input labels). Every input string keeps its total weight.
Wfst Determinize(const Wfst& fst, const DeterminizeOptions& opts = {});

/// Moves weight toward the start state so that each state's outgoing mass
/// (arcs plus final weight) sums to one.
Wfst PushWeights(const Wfst& fst, double delta = 1e-12);

/// Pushes and then merges equivalent states of a deterministic machine.
Wfst Minimize(const Wfst& fst, double delta = 1e-9);

/// Total weight of an input string over all accepting paths.
double InputStringWeight(const Wfst& fst, const std::vector<int>& ilabels);

}  // namespace arsg

#endif  // ARSG_LM_FST_OPS_H_
