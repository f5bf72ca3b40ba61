// arsg/nn/graph.h

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

// Define-by-run reverse-mode differentiation over the small operation set the
// recognizer needs. A Graph records each op as it executes; Backward() replays
// the adjoints in reverse order. Graphs are cheap and meant to be rebuilt for
// every utterance (or every decoding step).

#ifndef ARSG_NN_GRAPH_H_
#define ARSG_NN_GRAPH_H_

#include <deque>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "arsg/nn/tensor.h"

namespace arsg {

struct Parameter {
  enum class Kind {
    kMatrix,        // [out x in]; each row is the fan-in of one unit
    kFilter,        // [k x f] convolution filter; each column is one channel
    kWeightVector,  // a single unit's fan-in stored as a vector
    kBias,
    kEmbedding,
  };

  std::string name;
  Tensor value;
  Tensor grad;
  Kind kind = Kind::kMatrix;
  int index = -1;  // position inside the owning ParameterSet

  bool IsNormConstrained() const {
    return kind == Kind::kMatrix || kind == Kind::kFilter ||
           kind == Kind::kWeightVector;
  }
};

/// Owns a model's parameters. Addresses are stable for the set's lifetime.
class ParameterSet {
 public:
  ParameterSet() = default;
  ParameterSet(const ParameterSet&) = delete;
  ParameterSet& operator=(const ParameterSet&) = delete;

  Parameter& Add(std::string name, std::vector<int> shape,
                 Parameter::Kind kind);

  Parameter* Find(std::string_view name);
  const Parameter* Find(std::string_view name) const;
  Parameter& at(std::string_view name);

  size_t size() const { return params_.size(); }
  Parameter& operator[](size_t i) { return *params_[i]; }
  const Parameter& operator[](size_t i) const { return *params_[i]; }

  auto begin() { return params_.begin(); }
  auto end() { return params_.end(); }
  auto begin() const { return params_.begin(); }
  auto end() const { return params_.end(); }

  void ZeroGrad();
  /// Zero tensors shaped like each parameter, indexed by Parameter::index.
  std::vector<Tensor> MakeGradientBuffers() const;
  size_t TotalElements() const;

 private:
  std::vector<std::unique_ptr<Parameter>> params_;
  std::unordered_map<std::string, Parameter*> by_name_;
};

/// Handle to a value recorded in a Graph.
struct Var {
  int id = -1;
  bool valid() const { return id >= 0; }
};

class Graph {
 public:
  /// With requires_grad == false no adjoints are recorded (inference mode).
  explicit Graph(bool requires_grad = true) : requires_grad_(requires_grad) {}
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  // Leaves.
  Var Constant(Tensor t);
  /// Borrows `t`; it must outlive the graph.
  Var ConstantRef(const Tensor& t);
  /// One node per parameter per graph; repeated calls return the same Var.
  Var Param(Parameter& p);

  const Tensor& Value(Var v) const { return *nodes_[v.id].value; }
  Real Scalar(Var v) const { return (*nodes_[v.id].value)[0]; }
  size_t num_nodes() const { return nodes_.size(); }
  bool requires_grad() const { return requires_grad_; }

  // Linear algebra.
  Var MatVec(Var w, Var x);
  Var Affine(Var w, Var x, Var b);
  /// M [r x m], W [n x m] -> M W^T [r x n].
  Var MatMulT(Var m, Var w);
  Var Dot(Var a, Var b);

  // Elementwise.
  Var Add(Var a, Var b);
  Var Sub(Var a, Var b);
  Var Mul(Var a, Var b);
  Var Scale(Var a, Real s);
  Var Tanh(Var a);
  Var Sigmoid(Var a);
  /// (1 - z) * h_prev + z * h_new.
  Var GruBlend(Var z, Var h_prev, Var h_new);

  // Reductions / shape.
  Var AddN(std::span<const Var> xs);
  Var SumAll(Var a);
  Var Concat(std::span<const Var> parts);
  Var Row(Var m, int r);
  Var Stack(std::span<const Var> rows);
  Var Softmax(Var a);
  Var LogSoftmax(Var a);
  Var Pick(Var a, int i);

  /// Convolution of a windowed signal (values of positions
  /// [offset, offset + n), zero elsewhere) evaluated at output positions
  /// [out_begin, out_end). Result is [(out_end - out_begin) x f].
  Var Conv1dWindow(Var q, Var signal, int offset, int out_begin, int out_end);

  /// Location-aware attention energies for positions
  /// [begin, begin + feats.rows()):
  ///   e_i = w . tanh(query + proj[begin + i] + U feats[i]).
  Var AttentionEnergies(Var query, Var proj, Var feats, Var u, Var w,
                        int begin);

  /// sum_i alpha[i] * m[begin + i].
  Var WeightedRowSum(Var alpha, Var m, int begin);

  /// Accumulates d loss / d p into each reached Parameter::grad.
  void Backward(Var loss);
  /// Accumulates into grads[p.index] instead of Parameter::grad.
  void Backward(Var loss, std::vector<Tensor>& grads);

 private:
  struct Node {
    Tensor owned;
    const Tensor* value = nullptr;
    Tensor grad;
    bool needs_grad = false;
    Parameter* param = nullptr;
    std::function<void(Graph&, const Tensor&)> backward;
  };

  Var Push(Tensor value, bool needs_grad);
  bool NeedsGrad(Var v) const { return nodes_[v.id].needs_grad; }
  Node& node(Var v) { return nodes_[v.id]; }
  Tensor& Grad(int id);
  void RunBackward(Var loss);

  bool requires_grad_;
  std::deque<Node> nodes_;
  std::unordered_map<const Parameter*, int> param_nodes_;
};

}  // namespace arsg

#endif  // ARSG_NN_GRAPH_H_
