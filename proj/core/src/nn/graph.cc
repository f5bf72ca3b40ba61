// nn/graph.cc

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

#include "arsg/nn/graph.h"

#include <cmath>

#include "nn/eigen-map.h"

namespace arsg {

// ParameterSet

Parameter& ParameterSet::Add(std::string name, std::vector<int> shape,
                             Parameter::Kind kind) {
  if (by_name_.count(name))
    throw std::invalid_argument("duplicate parameter name: " + name);
  auto p = std::make_unique<Parameter>();
  p->name = std::move(name);
  p->value = Tensor(shape);
  p->grad = Tensor(std::move(shape));
  p->kind = kind;
  p->index = static_cast<int>(params_.size());
  by_name_[p->name] = p.get();
  params_.push_back(std::move(p));
  return *params_.back();
}

Parameter* ParameterSet::Find(std::string_view name) {
  auto it = by_name_.find(std::string(name));
  return it == by_name_.end() ? nullptr : it->second;
}

const Parameter* ParameterSet::Find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  return it == by_name_.end() ? nullptr : it->second;
}

Parameter& ParameterSet::at(std::string_view name) {
  Parameter* p = Find(name);
  if (!p) throw std::out_of_range("no parameter named " + std::string(name));
  return *p;
}

void ParameterSet::ZeroGrad() {
  for (auto& p : params_) p->grad.SetZero();
}

std::vector<Tensor> ParameterSet::MakeGradientBuffers() const {
  std::vector<Tensor> out;
  out.reserve(params_.size());
  for (const auto& p : params_) out.emplace_back(p->value.shape());
  return out;
}

size_t ParameterSet::TotalElements() const {
  size_t n = 0;
  for (const auto& p : params_) n += p->value.size();
  return n;
}

// Graph

Var Graph::Push(Tensor value, bool needs_grad) {
  Node& n = nodes_.emplace_back();
  n.owned = std::move(value);
  n.value = &n.owned;
  n.needs_grad = needs_grad && requires_grad_;
  return Var{static_cast<int>(nodes_.size()) - 1};
}

Tensor& Graph::Grad(int id) {
  Node& n = nodes_[id];
  if (n.grad.empty()) n.grad = Tensor(n.value->shape());
  return n.grad;
}

Var Graph::Constant(Tensor t) { return Push(std::move(t), false); }

Var Graph::ConstantRef(const Tensor& t) {
  Node& n = nodes_.emplace_back();
  n.value = &t;
  return Var{static_cast<int>(nodes_.size()) - 1};
}

Var Graph::Param(Parameter& p) {
  auto it = param_nodes_.find(&p);
  if (it != param_nodes_.end()) return Var{it->second};
  Node& n = nodes_.emplace_back();
  n.value = &p.value;
  n.param = &p;
  n.needs_grad = requires_grad_;
  int id = static_cast<int>(nodes_.size()) - 1;
  param_nodes_[&p] = id;
  return Var{id};
}

Var Graph::MatVec(Var w, Var x) {
  Var y = Push(arsg::MatVec(Value(w), Value(x)), NeedsGrad(w) || NeedsGrad(x));
  if (NeedsGrad(y)) {
    node(y).backward = [w, x](Graph& g, const Tensor& dy) {
      if (g.NeedsGrad(w))
        MapMat(g.Grad(w.id)).noalias() +=
            MapVec(dy) * MapVec(g.Value(x)).transpose();
      if (g.NeedsGrad(x))
        MapVec(g.Grad(x.id)).noalias() +=
            MapMat(g.Value(w)).transpose() * MapVec(dy);
    };
  }
  return y;
}

Var Graph::Affine(Var w, Var x, Var b) {
  Var y = Push(arsg::Affine(Value(x), Value(w), Value(b)),
               NeedsGrad(w) || NeedsGrad(x) || NeedsGrad(b));
  if (NeedsGrad(y)) {
    node(y).backward = [w, x, b](Graph& g, const Tensor& dy) {
      if (g.NeedsGrad(w))
        MapMat(g.Grad(w.id)).noalias() +=
            MapVec(dy) * MapVec(g.Value(x)).transpose();
      if (g.NeedsGrad(x))
        MapVec(g.Grad(x.id)).noalias() +=
            MapMat(g.Value(w)).transpose() * MapVec(dy);
      if (g.NeedsGrad(b)) g.Grad(b.id) += dy;
    };
  }
  return y;
}

Var Graph::MatMulT(Var m, Var w) {
  Var y =
      Push(MatMulTransposed(Value(m), Value(w)), NeedsGrad(m) || NeedsGrad(w));
  if (NeedsGrad(y)) {
    node(y).backward = [m, w](Graph& g, const Tensor& dy) {
      // Y = M W^T: dM = dY W, dW = dY^T M.
      if (g.NeedsGrad(m))
        MapMat(g.Grad(m.id)).noalias() += MapMat(dy) * MapMat(g.Value(w));
      if (g.NeedsGrad(w))
        MapMat(g.Grad(w.id)).noalias() +=
            MapMat(dy).transpose() * MapMat(g.Value(m));
    };
  }
  return y;
}

Var Graph::Dot(Var a, Var b) {
  const Tensor& av = Value(a);
  const Tensor& bv = Value(b);
  if (av.size() != bv.size())
    throw DimensionError("dot: " + av.ShapeString() + " vs " +
                         bv.ShapeString());
  Var y = Push(Tensor::Scalar(MapVec(av).dot(MapVec(bv))),
               NeedsGrad(a) || NeedsGrad(b));
  if (NeedsGrad(y)) {
    node(y).backward = [a, b](Graph& g, const Tensor& dy) {
      if (g.NeedsGrad(a)) MapVec(g.Grad(a.id)) += dy[0] * MapVec(g.Value(b));
      if (g.NeedsGrad(b)) MapVec(g.Grad(b.id)) += dy[0] * MapVec(g.Value(a));
    };
  }
  return y;
}

namespace {

void CheckSameShape(const Tensor& a, const Tensor& b, const char* op) {
  if (!a.SameShape(b))
    throw DimensionError(std::string(op) + ": " + a.ShapeString() + " vs " +
                         b.ShapeString());
}

}  // namespace

Var Graph::Add(Var a, Var b) {
  CheckSameShape(Value(a), Value(b), "add");
  Tensor y = Value(a);
  y += Value(b);
  Var out = Push(std::move(y), NeedsGrad(a) || NeedsGrad(b));
  if (NeedsGrad(out)) {
    node(out).backward = [a, b](Graph& g, const Tensor& dy) {
      if (g.NeedsGrad(a)) g.Grad(a.id) += dy;
      if (g.NeedsGrad(b)) g.Grad(b.id) += dy;
    };
  }
  return out;
}

Var Graph::Sub(Var a, Var b) {
  CheckSameShape(Value(a), Value(b), "sub");
  Tensor y = Value(a);
  MapVec(y) -= MapVec(Value(b));
  Var out = Push(std::move(y), NeedsGrad(a) || NeedsGrad(b));
  if (NeedsGrad(out)) {
    node(out).backward = [a, b](Graph& g, const Tensor& dy) {
      if (g.NeedsGrad(a)) g.Grad(a.id) += dy;
      if (g.NeedsGrad(b)) MapVec(g.Grad(b.id)) -= MapVec(dy);
    };
  }
  return out;
}

Var Graph::Mul(Var a, Var b) {
  CheckSameShape(Value(a), Value(b), "mul");
  Tensor y = Value(a);
  MapVec(y).array() *= MapVec(Value(b)).array();
  Var out = Push(std::move(y), NeedsGrad(a) || NeedsGrad(b));
  if (NeedsGrad(out)) {
    node(out).backward = [a, b](Graph& g, const Tensor& dy) {
      if (g.NeedsGrad(a))
        MapVec(g.Grad(a.id)).array() +=
            MapVec(dy).array() * MapVec(g.Value(b)).array();
      if (g.NeedsGrad(b))
        MapVec(g.Grad(b.id)).array() +=
            MapVec(dy).array() * MapVec(g.Value(a)).array();
    };
  }
  return out;
}

Var Graph::Scale(Var a, Real s) {
  Tensor y = Value(a);
  y *= s;
  Var out = Push(std::move(y), NeedsGrad(a));
  if (NeedsGrad(out)) {
    node(out).backward = [a, s](Graph& g, const Tensor& dy) {
      MapVec(g.Grad(a.id)) += s * MapVec(dy);
    };
  }
  return out;
}

Var Graph::Tanh(Var a) {
  Var out = Push(arsg::Tanh(Value(a)), NeedsGrad(a));
  if (NeedsGrad(out)) {
    node(out).backward = [a, out](Graph& g, const Tensor& dy) {
      auto y = MapVec(g.Value(out)).array();
      MapVec(g.Grad(a.id)).array() += MapVec(dy).array() * (1 - y * y);
    };
  }
  return out;
}

Var Graph::Sigmoid(Var a) {
  Var out = Push(arsg::Sigmoid(Value(a)), NeedsGrad(a));
  if (NeedsGrad(out)) {
    node(out).backward = [a, out](Graph& g, const Tensor& dy) {
      auto y = MapVec(g.Value(out)).array();
      MapVec(g.Grad(a.id)).array() += MapVec(dy).array() * y * (1 - y);
    };
  }
  return out;
}

Var Graph::GruBlend(Var z, Var h_prev, Var h_new) {
  CheckSameShape(Value(z), Value(h_prev), "gru blend");
  CheckSameShape(Value(z), Value(h_new), "gru blend");
  Tensor y(Value(z).shape());
  {
    auto zv = MapVec(Value(z)).array();
    MapVec(y).array() = (1 - zv) * MapVec(Value(h_prev)).array() +
                        zv * MapVec(Value(h_new)).array();
  }
  Var out =
      Push(std::move(y), NeedsGrad(z) || NeedsGrad(h_prev) || NeedsGrad(h_new));
  if (NeedsGrad(out)) {
    node(out).backward = [z, h_prev, h_new](Graph& g, const Tensor& dy) {
      auto d = MapVec(dy).array();
      auto zv = MapVec(g.Value(z)).array();
      if (g.NeedsGrad(z))
        MapVec(g.Grad(z.id)).array() += d * (MapVec(g.Value(h_new)).array() -
                                             MapVec(g.Value(h_prev)).array());
      if (g.NeedsGrad(h_prev))
        MapVec(g.Grad(h_prev.id)).array() += d * (1 - zv);
      if (g.NeedsGrad(h_new)) MapVec(g.Grad(h_new.id)).array() += d * zv;
    };
  }
  return out;
}

Var Graph::AddN(std::span<const Var> xs) {
  if (xs.empty()) throw DimensionError("add-n: no operands");
  Tensor y = Value(xs[0]);
  bool needs = NeedsGrad(xs[0]);
  for (size_t i = 1; i < xs.size(); ++i) {
    CheckSameShape(y, Value(xs[i]), "add-n");
    y += Value(xs[i]);
    needs = needs || NeedsGrad(xs[i]);
  }
  Var out = Push(std::move(y), needs);
  if (NeedsGrad(out)) {
    std::vector<Var> inputs(xs.begin(), xs.end());
    node(out).backward = [inputs](Graph& g, const Tensor& dy) {
      for (Var v : inputs)
        if (g.NeedsGrad(v)) g.Grad(v.id) += dy;
    };
  }
  return out;
}

Var Graph::SumAll(Var a) {
  Var out = Push(Tensor::Scalar(MapVec(Value(a)).sum()), NeedsGrad(a));
  if (NeedsGrad(out)) {
    node(out).backward = [a](Graph& g, const Tensor& dy) {
      MapVec(g.Grad(a.id)).array() += dy[0];
    };
  }
  return out;
}

Var Graph::Concat(std::span<const Var> parts) {
  int total = 0;
  bool needs = false;
  for (Var p : parts) {
    if (Value(p).rank() != 1) throw DimensionError("concat: expected vectors");
    total += Value(p).dim(0);
    needs = needs || NeedsGrad(p);
  }
  Tensor y({total});
  int at = 0;
  for (Var p : parts) {
    const Tensor& v = Value(p);
    std::copy(v.values().begin(), v.values().end(), y.data() + at);
    at += v.dim(0);
  }
  Var out = Push(std::move(y), needs);
  if (NeedsGrad(out)) {
    std::vector<Var> inputs(parts.begin(), parts.end());
    node(out).backward = [inputs](Graph& g, const Tensor& dy) {
      int at = 0;
      for (Var p : inputs) {
        int n = g.Value(p).dim(0);
        if (g.NeedsGrad(p))
          MapVec(g.Grad(p.id)) += MapVec(dy.values().subspan(at, n));
        at += n;
      }
    };
  }
  return out;
}

Var Graph::Row(Var m, int r) {
  const Tensor& mv = Value(m);
  if (mv.rank() != 2 || r < 0 || r >= mv.rows())
    throw DimensionError("row: index " + std::to_string(r) + " outside " +
                         mv.ShapeString());
  Tensor y({mv.cols()});
  auto src = mv.row(r);
  std::copy(src.begin(), src.end(), y.data());
  Var out = Push(std::move(y), NeedsGrad(m));
  if (NeedsGrad(out)) {
    node(out).backward = [m, r](Graph& g, const Tensor& dy) {
      MapVec(g.Grad(m.id).row(r)) += MapVec(dy);
    };
  }
  return out;
}

Var Graph::Stack(std::span<const Var> rows) {
  if (rows.empty()) throw DimensionError("stack: no rows");
  const int cols = Value(rows[0]).dim(0);
  Tensor y({static_cast<int>(rows.size()), cols});
  bool needs = false;
  for (size_t i = 0; i < rows.size(); ++i) {
    CheckShape(Value(rows[i]), {cols}, "stack row");
    auto src = Value(rows[i]).values();
    std::copy(src.begin(), src.end(), y.row(static_cast<int>(i)).begin());
    needs = needs || NeedsGrad(rows[i]);
  }
  Var out = Push(std::move(y), needs);
  if (NeedsGrad(out)) {
    std::vector<Var> inputs(rows.begin(), rows.end());
    node(out).backward = [inputs](Graph& g, const Tensor& dy) {
      for (size_t i = 0; i < inputs.size(); ++i)
        if (g.NeedsGrad(inputs[i]))
          MapVec(g.Grad(inputs[i].id)) += MapVec(dy.row(static_cast<int>(i)));
    };
  }
  return out;
}

Var Graph::Softmax(Var a) {
  Var out = Push(arsg::Softmax(Value(a)), NeedsGrad(a));
  if (NeedsGrad(out)) {
    node(out).backward = [a, out](Graph& g, const Tensor& dy) {
      auto y = MapVec(g.Value(out));
      Real inner = y.dot(MapVec(dy));
      MapVec(g.Grad(a.id)).array() += y.array() * (MapVec(dy).array() - inner);
    };
  }
  return out;
}

Var Graph::LogSoftmax(Var a) {
  Var out = Push(arsg::LogSoftmax(Value(a)), NeedsGrad(a));
  if (NeedsGrad(out)) {
    node(out).backward = [a, out](Graph& g, const Tensor& dy) {
      Real total = MapVec(dy).sum();
      MapVec(g.Grad(a.id)).array() +=
          MapVec(dy).array() - MapVec(g.Value(out)).array().exp() * total;
    };
  }
  return out;
}

Var Graph::Pick(Var a, int i) {
  const Tensor& av = Value(a);
  if (i < 0 || static_cast<size_t>(i) >= av.size())
    throw DimensionError("pick: index " + std::to_string(i) + " outside " +
                         av.ShapeString());
  Var out = Push(Tensor::Scalar(av[i]), NeedsGrad(a));
  if (NeedsGrad(out)) {
    node(out).backward = [a, i](Graph& g, const Tensor& dy) {
      g.Grad(a.id)[i] += dy[0];
    };
  }
  return out;
}

Var Graph::Conv1dWindow(Var q, Var signal, int offset, int out_begin,
                        int out_end) {
  const Tensor& qv = Value(q);
  if (qv.rank() != 2) throw DimensionError("Q: expected a [k x f] matrix");
  if (qv.rows() % 2 == 0)
    throw DimensionError("Q: filter width must be odd, got " +
                         std::to_string(qv.rows()));
  if (out_end <= out_begin) throw DimensionError("conv: empty output range");
  Tensor y({out_end - out_begin, qv.cols()});
  arsg::Conv1dWindow(qv, Value(signal).values(), offset, out_begin, out_end,
                     y.values());
  Var out = Push(std::move(y), NeedsGrad(q) || NeedsGrad(signal));
  if (NeedsGrad(out)) {
    node(out).backward = [q, signal, offset, out_begin, out_end](
                             Graph& g, const Tensor& dy) {
      const Tensor& qv = g.Value(q);
      const Tensor& sv = g.Value(signal);
      const int k = qv.rows(), f = qv.cols(), half = (k - 1) / 2;
      const int n = static_cast<int>(sv.size());
      Tensor* dq = g.NeedsGrad(q) ? &g.Grad(q.id) : nullptr;
      Tensor* ds = g.NeedsGrad(signal) ? &g.Grad(signal.id) : nullptr;
      for (int l = out_begin; l < out_end; ++l) {
        const Real* drow = dy.data() + static_cast<size_t>(l - out_begin) * f;
        int j_lo = std::max(0, offset - l + half);
        int j_hi = std::min(k, offset + n - l + half);
        for (int j = j_lo; j < j_hi; ++j) {
          int si = l + j - half - offset;
          const Real* qrow = qv.data() + static_cast<size_t>(j) * f;
          Real acc = 0;
          for (int c = 0; c < f; ++c) {
            if (dq) (*dq)[static_cast<size_t>(j) * f + c] += drow[c] * sv[si];
            acc += drow[c] * qrow[c];
          }
          if (ds) (*ds)[si] += acc;
        }
      }
    };
  }
  return out;
}

Var Graph::AttentionEnergies(Var query, Var proj, Var feats, Var u, Var w,
                             int begin) {
  const Tensor& qv = Value(query);
  const Tensor& pv = Value(proj);
  const Tensor& fv = Value(feats);
  const Tensor& uv = Value(u);
  const Tensor& wv = Value(w);
  const int a = qv.dim(0);
  const int n = fv.rows();
  if (pv.rank() != 2 || pv.cols() != a)
    throw DimensionError("proj: expected [L x " + std::to_string(a) +
                         "], got " + pv.ShapeString());
  CheckShape(uv, {a, fv.cols()}, "U");
  CheckShape(wv, {a}, "w");
  if (begin < 0 || begin + n > pv.rows())
    throw DimensionError("attention window outside annotation range");

  Tensor act({n, a});
  Tensor e({n});
  {
    auto fm = MapMat(fv);
    auto um = MapMat(uv);
    auto am = MapMat(act);
    auto pm = MapMat(pv);
    am.noalias() = fm * um.transpose();
    am.rowwise() += MapVec(qv).transpose();
    am += pm.middleRows(begin, n);
    am = am.array().tanh();
    MapVec(e).noalias() = am * MapVec(wv);
  }
  bool needs = NeedsGrad(query) || NeedsGrad(proj) || NeedsGrad(feats) ||
               NeedsGrad(u) || NeedsGrad(w);
  Var out = Push(std::move(e), needs);
  if (NeedsGrad(out)) {
    node(out).backward = [query, proj, feats, u, w, begin,
                          act = std::move(act)](Graph& g, const Tensor& de) {
      const int n = act.rows();
      auto am = MapMat(act);
      if (g.NeedsGrad(w))
        MapVec(g.Grad(w.id)).noalias() += am.transpose() * MapVec(de);
      // dpre[i] = de[i] * w (1 - act[i]^2)
      RowMatrix dpre = (1 - am.array().square()).matrix();
      dpre.array().rowwise() *= MapVec(g.Value(w)).transpose().array();
      dpre.array().colwise() *= MapVec(de).array();
      if (g.NeedsGrad(query))
        MapVec(g.Grad(query.id)) += dpre.colwise().sum().transpose();
      if (g.NeedsGrad(proj))
        MapMat(g.Grad(proj.id)).middleRows(begin, n) += dpre;
      if (g.NeedsGrad(u))
        MapMat(g.Grad(u.id)).noalias() +=
            dpre.transpose() * MapMat(g.Value(feats));
      if (g.NeedsGrad(feats))
        MapMat(g.Grad(feats.id)).noalias() += dpre * MapMat(g.Value(u));
    };
  }
  return out;
}

Var Graph::WeightedRowSum(Var alpha, Var m, int begin) {
  const Tensor& av = Value(alpha);
  const Tensor& mv = Value(m);
  if (av.rank() != 1 || mv.rank() != 2)
    throw DimensionError("weighted row sum: expected vector and matrix");
  const int n = av.dim(0);
  if (begin < 0 || begin + n > mv.rows())
    throw DimensionError("weighted row sum: window outside matrix rows");
  Tensor y({mv.cols()});
  MapVec(y).noalias() =
      MapMat(mv).middleRows(begin, n).transpose() * MapVec(av);
  Var out = Push(std::move(y), NeedsGrad(alpha) || NeedsGrad(m));
  if (NeedsGrad(out)) {
    node(out).backward = [alpha, m, begin](Graph& g, const Tensor& dy) {
      const int n = g.Value(alpha).dim(0);
      if (g.NeedsGrad(alpha))
        MapVec(g.Grad(alpha.id)).noalias() +=
            MapMat(g.Value(m)).middleRows(begin, n) * MapVec(dy);
      if (g.NeedsGrad(m))
        MapMat(g.Grad(m.id)).middleRows(begin, n).noalias() +=
            MapVec(g.Value(alpha)) * MapVec(dy).transpose();
    };
  }
  return out;
}

void Graph::RunBackward(Var loss) {
  if (nodes_.empty()) throw std::logic_error("backward on an empty graph");
  if (!loss.valid() || static_cast<size_t>(loss.id) >= nodes_.size())
    throw std::logic_error("backward: loss is not a node of this graph");
  if (Value(loss).size() != 1)
    throw DimensionError("backward: loss must be a scalar, got " +
                         Value(loss).ShapeString());
  if (!requires_grad_)
    throw std::logic_error("backward on a graph built without gradients");
  Grad(loss.id)[0] += 1;
  for (int id = loss.id; id >= 0; --id) {
    Node& n = nodes_[id];
    if (n.backward && !n.grad.empty()) n.backward(*this, n.grad);
  }
}

void Graph::Backward(Var loss) {
  RunBackward(loss);
  for (auto& [param, id] : param_nodes_) {
    Node& n = nodes_[id];
    if (!n.grad.empty()) n.param->grad += n.grad;
  }
}

void Graph::Backward(Var loss, std::vector<Tensor>& grads) {
  RunBackward(loss);
  for (auto& [param, id] : param_nodes_) {
    Node& n = nodes_[id];
    if (n.grad.empty()) continue;
    if (param->index < 0 || static_cast<size_t>(param->index) >= grads.size())
      throw std::out_of_range("gradient buffer missing for " + param->name);
    grads[param->index] += n.grad;
  }
}

}  // namespace arsg
