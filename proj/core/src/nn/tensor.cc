// nn/tensor.cc

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

#include "arsg/nn/tensor.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "nn/eigen-map.h"

namespace arsg {

Tensor::Tensor(std::vector<int> shape, Real fill) : shape_(std::move(shape)) {
  size_t n = 1;
  for (int d : shape_) {
    if (d <= 0) throw DimensionError("tensor extents must be positive");
    n *= static_cast<size_t>(d);
  }
  data_.assign(n, fill);
}

Tensor Tensor::Scalar(Real v) {
  Tensor t;
  t.data_.assign(1, v);
  return t;
}

Tensor Tensor::Vector(std::initializer_list<Real> values) {
  return Vector(std::vector<Real>(values));
}

Tensor Tensor::Vector(std::vector<Real> values) {
  if (values.empty()) throw DimensionError("empty vector");
  Tensor t;
  t.shape_ = {static_cast<int>(values.size())};
  t.data_ = std::move(values);
  return t;
}

Tensor Tensor::Matrix(int rows, int cols, std::initializer_list<Real> values) {
  Tensor t({rows, cols});
  if (values.size() != t.size())
    throw DimensionError("matrix initializer has wrong element count");
  std::copy(values.begin(), values.end(), t.data_.begin());
  return t;
}

void Tensor::Fill(Real v) { std::fill(data_.begin(), data_.end(), v); }

bool Tensor::AllFinite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](Real v) { return std::isfinite(v); });
}

std::string Tensor::ShapeString() const {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < shape_.size(); ++i) {
    if (i) os << 'x';
    os << shape_[i];
  }
  os << ']';
  return os.str();
}

Tensor& Tensor::operator+=(const Tensor& other) {
  if (data_.size() != other.data_.size())
    throw DimensionError("accumulate: shape " + ShapeString() + " vs " +
                         other.ShapeString());
  MapVec(*this) += MapVec(other);
  return *this;
}

Tensor& Tensor::operator*=(Real s) {
  MapVec(*this) *= s;
  return *this;
}

void CheckShape(const Tensor& t, const std::vector<int>& expected,
                const std::string& what) {
  if (t.shape() != expected) {
    std::ostringstream os;
    os << what << ": expected shape [";
    for (size_t i = 0; i < expected.size(); ++i)
      os << (i ? "x" : "") << expected[i];
    os << "], got " << t.ShapeString();
    throw DimensionError(os.str());
  }
}

Tensor MatVec(const Tensor& w, const Tensor& x) {
  if (w.rank() != 2) throw DimensionError("W: expected a matrix");
  CheckShape(x, {w.cols()}, "x");
  Tensor y({w.rows()});
  MapVec(y).noalias() = MapMat(w) * MapVec(x);
  return y;
}

Tensor Affine(const Tensor& x, const Tensor& w, const Tensor& b) {
  if (w.rank() != 2) throw DimensionError("W: expected a matrix");
  CheckShape(x, {w.cols()}, "x");
  CheckShape(b, {w.rows()}, "b");
  Tensor y = b;
  MapVec(y).noalias() += MapMat(w) * MapVec(x);
  return y;
}

Tensor MatMulTransposed(const Tensor& m, const Tensor& w) {
  if (m.rank() != 2) throw DimensionError("M: expected a matrix");
  if (w.rank() != 2) throw DimensionError("W: expected a matrix");
  if (m.cols() != w.cols())
    throw DimensionError("W: column count " + std::to_string(w.cols()) +
                         " does not match M " + m.ShapeString());
  Tensor y({m.rows(), w.rows()});
  MapMat(y).noalias() = MapMat(m) * MapMat(w).transpose();
  return y;
}

Real Sigmoid(Real x) {
  // Both branches avoid exp overflow.
  if (x >= 0) return 1 / (1 + std::exp(-x));
  Real e = std::exp(x);
  return e / (1 + e);
}

Tensor Tanh(const Tensor& x) {
  Tensor y = x;
  for (Real& v : y.values()) v = std::tanh(v);
  return y;
}

Tensor Sigmoid(const Tensor& x) {
  Tensor y = x;
  for (Real& v : y.values()) v = Sigmoid(v);
  return y;
}

Real LogSumExp(std::span<const Real> v) {
  Real m = -std::numeric_limits<Real>::infinity();
  for (Real x : v) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  Real s = 0;
  for (Real x : v) s += std::exp(x - m);
  return m + std::log(s);
}

Tensor Softmax(const Tensor& a) {
  if (a.rank() != 1) throw DimensionError("softmax: expected a vector");
  Tensor y = a;
  Real m = *std::max_element(y.values().begin(), y.values().end());
  Real s = 0;
  for (Real& v : y.values()) {
    v = std::exp(v - m);
    s += v;
  }
  for (Real& v : y.values()) v /= s;
  return y;
}

Tensor LogSoftmax(const Tensor& a) {
  if (a.rank() != 1) throw DimensionError("log-softmax: expected a vector");
  Real lse = LogSumExp(a.values());
  Tensor y = a;
  for (Real& v : y.values()) v -= lse;
  return y;
}

void Conv1dWindow(const Tensor& q, std::span<const Real> values, int offset,
                  int out_begin, int out_end, std::span<Real> out) {
  const int k = q.rows(), f = q.cols(), half = (k - 1) / 2;
  const int n = static_cast<int>(values.size());
  std::fill(out.begin(), out.end(), Real(0));
  for (int l = out_begin; l < out_end; ++l) {
    Real* dst = out.data() + static_cast<size_t>(l - out_begin) * f;
    // Signal index s = l + j - half must lie in [offset, offset + n).
    int j_lo = std::max(0, offset - l + half);
    int j_hi = std::min(k, offset + n - l + half);
    for (int j = j_lo; j < j_hi; ++j) {
      Real s = values[l + j - half - offset];
      if (s == 0) continue;
      const Real* qrow = q.data() + static_cast<size_t>(j) * f;
      for (int c = 0; c < f; ++c) dst[c] += qrow[c] * s;
    }
  }
}

Tensor Conv1d(const Tensor& q, const Tensor& signal) {
  if (q.rank() != 2) throw DimensionError("Q: expected a [k x f] matrix");
  if (q.rows() % 2 == 0)
    throw DimensionError("Q: filter width must be odd, got " +
                         std::to_string(q.rows()));
  if (signal.rank() != 1) throw DimensionError("signal: expected a vector");
  const int length = signal.dim(0);
  Tensor out({length, q.cols()});
  Conv1dWindow(q, signal.values(), 0, 0, length, out.values());
  return out;
}

}  // namespace arsg
