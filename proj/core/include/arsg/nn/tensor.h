// arsg/nn/tensor.h

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

#ifndef ARSG_NN_TENSOR_H_
#define ARSG_NN_TENSOR_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace arsg {

#ifdef ARSG_USE_FLOAT
typedef float Real;
#else
typedef double Real;
#endif

/// Thrown when operand shapes do not conform. The message names the operand.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense row-major array of rank 1 or 2 (rank 0 is used for scalars and
/// has a single element).
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<int> shape, Real fill = 0);

  static Tensor Scalar(Real v);
  static Tensor Vector(std::initializer_list<Real> values);
  static Tensor Vector(std::vector<Real> values);
  static Tensor Matrix(int rows, int cols, std::initializer_list<Real> values);
  static Tensor Zeros(int n) { return Tensor({n}); }
  static Tensor Zeros(int rows, int cols) { return Tensor({rows, cols}); }

  const std::vector<int>& shape() const { return shape_; }
  int rank() const { return static_cast<int>(shape_.size()); }
  int dim(int i) const { return shape_.at(i); }
  size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  // Valid for rank 2 only.
  int rows() const { return shape_[0]; }
  int cols() const { return shape_[1]; }

  Real* data() { return data_.data(); }
  const Real* data() const { return data_.data(); }
  std::span<Real> values() { return data_; }
  std::span<const Real> values() const { return data_; }

  Real& operator[](size_t i) { return data_[i]; }
  Real operator[](size_t i) const { return data_[i]; }
  Real& at(int r, int c) {
    return data_[static_cast<size_t>(r) * shape_[1] + c];
  }
  Real at(int r, int c) const {
    return data_[static_cast<size_t>(r) * shape_[1] + c];
  }

  std::span<Real> row(int r) {
    return {data_.data() + static_cast<size_t>(r) * shape_[1],
            static_cast<size_t>(shape_[1])};
  }
  std::span<const Real> row(int r) const {
    return {data_.data() + static_cast<size_t>(r) * shape_[1],
            static_cast<size_t>(shape_[1])};
  }

  void Fill(Real v);
  void SetZero() { Fill(0); }
  bool SameShape(const Tensor& other) const { return shape_ == other.shape_; }
  bool AllFinite() const;
  std::string ShapeString() const;

  // In-place arithmetic used by gradient accumulation and optimizers.
  Tensor& operator+=(const Tensor& other);
  Tensor& operator*=(Real s);

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  std::vector<int> shape_;
  std::vector<Real> data_;
};

// Throws DimensionError naming `what` unless t has the expected shape.
void CheckShape(const Tensor& t, const std::vector<int>& expected,
                const std::string& what);

// Plain, graph-free kernels. The autodiff graph uses the same kernels for its
// forward pass, so each of these is also what the corresponding graph op
// computes.

/// y = W x + b.
Tensor Affine(const Tensor& x, const Tensor& w, const Tensor& b);
/// y = W x.
Tensor MatVec(const Tensor& w, const Tensor& x);
/// Y = M W^T for M [r x m], W [n x m].
Tensor MatMulTransposed(const Tensor& m, const Tensor& w);
Tensor Tanh(const Tensor& x);
Tensor Sigmoid(const Tensor& x);
Real Sigmoid(Real x);
/// Max-subtracted softmax over a rank-1 tensor.
Tensor Softmax(const Tensor& a);
Tensor LogSoftmax(const Tensor& a);
/// Centered, zero-padded ("same") convolution of a signal with each column of
/// Q [k x f]; k must be odd. Returns [L x f].
Tensor Conv1d(const Tensor& q, const Tensor& signal);

/// Convolution evaluated only at output positions [out_begin, out_end) of a
/// length-`length` signal whose nonzero values are `values`, starting at
/// `offset`. Everything outside [offset, offset + values.size()) is zero.
void Conv1dWindow(const Tensor& q, std::span<const Real> values, int offset,
                  int out_begin, int out_end, std::span<Real> out);

Real LogSumExp(std::span<const Real> v);

}  // namespace arsg

#endif  // ARSG_NN_TENSOR_H_
