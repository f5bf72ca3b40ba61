// nn/eigen-map.h

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

// Private helpers: zero-copy Eigen views over Tensor storage.

#ifndef ARSG_SRC_NN_EIGEN_MAP_H_
#define ARSG_SRC_NN_EIGEN_MAP_H_

#include <Eigen/Dense>

#include "arsg/nn/tensor.h"

namespace arsg {

typedef Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
    RowMatrix;
typedef Eigen::Matrix<Real, Eigen::Dynamic, 1> ColVector;

inline Eigen::Map<RowMatrix> MapMat(Tensor& t) {
  return {t.data(), t.rows(), t.cols()};
}
inline Eigen::Map<const RowMatrix> MapMat(const Tensor& t) {
  return {t.data(), t.rows(), t.cols()};
}
inline Eigen::Map<ColVector> MapVec(Tensor& t) {
  return {t.data(), static_cast<Eigen::Index>(t.size())};
}
inline Eigen::Map<const ColVector> MapVec(const Tensor& t) {
  return {t.data(), static_cast<Eigen::Index>(t.size())};
}
inline Eigen::Map<ColVector> MapVec(std::span<Real> s) {
  return {s.data(), static_cast<Eigen::Index>(s.size())};
}
inline Eigen::Map<const ColVector> MapVec(std::span<const Real> s) {
  return {s.data(), static_cast<Eigen::Index>(s.size())};
}

}  // namespace arsg

#endif  // ARSG_SRC_NN_EIGEN_MAP_H_
