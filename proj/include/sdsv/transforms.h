// include/sdsv/transforms.h

// Copyright 2026  SDSV Toolkit Authors

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

#ifndef SDSV_TRANSFORMS_H_
#define SDSV_TRANSFORMS_H_

#include <string>
#include <vector>

#include "sdsv/common.h"

namespace sdsv {

struct LdaTransform {
  Matrix projection;  // in_dim x out_dim

  void WriteToFile(const std::string &path) const;
  static LdaTransform ReadFromFile(const std::string &path);
};

// Top generalized eigenvectors of between/within scatter, class-size
// weighted between; near-singular within-scatter gets an eps*I ridge with
// eps = 1e-6 * trace / dim.  out_dim must be < number of classes.
LdaTransform TrainLda(const Matrix &vectors, const std::vector<int> &labels, int out_dim);
Matrix ApplyLda(const LdaTransform &lda, const Matrix &vectors);

struct Whitener {
  Vector mean;
  Matrix transform;  // symmetric inverse square root of the training covariance

  void WriteToFile(const std::string &path) const;
  static Whitener ReadFromFile(const std::string &path);
};

Whitener FitWhitener(const Matrix &vectors);

// x -> transform (x - mean), then scaled to unit Euclidean norm.  A vector
// that whitens to zero cannot be normalized and raises an error.
Vector WhitenAndLengthNorm(const Whitener &w, const Vector &x);
Matrix WhitenAndLengthNorm(const Whitener &w, const Matrix &vectors);

struct PcaTransform {
  Vector mean;
  Matrix projection;  // in_dim x out_dim, orthonormal columns

  void WriteToFile(const std::string &path) const;
  static PcaTransform ReadFromFile(const std::string &path);
};

// Eigenvalue-descending principal directions; each column's sign is fixed so
// its largest-magnitude entry is positive.
PcaTransform PcaFit(const Matrix &data, int out_dim);
Matrix PcaApply(const PcaTransform &pca, const Matrix &data);

}  // namespace sdsv

#endif  // SDSV_TRANSFORMS_H_
