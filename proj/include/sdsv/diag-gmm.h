// include/sdsv/diag-gmm.h

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

#ifndef SDSV_DIAG_GMM_H_
#define SDSV_DIAG_GMM_H_

#include <iostream>
#include <string>

#include "sdsv/common.h"

namespace sdsv {

// Diagonal-covariance Gaussian mixture.  Parameters are immutable through
// the public API once set, so concurrent read-only scoring is safe.
class DiagGmm {
 public:
  DiagGmm() = default;
  DiagGmm(const Vector &weights, const Matrix &means, const Matrix &vars);

  int NumComponents() const { return static_cast<int>(weights_.size()); }
  int Dim() const { return static_cast<int>(means_.cols()); }

  const Vector &weights() const { return weights_; }
  const Matrix &means() const { return means_; }   // K x D
  const Matrix &vars() const { return vars_; }     // K x D

  void SetParams(const Vector &weights, const Matrix &means, const Matrix &vars);

  // Throws unless weights sum to 1 within tol, all variances are positive
  // and everything is finite.
  void Check(double weight_tol = 1e-9) const;

  // Per-frame, per-component log w_k + log N(x | mu_k, var_k); frames x K.
  Matrix ComponentLogLikes(const FeatureMatrix &feats) const;

  // log sum_k w_k N(x_t | ...) per frame.
  Vector FrameLogLikes(const FeatureMatrix &feats) const;

  // Mean of FrameLogLikes over the utterance.
  double AvgLogLikelihood(const FeatureMatrix &feats) const;

  // Zeroth/first/second-order statistics weighted by component posteriors.
  // Returns the summed frame log-likelihood.  Accumulation is chunked over
  // fixed-size frame blocks reduced in order, so it is thread-count stable.
  double AccumulatePosteriors(const FeatureMatrix &feats, Vector *occupancy,
                              Matrix *first_order, Matrix *second_order = nullptr) const;

  void Write(std::ostream &os) const;
  static DiagGmm Read(std::istream &is);
  void WriteToFile(const std::string &path) const;
  static DiagGmm ReadFromFile(const std::string &path);

 private:
  void ComputeDerived();

  Vector weights_;
  Matrix means_, vars_;
  // Cached for scoring: 1/var, mean/var, and the per-component constant
  // log w_k - 0.5 (D log 2pi + sum log var + sum mu^2/var).
  Matrix inv_vars_, means_over_vars_;
  Vector log_consts_;
};

double LlrScore(const DiagGmm &target, const DiagGmm &background, const FeatureMatrix &feats);

}  // namespace sdsv

#endif  // SDSV_DIAG_GMM_H_
