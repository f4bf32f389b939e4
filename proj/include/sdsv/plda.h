// include/sdsv/plda.h

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

#ifndef SDSV_PLDA_H_
#define SDSV_PLDA_H_

#include <string>
#include <vector>

#include "sdsv/common.h"

namespace sdsv {

// Two-covariance Gaussian PLDA: class centers y ~ N(mean, between) and
// observations x | y ~ N(y, within).  This is the full-rank-subspace form,
// so no factor matrices are needed.
class PldaModel {
 public:
  PldaModel() = default;
  PldaModel(const Vector &mean, const Matrix &between, const Matrix &within);

  int Dim() const { return static_cast<int>(mean_.size()); }
  const Vector &mean() const { return mean_; }
  const Matrix &between() const { return between_; }
  const Matrix &within() const { return within_; }

  // Log-likelihood ratio of the same-class vs different-class hypotheses.
  // In the rotated coordinates s = (e + t)/sqrt(2), d = (e - t)/sqrt(2) the
  // two hypotheses factorize, giving
  //   score = logN(s; sqrt(2) mu, 2B + W) - logN(s; sqrt(2) mu, B + W)
  //         + logN(d; 0, W)               - logN(d; 0, B + W).
  double Score(const Vector &enroll, const Vector &test) const;

  void WriteToFile(const std::string &path) const;
  static PldaModel ReadFromFile(const std::string &path);

 private:
  void ComputeDerived();

  Vector mean_;
  Matrix between_, within_;
  // Cholesky factors and log-determinants of W, B+W and 2B+W.
  Eigen::LLT<Matrix> llt_w_, llt_bw_, llt_2bw_;
  double logdet_w_ = 0, logdet_bw_ = 0, logdet_2bw_ = 0;
};

// EM for the two-covariance model.  objective_history, when given, receives
// the marginal log-likelihood of the data before each update and after the
// last one; the sequence is non-decreasing.
PldaModel TrainPlda(const Matrix &embeddings, const std::vector<int> &labels, int iters,
                    std::vector<double> *objective_history = nullptr);

inline double ScorePlda(const PldaModel &model, const Vector &enroll, const Vector &test) {
  return model.Score(enroll, test);
}

// Closed-set normalizations over per-phrase scores.
double MaxNorm(const std::vector<double> &scores_by_phrase, int claimed_index);
double MeanNorm(const std::vector<double> &scores_by_phrase, int claimed_index);

struct CohortScores {
  std::vector<double> enroll_side;
  std::vector<double> test_side;
};

// Adaptive symmetric score normalization: z-norm against the top_k highest
// cohort scores on each side (sample standard deviation, denominator k-1,
// floored at 1e-6), averaged.
double AsNorm(double raw, const CohortScores &cohort, int top_k);

}  // namespace sdsv

#endif  // SDSV_PLDA_H_
