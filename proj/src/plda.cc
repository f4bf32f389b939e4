// src/plda.cc

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

#include "sdsv/plda.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "sdsv/binary-io.h"

namespace sdsv {

namespace {

constexpr char kPldaMagic[4] = {'S', 'P', 'L', 'D'};
constexpr uint32_t kVersion = 1;

double LogDetFromLlt(const Eigen::LLT<Matrix> &llt) {
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

double GaussLogDensity(const Vector &x, const Vector &mean, const Eigen::LLT<Matrix> &llt,
                       double logdet) {
  Vector diff = x - mean;
  double quad = diff.dot(llt.solve(diff));
  return -0.5 * (static_cast<double>(x.size()) * std::log(2.0 * M_PI) + logdet + quad);
}

// Eigenvalue floor keeping the matrix symmetric.
Matrix FloorSpd(const Matrix &m, double floor) {
  Eigen::SelfAdjointEigenSolver<Matrix> solve(m);
  Vector evals = solve.eigenvalues().cwiseMax(floor);
  return solve.eigenvectors() * evals.asDiagonal() * solve.eigenvectors().transpose();
}

}  // namespace

PldaModel::PldaModel(const Vector &mean, const Matrix &between, const Matrix &within)
    : mean_(mean), between_(between), within_(within) {
  Require(between_.rows() == mean_.size() && between_.cols() == mean_.size() &&
              within_.rows() == mean_.size() && within_.cols() == mean_.size(),
          "PLDA parameter shapes are inconsistent");
  Require(mean_.allFinite() && between_.allFinite() && within_.allFinite(),
          "PLDA parameters not finite");
  Require(between_.isApprox(between_.transpose(), 1e-8), "between covariance not symmetric");
  Require(within_.isApprox(within_.transpose(), 1e-8), "within covariance not symmetric");
  ComputeDerived();
}

void PldaModel::ComputeDerived() {
  llt_w_.compute(within_);
  Require(llt_w_.info() == Eigen::Success, "within covariance not positive definite");
  llt_bw_.compute(between_ + within_);
  Require(llt_bw_.info() == Eigen::Success, "between+within not positive definite");
  llt_2bw_.compute(2.0 * between_ + within_);
  Require(llt_2bw_.info() == Eigen::Success, "2*between+within not positive definite");
  logdet_w_ = LogDetFromLlt(llt_w_);
  logdet_bw_ = LogDetFromLlt(llt_bw_);
  logdet_2bw_ = LogDetFromLlt(llt_2bw_);
}

double PldaModel::Score(const Vector &enroll, const Vector &test) const {
  Require(enroll.size() == Dim() && test.size() == Dim(), "embedding dim mismatch");
  Require(enroll.allFinite() && test.allFinite(), "non-finite embedding");
  const double sqrt2 = std::sqrt(2.0);
  Vector sum = (enroll + test) / sqrt2;
  Vector diff = (enroll - test) / sqrt2;
  Vector sum_mean = sqrt2 * mean_;
  Vector zero = Vector::Zero(Dim());
  return GaussLogDensity(sum, sum_mean, llt_2bw_, logdet_2bw_) -
         GaussLogDensity(sum, sum_mean, llt_bw_, logdet_bw_) +
         GaussLogDensity(diff, zero, llt_w_, logdet_w_) -
         GaussLogDensity(diff, zero, llt_bw_, logdet_bw_);
}

void PldaModel::WriteToFile(const std::string &path) const {
  std::ofstream os = OpenOutput(path);
  WriteMagic(os, kPldaMagic, kVersion);
  WriteU32(os, static_cast<uint32_t>(Dim()));
  WriteVectorF64(os, mean_);
  WriteMatrixF64(os, between_);
  WriteMatrixF64(os, within_);
}

PldaModel PldaModel::ReadFromFile(const std::string &path) {
  std::ifstream is = OpenInput(path);
  uint32_t version = ExpectMagic(is, kPldaMagic);
  if (version != kVersion) SDSV_ERR << path << ": unsupported PLDA file version " << version;
  int d = static_cast<int>(ReadU32(is));
  Require(d >= 1, "corrupt PLDA header");
  Vector mean = ReadVectorF64(is, d);
  Matrix between = ReadMatrixF64(is, d, d);
  Matrix within = ReadMatrixF64(is, d, d);
  return PldaModel(mean, between, within);
}

PldaModel TrainPlda(const Matrix &embeddings, const std::vector<int> &labels, int iters,
                    std::vector<double> *objective_history) {
  const Eigen::Index n = embeddings.rows(), d = embeddings.cols();
  Require(static_cast<Eigen::Index>(labels.size()) == n, "label count mismatch");
  Require(n >= 2, "need at least two embeddings");
  Require(iters >= 1, "iters must be >= 1");
  RequireFinite(embeddings, "PLDA training data");

  std::map<int, std::vector<Eigen::Index>> by_class;
  for (Eigen::Index i = 0; i < n; ++i) by_class[labels[i]].push_back(i);
  const int n_classes = static_cast<int>(by_class.size());
  Require(n_classes >= 2, "PLDA needs at least two classes");

  // Per-class counts and sums plus the global second moment carry all the
  // information EM needs.
  std::vector<double> counts;
  std::vector<Vector> sums;
  for (const auto &[label, idx] : by_class) {
    Vector s = Vector::Zero(d);
    for (Eigen::Index i : idx) s += embeddings.row(i).transpose();
    counts.push_back(static_cast<double>(idx.size()));
    sums.push_back(s);
  }
  Matrix second_moment = embeddings.transpose() * embeddings;

  // Moment-based initialization.
  Vector mu = embeddings.colwise().mean().transpose();
  Matrix between = Matrix::Zero(d, d), within = Matrix::Zero(d, d);
  for (int c = 0; c < n_classes; ++c) {
    Vector cm = sums[c] / counts[c];
    Vector diff = cm - mu;
    between.noalias() += counts[c] * diff * diff.transpose();
  }
  within = second_moment;
  for (int c = 0; c < n_classes; ++c)
    within.noalias() -= (sums[c] / counts[c]) * sums[c].transpose();
  within = 0.5 * (within + within.transpose());
  between /= static_cast<double>(n);
  within /= static_cast<double>(n);

  const double w_floor = 1e-6 * std::max(within.trace() / static_cast<double>(d), 1e-12);
  within = FloorSpd(within, w_floor);
  between = FloorSpd(between, 0.0);

  if (objective_history) objective_history->clear();

  auto marginal_loglike = [&](const Vector &mean, const Matrix &b, const Matrix &w) {
    Eigen::LLT<Matrix> llt_b(b + 1e-10 * Matrix::Identity(d, d));
    Eigen::LLT<Matrix> llt_w(w);
    Matrix b_inv = llt_b.solve(Matrix::Identity(d, d));
    Matrix w_inv = llt_w.solve(Matrix::Identity(d, d));
    double logdet_b = LogDetFromLlt(llt_b), logdet_w = LogDetFromLlt(llt_w);
    double quad_all = (w_inv.cwiseProduct(second_moment)).sum();
    double ll = -0.5 * static_cast<double>(n * d) * std::log(2.0 * M_PI) -
                0.5 * static_cast<double>(n) * logdet_w -
                0.5 * static_cast<double>(n_classes) * logdet_b -
                0.5 * quad_all - 0.5 * n_classes * mean.dot(b_inv * mean);
    for (int c = 0; c < n_classes; ++c) {
      Matrix p = b_inv + counts[c] * w_inv;
      Eigen::LLT<Matrix> llt_p(p);
      Vector h = b_inv * mean + w_inv * sums[c];
      ll += -0.5 * LogDetFromLlt(llt_p) + 0.5 * h.dot(llt_p.solve(h));
    }
    return ll;
  };

  for (int iter = 0; iter < iters; ++iter) {
    if (objective_history) objective_history->push_back(marginal_loglike(mu, between, within));

    Eigen::LLT<Matrix> llt_b(between + 1e-10 * Matrix::Identity(d, d));
    Eigen::LLT<Matrix> llt_w(within);
    Matrix b_inv = llt_b.solve(Matrix::Identity(d, d));
    Matrix w_inv = llt_w.solve(Matrix::Identity(d, d));

    Vector new_mu = Vector::Zero(d);
    Matrix new_between = Matrix::Zero(d, d);
    Matrix new_within = second_moment;
    std::vector<Vector> post_means(n_classes);
    std::vector<Matrix> post_covs(n_classes);
    for (int c = 0; c < n_classes; ++c) {
      Matrix p = b_inv + counts[c] * w_inv;
      Eigen::LLT<Matrix> llt_p(p);
      Vector h = b_inv * mu + w_inv * sums[c];
      post_means[c] = llt_p.solve(h);
      post_covs[c] = llt_p.solve(Matrix::Identity(d, d));
      new_mu += post_means[c];
    }
    new_mu /= static_cast<double>(n_classes);
    for (int c = 0; c < n_classes; ++c) {
      Vector diff = post_means[c] - new_mu;
      new_between.noalias() += post_covs[c] + diff * diff.transpose();
      new_within.noalias() += counts[c] * (post_means[c] * post_means[c].transpose() +
                                           post_covs[c]) -
                              sums[c] * post_means[c].transpose() -
                              post_means[c] * sums[c].transpose();
    }
    new_between /= static_cast<double>(n_classes);
    new_within /= static_cast<double>(n);
    new_within = 0.5 * (new_within + new_within.transpose());
    new_between = 0.5 * (new_between + new_between.transpose());

    mu = new_mu;
    within = FloorSpd(new_within, w_floor);
    between = FloorSpd(new_between, 0.0);
  }
  if (objective_history) objective_history->push_back(marginal_loglike(mu, between, within));

  return PldaModel(mu, between, within);
}

double MaxNorm(const std::vector<double> &scores_by_phrase, int claimed_index) {
  Require(scores_by_phrase.size() >= 2, "Max norm needs at least two phrases");
  Require(claimed_index >= 0 && claimed_index < static_cast<int>(scores_by_phrase.size()),
          "claimed phrase index out of range");
  double best_other = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < scores_by_phrase.size(); ++i)
    if (static_cast<int>(i) != claimed_index)
      best_other = std::max(best_other, scores_by_phrase[i]);
  return scores_by_phrase[claimed_index] - best_other;
}

double MeanNorm(const std::vector<double> &scores_by_phrase, int claimed_index) {
  Require(scores_by_phrase.size() >= 2, "Mean norm needs at least two phrases");
  Require(claimed_index >= 0 && claimed_index < static_cast<int>(scores_by_phrase.size()),
          "claimed phrase index out of range");
  double sum = 0.0;
  for (size_t i = 0; i < scores_by_phrase.size(); ++i)
    if (static_cast<int>(i) != claimed_index) sum += scores_by_phrase[i];
  return scores_by_phrase[claimed_index] -
         sum / static_cast<double>(scores_by_phrase.size() - 1);
}

double AsNorm(double raw, const CohortScores &cohort, int top_k) {
  Require(top_k >= 2, "AS norm needs top_k >= 2");
  Require(static_cast<int>(cohort.enroll_side.size()) >= top_k &&
              static_cast<int>(cohort.test_side.size()) >= top_k,
          "cohort smaller than top_k");
  auto z = [top_k, raw](std::vector<double> side) {
    std::partial_sort(side.begin(), side.begin() + top_k, side.end(),
                      std::greater<double>());
    double mean = 0.0;
    for (int i = 0; i < top_k; ++i) mean += side[i];
    mean /= top_k;
    double ss = 0.0;
    for (int i = 0; i < top_k; ++i) ss += (side[i] - mean) * (side[i] - mean);
    double sd = std::sqrt(ss / (top_k - 1));
    return (raw - mean) / std::max(sd, 1e-6);
  };
  return 0.5 * (z(cohort.enroll_side) + z(cohort.test_side));
}

}  // namespace sdsv
