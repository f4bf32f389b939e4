// src/diag-gmm.cc

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

#include "sdsv/diag-gmm.h"

#include <cmath>
#include <vector>

#include "sdsv/binary-io.h"
#include "sdsv/thread-pool.h"

namespace sdsv {

namespace {
constexpr char kGmmMagic[4] = {'S', 'G', 'M', 'M'};
constexpr uint32_t kGmmVersion = 1;
constexpr Eigen::Index kFrameBlock = 4096;

Vector LogSumExpRows(const Matrix &m) {
  Vector max = m.rowwise().maxCoeff();
  return max.array() + ((m.colwise() - max).array().exp().rowwise().sum()).log();
}
}  // namespace

DiagGmm::DiagGmm(const Vector &weights, const Matrix &means, const Matrix &vars) {
  SetParams(weights, means, vars);
}

void DiagGmm::SetParams(const Vector &weights, const Matrix &means, const Matrix &vars) {
  Require(weights.size() >= 1, "GMM needs at least one component");
  Require(means.rows() == weights.size() && vars.rows() == weights.size() &&
              means.cols() == vars.cols(),
          "GMM parameter shapes are inconsistent");
  weights_ = weights;
  means_ = means;
  vars_ = vars;
  Check();
  ComputeDerived();
}

void DiagGmm::Check(double weight_tol) const {
  Require(weights_.size() >= 1, "GMM has no components");
  Require(std::abs(weights_.sum() - 1.0) <= weight_tol, "GMM weights do not sum to 1");
  Require((weights_.array() >= 0).all(), "GMM has negative weights");
  Require((vars_.array() > 0).all(), "GMM has non-positive variances");
  Require(weights_.allFinite() && means_.allFinite() && vars_.allFinite(),
          "GMM has non-finite parameters");
}

void DiagGmm::ComputeDerived() {
  inv_vars_ = vars_.cwiseInverse();
  means_over_vars_ = means_.cwiseProduct(inv_vars_);
  const double kLogWeightFloor = -745.0;  // log of smallest normal double
  log_consts_.resize(NumComponents());
  for (int k = 0; k < NumComponents(); ++k) {
    double logw = weights_(k) > 0 ? std::log(weights_(k)) : kLogWeightFloor;
    log_consts_(k) = logw -
        0.5 * (Dim() * std::log(2.0 * M_PI) + vars_.row(k).array().log().sum() +
               means_.row(k).dot(means_over_vars_.row(k)));
  }
}

Matrix DiagGmm::ComponentLogLikes(const FeatureMatrix &feats) const {
  Require(feats.cols() == Dim(), "feature dim does not match GMM dim");
  Matrix loglikes = feats * means_over_vars_.transpose();
  loglikes.noalias() -= 0.5 * feats.cwiseProduct(feats) * inv_vars_.transpose();
  loglikes.rowwise() += log_consts_.transpose();
  return loglikes;
}

Vector DiagGmm::FrameLogLikes(const FeatureMatrix &feats) const {
  Require(feats.rows() >= 1, "empty feature matrix");
  Vector out(feats.rows());
  for (Eigen::Index start = 0; start < feats.rows(); start += kFrameBlock) {
    Eigen::Index n = std::min(kFrameBlock, feats.rows() - start);
    out.segment(start, n) = LogSumExpRows(ComponentLogLikes(feats.middleRows(start, n)));
  }
  return out;
}

double DiagGmm::AvgLogLikelihood(const FeatureMatrix &feats) const {
  Require(feats.rows() >= 1, "empty feature matrix");
  return FrameLogLikes(feats).mean();
}

double DiagGmm::AccumulatePosteriors(const FeatureMatrix &feats, Vector *occupancy,
                                     Matrix *first_order, Matrix *second_order) const {
  Require(feats.cols() == Dim(), "feature dim does not match GMM dim");
  const int K = NumComponents(), D = Dim();
  const Eigen::Index n_blocks = (feats.rows() + kFrameBlock - 1) / kFrameBlock;

  struct BlockStats {
    Vector n;
    Matrix f, s;
    double ll = 0.0;
  };
  std::vector<BlockStats> blocks(n_blocks);

  bool want_second = second_order != nullptr;
  ParallelFor(n_blocks, [&](int64_t b) {
    Eigen::Index start = b * kFrameBlock;
    Eigen::Index n = std::min(kFrameBlock, feats.rows() - start);
    auto chunk = feats.middleRows(start, n);
    Matrix lp = ComponentLogLikes(chunk);
    Vector frame_ll = LogSumExpRows(lp);
    Matrix gamma = ((lp.colwise() - frame_ll).array().exp()).matrix();
    BlockStats &out = blocks[b];
    out.ll = frame_ll.sum();
    out.n = gamma.colwise().sum();
    out.f.noalias() = gamma.transpose() * chunk;
    if (want_second) out.s.noalias() = gamma.transpose() * chunk.cwiseProduct(chunk);
  });

  occupancy->setZero(K);
  first_order->setZero(K, D);
  if (want_second) second_order->setZero(K, D);
  double total_ll = 0.0;
  for (const auto &b : blocks) {  // fixed order keeps results jobs-invariant
    *occupancy += b.n;
    *first_order += b.f;
    if (want_second) *second_order += b.s;
    total_ll += b.ll;
  }
  return total_ll;
}

void DiagGmm::Write(std::ostream &os) const {
  WriteMagic(os, kGmmMagic, kGmmVersion);
  WriteU32(os, static_cast<uint32_t>(NumComponents()));
  WriteU32(os, static_cast<uint32_t>(Dim()));
  WriteVectorF64(os, weights_);
  WriteMatrixF64(os, means_);
  WriteMatrixF64(os, vars_);
}

DiagGmm DiagGmm::Read(std::istream &is) {
  uint32_t version = ExpectMagic(is, kGmmMagic);
  if (version != kGmmVersion) SDSV_ERR << "unsupported GMM file version " << version;
  int K = static_cast<int>(ReadU32(is));
  int D = static_cast<int>(ReadU32(is));
  Require(K >= 1 && D >= 1, "corrupt GMM header");
  Vector weights = ReadVectorF64(is, K);
  Matrix means = ReadMatrixF64(is, K, D);
  Matrix vars = ReadMatrixF64(is, K, D);
  return DiagGmm(weights, means, vars);
}

void DiagGmm::WriteToFile(const std::string &path) const {
  std::ofstream os = OpenOutput(path);
  Write(os);
}

DiagGmm DiagGmm::ReadFromFile(const std::string &path) {
  std::ifstream is = OpenInput(path);
  return Read(is);
}

double LlrScore(const DiagGmm &target, const DiagGmm &background, const FeatureMatrix &feats) {
  return target.AvgLogLikelihood(feats) - background.AvgLogLikelihood(feats);
}

}  // namespace sdsv
