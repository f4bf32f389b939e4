// src/transforms.cc

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

#include "sdsv/transforms.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "sdsv/binary-io.h"

namespace sdsv {

namespace {
constexpr char kLdaMagic[4] = {'S', 'L', 'D', 'A'};
constexpr char kWhitenMagic[4] = {'S', 'W', 'H', 'T'};
constexpr char kPcaMagic[4] = {'S', 'P', 'C', 'A'};
constexpr uint32_t kVersion = 1;

void WriteProjection(const std::string &path, const char magic[4], const Vector &mean,
                     const Matrix &projection, bool with_mean) {
  std::ofstream os = OpenOutput(path);
  WriteMagic(os, magic, kVersion);
  WriteU32(os, static_cast<uint32_t>(projection.rows()));
  WriteU32(os, static_cast<uint32_t>(projection.cols()));
  if (with_mean) WriteVectorF64(os, mean);
  WriteMatrixF64(os, projection);
}

void ReadProjection(const std::string &path, const char magic[4], Vector *mean,
                    Matrix *projection, bool with_mean) {
  std::ifstream is = OpenInput(path);
  uint32_t version = ExpectMagic(is, magic);
  if (version != kVersion) SDSV_ERR << path << ": unsupported transform version " << version;
  int rows = static_cast<int>(ReadU32(is));
  int cols = static_cast<int>(ReadU32(is));
  Require(rows >= 1 && cols >= 1, "corrupt transform header");
  if (with_mean) *mean = ReadVectorF64(is, rows);
  *projection = ReadMatrixF64(is, rows, cols);
}

}  // namespace

void LdaTransform::WriteToFile(const std::string &path) const {
  WriteProjection(path, kLdaMagic, Vector(), projection, false);
}

LdaTransform LdaTransform::ReadFromFile(const std::string &path) {
  LdaTransform lda;
  Vector unused;
  ReadProjection(path, kLdaMagic, &unused, &lda.projection, false);
  return lda;
}

LdaTransform TrainLda(const Matrix &vectors, const std::vector<int> &labels, int out_dim) {
  const Eigen::Index n = vectors.rows(), d = vectors.cols();
  Require(static_cast<Eigen::Index>(labels.size()) == n, "label count mismatch");
  Require(n >= 2, "need at least two vectors");
  RequireFinite(vectors, "LDA input");

  std::map<int, std::vector<Eigen::Index>> by_class;
  for (Eigen::Index i = 0; i < n; ++i) by_class[labels[i]].push_back(i);
  const int n_classes = static_cast<int>(by_class.size());
  Require(n_classes >= 2, "LDA needs at least two classes");
  Require(out_dim >= 1 && out_dim <= n_classes - 1,
          "LDA out_dim must be in [1, classes - 1]");

  Vector global_mean = vectors.colwise().mean().transpose();
  Matrix between = Matrix::Zero(d, d), within = Matrix::Zero(d, d);
  for (const auto &[label, idx] : by_class) {
    Vector class_mean = Vector::Zero(d);
    for (Eigen::Index i : idx) class_mean += vectors.row(i).transpose();
    class_mean /= static_cast<double>(idx.size());
    Vector diff = class_mean - global_mean;
    between.noalias() += static_cast<double>(idx.size()) * diff * diff.transpose();
    for (Eigen::Index i : idx) {
      Vector r = vectors.row(i).transpose() - class_mean;
      within.noalias() += r * r.transpose();
    }
  }

  // Whiten by the within scatter, then diagonalize the between scatter.
  Eigen::SelfAdjointEigenSolver<Matrix> wsolve(within);
  Require(wsolve.info() == Eigen::Success, "within-scatter eigendecomposition failed");
  double wmax = wsolve.eigenvalues().maxCoeff();
  if (wsolve.eigenvalues().minCoeff() <= 1e-10 * std::max(wmax, 1e-300)) {
    double eps = 1e-6 * within.trace() / static_cast<double>(d);
    if (eps <= 0) eps = 1e-6;
    within += eps * Matrix::Identity(d, d);
    wsolve.compute(within);
  }
  Matrix w_inv_sqrt = wsolve.eigenvectors() *
                      wsolve.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                      wsolve.eigenvectors().transpose();
  Matrix projected_between = w_inv_sqrt * between * w_inv_sqrt;
  Eigen::SelfAdjointEigenSolver<Matrix> bsolve(projected_between);
  Require(bsolve.info() == Eigen::Success, "between-scatter eigendecomposition failed");

  // Eigenvalues come out ascending; take the trailing out_dim columns.
  LdaTransform lda;
  lda.projection.resize(d, out_dim);
  for (int j = 0; j < out_dim; ++j)
    lda.projection.col(j) = w_inv_sqrt * bsolve.eigenvectors().col(d - 1 - j);
  return lda;
}

Matrix ApplyLda(const LdaTransform &lda, const Matrix &vectors) {
  Require(vectors.cols() == lda.projection.rows(), "LDA input dim mismatch");
  return vectors * lda.projection;
}

void Whitener::WriteToFile(const std::string &path) const {
  WriteProjection(path, kWhitenMagic, mean, transform, true);
}

Whitener Whitener::ReadFromFile(const std::string &path) {
  Whitener w;
  ReadProjection(path, kWhitenMagic, &w.mean, &w.transform, true);
  return w;
}

Whitener FitWhitener(const Matrix &vectors) {
  const Eigen::Index n = vectors.rows(), d = vectors.cols();
  Require(n >= 2, "need at least two vectors to fit a whitener");
  RequireFinite(vectors, "whitener input");
  Whitener w;
  w.mean = vectors.colwise().mean().transpose();
  Matrix centered = vectors.rowwise() - w.mean.transpose();
  Matrix cov = centered.transpose() * centered / static_cast<double>(n);
  Eigen::SelfAdjointEigenSolver<Matrix> solve(cov);
  Require(solve.info() == Eigen::Success, "covariance eigendecomposition failed");
  double lmax = solve.eigenvalues().maxCoeff();
  Require(lmax > 0, "training vectors have zero covariance");
  // Directions with negligible variance are dropped (mapped to zero) rather
  // than blown up.
  Vector inv_sqrt(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    double lambda = solve.eigenvalues()(i);
    inv_sqrt(i) = lambda > 1e-12 * lmax ? 1.0 / std::sqrt(lambda) : 0.0;
  }
  w.transform = solve.eigenvectors() * inv_sqrt.asDiagonal() * solve.eigenvectors().transpose();
  return w;
}

Vector WhitenAndLengthNorm(const Whitener &w, const Vector &x) {
  Require(x.size() == w.mean.size(), "whitener input dim mismatch");
  Vector y = w.transform * (x - w.mean);
  double norm = y.norm();
  Require(norm > 0, "vector whitens to zero; cannot length-normalize");
  return y / norm;
}

Matrix WhitenAndLengthNorm(const Whitener &w, const Matrix &vectors) {
  Matrix out(vectors.rows(), vectors.cols());
  for (Eigen::Index i = 0; i < vectors.rows(); ++i)
    out.row(i) = WhitenAndLengthNorm(w, Vector(vectors.row(i).transpose())).transpose();
  return out;
}

void PcaTransform::WriteToFile(const std::string &path) const {
  WriteProjection(path, kPcaMagic, mean, projection, true);
}

PcaTransform PcaTransform::ReadFromFile(const std::string &path) {
  PcaTransform p;
  ReadProjection(path, kPcaMagic, &p.mean, &p.projection, true);
  return p;
}

PcaTransform PcaFit(const Matrix &data, int out_dim) {
  const Eigen::Index n = data.rows(), d = data.cols();
  Require(out_dim >= 1 && out_dim <= std::min(n, d),
          "PCA out_dim must be in [1, min(rows, cols)]");
  RequireFinite(data, "PCA input");
  PcaTransform pca;
  pca.mean = data.colwise().mean().transpose();
  Matrix centered = data.rowwise() - pca.mean.transpose();
  Matrix cov = centered.transpose() * centered / static_cast<double>(n);
  Eigen::SelfAdjointEigenSolver<Matrix> solve(cov);
  Require(solve.info() == Eigen::Success, "covariance eigendecomposition failed");
  pca.projection.resize(d, out_dim);
  for (int j = 0; j < out_dim; ++j) {
    Vector col = solve.eigenvectors().col(d - 1 - j);
    Eigen::Index argmax;
    col.cwiseAbs().maxCoeff(&argmax);
    if (col(argmax) < 0) col = -col;
    pca.projection.col(j) = col;
  }
  return pca;
}

Matrix PcaApply(const PcaTransform &pca, const Matrix &data) {
  Require(data.cols() == pca.projection.rows(), "PCA input dim mismatch");
  return (data.rowwise() - pca.mean.transpose()) * pca.projection;
}

}  // namespace sdsv
