// src/ivector.cc

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

#include "sdsv/ivector.h"

#include <cmath>

#include "sdsv/binary-io.h"
#include "sdsv/rng.h"
#include "sdsv/thread-pool.h"

namespace sdsv {

namespace {
constexpr char kTvMagic[4] = {'S', 'T', 'V', 'M'};
constexpr uint32_t kTvVersion = 1;
constexpr int64_t kUttBlock = 256;  // bounds posterior-slot memory in the E-step
}  // namespace

BaumWelchStats &BaumWelchStats::operator+=(const BaumWelchStats &other) {
  Require(occupancy.size() == other.occupancy.size() &&
              centered_first.rows() == other.centered_first.rows() &&
              centered_first.cols() == other.centered_first.cols(),
          "stats shape mismatch");
  occupancy += other.occupancy;
  centered_first += other.centered_first;
  return *this;
}

BaumWelchStats AccumulateStats(const DiagGmm &ubm, const FeatureMatrix &feats) {
  BaumWelchStats stats;
  if (feats.rows() == 0) {
    stats.occupancy = Vector::Zero(ubm.NumComponents());
    stats.centered_first = Matrix::Zero(ubm.NumComponents(), ubm.Dim());
    return stats;
  }
  Matrix first;
  ubm.AccumulatePosteriors(feats, &stats.occupancy, &first);
  // Center the first-order sums on the UBM means.
  stats.centered_first =
      first - stats.occupancy.asDiagonal() * ubm.means();
  return stats;
}

void TotalVariabilityModel::WriteToFile(const std::string &path) const {
  std::ofstream os = OpenOutput(path);
  WriteMagic(os, kTvMagic, kTvVersion);
  WriteU32(os, static_cast<uint32_t>(num_components));
  WriteU32(os, static_cast<uint32_t>(dim));
  WriteU32(os, static_cast<uint32_t>(Rank()));
  WriteMatrixF64(os, t);
}

TotalVariabilityModel TotalVariabilityModel::ReadFromFile(const std::string &path) {
  std::ifstream is = OpenInput(path);
  uint32_t version = ExpectMagic(is, kTvMagic);
  if (version != kTvVersion) SDSV_ERR << path << ": unsupported TV file version " << version;
  TotalVariabilityModel tv;
  tv.num_components = static_cast<int>(ReadU32(is));
  tv.dim = static_cast<int>(ReadU32(is));
  int rank = static_cast<int>(ReadU32(is));
  Require(tv.num_components >= 1 && tv.dim >= 1 && rank >= 1, "corrupt TV header");
  tv.t = ReadMatrixF64(is, tv.num_components * tv.dim, rank);
  return tv;
}

namespace {

struct Posterior {
  Vector mean;        // R
  Matrix second;      // R x R, E[w w']
  double aux = 0.0;   // -0.5 logdet(L) + 0.5 b' L^-1 b
};

// Shared E-step for training and extraction.  weighted_t holds S^-1-scaled
// rows of T; per_component_grams[k] = T_k' S_k^-1 T_k.
Posterior ComputePosterior(const Matrix &t, const std::vector<Matrix> &per_component_grams,
                           const Matrix &sigma_inv_t, const BaumWelchStats &stats,
                           bool want_aux) {
  const int rank = static_cast<int>(t.cols());
  const int K = static_cast<int>(per_component_grams.size());
  const int D = static_cast<int>(stats.centered_first.cols());

  Matrix precision = Matrix::Identity(rank, rank);
  for (int k = 0; k < K; ++k)
    if (stats.occupancy(k) > 0) precision.noalias() += stats.occupancy(k) * per_component_grams[k];

  Vector b = Vector::Zero(rank);
  for (int k = 0; k < K; ++k)
    b.noalias() += sigma_inv_t.middleRows(static_cast<Eigen::Index>(k) * D, D).transpose() *
                   stats.centered_first.row(k).transpose();

  Eigen::LLT<Matrix> llt(precision);
  Require(llt.info() == Eigen::Success, "posterior precision not positive definite");
  Posterior post;
  post.mean = llt.solve(b);
  Matrix cov = llt.solve(Matrix::Identity(rank, rank));
  post.second = cov + post.mean * post.mean.transpose();
  if (want_aux) {
    double logdet = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    post.aux = -0.5 * logdet + 0.5 * b.dot(post.mean);
  }
  return post;
}

std::vector<Matrix> ComponentGrams(const Matrix &t, const DiagGmm &ubm) {
  const int K = ubm.NumComponents(), D = ubm.Dim();
  const int rank = static_cast<int>(t.cols());
  std::vector<Matrix> grams(K);
  ParallelFor(K, [&](int64_t k) {
    auto tk = t.middleRows(k * D, D);
    grams[k].resize(rank, rank);
    grams[k].noalias() = tk.transpose() * ubm.vars().row(k).cwiseInverse().asDiagonal() * tk;
  });
  return grams;
}

Matrix SigmaInvT(const Matrix &t, const DiagGmm &ubm) {
  const int K = ubm.NumComponents(), D = ubm.Dim();
  Matrix out(t.rows(), t.cols());
  for (int k = 0; k < K; ++k)
    out.middleRows(static_cast<Eigen::Index>(k) * D, D) =
        ubm.vars().row(k).cwiseInverse().asDiagonal() *
        t.middleRows(static_cast<Eigen::Index>(k) * D, D);
  return out;
}

}  // namespace

TotalVariabilityModel TrainTotalVariability(const std::vector<BaumWelchStats> &stats,
                                            const DiagGmm &ubm, int rank, int iters,
                                            uint64_t seed,
                                            std::vector<double> *aux_history) {
  const int K = ubm.NumComponents(), D = ubm.Dim();
  Require(rank >= 1 && rank <= static_cast<int64_t>(K) * D,
          "rank must be in [1, K*D]");
  Require(!stats.empty(), "no stats to train on");
  Require(iters >= 1, "iters must be >= 1");
  for (const auto &s : stats)
    Require(s.occupancy.size() == K && s.centered_first.cols() == D,
            "stats inconsistent with UBM");

  // Seeded Gaussian init, scaled by the average UBM standard deviation so
  // early iterations are well-conditioned.
  Rng rng(seed);
  Matrix t(static_cast<Eigen::Index>(K) * D, rank);
  double scale = std::sqrt(ubm.vars().mean());
  for (Eigen::Index r = 0; r < t.rows(); ++r)
    for (Eigen::Index c = 0; c < t.cols(); ++c) t(r, c) = scale * rng.Gauss();

  const int64_t n_utts = static_cast<int64_t>(stats.size());
  if (aux_history) aux_history->clear();

  for (int iter = 0; iter < iters; ++iter) {
    std::vector<Matrix> grams = ComponentGrams(t, ubm);
    Matrix sigma_inv_t = SigmaInvT(t, ubm);

    // Accumulators for the M-step row-block solves.
    std::vector<Matrix> a(K, Matrix::Zero(rank, rank));   // sum_i N_ik E[ww']
    std::vector<Matrix> c(K, Matrix::Zero(D, rank));      // sum_i F_ik E[w]'
    double aux = 0.0;

    std::vector<Posterior> posts(std::min(kUttBlock, n_utts));
    for (int64_t block = 0; block < n_utts; block += kUttBlock) {
      int64_t n = std::min(kUttBlock, n_utts - block);
      ParallelFor(n, [&](int64_t i) {
        posts[i] = ComputePosterior(t, grams, sigma_inv_t, stats[block + i], true);
      });
      // Reduce in utterance order; parallel over components is safe because
      // each k only touches its own accumulator.
      ParallelFor(K, [&](int64_t k) {
        for (int64_t i = 0; i < n; ++i) {
          double occ = stats[block + i].occupancy(k);
          if (occ > 0) a[k].noalias() += occ * posts[i].second;
          c[k].noalias() += stats[block + i].centered_first.row(k).transpose() *
                            posts[i].mean.transpose();
        }
      });
      for (int64_t i = 0; i < n; ++i) aux += posts[i].aux;
    }
    if (aux_history) aux_history->push_back(aux);

    ParallelFor(K, [&](int64_t k) {
      if (a[k].norm() == 0.0) return;  // component never occupied: keep rows
      Eigen::LLT<Matrix> llt(a[k]);
      if (llt.info() != Eigen::Success) return;
      t.middleRows(k * D, D) = llt.solve(c[k].transpose()).transpose();
    });
  }

  TotalVariabilityModel tv;
  tv.t = std::move(t);
  tv.num_components = K;
  tv.dim = D;
  return tv;
}

IvectorExtractor::IvectorExtractor(const TotalVariabilityModel &tv, const DiagGmm &ubm)
    : t_(tv.t),
      grams_(ComponentGrams(tv.t, ubm)),
      sigma_inv_t_(SigmaInvT(tv.t, ubm)),
      num_components_(ubm.NumComponents()),
      dim_(ubm.Dim()) {
  Require(tv.num_components == ubm.NumComponents() && tv.dim == ubm.Dim(),
          "TV model inconsistent with UBM");
}

Vector IvectorExtractor::Extract(const BaumWelchStats &stats) const {
  Require(stats.occupancy.size() == num_components_ &&
              stats.centered_first.cols() == dim_,
          "stats inconsistent with UBM");
  Require(stats.occupancy.allFinite() && stats.centered_first.allFinite(),
          "non-finite stats");
  return ComputePosterior(t_, grams_, sigma_inv_t_, stats, false).mean;
}

Vector ExtractIvector(const TotalVariabilityModel &tv, const DiagGmm &ubm,
                      const BaumWelchStats &stats) {
  return IvectorExtractor(tv, ubm).Extract(stats);
}

}  // namespace sdsv
