// src/gmm-train.cc

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

#include "sdsv/gmm-train.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sdsv/rng.h"

namespace sdsv {

namespace {

constexpr int64_t kMaxKmeansFrames = 100000;
constexpr double kMinOccupancy = 1e-8;

// Lloyd iterations; assignment breaks ties toward the lowest center index.
// Returns final assignments.
std::vector<int> RunKmeans(const Matrix &data, Matrix *centers, int iters) {
  const int K = static_cast<int>(centers->rows());
  const Eigen::Index n = data.rows();
  std::vector<int> assign(n, 0);
  Vector data_sq = data.rowwise().squaredNorm();

  for (int it = 0; it < iters; ++it) {
    // dist^2(t, k) = |x|^2 - 2 x.c + |c|^2; the |x|^2 term is shared.
    Matrix cross = data * centers->transpose();
    Vector center_sq = centers->rowwise().squaredNorm();
    for (Eigen::Index t = 0; t < n; ++t) {
      int best = 0;
      double best_d = center_sq(0) - 2.0 * cross(t, 0);
      for (int k = 1; k < K; ++k) {
        double d = center_sq(k) - 2.0 * cross(t, k);
        if (d < best_d) {
          best_d = d;
          best = k;
        }
      }
      assign[t] = best;
    }

    Matrix sums = Matrix::Zero(K, data.cols());
    std::vector<int64_t> counts(K, 0);
    for (Eigen::Index t = 0; t < n; ++t) {
      sums.row(assign[t]) += data.row(t);
      ++counts[assign[t]];
    }

    // Reseed empties from the frames farthest from their centroids.
    std::vector<int> empties;
    for (int k = 0; k < K; ++k)
      if (counts[k] == 0) empties.push_back(k);
    if (!empties.empty()) {
      std::vector<std::pair<double, int64_t>> by_dist(n);
      for (Eigen::Index t = 0; t < n; ++t) {
        int k = assign[t];
        double d = data_sq(t) - 2.0 * cross(t, k) + center_sq(k);
        by_dist[t] = {-d, t};
      }
      std::sort(by_dist.begin(), by_dist.end());
      for (size_t e = 0; e < empties.size(); ++e)
        centers->row(empties[e]) = data.row(by_dist[e].second);
    }
    for (int k = 0; k < K; ++k)
      if (counts[k] > 0) centers->row(k) = sums.row(k) / static_cast<double>(counts[k]);
  }

  // Final assignment against the settled centers.
  Matrix cross = data * centers->transpose();
  Vector center_sq = centers->rowwise().squaredNorm();
  for (Eigen::Index t = 0; t < n; ++t) {
    int best = 0;
    double best_d = center_sq(0) - 2.0 * cross(t, 0);
    for (int k = 1; k < K; ++k) {
      double d = center_sq(k) - 2.0 * cross(t, k);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    assign[t] = best;
  }
  return assign;
}

}  // namespace

DiagGmm TrainGmmEm(const FeatureMatrix &frames, const GmmTrainConfig &cfg,
                   std::vector<double> *loglike_history) {
  Require(cfg.num_components >= 1, "num_components must be >= 1");
  Require(cfg.em_iters >= 1 && cfg.kmeans_iters >= 1, "iteration counts must be >= 1");
  Require(frames.rows() >= cfg.num_components,
          "need at least as many frames as components");
  RequireFinite(frames, "training frames");

  const int K = cfg.num_components;
  const Eigen::Index T = frames.rows(), D = frames.cols();

  Eigen::RowVectorXd global_mean = frames.colwise().mean();
  Eigen::RowVectorXd global_var =
      (frames.rowwise() - global_mean).array().square().colwise().mean();
  Eigen::RowVectorXd var_floor =
      (cfg.var_floor_scale * global_var.array()).max(1e-10).matrix();

  // k-means init on a subsample.
  Rng rng(cfg.seed);
  Matrix subsample;
  if (T > kMaxKmeansFrames) {
    auto idx = rng.SampleWithoutReplacement(T, kMaxKmeansFrames);
    subsample.resize(kMaxKmeansFrames, D);
    for (int64_t i = 0; i < kMaxKmeansFrames; ++i) subsample.row(i) = frames.row(idx[i]);
  } else {
    subsample = frames;
  }
  Matrix centers(K, D);
  auto center_idx = rng.SampleWithoutReplacement(subsample.rows(), K);
  for (int k = 0; k < K; ++k) centers.row(k) = subsample.row(center_idx[k]);
  std::vector<int> assign = RunKmeans(subsample, &centers, cfg.kmeans_iters);

  Vector weights = Vector::Zero(K);
  Matrix means = centers;
  Matrix vars(K, D);
  {
    Matrix sums = Matrix::Zero(K, D), sq_sums = Matrix::Zero(K, D);
    std::vector<int64_t> counts(K, 0);
    for (Eigen::Index t = 0; t < subsample.rows(); ++t) {
      int k = assign[t];
      sums.row(k) += subsample.row(t);
      sq_sums.row(k) += subsample.row(t).array().square().matrix();
      ++counts[k];
    }
    for (int k = 0; k < K; ++k) {
      if (counts[k] > 0) {
        double n = static_cast<double>(counts[k]);
        means.row(k) = sums.row(k) / n;
        vars.row(k) = (sq_sums.row(k).array() / n - means.row(k).array().square())
                          .max(var_floor.array());
        weights(k) = n;
      } else {
        vars.row(k) = global_var.array().max(var_floor.array());
        weights(k) = 1.0;
      }
    }
    weights /= weights.sum();
  }

  DiagGmm gmm(weights, means, vars);
  if (loglike_history) loglike_history->clear();

  Vector occ;
  Matrix first, second;
  for (int iter = 0; iter < cfg.em_iters; ++iter) {
    double ll = gmm.AccumulatePosteriors(frames, &occ, &first, &second);
    if (loglike_history) loglike_history->push_back(ll / static_cast<double>(T));

    Vector new_weights = gmm.weights();
    Matrix new_means = gmm.means(), new_vars = gmm.vars();
    for (int k = 0; k < K; ++k) {
      if (occ(k) > kMinOccupancy) {
        new_weights(k) = occ(k) / static_cast<double>(T);
        new_means.row(k) = first.row(k) / occ(k);
        new_vars.row(k) = (second.row(k).array() / occ(k) -
                           new_means.row(k).array().square())
                              .max(var_floor.array());
      }
      // Components with no mass keep their parameters.
    }
    new_weights /= new_weights.sum();
    gmm.SetParams(new_weights, new_means, new_vars);
  }
  if (loglike_history)
    loglike_history->push_back(gmm.AvgLogLikelihood(frames));
  return gmm;
}

DiagGmm MergeGmms(const std::vector<DiagGmm> &gmms) {
  Require(!gmms.empty(), "cannot merge an empty list of GMMs");
  const int D = gmms[0].Dim();
  int total_k = 0;
  for (const auto &g : gmms) {
    Require(g.Dim() == D, "GMM dimension mismatch in merge");
    total_k += g.NumComponents();
  }
  Vector weights(total_k);
  Matrix means(total_k, D), vars(total_k, D);
  int row = 0;
  double inv_n = 1.0 / static_cast<double>(gmms.size());
  for (const auto &g : gmms) {
    int k = g.NumComponents();
    weights.segment(row, k) = g.weights() * inv_n;
    means.middleRows(row, k) = g.means();
    vars.middleRows(row, k) = g.vars();
    row += k;
  }
  return DiagGmm(weights, means, vars);
}

DiagGmm MapAdapt(const DiagGmm &prior, const FeatureMatrix &feats, const MapConfig &cfg) {
  Require(cfg.relevance > 0, "relevance factor must be positive");
  Require(cfg.iterations >= 1, "MAP iterations must be >= 1");
  if (feats.rows() == 0) return prior;
  Require(feats.cols() == prior.Dim(), "feature dim does not match GMM dim");

  const int K = prior.NumComponents();
  const double T = static_cast<double>(feats.rows());

  DiagGmm model = prior;
  Vector occ;
  Matrix first, second;
  for (int iter = 0; iter < cfg.iterations; ++iter) {
    model.AccumulatePosteriors(feats, &occ, &first,
                               cfg.update_means_only ? nullptr : &second);
    Vector weights = model.weights();
    Matrix means = model.means(), vars = model.vars();
    for (int k = 0; k < K; ++k) {
      double n_k = occ(k);
      double alpha = n_k / (n_k + cfg.relevance);
      if (n_k > 0) {
        Eigen::RowVectorXd e_k = first.row(k) / n_k;
        Eigen::RowVectorXd new_mean = alpha * e_k + (1.0 - alpha) * means.row(k);
        if (!cfg.update_means_only) {
          Eigen::RowVectorXd e2_k = second.row(k) / n_k;
          vars.row(k) = (alpha * e2_k.array() +
                         (1.0 - alpha) * (vars.row(k).array() + means.row(k).array().square()) -
                         new_mean.array().square())
                            .max(1e-10);
          weights(k) = alpha * n_k / T + (1.0 - alpha) * weights(k);
        }
        means.row(k) = new_mean;
      }
    }
    if (!cfg.update_means_only) weights /= weights.sum();
    model.SetParams(weights, means, vars);
  }
  return model;
}

}  // namespace sdsv
