// src/bnfeat.cc

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

#include "sdsv/bnfeat.h"

#include <cmath>
#include <numeric>

#include "sdsv/rng.h"

namespace sdsv {

FeatureMatrix StackContext(const FeatureMatrix &feats, int left, int right) {
  Require(feats.rows() >= 1, "need at least one frame");
  Require(left >= 0 && right >= 0, "context sizes must be non-negative");
  const Eigen::Index T = feats.rows(), D = feats.cols();
  FeatureMatrix out(T, (left + right + 1) * D);
  for (Eigen::Index t = 0; t < T; ++t) {
    int col = 0;
    for (int k = -left; k <= right; ++k) {
      Eigen::Index src = std::clamp<Eigen::Index>(t + k, 0, T - 1);
      out.block(t, col, 1, D) = feats.row(src);
      col += static_cast<int>(D);
    }
  }
  return out;
}

namespace {

// Diagonal Gaussian in log domain, parameters from the frames of one class.
struct ClassGaussian {
  Eigen::RowVectorXd mean, inv_var;
  double log_const = 0.0;

  void Fit(const Matrix &sums, const Matrix &sq_sums, double count, Eigen::Index d,
           const Eigen::RowVectorXd &var_floor, int k) {
    mean = sums.row(k) / count;
    Eigen::RowVectorXd var =
        (sq_sums.row(k).array() / count - mean.array().square()).max(var_floor.array());
    inv_var = var.cwiseInverse();
    log_const = -0.5 * (static_cast<double>(d) * std::log(2.0 * M_PI) +
                        var.array().log().sum());
  }

  double SumLogLike(const FeatureMatrix &frames) const {
    Matrix centered = frames.rowwise() - mean;
    Vector quad = centered.cwiseProduct(centered) * inv_var.transpose();
    return frames.rows() * log_const - 0.5 * quad.sum();
  }
};

}  // namespace

std::vector<std::vector<int>> StclLabels(const std::vector<FeatureMatrix> &utterances,
                                         const StclConfig &cfg,
                                         std::vector<double> *objective_history) {
  Require(cfg.num_classes >= 2, "need at least two classes");
  Require(cfg.chunk_len >= 1, "chunk_len must be >= 1");
  Require(cfg.max_iters >= 0, "max_iters must be >= 0");
  Require(!utterances.empty(), "no utterances");

  const Eigen::Index D = utterances[0].cols();
  int64_t total_frames = 0;
  for (const auto &u : utterances) {
    Require(u.cols() == D, "utterance dims differ");
    total_frames += u.rows();
  }
  Require(total_frames >= static_cast<int64_t>(cfg.num_classes) * cfg.chunk_len,
          "need at least num_classes * chunk_len frames");

  // Build the stream in seeded random utterance order, remembering where
  // each frame came from.
  std::vector<int64_t> order(utterances.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(cfg.seed);
  rng.Shuffle(&order);

  FeatureMatrix stream(total_frames, D);
  std::vector<std::pair<int64_t, int64_t>> origin(total_frames);  // (utt, frame)
  int64_t pos = 0;
  for (int64_t u : order) {
    stream.middleRows(pos, utterances[u].rows()) = utterances[u];
    for (Eigen::Index f = 0; f < utterances[u].rows(); ++f)
      origin[pos + f] = {u, f};
    pos += utterances[u].rows();
  }

  const int64_t n_chunks = (total_frames + cfg.chunk_len - 1) / cfg.chunk_len;
  std::vector<int> chunk_label(n_chunks);
  for (int64_t c = 0; c < n_chunks; ++c)
    chunk_label[c] = static_cast<int>(c % cfg.num_classes);

  auto chunk_rows = [&](int64_t c) {
    int64_t start = c * cfg.chunk_len;
    int64_t len = std::min<int64_t>(cfg.chunk_len, total_frames - start);
    return std::pair<int64_t, int64_t>(start, len);
  };

  Eigen::RowVectorXd global_mean = stream.colwise().mean();
  Eigen::RowVectorXd var_floor =
      ((stream.rowwise() - global_mean).array().square().colwise().mean() * 1e-8)
          .max(1e-10);

  if (objective_history) objective_history->clear();
  std::vector<ClassGaussian> classes(cfg.num_classes);
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    // Fit one diagonal Gaussian per class on its frames.  Classes that lost
    // every chunk keep their previous parameters.
    Matrix sums = Matrix::Zero(cfg.num_classes, D);
    Matrix sq_sums = Matrix::Zero(cfg.num_classes, D);
    Vector counts = Vector::Zero(cfg.num_classes);
    for (int64_t c = 0; c < n_chunks; ++c) {
      auto [start, len] = chunk_rows(c);
      auto rows = stream.middleRows(start, len);
      sums.row(chunk_label[c]) += rows.colwise().sum();
      sq_sums.row(chunk_label[c]) += rows.cwiseProduct(rows).colwise().sum();
      counts(chunk_label[c]) += static_cast<double>(len);
    }
    for (int k = 0; k < cfg.num_classes; ++k)
      if (counts(k) > 0)
        classes[k].Fit(sums, sq_sums, counts(k), D, var_floor, k);

    // Reassign each chunk to the class with the best average log-likelihood.
    bool changed = false;
    double objective = 0.0;
    for (int64_t c = 0; c < n_chunks; ++c) {
      auto [start, len] = chunk_rows(c);
      auto rows = stream.middleRows(start, len);
      int best = 0;
      double best_ll = classes[0].SumLogLike(rows);
      for (int k = 1; k < cfg.num_classes; ++k) {
        double ll = classes[k].SumLogLike(rows);
        if (ll > best_ll) {
          best_ll = ll;
          best = k;
        }
      }
      objective += best_ll / static_cast<double>(len);
      if (best != chunk_label[c]) {
        chunk_label[c] = best;
        changed = true;
      }
    }
    if (objective_history) objective_history->push_back(objective);
    if (!changed) break;
  }

  std::vector<std::vector<int>> labels(utterances.size());
  for (size_t u = 0; u < utterances.size(); ++u)
    labels[u].resize(utterances[u].rows());
  for (int64_t i = 0; i < total_frames; ++i) {
    auto [u, f] = origin[i];
    labels[u][f] = chunk_label[i / cfg.chunk_len];
  }
  return labels;
}

FeatureMatrix BottleneckFeatures(const MlpModel &mlp, const FeatureMatrix &stacked_inputs,
                                 int layer_index, bool post_activation) {
  return mlp.ForwardHidden(stacked_inputs, layer_index, post_activation);
}

}  // namespace sdsv
