// include/sdsv/gmm-train.h

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

#ifndef SDSV_GMM_TRAIN_H_
#define SDSV_GMM_TRAIN_H_

#include <cstdint>
#include <vector>

#include "sdsv/diag-gmm.h"

namespace sdsv {

struct GmmTrainConfig {
  int num_components = 1;
  int em_iters = 10;
  int kmeans_iters = 10;
  double var_floor_scale = 1e-3;  // times the per-dimension global variance
  uint64_t seed = 0;
};

// Seeded k-means initialization (on a subsample of at most 100k frames,
// empty clusters reseeded from the frame farthest from its centroid)
// followed by EM.  loglike_history, when given, receives the average frame
// log-likelihood of the model after 0, 1, ..., em_iters updates; the
// sequence is non-decreasing up to floor effects.
DiagGmm TrainGmmEm(const FeatureMatrix &frames, const GmmTrainConfig &cfg,
                   std::vector<double> *loglike_history = nullptr);

// Pools the components of the given mixtures; each weight is divided by the
// number of source models, so the merged density is their uniform average.
DiagGmm MergeGmms(const std::vector<DiagGmm> &gmms);

struct MapConfig {
  double relevance = 3.0;
  int iterations = 1;
  bool update_means_only = true;
};

// Relevance-MAP adaptation.  Empty adaptation data returns the prior
// unchanged.  With update_means_only, weights and variances are copied.
DiagGmm MapAdapt(const DiagGmm &prior, const FeatureMatrix &feats, const MapConfig &cfg);

}  // namespace sdsv

#endif  // SDSV_GMM_TRAIN_H_
