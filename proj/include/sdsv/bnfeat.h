// include/sdsv/bnfeat.h

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

#ifndef SDSV_BNFEAT_H_
#define SDSV_BNFEAT_H_

#include <cstdint>
#include <vector>

#include "sdsv/mlp.h"
#include "sdsv/transforms.h"

namespace sdsv {

// Each output row is the concatenation of frames t-left .. t+right with
// edge frames replicated; dim becomes (left + right + 1) x input dim.
FeatureMatrix StackContext(const FeatureMatrix &feats, int left = 5, int right = 5);

struct StclConfig {
  int chunk_len = 100;   // frames per chunk
  int num_classes = 10;
  int max_iters = 20;
  uint64_t seed = 0;
};

// Stream-wise time-contrastive labeling: the utterances are concatenated in
// seeded random order, cut into fixed chunks labeled round-robin, and the
// labels are refined by reassigning whole chunks to the per-class diagonal
// Gaussian that likes them best, until the labels stop changing.  Returns
// per-frame labels aligned with the input utterance order.  The monitored
// objective (sum over chunks of the best class's average log-likelihood) is
// non-decreasing.
std::vector<std::vector<int>> StclLabels(const std::vector<FeatureMatrix> &utterances,
                                         const StclConfig &cfg,
                                         std::vector<double> *objective_history = nullptr);

// Post-activation (default) hidden-layer tap; layer_index is 1-based.
FeatureMatrix BottleneckFeatures(const MlpModel &mlp, const FeatureMatrix &stacked_inputs,
                                 int layer_index, bool post_activation = true);

}  // namespace sdsv

#endif  // SDSV_BNFEAT_H_
