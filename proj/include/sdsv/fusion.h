// include/sdsv/fusion.h

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

#ifndef SDSV_FUSION_H_
#define SDSV_FUSION_H_

#include <vector>

#include "sdsv/metrics.h"

namespace sdsv {

// Non-negative per-system weights on the unit simplex.
using FusionWeights = std::vector<double>;

std::vector<double> LinearFuse(const std::vector<std::vector<double>> &score_columns,
                               const FusionWeights &weights);

enum class FusionObjective { kMinDcf, kEer };

// Exhaustive simplex grid at the given resolution for up to three systems;
// with more systems the grid is restricted to points with at most three
// non-zero weights and refined greedily by moving `step` of mass between
// coordinate pairs until no move helps.  Ties break toward lexicographically
// smallest weights.
FusionWeights SearchWeights(const std::vector<std::vector<double>> &score_columns,
                            const std::vector<bool> &is_target, FusionObjective objective,
                            double step = 0.05, const DcfParams &params = {},
                            double *best_objective = nullptr);

// output[i] = floor when uv[i] < uv_threshold, else asv[i] unchanged.
std::vector<double> CascadeFuse(const std::vector<double> &uv_scores,
                                const std::vector<double> &asv_scores, double uv_threshold,
                                double floor = -100.0);

// Development-set score scaling frozen before weight search, so linear
// weights compare systems on a common scale.
struct ScoreScale {
  double mean = 0.0;
  double sd = 1.0;
};

ScoreScale FitScoreScale(const std::vector<double> &scores);
std::vector<double> ApplyScoreScale(const ScoreScale &scale, const std::vector<double> &scores);

}  // namespace sdsv

#endif  // SDSV_FUSION_H_
