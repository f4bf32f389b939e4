// src/fusion.cc

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

#include "sdsv/fusion.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace sdsv {

std::vector<double> LinearFuse(const std::vector<std::vector<double>> &score_columns,
                               const FusionWeights &weights) {
  Require(!score_columns.empty(), "no systems to fuse");
  Require(score_columns.size() == weights.size(), "system/weight count mismatch");
  const size_t n = score_columns[0].size();
  for (const auto &col : score_columns)
    Require(col.size() == n, "score columns have different lengths");
  std::vector<double> fused(n, 0.0);
  for (size_t s = 0; s < score_columns.size(); ++s)
    for (size_t i = 0; i < n; ++i) fused[i] += weights[s] * score_columns[s][i];
  return fused;
}

namespace {

double Objective(const std::vector<double> &scores, const std::vector<bool> &is_target,
                 FusionObjective objective, const DcfParams &params) {
  return objective == FusionObjective::kMinDcf
             ? ComputeMinDcf(scores, is_target, params).min_dcf
             : ComputeEer(scores, is_target).eer;
}

// All weight vectors with the given number of grid ticks distributed over
// `dims` coordinates, lexicographic order.
void EnumerateSimplex(int dims, int ticks, std::vector<int> *current,
                      const std::function<void(const std::vector<int> &)> &visit) {
  if (dims == 1) {
    current->push_back(ticks);
    visit(*current);
    current->pop_back();
    return;
  }
  for (int t = 0; t <= ticks; ++t) {
    current->push_back(t);
    EnumerateSimplex(dims - 1, ticks - t, current, visit);
    current->pop_back();
  }
}

}  // namespace

FusionWeights SearchWeights(const std::vector<std::vector<double>> &score_columns,
                            const std::vector<bool> &is_target, FusionObjective objective,
                            double step, const DcfParams &params, double *best_objective) {
  const int n_systems = static_cast<int>(score_columns.size());
  Require(n_systems >= 1, "need at least one system");
  Require(step > 0 && step <= 1.0, "step must be in (0, 1]");
  const size_t n = score_columns[0].size();
  for (const auto &col : score_columns)
    Require(col.size() == n, "score columns have different lengths");
  Require(is_target.size() == n, "label count mismatch");

  const int ticks = std::max(1, static_cast<int>(std::lround(1.0 / step)));
  auto weights_of = [&](const std::vector<int> &t) {
    FusionWeights w(n_systems, 0.0);
    for (int s = 0; s < n_systems; ++s) w[s] = static_cast<double>(t[s]) / ticks;
    return w;
  };

  double best = std::numeric_limits<double>::infinity();
  FusionWeights best_weights;
  auto consider = [&](const FusionWeights &w) {
    double obj = Objective(LinearFuse(score_columns, w), is_target, objective, params);
    // Strict improvement, or an exact tie won by lexicographic order.
    if (obj < best || (obj == best && w < best_weights)) {
      best = obj;
      best_weights = w;
    }
  };

  std::vector<int> scratch;
  if (n_systems <= 3) {
    EnumerateSimplex(n_systems, ticks, &scratch,
                     [&](const std::vector<int> &t) { consider(weights_of(t)); });
  } else {
    // Grid restricted to at-most-3-sparse points.
    for (int a = 0; a < n_systems; ++a)
      for (int b = a; b < n_systems; ++b)
        for (int c = b; c < n_systems; ++c) {
          EnumerateSimplex(3, ticks, &scratch, [&](const std::vector<int> &t) {
            std::vector<int> full(n_systems, 0);
            full[a] += t[0];
            full[b] += t[1];
            full[c] += t[2];
            consider(weights_of(full));
          });
        }
    // Greedy refinement: move `step` of mass between coordinate pairs while
    // it helps.
    bool improved = true;
    while (improved) {
      improved = false;
      FusionWeights base = best_weights;
      for (int from = 0; from < n_systems; ++from) {
        if (base[from] < 1.0 / ticks - 1e-12) continue;
        for (int to = 0; to < n_systems; ++to) {
          if (to == from) continue;
          FusionWeights w = base;
          w[from] -= 1.0 / ticks;
          w[to] += 1.0 / ticks;
          double prev = best;
          consider(w);
          if (best < prev) improved = true;
        }
      }
    }
  }
  if (best_objective) *best_objective = best;
  return best_weights;
}

std::vector<double> CascadeFuse(const std::vector<double> &uv_scores,
                                const std::vector<double> &asv_scores, double uv_threshold,
                                double floor) {
  Require(uv_scores.size() == asv_scores.size(), "UV/ASV score lists differ in length");
  std::vector<double> out(asv_scores.size());
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = uv_scores[i] < uv_threshold ? floor : asv_scores[i];
  return out;
}

ScoreScale FitScoreScale(const std::vector<double> &scores) {
  Require(!scores.empty(), "no scores");
  ScoreScale scale;
  double sum = 0.0;
  for (double s : scores) sum += s;
  scale.mean = sum / static_cast<double>(scores.size());
  double ss = 0.0;
  for (double s : scores) ss += (s - scale.mean) * (s - scale.mean);
  scale.sd = std::sqrt(ss / static_cast<double>(scores.size()));
  if (scale.sd < 1e-12) scale.sd = 1.0;
  return scale;
}

std::vector<double> ApplyScoreScale(const ScoreScale &scale, const std::vector<double> &scores) {
  std::vector<double> out(scores.size());
  for (size_t i = 0; i < scores.size(); ++i) out[i] = (scores[i] - scale.mean) / scale.sd;
  return out;
}

}  // namespace sdsv
