// include/sdsv/ivector.h

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

#ifndef SDSV_IVECTOR_H_
#define SDSV_IVECTOR_H_

#include <cstdint>
#include <string>
#include <vector>

#include "sdsv/diag-gmm.h"

namespace sdsv {

// Zeroth-order occupancies and mean-centered first-order sums per UBM
// component.
struct BaumWelchStats {
  Vector occupancy;            // K
  Matrix centered_first;       // K x D

  BaumWelchStats &operator+=(const BaumWelchStats &other);
};

BaumWelchStats AccumulateStats(const DiagGmm &ubm, const FeatureMatrix &feats);

// Low-rank total-variability loading matrix; supervector model is
// m + T w with w ~ N(0, I).  The companion UBM supplies means and the
// diagonal covariance and is stored separately.
struct TotalVariabilityModel {
  Matrix t;  // (K*D) x R
  int num_components = 0;
  int dim = 0;

  int Rank() const { return static_cast<int>(t.cols()); }

  void WriteToFile(const std::string &path) const;
  static TotalVariabilityModel ReadFromFile(const std::string &path);
};

// EM with seeded Gaussian initialization.  aux_history, when given, receives
// the per-iteration marginal log-likelihood of the stats (up to a constant
// that does not depend on T), which is non-decreasing under EM.
TotalVariabilityModel TrainTotalVariability(const std::vector<BaumWelchStats> &stats,
                                            const DiagGmm &ubm, int rank, int iters,
                                            uint64_t seed,
                                            std::vector<double> *aux_history = nullptr);

// Posterior mean w = (I + T' S^-1 N T)^-1 T' S^-1 F of the latent factor.
Vector ExtractIvector(const TotalVariabilityModel &tv, const DiagGmm &ubm,
                      const BaumWelchStats &stats);

// Precomputes the per-component Gram matrices once; use this when
// extracting many i-vectors under one model.
class IvectorExtractor {
 public:
  IvectorExtractor(const TotalVariabilityModel &tv, const DiagGmm &ubm);
  Vector Extract(const BaumWelchStats &stats) const;

 private:
  Matrix t_;
  std::vector<Matrix> grams_;
  Matrix sigma_inv_t_;
  int num_components_, dim_;
};

}  // namespace sdsv

#endif  // SDSV_IVECTOR_H_
