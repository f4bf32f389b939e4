// include/sdsv/frontend.h

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

#ifndef SDSV_FRONTEND_H_
#define SDSV_FRONTEND_H_

#include <vector>

#include "sdsv/common.h"
#include "sdsv/config.h"
#include "sdsv/wave.h"

namespace sdsv {

enum class FilterScale { kMel, kLinear };
enum class CepstralMode { kDct, kBlockDct };

struct FrontendConfig {
  double frame_len_ms = 25.0;
  double frame_shift_ms = 10.0;
  double preemphasis = 0.97;  // 0 disables
  int n_filters = 20;
  FilterScale filter_scale = FilterScale::kMel;
  CepstralMode cepstral_mode = CepstralMode::kDct;
  int n_cepstra = 20;                  // first coefficient is the energy term
  std::vector<int> block_sizes = {9, 13};
  bool apply_rasta = false;
  bool apply_deltas = false;
  int delta_window = 2;
  bool apply_cmvn = false;
  bool apply_sad = false;
  double sad_drop_db = 30.0;
  double sad_abs_floor = -60.0;

  int StaticDim() const;
  void Check() const;  // throws naming the offending field

  static FrontendConfig FromConfig(const Config &cfg);
};

// Window -> power spectrum -> triangular filterbank -> log -> DCT-II, either
// over the whole band or per overlapped block.  Frame count is
// 1 + floor((len - frame)/shift).
FeatureMatrix ExtractStaticCepstra(const AudioSignal &signal, const FrontendConfig &cfg);

// Band-pass filters every coefficient trajectory with
// H(z) = 0.1 (2 + z^-1 - z^-3 - 2 z^-4) / (1 - 0.98 z^-1), zero initial
// state, transient frames kept.
FeatureMatrix RastaFilter(const FeatureMatrix &feats);

// Appends deltas and double-deltas (regression over +/- window frames with
// edge replication); output dim is 3x input dim.
FeatureMatrix AddDynamics(const FeatureMatrix &feats, int window = 2);

// Utterance-level mean/variance normalization.  Dimensions with variance
// under 1e-12 are mean-subtracted only.
FeatureMatrix Cmvn(const FeatureMatrix &feats);

// Frame kept iff log-energy exceeds both (max - drop_db/10 * ln 10) and
// abs_floor.  Run this on pre-CMVN features so the energy column is raw.
std::vector<bool> EnergySad(const FeatureMatrix &feats, int energy_column,
                            double drop_db = 30.0, double abs_floor = -60.0);

FeatureMatrix SelectFrames(const FeatureMatrix &feats, const std::vector<bool> &keep);

// Full chain per config.  When deferred_sad is non-null and cfg.apply_sad is
// set, the mask is returned instead of applied, so callers that transform the
// features further (bottleneck extraction) can drop frames afterwards; CMVN
// then runs over all frames.
FeatureMatrix ProcessUtterance(const AudioSignal &signal, const FrontendConfig &cfg,
                               std::vector<bool> *deferred_sad = nullptr);

// The post-extraction part of the chain, for inputs that are already static
// cepstra (feature-domain corpora).
FeatureMatrix ProcessStatics(const FeatureMatrix &statics, const FrontendConfig &cfg,
                             std::vector<bool> *deferred_sad = nullptr);

namespace internal {
// Exposed for tests.
void Fft(std::vector<double> *real, std::vector<double> *imag);
Matrix DctMatrix(int n_out, int n_in);  // orthonormal DCT-II rows
std::vector<int> BlockStarts(const std::vector<int> &block_sizes, int n_filters);
}  // namespace internal

}  // namespace sdsv

#endif  // SDSV_FRONTEND_H_
