// include/sdsv/pbm.h

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

#ifndef SDSV_PBM_H_
#define SDSV_PBM_H_

#include <string>
#include <utility>
#include <vector>

#include "sdsv/gmm-train.h"

namespace sdsv {

// Pass-phrase-dependent background models: one MAP-adapted mixture per
// phrase, all derived from a common UBM.  Target speakers adapt from the
// best-matched PBM rather than the UBM, and verification normalizes by the
// test utterance's best-matched PBM, so phrase and speaker identity are
// checked jointly.
struct PbmSet {
  std::vector<std::string> phrase_ids;
  std::vector<DiagGmm> models;
  DiagGmm parent;  // the UBM the models were adapted from

  int NumPhrases() const { return static_cast<int>(models.size()); }
  int FindPhrase(const std::string &phrase_id) const;  // -1 when absent

  void WriteToFile(const std::string &path) const;
  static PbmSet ReadFromFile(const std::string &path);
};

PbmSet BuildPbms(const DiagGmm &ubm, const std::vector<std::string> &phrase_ids,
                 const std::vector<FeatureMatrix> &phrase_data, const MapConfig &map_cfg);

// Argmax of average log-likelihood over the set; ties break toward the
// lowest phrase index.
std::pair<int, double> SelectBestPbm(const PbmSet &pbms, const FeatureMatrix &feats);

struct SpeakerPhraseModel {
  std::string speaker_id;
  std::string phrase_id;  // phrase of the best-matched PBM at enrollment
  DiagGmm model;

  void WriteToFile(const std::string &path) const;
  static SpeakerPhraseModel ReadFromFile(const std::string &path);
};

// Pools the enrollment utterances, picks the best PBM on the pooled frames,
// and MAP-adapts the target from it.
SpeakerPhraseModel EnrollSpeaker(const PbmSet &pbms, const std::string &speaker_id,
                                 const std::vector<FeatureMatrix> &enrollment,
                                 const MapConfig &map_cfg);

// avg LL under the target minus avg LL under the test utterance's
// best-matched PBM.
double Verify(const SpeakerPhraseModel &model, const PbmSet &pbms, const FeatureMatrix &test);

// Closed-set utterance-verification score: claimed-phrase avg LL minus the
// best competing phrase's avg LL.
double UvScore(const PbmSet &pbms, const std::string &claimed_phrase,
               const FeatureMatrix &feats);

}  // namespace sdsv

#endif  // SDSV_PBM_H_
