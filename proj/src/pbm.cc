// src/pbm.cc

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

#include "sdsv/pbm.h"

#include <limits>

#include "sdsv/binary-io.h"

namespace sdsv {

namespace {
constexpr char kPbmMagic[4] = {'S', 'P', 'B', 'M'};
constexpr char kSpeakerMagic[4] = {'S', 'S', 'P', 'K'};
constexpr uint32_t kVersion = 1;
}  // namespace

int PbmSet::FindPhrase(const std::string &phrase_id) const {
  for (size_t i = 0; i < phrase_ids.size(); ++i)
    if (phrase_ids[i] == phrase_id) return static_cast<int>(i);
  return -1;
}

void PbmSet::WriteToFile(const std::string &path) const {
  std::ofstream os = OpenOutput(path);
  WriteMagic(os, kPbmMagic, kVersion);
  WriteU32(os, static_cast<uint32_t>(phrase_ids.size()));
  for (const auto &id : phrase_ids) WriteString(os, id);
  parent.Write(os);
  for (const auto &m : models) m.Write(os);
}

PbmSet PbmSet::ReadFromFile(const std::string &path) {
  std::ifstream is = OpenInput(path);
  uint32_t version = ExpectMagic(is, kPbmMagic);
  if (version != kVersion) SDSV_ERR << path << ": unsupported PBM file version " << version;
  uint32_t n = ReadU32(is);
  Require(n >= 2, "PBM set must contain at least two phrases");
  PbmSet set;
  set.phrase_ids.reserve(n);
  for (uint32_t i = 0; i < n; ++i) set.phrase_ids.push_back(ReadString(is));
  set.parent = DiagGmm::Read(is);
  set.models.reserve(n);
  for (uint32_t i = 0; i < n; ++i) set.models.push_back(DiagGmm::Read(is));
  return set;
}

PbmSet BuildPbms(const DiagGmm &ubm, const std::vector<std::string> &phrase_ids,
                 const std::vector<FeatureMatrix> &phrase_data, const MapConfig &map_cfg) {
  Require(phrase_ids.size() == phrase_data.size(), "phrase id/data count mismatch");
  Require(phrase_ids.size() >= 2, "need at least two phrases");
  PbmSet set;
  set.phrase_ids = phrase_ids;
  set.parent = ubm;
  set.models.reserve(phrase_ids.size());
  for (size_t p = 0; p < phrase_ids.size(); ++p) {
    if (phrase_data[p].rows() == 0)
      SDSV_ERR << "phrase '" << phrase_ids[p] << "' has no adaptation frames";
    set.models.push_back(MapAdapt(ubm, phrase_data[p], map_cfg));
  }
  return set;
}

std::pair<int, double> SelectBestPbm(const PbmSet &pbms, const FeatureMatrix &feats) {
  Require(pbms.NumPhrases() >= 1, "empty PBM set");
  Require(feats.rows() >= 1, "empty feature matrix");
  int best = 0;
  double best_ll = pbms.models[0].AvgLogLikelihood(feats);
  for (int p = 1; p < pbms.NumPhrases(); ++p) {
    double ll = pbms.models[p].AvgLogLikelihood(feats);
    if (ll > best_ll) {
      best_ll = ll;
      best = p;
    }
  }
  return {best, best_ll};
}

void SpeakerPhraseModel::WriteToFile(const std::string &path) const {
  std::ofstream os = OpenOutput(path);
  WriteMagic(os, kSpeakerMagic, kVersion);
  WriteString(os, speaker_id);
  WriteString(os, phrase_id);
  model.Write(os);
}

SpeakerPhraseModel SpeakerPhraseModel::ReadFromFile(const std::string &path) {
  std::ifstream is = OpenInput(path);
  uint32_t version = ExpectMagic(is, kSpeakerMagic);
  if (version != kVersion)
    SDSV_ERR << path << ": unsupported speaker model version " << version;
  SpeakerPhraseModel m;
  m.speaker_id = ReadString(is);
  m.phrase_id = ReadString(is);
  m.model = DiagGmm::Read(is);
  return m;
}

SpeakerPhraseModel EnrollSpeaker(const PbmSet &pbms, const std::string &speaker_id,
                                 const std::vector<FeatureMatrix> &enrollment,
                                 const MapConfig &map_cfg) {
  Require(!enrollment.empty(), "enrollment list is empty");
  Eigen::Index total = 0;
  for (const auto &u : enrollment) {
    Require(u.rows() >= 1, "enrollment utterance has no frames");
    Require(u.cols() == pbms.parent.Dim(), "enrollment dim does not match PBM dim");
    total += u.rows();
  }
  FeatureMatrix pooled(total, pbms.parent.Dim());
  Eigen::Index row = 0;
  for (const auto &u : enrollment) {
    pooled.middleRows(row, u.rows()) = u;
    row += u.rows();
  }
  auto [best, unused_ll] = SelectBestPbm(pbms, pooled);
  SpeakerPhraseModel model;
  model.speaker_id = speaker_id;
  model.phrase_id = pbms.phrase_ids[best];
  model.model = MapAdapt(pbms.models[best], pooled, map_cfg);
  return model;
}

double Verify(const SpeakerPhraseModel &model, const PbmSet &pbms, const FeatureMatrix &test) {
  Require(test.rows() >= 1, "empty test utterance");
  auto [best, best_ll] = SelectBestPbm(pbms, test);
  return model.model.AvgLogLikelihood(test) - best_ll;
}

double UvScore(const PbmSet &pbms, const std::string &claimed_phrase,
               const FeatureMatrix &feats) {
  Require(pbms.NumPhrases() >= 2, "UV score needs at least two phrases");
  int claimed = pbms.FindPhrase(claimed_phrase);
  if (claimed < 0) SDSV_ERR << "claimed phrase '" << claimed_phrase << "' not in PBM set";
  double claimed_ll = pbms.models[claimed].AvgLogLikelihood(feats);
  double best_other = -std::numeric_limits<double>::infinity();
  for (int p = 0; p < pbms.NumPhrases(); ++p) {
    if (p == claimed) continue;
    best_other = std::max(best_other, pbms.models[p].AvgLogLikelihood(feats));
  }
  return claimed_ll - best_other;
}

}  // namespace sdsv
