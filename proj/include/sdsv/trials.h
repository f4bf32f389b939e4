// include/sdsv/trials.h

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

#ifndef SDSV_TRIALS_H_
#define SDSV_TRIALS_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sdsv/common.h"

namespace sdsv {

struct UtteranceRecord {
  std::string utt_id;
  std::string speaker_id;
  std::string phrase_id;
  std::string path;  // audio or feature file
};

using CorpusManifest = std::vector<UtteranceRecord>;

// Text format: one utterance per line, "utt-id speaker-id phrase-id path".
void WriteManifest(const std::string &path, const CorpusManifest &manifest);
CorpusManifest ReadManifest(const std::string &path);

// Target speaker/phrase and condition taxonomy.  TC is the only genuine
// condition; TW, IC and IW are impostor conditions.
enum class TrialCondition { kTC, kTW, kIC, kIW };

const char *ConditionName(TrialCondition c);
TrialCondition ConditionFromName(const std::string &name);

struct EnrollmentModel {
  std::string model_id;
  std::string speaker_id;
  std::string phrase_id;
  std::vector<std::string> utt_ids;
};

struct Trial {
  std::string model_id;
  std::string test_utt_id;
  TrialCondition condition;
};

TrialCondition LabelCondition(const std::string &model_speaker, const std::string &model_phrase,
                              const std::string &test_speaker, const std::string &test_phrase);

// "model-id speaker-id phrase-id utt1,utt2,utt3" per line.
void WriteModelList(const std::string &path, const std::vector<EnrollmentModel> &models);
std::vector<EnrollmentModel> ReadModelList(const std::string &path);

// "model-id test-utt-id condition" per line.
void WriteTrialList(const std::string &path, const std::vector<Trial> &trials);
std::vector<Trial> ReadTrialList(const std::string &path);

// "model-id test-utt-id score" per line, scores with 6 decimals.
void WriteScoreFile(const std::string &path, const std::vector<Trial> &trials,
                    const std::vector<double> &scores);
// Scores aligned with the given trial list; throws when a trial is missing.
std::vector<double> ReadScoresAligned(const std::string &path, const std::vector<Trial> &trials);

struct DevSplit {
  std::vector<EnrollmentModel> models;
  CorpusManifest test_utterances;
  std::vector<Trial> trials;
  // Utterances of the speakers left out of the development set; background
  // and subspace training run on these.
  CorpusManifest train_utterances;
};

// Seeded speaker sample; per (speaker, phrase) with > enroll_per_model
// utterances, a seeded shuffle takes the first enroll_per_model for
// enrollment and leaves the rest for test.  Trials are the full model x test
// cross, condition-labeled.
DevSplit BuildDevSet(const CorpusManifest &corpus, int n_speakers, int enroll_per_model,
                     uint64_t seed);

// Clusters per-speaker embeddings into two pseudo-gender classes (seeded
// 2-means, 10 restarts, best inertia) and keeps trials whose model and test
// speakers share a cluster.  With a single effective cluster, everything is
// kept and a warning is emitted.
std::vector<Trial> PseudoGenderFilter(const std::vector<Trial> &trials,
                                      const std::vector<EnrollmentModel> &models,
                                      const CorpusManifest &test_utterances,
                                      const std::map<std::string, Vector> &speaker_embeddings,
                                      uint64_t seed);

}  // namespace sdsv

#endif  // SDSV_TRIALS_H_
