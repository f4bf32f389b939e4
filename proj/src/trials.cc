// src/trials.cc

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

#include "sdsv/trials.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "sdsv/binary-io.h"
#include "sdsv/rng.h"

namespace sdsv {

void WriteManifest(const std::string &path, const CorpusManifest &manifest) {
  std::ofstream os = OpenOutput(path, /*binary=*/false);
  for (const auto &u : manifest)
    os << u.utt_id << " " << u.speaker_id << " " << u.phrase_id << " " << u.path << "\n";
  if (!os) throw SdsvError("write failed: " + path);
}

CorpusManifest ReadManifest(const std::string &path) {
  std::ifstream is = OpenInput(path, /*binary=*/false);
  CorpusManifest manifest;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    UtteranceRecord u;
    if (!(ss >> u.utt_id >> u.speaker_id >> u.phrase_id >> u.path))
      SDSV_ERR << path << ":" << line_no << ": expected 'utt-id speaker-id phrase-id path'";
    manifest.push_back(std::move(u));
  }
  return manifest;
}

const char *ConditionName(TrialCondition c) {
  switch (c) {
    case TrialCondition::kTC: return "TC";
    case TrialCondition::kTW: return "TW";
    case TrialCondition::kIC: return "IC";
    case TrialCondition::kIW: return "IW";
  }
  throw SdsvError("invalid trial condition");
}

TrialCondition ConditionFromName(const std::string &name) {
  if (name == "TC") return TrialCondition::kTC;
  if (name == "TW") return TrialCondition::kTW;
  if (name == "IC") return TrialCondition::kIC;
  if (name == "IW") return TrialCondition::kIW;
  throw SdsvError("unknown trial condition: " + name);
}

TrialCondition LabelCondition(const std::string &model_speaker, const std::string &model_phrase,
                              const std::string &test_speaker, const std::string &test_phrase) {
  bool same_speaker = model_speaker == test_speaker;
  bool same_phrase = model_phrase == test_phrase;
  if (same_speaker) return same_phrase ? TrialCondition::kTC : TrialCondition::kTW;
  return same_phrase ? TrialCondition::kIC : TrialCondition::kIW;
}

void WriteModelList(const std::string &path, const std::vector<EnrollmentModel> &models) {
  std::ofstream os = OpenOutput(path, /*binary=*/false);
  for (const auto &m : models) {
    os << m.model_id << " " << m.speaker_id << " " << m.phrase_id << " ";
    for (size_t i = 0; i < m.utt_ids.size(); ++i) os << (i ? "," : "") << m.utt_ids[i];
    os << "\n";
  }
  if (!os) throw SdsvError("write failed: " + path);
}

std::vector<EnrollmentModel> ReadModelList(const std::string &path) {
  std::ifstream is = OpenInput(path, /*binary=*/false);
  std::vector<EnrollmentModel> models;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    EnrollmentModel m;
    std::string utts;
    if (!(ss >> m.model_id >> m.speaker_id >> m.phrase_id >> utts))
      SDSV_ERR << path << ":" << line_no
               << ": expected 'model-id speaker-id phrase-id utt1,utt2,...'";
    std::istringstream us(utts);
    std::string utt;
    while (std::getline(us, utt, ','))
      if (!utt.empty()) m.utt_ids.push_back(utt);
    Require(!m.utt_ids.empty(), "model with no enrollment utterances: " + m.model_id);
    models.push_back(std::move(m));
  }
  return models;
}

void WriteTrialList(const std::string &path, const std::vector<Trial> &trials) {
  std::ofstream os = OpenOutput(path, /*binary=*/false);
  for (const auto &t : trials)
    os << t.model_id << " " << t.test_utt_id << " " << ConditionName(t.condition) << "\n";
  if (!os) throw SdsvError("write failed: " + path);
}

std::vector<Trial> ReadTrialList(const std::string &path) {
  std::ifstream is = OpenInput(path, /*binary=*/false);
  std::vector<Trial> trials;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    Trial t;
    std::string cond;
    if (!(ss >> t.model_id >> t.test_utt_id >> cond))
      SDSV_ERR << path << ":" << line_no << ": expected 'model-id test-utt-id condition'";
    t.condition = ConditionFromName(cond);
    trials.push_back(std::move(t));
  }
  return trials;
}

void WriteScoreFile(const std::string &path, const std::vector<Trial> &trials,
                    const std::vector<double> &scores) {
  Require(trials.size() == scores.size(), "trial/score count mismatch");
  std::ofstream os = OpenOutput(path, /*binary=*/false);
  char buf[64];
  for (size_t i = 0; i < trials.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.6f", scores[i]);
    os << trials[i].model_id << " " << trials[i].test_utt_id << " " << buf << "\n";
  }
  if (!os) throw SdsvError("write failed: " + path);
}

std::vector<double> ReadScoresAligned(const std::string &path, const std::vector<Trial> &trials) {
  std::ifstream is = OpenInput(path, /*binary=*/false);
  std::map<std::pair<std::string, std::string>, double> by_key;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string model, utt;
    double score;
    if (!(ss >> model >> utt >> score))
      SDSV_ERR << path << ":" << line_no << ": expected 'model-id test-utt-id score'";
    by_key[{model, utt}] = score;
  }
  std::vector<double> scores;
  scores.reserve(trials.size());
  for (const auto &t : trials) {
    auto it = by_key.find({t.model_id, t.test_utt_id});
    if (it == by_key.end())
      SDSV_ERR << path << ": no score for trial " << t.model_id << " " << t.test_utt_id;
    scores.push_back(it->second);
  }
  return scores;
}

DevSplit BuildDevSet(const CorpusManifest &corpus, int n_speakers, int enroll_per_model,
                     uint64_t seed) {
  Require(n_speakers >= 1, "n_speakers must be >= 1");
  Require(enroll_per_model >= 1, "enroll_per_model must be >= 1");

  std::set<std::string> unique_speakers;
  for (const auto &u : corpus) unique_speakers.insert(u.speaker_id);
  Require(static_cast<int>(unique_speakers.size()) >= n_speakers,
          "corpus has fewer speakers than requested");

  std::vector<std::string> speakers(unique_speakers.begin(), unique_speakers.end());
  Rng rng(seed);
  rng.Shuffle(&speakers);
  std::set<std::string> dev_speakers(speakers.begin(), speakers.begin() + n_speakers);

  DevSplit split;
  // (speaker, phrase) -> utterances, in manifest order for determinism.
  std::map<std::pair<std::string, std::string>, std::vector<UtteranceRecord>> groups;
  for (const auto &u : corpus) {
    if (dev_speakers.count(u.speaker_id))
      groups[{u.speaker_id, u.phrase_id}].push_back(u);
    else
      split.train_utterances.push_back(u);
  }

  for (auto &[key, utts] : groups) {
    // A pair with exactly enroll_per_model utterances has no test material
    // left, so the target model is disregarded.
    if (static_cast<int>(utts.size()) < enroll_per_model + 1) continue;
    std::string group_key = key.first + "\x1f" + key.second;
    Rng group_rng = rng.Fork(Rng::HashString(group_key.data(), group_key.size()));
    group_rng.Shuffle(&utts);
    EnrollmentModel model;
    model.speaker_id = key.first;
    model.phrase_id = key.second;
    model.model_id = key.first + "-" + key.second;
    for (int i = 0; i < enroll_per_model; ++i) model.utt_ids.push_back(utts[i].utt_id);
    split.models.push_back(std::move(model));
    for (size_t i = enroll_per_model; i < utts.size(); ++i)
      split.test_utterances.push_back(utts[i]);
  }
  Require(!split.models.empty(), "no (speaker, phrase) pair has enough utterances");

  for (const auto &m : split.models)
    for (const auto &t : split.test_utterances)
      split.trials.push_back(
          {m.model_id, t.utt_id,
           LabelCondition(m.speaker_id, m.phrase_id, t.speaker_id, t.phrase_id)});
  return split;
}

namespace {

// 2-means with fixed restarts; returns per-row cluster flags.
std::vector<int> TwoMeans(const Matrix &points, uint64_t seed, int restarts, int iters) {
  const Eigen::Index n = points.rows();
  std::vector<int> best_assign(n, 0);
  double best_inertia = std::numeric_limits<double>::infinity();
  Rng base(seed);
  for (int r = 0; r < restarts; ++r) {
    Rng rng = base.Fork(r);
    auto first = rng.UniformInt(n);
    auto second = rng.UniformInt(n);
    if (second == first) second = (second + 1) % n;
    Matrix centers(2, points.cols());
    centers.row(0) = points.row(static_cast<Eigen::Index>(first));
    centers.row(1) = points.row(static_cast<Eigen::Index>(second));
    std::vector<int> assign(n, 0);
    for (int it = 0; it < iters; ++it) {
      for (Eigen::Index i = 0; i < n; ++i) {
        double d0 = (points.row(i) - centers.row(0)).squaredNorm();
        double d1 = (points.row(i) - centers.row(1)).squaredNorm();
        assign[i] = d1 < d0 ? 1 : 0;
      }
      for (int k = 0; k < 2; ++k) {
        Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(points.cols());
        int64_t count = 0;
        for (Eigen::Index i = 0; i < n; ++i)
          if (assign[i] == k) {
            sum += points.row(i);
            ++count;
          }
        if (count > 0) centers.row(k) = sum / static_cast<double>(count);
      }
    }
    double inertia = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      inertia += (points.row(i) - centers.row(assign[i])).squaredNorm();
    if (inertia < best_inertia) {
      best_inertia = inertia;
      best_assign = assign;
    }
  }
  return best_assign;
}

}  // namespace

std::vector<Trial> PseudoGenderFilter(const std::vector<Trial> &trials,
                                      const std::vector<EnrollmentModel> &models,
                                      const CorpusManifest &test_utterances,
                                      const std::map<std::string, Vector> &speaker_embeddings,
                                      uint64_t seed) {
  std::map<std::string, std::string> model_speaker, utt_speaker;
  for (const auto &m : models) model_speaker[m.model_id] = m.speaker_id;
  for (const auto &u : test_utterances) utt_speaker[u.utt_id] = u.speaker_id;

  std::set<std::string> speakers_needed;
  for (const auto &t : trials) {
    auto mit = model_speaker.find(t.model_id);
    if (mit == model_speaker.end()) SDSV_ERR << "unknown model in trial list: " << t.model_id;
    auto uit = utt_speaker.find(t.test_utt_id);
    if (uit == utt_speaker.end()) SDSV_ERR << "unknown test utterance: " << t.test_utt_id;
    speakers_needed.insert(mit->second);
    speakers_needed.insert(uit->second);
  }
  std::vector<std::string> speakers(speakers_needed.begin(), speakers_needed.end());
  Eigen::Index dim = -1;
  for (const auto &s : speakers) {
    auto it = speaker_embeddings.find(s);
    if (it == speaker_embeddings.end()) SDSV_ERR << "missing embedding for speaker " << s;
    if (dim < 0) dim = it->second.size();
    Require(it->second.size() == dim, "speaker embedding dims differ");
  }

  Matrix points(speakers.size(), dim);
  for (size_t i = 0; i < speakers.size(); ++i)
    points.row(i) = speaker_embeddings.at(speakers[i]).transpose();

  // All-identical embeddings mean a single effective cluster; keep everything.
  double spread = 0.0;
  for (Eigen::Index i = 1; i < points.rows(); ++i)
    spread = std::max(spread, (points.row(i) - points.row(0)).norm());
  if (spread < 1e-12) {
    SDSV_WARN << "speaker embeddings form a single cluster; keeping all trials";
    return trials;
  }

  std::vector<int> assign = TwoMeans(points, seed, /*restarts=*/10, /*iters=*/50);
  std::map<std::string, int> cluster;
  for (size_t i = 0; i < speakers.size(); ++i) cluster[speakers[i]] = assign[i];

  std::vector<Trial> kept;
  for (const auto &t : trials)
    if (cluster.at(model_speaker.at(t.model_id)) == cluster.at(utt_speaker.at(t.test_utt_id)))
      kept.push_back(t);
  return kept;
}

}  // namespace sdsv
