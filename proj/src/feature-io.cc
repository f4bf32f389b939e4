// src/feature-io.cc

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

#include "sdsv/feature-io.h"

#include <sstream>

#include "sdsv/binary-io.h"

namespace sdsv {

namespace {
constexpr char kFeatureMagic[4] = {'S', 'D', 'S', 'V'};
constexpr uint32_t kFeatureVersion = 1;
}  // namespace

void WriteFeatureFile(const std::string &path, const FeatureMatrix &feats) {
  RequireFinite(feats, "feature matrix");
  std::ofstream os = OpenOutput(path);
  WriteMagic(os, kFeatureMagic, kFeatureVersion);
  WriteU32(os, static_cast<uint32_t>(feats.rows()));
  WriteU32(os, static_cast<uint32_t>(feats.cols()));
  for (Eigen::Index r = 0; r < feats.rows(); ++r)
    for (Eigen::Index c = 0; c < feats.cols(); ++c)
      WriteF32(os, static_cast<float>(feats(r, c)));
}

FeatureMatrix ReadFeatureFile(const std::string &path) {
  std::ifstream is = OpenInput(path);
  uint32_t version = ExpectMagic(is, kFeatureMagic);
  if (version != kFeatureVersion)
    SDSV_ERR << path << ": unsupported feature file version " << version;
  uint32_t rows = ReadU32(is), cols = ReadU32(is);
  FeatureMatrix feats(rows, cols);
  for (uint32_t r = 0; r < rows; ++r)
    for (uint32_t c = 0; c < cols; ++c) feats(r, c) = ReadF32(is);
  RequireFinite(feats, path);
  return feats;
}

int EmbeddingSet::Find(const std::string &id) const {
  for (size_t i = 0; i < ids.size(); ++i)
    if (ids[i] == id) return static_cast<int>(i);
  return -1;
}

Vector EmbeddingSet::Get(const std::string &id) const {
  int i = Find(id);
  if (i < 0) throw SdsvError("embedding not found for id: " + id);
  return vectors.row(i).transpose();
}

void WriteEmbeddingSet(const std::string &ids_path, const std::string &matrix_path,
                       const EmbeddingSet &set) {
  Require(static_cast<Eigen::Index>(set.ids.size()) == set.vectors.rows(),
          "embedding id count does not match matrix rows");
  std::ofstream os = OpenOutput(ids_path, /*binary=*/false);
  for (const auto &id : set.ids) os << id << "\n";
  if (!os) throw SdsvError("write failed: " + ids_path);
  WriteFeatureFile(matrix_path, set.vectors);
}

EmbeddingSet ReadEmbeddingSet(const std::string &ids_path, const std::string &matrix_path) {
  EmbeddingSet set;
  std::ifstream is = OpenInput(ids_path, /*binary=*/false);
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) set.ids.push_back(line);
  }
  set.vectors = ReadFeatureFile(matrix_path);
  if (static_cast<Eigen::Index>(set.ids.size()) != set.vectors.rows())
    SDSV_ERR << ids_path << ": " << set.ids.size() << " ids but matrix has "
             << set.vectors.rows() << " rows";
  return set;
}

void WriteFrameLabels(const std::string &path, const std::vector<std::string> &utt_ids,
                      const std::vector<std::vector<int>> &labels) {
  Require(utt_ids.size() == labels.size(), "id/label count mismatch");
  std::ofstream os = OpenOutput(path, /*binary=*/false);
  for (size_t i = 0; i < utt_ids.size(); ++i) {
    os << utt_ids[i] << " " << labels[i].size();
    for (int v : labels[i]) os << " " << v;
    os << "\n";
  }
  if (!os) throw SdsvError("write failed: " + path);
}

FrameLabelMap ReadFrameLabels(const std::string &path) {
  FrameLabelMap map;
  std::ifstream is = OpenInput(path, /*binary=*/false);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string utt;
    size_t n = 0;
    if (!(ss >> utt >> n))
      SDSV_ERR << path << ":" << line_no << ": expected 'utt-id n_frames label...'";
    std::vector<int> labels(n);
    for (size_t i = 0; i < n; ++i)
      if (!(ss >> labels[i]))
        SDSV_ERR << path << ":" << line_no << ": expected " << n << " labels";
    map[utt] = std::move(labels);
  }
  return map;
}

}  // namespace sdsv
