// include/sdsv/feature-io.h

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

#ifndef SDSV_FEATURE_IO_H_
#define SDSV_FEATURE_IO_H_

#include <map>
#include <string>
#include <vector>

#include "sdsv/common.h"

namespace sdsv {

// Feature file: magic "SDSV", u32 version=1, u32 n_rows, u32 n_cols, then
// row-major float32 little-endian values.  In memory we compute in double;
// the narrowing happens only at this boundary.
void WriteFeatureFile(const std::string &path, const FeatureMatrix &feats);
FeatureMatrix ReadFeatureFile(const std::string &path);

// Embedding set: a plain text id file (one identifier per line) plus a
// companion "SDSV" matrix whose row count matches.
struct EmbeddingSet {
  std::vector<std::string> ids;
  Matrix vectors;  // one row per id

  int Find(const std::string &id) const;         // -1 when absent
  Vector Get(const std::string &id) const;       // throws when absent
};

void WriteEmbeddingSet(const std::string &ids_path, const std::string &matrix_path,
                       const EmbeddingSet &set);
EmbeddingSet ReadEmbeddingSet(const std::string &ids_path, const std::string &matrix_path);

// Frame-label file: one line per utterance, "utt-id n_frames label...".
using FrameLabelMap = std::map<std::string, std::vector<int>>;
void WriteFrameLabels(const std::string &path, const std::vector<std::string> &utt_ids,
                      const std::vector<std::vector<int>> &labels);
FrameLabelMap ReadFrameLabels(const std::string &path);

}  // namespace sdsv

#endif  // SDSV_FEATURE_IO_H_
