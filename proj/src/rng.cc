// src/rng.cc

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

#include "sdsv/rng.h"

#include <numeric>

#include "sdsv/common.h"

namespace sdsv {

std::vector<int64_t> Rng::SampleWithoutReplacement(int64_t pool, int64_t n) {
  Require(n >= 0 && n <= pool, "sample size out of range");
  // Partial Fisher-Yates over the index vector.
  std::vector<int64_t> idx(pool);
  std::iota(idx.begin(), idx.end(), 0);
  for (int64_t i = 0; i < n; ++i) {
    int64_t j = i + static_cast<int64_t>(UniformInt(static_cast<uint64_t>(pool - i)));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(n);
  return idx;
}

}  // namespace sdsv
