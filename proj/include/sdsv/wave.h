// include/sdsv/wave.h

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

#ifndef SDSV_WAVE_H_
#define SDSV_WAVE_H_

#include <string>
#include <vector>

namespace sdsv {

struct AudioSignal {
  std::vector<double> samples;  // amplitudes, nominally in [-1, 1]
  double sample_rate = 16000.0;
};

// 16-bit PCM mono only; anything else is rejected with a message naming the
// offending field.
AudioSignal ReadWave(const std::string &path);
void WriteWave(const std::string &path, const AudioSignal &signal);

}  // namespace sdsv

#endif  // SDSV_WAVE_H_
