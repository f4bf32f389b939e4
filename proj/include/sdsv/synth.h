// include/sdsv/synth.h

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

#ifndef SDSV_SYNTH_H_
#define SDSV_SYNTH_H_

#include <cstdint>
#include <string>

#include "sdsv/config.h"
#include "sdsv/trials.h"

namespace sdsv {

enum class SynthMode { kWaveform, kFeature };

// Seeded speaker x phrase corpus with controllable separability.  Waveform
// mode renders each phrase as a fixed sequence of five harmonic segments
// whose frequencies depend on the phrase and whose fundamental offset and
// spectral tilt depend on the speaker; feature mode samples frames from
// per-(speaker, phrase) diagonal Gaussians directly.
struct SynthSpec {
  int n_speakers = 20;
  int n_phrases = 10;
  int utts_per_pair = 10;
  double utt_duration_s = 1.0;
  double speaker_sep = 1.0;  // 0 makes all speakers statistically identical
  double phrase_sep = 1.0;   // 0 makes all phrases identical
  double noise_level = 0.05;
  SynthMode mode = SynthMode::kWaveform;
  uint64_t seed = 0;
  int sample_rate = 16000;
  int feature_dim = 20;  // feature mode only
  // Waveform mode can emit ground-truth segment labels per analysis frame
  // (one class per phrase-segment), for training frame classifiers without
  // an external aligner.  Framing must match the downstream front-end.
  bool emit_frame_labels = false;
  double label_frame_len_ms = 25.0;
  double label_frame_shift_ms = 10.0;

  void Check() const;
  static SynthSpec FromConfig(const Config &cfg);
};

// Writes WAV or feature files plus manifest.txt (and frame_labels.txt when
// requested) under out_dir and returns the manifest.  Per-utterance RNG
// streams are derived from (seed, utterance index), so output never depends
// on generation order.
CorpusManifest GenerateCorpus(const SynthSpec &spec, const std::string &out_dir);

}  // namespace sdsv

#endif  // SDSV_SYNTH_H_
