// src/synth.cc

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

#include "sdsv/synth.h"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "sdsv/feature-io.h"
#include "sdsv/rng.h"
#include "sdsv/wave.h"

namespace sdsv {

namespace {

constexpr int kSegmentsPerPhrase = 5;
constexpr int kHarmonics = 3;

// Segment base frequencies (Hz) and the committed per-phrase deviation table
// (in octaves, scaled by phrase_sep).  Phrases beyond ten rotate the rows.
constexpr double kSegmentBaseHz[kSegmentsPerPhrase] = {250.0, 330.0, 430.0, 560.0, 720.0};

constexpr double kPhraseDeviation[10][kSegmentsPerPhrase] = {
    {-0.42, 0.17, -0.08, 0.33, -0.25}, {0.38, -0.29, 0.21, -0.44, 0.12},
    {-0.13, 0.41, 0.05, -0.19, 0.47},  {0.24, -0.05, -0.37, 0.08, -0.46},
    {-0.31, -0.43, 0.29, 0.45, 0.03},  {0.07, 0.35, -0.22, -0.11, 0.39},
    {0.45, 0.01, 0.43, 0.22, -0.35},   {-0.23, -0.15, -0.45, 0.39, 0.28},
    {0.15, 0.47, 0.11, -0.33, -0.09},  {-0.05, -0.37, 0.37, 0.02, 0.21}};

constexpr double kHarmonicAmp[kHarmonics] = {1.0, 0.5, 0.25};

double SegmentFrequency(int phrase, int segment, double phrase_sep) {
  int row = phrase % 10;
  int col = (segment + phrase / 10) % kSegmentsPerPhrase;
  return kSegmentBaseHz[segment] * std::exp2(phrase_sep * kPhraseDeviation[row][col]);
}

struct SpeakerVoice {
  double pitch_mult;  // fundamental frequency multiplier
  double tilt;        // spectral tilt across harmonics
};

SpeakerVoice MakeVoice(const Rng &base, int speaker, double speaker_sep) {
  Rng rng = base.Fork(0x5150'0000ULL + static_cast<uint64_t>(speaker));
  SpeakerVoice v;
  v.pitch_mult = std::exp2(speaker_sep * 0.06 * (2.0 * rng.Uniform() - 1.0));
  v.tilt = speaker_sep * 0.5 * (2.0 * rng.Uniform() - 1.0);
  return v;
}

std::string UttId(int speaker, int phrase, int take) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "spk%03d-phr%02d-%02d", speaker, phrase, take);
  return buf;
}

AudioSignal RenderUtterance(const SynthSpec &spec, const SpeakerVoice &voice, int phrase,
                            Rng rng) {
  const int64_t n = static_cast<int64_t>(std::lround(spec.utt_duration_s * spec.sample_rate));
  AudioSignal signal;
  signal.sample_rate = spec.sample_rate;
  signal.samples.resize(n);

  // Small per-utterance pitch jitter plus random phases keep takes distinct.
  double jitter = std::exp2(0.01 * (2.0 * rng.Uniform() - 1.0));
  double phases[kSegmentsPerPhrase][kHarmonics];
  for (auto &seg : phases)
    for (double &p : seg) p = 2.0 * M_PI * rng.Uniform();

  double amps[kHarmonics], amp_sum = 0.0;
  for (int h = 0; h < kHarmonics; ++h) {
    amps[h] = kHarmonicAmp[h] * std::exp(-voice.tilt * h);
    amp_sum += amps[h];
  }

  const double seg_len = static_cast<double>(n) / kSegmentsPerPhrase;
  const double harm_gain = 0.6, total = harm_gain + spec.noise_level;
  for (int64_t i = 0; i < n; ++i) {
    int seg = std::min<int>(kSegmentsPerPhrase - 1,
                            static_cast<int>(static_cast<double>(i) / seg_len));
    double f0 = SegmentFrequency(phrase, seg, spec.phrase_sep) * voice.pitch_mult * jitter;
    double t = static_cast<double>(i) / spec.sample_rate;
    double harm = 0.0;
    for (int h = 0; h < kHarmonics; ++h)
      harm += amps[h] * std::sin(2.0 * M_PI * f0 * (h + 1) * t + phases[seg][h]);
    harm /= amp_sum;
    double noise = spec.noise_level * (2.0 * rng.Uniform() - 1.0);
    signal.samples[i] = (harm_gain * harm + noise) / total;
  }
  return signal;
}

std::vector<int> FrameLabels(const SynthSpec &spec, int phrase, int64_t n_samples) {
  int frame = static_cast<int>(std::lround(spec.label_frame_len_ms * spec.sample_rate / 1000.0));
  int shift = static_cast<int>(std::lround(spec.label_frame_shift_ms * spec.sample_rate / 1000.0));
  Require(n_samples >= frame, "utterance shorter than one label frame");
  int64_t n_frames = 1 + (n_samples - frame) / shift;
  double seg_len = static_cast<double>(n_samples) / kSegmentsPerPhrase;
  std::vector<int> labels(n_frames);
  for (int64_t t = 0; t < n_frames; ++t) {
    double center = static_cast<double>(t) * shift + 0.5 * frame;
    int seg = std::min<int>(kSegmentsPerPhrase - 1, static_cast<int>(center / seg_len));
    labels[t] = phrase * kSegmentsPerPhrase + seg;
  }
  return labels;
}

FeatureMatrix RenderFeatureUtterance(const SynthSpec &spec, const Vector &mean, Rng rng) {
  int frames = std::max<int>(10, static_cast<int>(std::lround(spec.utt_duration_s * 100.0)));
  double sd = std::max(spec.noise_level, 1e-3);
  FeatureMatrix feats(frames, spec.feature_dim);
  for (int t = 0; t < frames; ++t)
    for (int d = 0; d < spec.feature_dim; ++d)
      feats(t, d) = mean(d) + sd * rng.Gauss();
  return feats;
}

}  // namespace

void SynthSpec::Check() const {
  Require(n_speakers >= 1 && n_phrases >= 1 && utts_per_pair >= 1, "counts must be >= 1");
  Require(utt_duration_s > 0, "duration must be positive");
  Require(speaker_sep >= 0 && phrase_sep >= 0 && noise_level >= 0,
          "separation and noise scales must be non-negative");
  Require(sample_rate >= 1000, "sample_rate too low");
  Require(feature_dim >= 1, "feature_dim must be >= 1");
}

SynthSpec SynthSpec::FromConfig(const Config &cfg) {
  SynthSpec spec;
  spec.n_speakers = cfg.GetInt("synth.n_speakers", spec.n_speakers);
  spec.n_phrases = cfg.GetInt("synth.n_phrases", spec.n_phrases);
  spec.utts_per_pair = cfg.GetInt("synth.utts_per_pair", spec.utts_per_pair);
  spec.utt_duration_s = cfg.GetDouble("synth.utt_duration_s", spec.utt_duration_s);
  spec.speaker_sep = cfg.GetDouble("synth.speaker_sep", spec.speaker_sep);
  spec.phrase_sep = cfg.GetDouble("synth.phrase_sep", spec.phrase_sep);
  spec.noise_level = cfg.GetDouble("synth.noise_level", spec.noise_level);
  std::string mode = cfg.GetString("synth.mode", "waveform");
  if (mode == "waveform")
    spec.mode = SynthMode::kWaveform;
  else if (mode == "feature")
    spec.mode = SynthMode::kFeature;
  else
    throw SdsvError("config key synth.mode: expected waveform or feature, got '" + mode + "'");
  spec.seed = cfg.GetSeed("seed", spec.seed);
  spec.seed = cfg.GetSeed("synth.seed", spec.seed);
  spec.sample_rate = cfg.GetInt("synth.sample_rate", spec.sample_rate);
  spec.feature_dim = cfg.GetInt("synth.feature_dim", spec.feature_dim);
  spec.emit_frame_labels = cfg.GetBool("synth.emit_frame_labels", spec.emit_frame_labels);
  spec.label_frame_len_ms = cfg.GetDouble("frontend.frame_len_ms", spec.label_frame_len_ms);
  spec.label_frame_shift_ms = cfg.GetDouble("frontend.frame_shift_ms", spec.label_frame_shift_ms);
  spec.Check();
  return spec;
}

CorpusManifest GenerateCorpus(const SynthSpec &spec, const std::string &out_dir) {
  spec.Check();
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(fs::path(out_dir) / "data", ec);
  if (ec) throw SdsvError("cannot create output directory: " + out_dir);

  Rng base(spec.seed);
  std::vector<SpeakerVoice> voices;
  for (int s = 0; s < spec.n_speakers; ++s)
    voices.push_back(MakeVoice(base, s, spec.speaker_sep));

  // Feature mode draws one anchor per phrase and one offset per speaker;
  // the pair mean is phrase_sep * anchor + speaker_sep * offset.
  std::vector<Vector> pair_mean;
  if (spec.mode == SynthMode::kFeature) {
    std::vector<Vector> anchors, offsets;
    for (int p = 0; p < spec.n_phrases; ++p) {
      Rng rng = base.Fork(0xA000'0000ULL + static_cast<uint64_t>(p));
      Vector a(spec.feature_dim);
      for (int d = 0; d < spec.feature_dim; ++d) a(d) = rng.Gauss();
      anchors.push_back(spec.phrase_sep * a);
    }
    for (int s = 0; s < spec.n_speakers; ++s) {
      Rng rng = base.Fork(0xB000'0000ULL + static_cast<uint64_t>(s));
      Vector o(spec.feature_dim);
      for (int d = 0; d < spec.feature_dim; ++d) o(d) = rng.Gauss();
      offsets.push_back(o);
    }
    pair_mean.resize(static_cast<size_t>(spec.n_speakers) * spec.n_phrases);
    for (int s = 0; s < spec.n_speakers; ++s)
      for (int p = 0; p < spec.n_phrases; ++p)
        pair_mean[static_cast<size_t>(s) * spec.n_phrases + p] =
            anchors[p] + spec.speaker_sep * offsets[s];
  }

  CorpusManifest manifest;
  std::vector<std::string> label_ids;
  std::vector<std::vector<int>> label_values;

  int64_t utt_index = 0;
  for (int s = 0; s < spec.n_speakers; ++s) {
    for (int p = 0; p < spec.n_phrases; ++p) {
      for (int u = 0; u < spec.utts_per_pair; ++u, ++utt_index) {
        UtteranceRecord rec;
        rec.utt_id = UttId(s, p, u);
        rec.speaker_id = "spk" + std::to_string(s);
        rec.phrase_id = "phr" + std::to_string(p);
        Rng rng = base.Fork(0x0777'0000ULL + static_cast<uint64_t>(utt_index));
        if (spec.mode == SynthMode::kWaveform) {
          AudioSignal signal = RenderUtterance(spec, voices[s], p, rng);
          rec.path = (fs::path(out_dir) / "data" / (rec.utt_id + ".wav")).string();
          WriteWave(rec.path, signal);
          if (spec.emit_frame_labels) {
            label_ids.push_back(rec.utt_id);
            label_values.push_back(
                FrameLabels(spec, p, static_cast<int64_t>(signal.samples.size())));
          }
        } else {
          rec.path = (fs::path(out_dir) / "data" / (rec.utt_id + ".fea")).string();
          const Vector &mean = pair_mean[static_cast<size_t>(s) * spec.n_phrases + p];
          WriteFeatureFile(rec.path, RenderFeatureUtterance(spec, mean, rng));
        }
        manifest.push_back(std::move(rec));
      }
    }
  }

  WriteManifest((fs::path(out_dir) / "manifest.txt").string(), manifest);
  if (spec.emit_frame_labels && spec.mode == SynthMode::kWaveform)
    WriteFrameLabels((fs::path(out_dir) / "frame_labels.txt").string(), label_ids, label_values);
  return manifest;
}

}  // namespace sdsv
