// src/frontend.cc

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

#include "sdsv/frontend.h"

#include <algorithm>
#include <cmath>

namespace sdsv {

namespace {

constexpr double kLogEnergyFloor = 1e-20;

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

int NextPowerOfTwo(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Triangular filterbank, n_filters x (nfft/2 + 1), band edges equally spaced
// on the chosen scale between 0 Hz and Nyquist.
Matrix MakeFilterbank(int n_filters, int nfft, double sample_rate, FilterScale scale) {
  int n_bins = nfft / 2 + 1;
  double nyquist = sample_rate / 2.0;
  std::vector<double> edges(n_filters + 2);
  if (scale == FilterScale::kMel) {
    double lo = HzToMel(0.0), hi = HzToMel(nyquist);
    for (int i = 0; i < n_filters + 2; ++i)
      edges[i] = MelToHz(lo + (hi - lo) * i / (n_filters + 1));
  } else {
    for (int i = 0; i < n_filters + 2; ++i)
      edges[i] = nyquist * i / (n_filters + 1);
  }
  Matrix fb = Matrix::Zero(n_filters, n_bins);
  for (int j = 0; j < n_filters; ++j) {
    double left = edges[j], center = edges[j + 1], right = edges[j + 2];
    for (int b = 0; b < n_bins; ++b) {
      double f = b * sample_rate / nfft;
      if (f > left && f < center)
        fb(j, b) = (f - left) / (center - left);
      else if (f >= center && f < right)
        fb(j, b) = (right - f) / (right - center);
    }
  }
  return fb;
}

}  // namespace

namespace internal {

// Iterative radix-2 FFT, in place; sizes must be powers of two.
void Fft(std::vector<double> *real, std::vector<double> *imag) {
  size_t n = real->size();
  SDSV_ASSERT(n == imag->size() && (n & (n - 1)) == 0);
  auto &re = *real;
  auto &im = *imag;
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) {
      std::swap(re[i], re[j]);
      std::swap(im[i], im[j]);
    }
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    double ang = -2.0 * M_PI / static_cast<double>(len);
    double wr = std::cos(ang), wi = std::sin(ang);
    for (size_t i = 0; i < n; i += len) {
      double cr = 1.0, ci = 0.0;
      for (size_t k = 0; k < len / 2; ++k) {
        size_t a = i + k, b = i + k + len / 2;
        double tr = re[b] * cr - im[b] * ci;
        double ti = re[b] * ci + im[b] * cr;
        re[b] = re[a] - tr;
        im[b] = im[a] - ti;
        re[a] += tr;
        im[a] += ti;
        double ncr = cr * wr - ci * wi;
        ci = cr * wi + ci * wr;
        cr = ncr;
      }
    }
  }
}

Matrix DctMatrix(int n_out, int n_in) {
  Matrix dct(n_out, n_in);
  double norm0 = std::sqrt(1.0 / n_in), norm = std::sqrt(2.0 / n_in);
  for (int i = 0; i < n_out; ++i)
    for (int j = 0; j < n_in; ++j)
      dct(i, j) = (i == 0 ? norm0 : norm) * std::cos(M_PI * i * (j + 0.5) / n_in);
  return dct;
}

// Block placement over the filter axis: the first block starts at filter 0,
// the last ends at n_filters, and the total overlap sum(sizes) - n_filters is
// spread over the junctions, earliest junctions taking the remainder.
std::vector<int> BlockStarts(const std::vector<int> &block_sizes, int n_filters) {
  int n_blocks = static_cast<int>(block_sizes.size());
  int total = 0;
  for (int b : block_sizes) total += b;
  int overlap = total - n_filters;
  Require(overlap >= 0, "sum(block_sizes) must be >= n_filters");
  std::vector<int> starts(n_blocks, 0);
  if (n_blocks == 1) {
    Require(block_sizes[0] == n_filters, "single block must cover all filters");
    return starts;
  }
  int base = overlap / (n_blocks - 1), rem = overlap % (n_blocks - 1);
  for (int i = 1; i < n_blocks; ++i) {
    int ov = base + (i <= rem ? 1 : 0);
    starts[i] = starts[i - 1] + block_sizes[i - 1] - ov;
    Require(starts[i] >= 0, "block overlap exceeds block size");
  }
  Require(starts[n_blocks - 1] + block_sizes[n_blocks - 1] == n_filters,
          "blocks do not tile the filter range");
  return starts;
}

}  // namespace internal

int FrontendConfig::StaticDim() const {
  if (cepstral_mode == CepstralMode::kDct) return n_cepstra;
  int total = 0;
  for (int b : block_sizes) total += b;
  return total;
}

void FrontendConfig::Check() const {
  Require(frame_shift_ms > 0 && frame_shift_ms <= frame_len_ms,
          "frontend: need 0 < frame_shift_ms <= frame_len_ms");
  Require(n_filters >= 1, "frontend: n_filters must be >= 1");
  Require(n_cepstra >= 1 && n_cepstra <= n_filters,
          "frontend: need 1 <= n_cepstra <= n_filters");
  Require(delta_window >= 1, "frontend: delta_window must be >= 1");
  if (cepstral_mode == CepstralMode::kBlockDct) {
    Require(!block_sizes.empty(), "frontend: block_sizes must be non-empty");
    int total = 0;
    for (int b : block_sizes) {
      Require(b >= 1 && b <= n_filters, "frontend: block size out of range");
      total += b;
    }
    Require(total >= n_filters, "frontend: sum(block_sizes) must be >= n_filters");
    internal::BlockStarts(block_sizes, n_filters);
  }
  Require(preemphasis >= 0.0 && preemphasis < 1.0, "frontend: preemphasis in [0, 1)");
}

FrontendConfig FrontendConfig::FromConfig(const Config &cfg) {
  FrontendConfig fc;
  fc.frame_len_ms = cfg.GetDouble("frontend.frame_len_ms", fc.frame_len_ms);
  fc.frame_shift_ms = cfg.GetDouble("frontend.frame_shift_ms", fc.frame_shift_ms);
  fc.preemphasis = cfg.GetDouble("frontend.preemphasis", fc.preemphasis);
  fc.n_filters = cfg.GetInt("frontend.n_filters", fc.n_filters);
  std::string scale = cfg.GetString("frontend.filter_scale", "mel");
  if (scale == "mel")
    fc.filter_scale = FilterScale::kMel;
  else if (scale == "linear")
    fc.filter_scale = FilterScale::kLinear;
  else
    throw SdsvError("config key frontend.filter_scale: expected mel or linear, got '" + scale + "'");
  std::string mode = cfg.GetString("frontend.cepstral_mode", "dct");
  if (mode == "dct")
    fc.cepstral_mode = CepstralMode::kDct;
  else if (mode == "block_dct")
    fc.cepstral_mode = CepstralMode::kBlockDct;
  else
    throw SdsvError("config key frontend.cepstral_mode: expected dct or block_dct, got '" + mode + "'");
  fc.n_cepstra = cfg.GetInt("frontend.n_cepstra", fc.n_cepstra);
  fc.block_sizes = cfg.GetIntList("frontend.block_sizes", fc.block_sizes);
  fc.apply_rasta = cfg.GetBool("frontend.apply_rasta", fc.apply_rasta);
  fc.apply_deltas = cfg.GetBool("frontend.apply_deltas", fc.apply_deltas);
  fc.delta_window = cfg.GetInt("frontend.delta_window", fc.delta_window);
  fc.apply_cmvn = cfg.GetBool("frontend.apply_cmvn", fc.apply_cmvn);
  fc.apply_sad = cfg.GetBool("frontend.apply_sad", fc.apply_sad);
  fc.sad_drop_db = cfg.GetDouble("frontend.sad_drop_db", fc.sad_drop_db);
  fc.sad_abs_floor = cfg.GetDouble("frontend.sad_abs_floor", fc.sad_abs_floor);
  fc.Check();
  return fc;
}

FeatureMatrix ExtractStaticCepstra(const AudioSignal &signal, const FrontendConfig &cfg) {
  cfg.Check();
  Require(signal.sample_rate > 0, "sample_rate must be positive");
  int frame_samples = static_cast<int>(std::lround(cfg.frame_len_ms * signal.sample_rate / 1000.0));
  int shift_samples = static_cast<int>(std::lround(cfg.frame_shift_ms * signal.sample_rate / 1000.0));
  Require(frame_samples >= 2 && shift_samples >= 1, "frame too short at this sample rate");
  int64_t len = static_cast<int64_t>(signal.samples.size());
  if (len < frame_samples)
    SDSV_ERR << "signal shorter than one frame (" << len << " < " << frame_samples << " samples)";
  for (double s : signal.samples)
    Require(std::isfinite(s), "signal contains non-finite samples");

  int64_t n_frames = 1 + (len - frame_samples) / shift_samples;

  std::vector<double> emphasized(signal.samples);
  if (cfg.preemphasis > 0.0)
    for (int64_t i = len - 1; i > 0; --i)
      emphasized[i] -= cfg.preemphasis * emphasized[i - 1];

  std::vector<double> window(frame_samples);
  for (int i = 0; i < frame_samples; ++i)
    window[i] = 0.54 - 0.46 * std::cos(2.0 * M_PI * i / (frame_samples - 1));

  int nfft = NextPowerOfTwo(frame_samples);
  int n_bins = nfft / 2 + 1;
  Matrix fb = MakeFilterbank(cfg.n_filters, nfft, signal.sample_rate, cfg.filter_scale);

  // Log filterbank energies for all frames.
  Matrix log_energies(n_frames, cfg.n_filters);
  std::vector<double> re(nfft), im(nfft);
  Vector power(n_bins);
  for (int64_t t = 0; t < n_frames; ++t) {
    int64_t off = t * shift_samples;
    for (int i = 0; i < frame_samples; ++i) re[i] = emphasized[off + i] * window[i];
    std::fill(re.begin() + frame_samples, re.end(), 0.0);
    std::fill(im.begin(), im.end(), 0.0);
    internal::Fft(&re, &im);
    for (int b = 0; b < n_bins; ++b) power(b) = re[b] * re[b] + im[b] * im[b];
    Vector energies = fb * power;
    for (int j = 0; j < cfg.n_filters; ++j)
      log_energies(t, j) = std::log(std::max(energies(j), kLogEnergyFloor));
  }

  if (cfg.cepstral_mode == CepstralMode::kDct) {
    Matrix dct = internal::DctMatrix(cfg.n_cepstra, cfg.n_filters);
    return log_energies * dct.transpose();
  }

  std::vector<int> starts = internal::BlockStarts(cfg.block_sizes, cfg.n_filters);
  FeatureMatrix out(n_frames, cfg.StaticDim());
  int col = 0;
  for (size_t b = 0; b < cfg.block_sizes.size(); ++b) {
    int size = cfg.block_sizes[b];
    Matrix dct = internal::DctMatrix(size, size);
    out.middleCols(col, size) = log_energies.middleCols(starts[b], size) * dct.transpose();
    col += size;
  }
  return out;
}

FeatureMatrix RastaFilter(const FeatureMatrix &feats) {
  Require(feats.rows() >= 1, "need at least one frame");
  RequireFinite(feats, "features");
  static const double kNum[5] = {0.2, 0.1, 0.0, -0.1, -0.2};
  const double kPole = 0.98;
  FeatureMatrix out(feats.rows(), feats.cols());
  for (Eigen::Index d = 0; d < feats.cols(); ++d) {
    double y1 = 0.0;
    for (Eigen::Index t = 0; t < feats.rows(); ++t) {
      double acc = 0.0;
      for (int k = 0; k < 5; ++k)
        if (t - k >= 0) acc += kNum[k] * feats(t - k, d);
      double y = acc + kPole * y1;
      out(t, d) = y;
      y1 = y;
    }
  }
  return out;
}

FeatureMatrix AddDynamics(const FeatureMatrix &feats, int window) {
  Require(window >= 1, "delta window must be >= 1");
  Require(feats.rows() >= 1, "need at least one frame");
  const Eigen::Index T = feats.rows(), D = feats.cols();
  double denom = 0.0;
  for (int n = 1; n <= window; ++n) denom += 2.0 * n * n;

  auto delta = [&](const FeatureMatrix &x) {
    FeatureMatrix d(T, D);
    for (Eigen::Index t = 0; t < T; ++t) {
      Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(D);
      for (int n = 1; n <= window; ++n) {
        Eigen::Index lo = std::max<Eigen::Index>(0, t - n);
        Eigen::Index hi = std::min<Eigen::Index>(T - 1, t + n);
        acc += n * (x.row(hi) - x.row(lo));
      }
      d.row(t) = acc / denom;
    }
    return d;
  };

  FeatureMatrix d1 = delta(feats);
  FeatureMatrix d2 = delta(d1);
  FeatureMatrix out(T, 3 * D);
  out << feats, d1, d2;
  return out;
}

FeatureMatrix Cmvn(const FeatureMatrix &feats) {
  Require(feats.rows() >= 1, "need at least one frame");
  RequireFinite(feats, "features");
  const double kVarFloor = 1e-12;
  Eigen::RowVectorXd mean = feats.colwise().mean();
  FeatureMatrix out = feats.rowwise() - mean;
  Eigen::RowVectorXd var = out.array().square().colwise().mean();
  for (Eigen::Index d = 0; d < feats.cols(); ++d)
    if (var(d) >= kVarFloor) out.col(d) /= std::sqrt(var(d));
  return out;
}

std::vector<bool> EnergySad(const FeatureMatrix &feats, int energy_column,
                            double drop_db, double abs_floor) {
  Require(feats.rows() >= 1, "empty input");
  Require(energy_column >= 0 && energy_column < feats.cols(), "energy column out of range");
  double max_e = feats.col(energy_column).maxCoeff();
  double rel_floor = max_e - drop_db / 10.0 * std::log(10.0);
  std::vector<bool> keep(feats.rows());
  for (Eigen::Index t = 0; t < feats.rows(); ++t) {
    double e = feats(t, energy_column);
    keep[t] = e > rel_floor && e > abs_floor;
  }
  return keep;
}

FeatureMatrix SelectFrames(const FeatureMatrix &feats, const std::vector<bool> &keep) {
  Require(static_cast<Eigen::Index>(keep.size()) == feats.rows(), "mask length mismatch");
  Eigen::Index n = std::count(keep.begin(), keep.end(), true);
  FeatureMatrix out(n, feats.cols());
  Eigen::Index r = 0;
  for (Eigen::Index t = 0; t < feats.rows(); ++t)
    if (keep[t]) out.row(r++) = feats.row(t);
  return out;
}

FeatureMatrix ProcessUtterance(const AudioSignal &signal, const FrontendConfig &cfg,
                               std::vector<bool> *deferred_sad) {
  return ProcessStatics(ExtractStaticCepstra(signal, cfg), cfg, deferred_sad);
}

FeatureMatrix ProcessStatics(const FeatureMatrix &statics, const FrontendConfig &cfg,
                             std::vector<bool> *deferred_sad) {
  Require(statics.rows() >= 1, "need at least one frame");

  // The SAD decision needs the raw energy column, before RASTA removes DC.
  std::vector<bool> keep;
  if (cfg.apply_sad)
    keep = EnergySad(statics, 0, cfg.sad_drop_db, cfg.sad_abs_floor);

  FeatureMatrix feats = statics;
  if (cfg.apply_rasta) feats = RastaFilter(feats);
  if (cfg.apply_deltas) feats = AddDynamics(feats, cfg.delta_window);

  if (cfg.apply_sad) {
    if (deferred_sad != nullptr) {
      *deferred_sad = keep;
    } else {
      Require(std::count(keep.begin(), keep.end(), true) > 0,
              "SAD removed every frame of the utterance");
      feats = SelectFrames(feats, keep);
    }
  } else if (deferred_sad != nullptr) {
    deferred_sad->assign(feats.rows(), true);
  }

  if (cfg.apply_cmvn) feats = Cmvn(feats);
  return feats;
}

}  // namespace sdsv
