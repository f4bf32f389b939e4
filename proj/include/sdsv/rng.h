// include/sdsv/rng.h

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

#ifndef SDSV_RNG_H_
#define SDSV_RNG_H_

#include <cmath>
#include <cstdint>
#include <vector>

namespace sdsv {

// Seeded generator with output that does not depend on the standard library,
// so identical seeds give identical streams on every platform.  Core is
// splitmix64.  Fork() derives an independent stream, which keeps
// per-utterance generation reproducible under any worker scheduling.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t NextUint64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double Uniform() {
    return static_cast<double>(NextUint64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, n).
  uint64_t UniformInt(uint64_t n) {
    // Rejection keeps the draw unbiased and platform-stable.
    uint64_t threshold = (~n + 1) % n;  // 2^64 mod n
    for (;;) {
      uint64_t r = NextUint64();
      if (r >= threshold) return r % n;
    }
  }

  // Standard normal via Box-Muller; pairs are cached.
  double Gauss() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = 1.0 - Uniform();  // (0, 1]
    double u2 = Uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    cached_ = r * std::sin(2.0 * M_PI * u2);
    have_cached_ = true;
    return r * std::cos(2.0 * M_PI * u2);
  }

  // Independent substream for item `stream` (utterance index, restart id...).
  Rng Fork(uint64_t stream) const {
    Rng mix(state_ ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL));
    uint64_t s = mix.NextUint64();
    (void)mix.NextUint64();
    return Rng(s ^ mix.NextUint64());
  }

  template <class T>
  void Shuffle(std::vector<T> *v) {
    for (size_t i = v->size(); i > 1; --i) {
      size_t j = static_cast<size_t>(UniformInt(i));
      std::swap((*v)[i - 1], (*v)[j]);
    }
  }

  // n distinct indices from [0, pool). Order is the sampling order.
  std::vector<int64_t> SampleWithoutReplacement(int64_t pool, int64_t n);

  // FNV-1a, for deriving stable streams from string keys.
  static uint64_t HashString(const char *s, size_t len) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (size_t i = 0; i < len; ++i) {
      h ^= static_cast<unsigned char>(s[i]);
      h *= 0x100000001b3ULL;
    }
    return h;
  }

 private:
  uint64_t state_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace sdsv

#endif  // SDSV_RNG_H_
