// src/wave.cc

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

#include "sdsv/wave.h"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "sdsv/binary-io.h"
#include "sdsv/common.h"

namespace sdsv {

namespace {
constexpr uint16_t kPcmFormat = 1;

uint16_t ReadU16(std::istream &is) {
  return static_cast<uint16_t>(ReadS16(is));
}

void WriteU16(std::ostream &os, uint16_t v) {
  WriteS16(os, static_cast<int16_t>(v));
}

void WriteTag(std::ostream &os, const char tag[4]) { os.write(tag, 4); }

std::string ReadTag(std::istream &is) {
  char buf[4];
  is.read(buf, 4);
  if (!is) throw SdsvError("truncated WAV file");
  return std::string(buf, 4);
}
}  // namespace

AudioSignal ReadWave(const std::string &path) {
  std::ifstream is = OpenInput(path);
  if (ReadTag(is) != "RIFF") SDSV_ERR << path << ": missing RIFF header";
  ReadU32(is);  // chunk size, unused
  if (ReadTag(is) != "WAVE") SDSV_ERR << path << ": not a WAVE file";

  AudioSignal signal;
  bool have_fmt = false;
  uint16_t channels = 0, bits = 0;
  for (;;) {
    std::string tag;
    {
      char buf[4];
      is.read(buf, 4);
      if (!is) SDSV_ERR << path << ": no data chunk found";
      tag.assign(buf, 4);
    }
    uint32_t size = ReadU32(is);
    if (tag == "fmt ") {
      uint16_t format = ReadU16(is);
      channels = ReadU16(is);
      signal.sample_rate = ReadU32(is);
      ReadU32(is);  // byte rate
      ReadU16(is);  // block align
      bits = ReadU16(is);
      if (size > 16) is.ignore(size - 16);
      if (format != kPcmFormat) SDSV_ERR << path << ": unsupported format tag " << format;
      if (channels != 1) SDSV_ERR << path << ": expected mono, got " << channels << " channels";
      if (bits != 16) SDSV_ERR << path << ": expected 16-bit samples, got " << bits;
      have_fmt = true;
    } else if (tag == "data") {
      if (!have_fmt) SDSV_ERR << path << ": data chunk before fmt chunk";
      uint32_t n = size / 2;
      signal.samples.resize(n);
      for (uint32_t i = 0; i < n; ++i)
        signal.samples[i] = ReadS16(is) / 32768.0;
      return signal;
    } else {
      is.ignore(size + (size & 1));  // chunks are word-aligned
      if (!is) SDSV_ERR << path << ": truncated chunk " << tag;
    }
  }
}

void WriteWave(const std::string &path, const AudioSignal &signal) {
  Require(signal.sample_rate > 0, "sample_rate must be positive");
  std::ofstream os = OpenOutput(path);
  uint32_t n = static_cast<uint32_t>(signal.samples.size());
  uint32_t data_bytes = n * 2;
  uint32_t rate = static_cast<uint32_t>(signal.sample_rate);

  WriteTag(os, "RIFF");
  WriteU32(os, 36 + data_bytes);
  WriteTag(os, "WAVE");
  WriteTag(os, "fmt ");
  WriteU32(os, 16);
  WriteU16(os, kPcmFormat);
  WriteU16(os, 1);  // mono
  WriteU32(os, rate);
  WriteU32(os, rate * 2);
  WriteU16(os, 2);
  WriteU16(os, 16);
  WriteTag(os, "data");
  WriteU32(os, data_bytes);
  for (uint32_t i = 0; i < n; ++i) {
    double x = std::clamp(signal.samples[i], -1.0, 1.0);
    int v = static_cast<int>(std::lrint(x * 32767.0));
    WriteS16(os, static_cast<int16_t>(v));
  }
  if (!os) throw SdsvError("write failed: " + path);
}

}  // namespace sdsv
