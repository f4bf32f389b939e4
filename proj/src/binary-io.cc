// src/binary-io.cc

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

#include "sdsv/binary-io.h"

#include <cstring>

namespace sdsv {

namespace {

template <class T>
void WriteLe(std::ostream &os, T v) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char buf[sizeof(T)];
  typename std::conditional<sizeof(T) == 2, uint16_t,
      typename std::conditional<sizeof(T) == 4, uint32_t, uint64_t>::type>::type bits;
  std::memcpy(&bits, &v, sizeof(T));
  for (size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>(bits >> (8 * i));
  os.write(reinterpret_cast<const char *>(buf), sizeof(T));
  if (!os) throw SdsvError("write failed");
}

template <class T>
T ReadLe(std::istream &is) {
  unsigned char buf[sizeof(T)];
  is.read(reinterpret_cast<char *>(buf), sizeof(T));
  if (!is) throw SdsvError("unexpected end of file");
  typename std::conditional<sizeof(T) == 2, uint16_t,
      typename std::conditional<sizeof(T) == 4, uint32_t, uint64_t>::type>::type bits = 0;
  for (size_t i = 0; i < sizeof(T); ++i)
    bits |= static_cast<decltype(bits)>(buf[i]) << (8 * i);
  T v;
  std::memcpy(&v, &bits, sizeof(T));
  return v;
}

}  // namespace

void WriteU32(std::ostream &os, uint32_t v) { WriteLe(os, v); }
uint32_t ReadU32(std::istream &is) { return ReadLe<uint32_t>(is); }
void WriteS16(std::ostream &os, int16_t v) { WriteLe(os, v); }
int16_t ReadS16(std::istream &is) { return ReadLe<int16_t>(is); }
void WriteF32(std::ostream &os, float v) { WriteLe(os, v); }
float ReadF32(std::istream &is) { return ReadLe<float>(is); }
void WriteF64(std::ostream &os, double v) { WriteLe(os, v); }
double ReadF64(std::istream &is) { return ReadLe<double>(is); }

void WriteMagic(std::ostream &os, const char magic[4], uint32_t version) {
  os.write(magic, 4);
  if (!os) throw SdsvError("write failed");
  WriteU32(os, version);
}

uint32_t ExpectMagic(std::istream &is, const char magic[4]) {
  char buf[4];
  is.read(buf, 4);
  if (!is || std::memcmp(buf, magic, 4) != 0)
    throw SdsvError(std::string("bad file magic, expected ") +
                    std::string(magic, 4));
  return ReadU32(is);
}

void WriteString(std::ostream &os, const std::string &s) {
  WriteU32(os, static_cast<uint32_t>(s.size()));
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
  if (!os) throw SdsvError("write failed");
}

std::string ReadString(std::istream &is) {
  uint32_t n = ReadU32(is);
  Require(n <= (1u << 20), "string field too large");
  std::string s(n, '\0');
  is.read(s.data(), n);
  if (!is) throw SdsvError("unexpected end of file");
  return s;
}

void WriteMatrixF64(std::ostream &os, const Matrix &m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) WriteF64(os, m(r, c));
}

Matrix ReadMatrixF64(std::istream &is, int rows, int cols) {
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = ReadF64(is);
  return m;
}

void WriteVectorF64(std::ostream &os, const Vector &v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) WriteF64(os, v(i));
}

Vector ReadVectorF64(std::istream &is, int dim) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = ReadF64(is);
  return v;
}

std::ofstream OpenOutput(const std::string &path, bool binary) {
  std::ofstream os(path, binary ? std::ios::binary | std::ios::out : std::ios::out);
  if (!os) throw SdsvError("cannot open for writing: " + path);
  return os;
}

std::ifstream OpenInput(const std::string &path, bool binary) {
  std::ifstream is(path, binary ? std::ios::binary | std::ios::in : std::ios::in);
  if (!is) throw SdsvError("cannot open for reading: " + path);
  return is;
}

}  // namespace sdsv
