// include/sdsv/binary-io.h

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

#ifndef SDSV_BINARY_IO_H_
#define SDSV_BINARY_IO_H_

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "sdsv/common.h"

namespace sdsv {

// All model and feature files are little-endian regardless of host order.

void WriteU32(std::ostream &os, uint32_t v);
uint32_t ReadU32(std::istream &is);
void WriteS16(std::ostream &os, int16_t v);
int16_t ReadS16(std::istream &is);
void WriteF32(std::ostream &os, float v);
float ReadF32(std::istream &is);
void WriteF64(std::ostream &os, double v);
double ReadF64(std::istream &is);

void WriteMagic(std::ostream &os, const char magic[4], uint32_t version);
// Returns the version; throws if the four magic bytes do not match.
uint32_t ExpectMagic(std::istream &is, const char magic[4]);

void WriteString(std::ostream &os, const std::string &s);
std::string ReadString(std::istream &is);

// Row-major float64 payload.
void WriteMatrixF64(std::ostream &os, const Matrix &m);
Matrix ReadMatrixF64(std::istream &is, int rows, int cols);
void WriteVectorF64(std::ostream &os, const Vector &v);
Vector ReadVectorF64(std::istream &is, int dim);

std::ofstream OpenOutput(const std::string &path, bool binary = true);
std::ifstream OpenInput(const std::string &path, bool binary = true);

}  // namespace sdsv

#endif  // SDSV_BINARY_IO_H_
