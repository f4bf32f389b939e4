// src/common.cc

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

#include "sdsv/common.h"

#include <iostream>

namespace sdsv {

LogStream::~LogStream() { std::cerr << ss_.str() << "\n"; }

bool AllFinite(const Matrix &m) { return m.allFinite(); }

void RequireFinite(const Matrix &m, const std::string &what) {
  if (!m.allFinite()) throw SdsvError(what + " contains non-finite values");
}

}  // namespace sdsv
