// include/sdsv/common.h

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

#ifndef SDSV_COMMON_H_
#define SDSV_COMMON_H_

#include <Eigen/Dense>
#include <sstream>
#include <stdexcept>
#include <string>

namespace sdsv {

// Dense computation happens in double; feature files on disk are float32.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Rows are frames, columns are feature dimensions.
using FeatureMatrix = Eigen::MatrixXd;

class SdsvError : public std::runtime_error {
 public:
  explicit SdsvError(const std::string &msg) : std::runtime_error(msg) {}
};

// Streams a message and throws SdsvError when the temporary dies, so call
// sites read  SDSV_ERR << "bad dim " << dim;
class ErrorStream {
 public:
  explicit ErrorStream(const char *func) { ss_ << func << ": "; }
  ~ErrorStream() noexcept(false) {
    if (!std::uncaught_exceptions()) throw SdsvError(ss_.str());
  }
  std::ostringstream &Stream() { return ss_; }

 private:
  std::ostringstream ss_;
};

class LogStream {
 public:
  explicit LogStream(const char *tag, const char *func) { ss_ << tag << " (" << func << "): "; }
  ~LogStream();
  std::ostringstream &Stream() { return ss_; }

 private:
  std::ostringstream ss_;
};

#define SDSV_ERR ::sdsv::ErrorStream(__func__).Stream()
#define SDSV_LOG ::sdsv::LogStream("LOG", __func__).Stream()
#define SDSV_WARN ::sdsv::LogStream("WARNING", __func__).Stream()

#define SDSV_ASSERT(cond)                                             \
  do {                                                                \
    if (!(cond)) SDSV_ERR << "assertion failed: " #cond;              \
  } while (0)

inline void Require(bool cond, const std::string &msg) {
  if (!cond) throw SdsvError(msg);
}

bool AllFinite(const Matrix &m);
void RequireFinite(const Matrix &m, const std::string &what);

}  // namespace sdsv

#endif  // SDSV_COMMON_H_
