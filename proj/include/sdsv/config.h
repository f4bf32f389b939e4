// include/sdsv/config.h

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

#ifndef SDSV_CONFIG_H_
#define SDSV_CONFIG_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sdsv {

// Declarative text configuration with dotted-section keys:
//
//   # comment
//   frontend.n_cepstra = 20
//   frontend.block_sizes = 9,13
//
// Later assignments win, so presets can be layered under --set overrides.
// The environment wins over everything: SDSV_FRONTEND_N_CEPSTRA=19 overrides
// key "frontend.n_cepstra".
class Config {
 public:
  Config() = default;

  static Config FromFile(const std::string &path);
  static Config FromString(const std::string &text, const std::string &origin = "<string>");

  void Merge(const Config &other);       // other wins
  void Set(const std::string &key, const std::string &value);
  // Parses "key=value"; used by the CLI --set flag.
  void SetFromArg(const std::string &arg);

  bool Has(const std::string &key) const;

  std::string GetString(const std::string &key, const std::string &default_value) const;
  std::string GetRequiredString(const std::string &key) const;
  double GetDouble(const std::string &key, double default_value) const;
  int GetInt(const std::string &key, int default_value) const;
  uint64_t GetSeed(const std::string &key, uint64_t default_value) const;
  bool GetBool(const std::string &key, bool default_value) const;
  std::vector<int> GetIntList(const std::string &key, const std::vector<int> &default_value) const;

  const std::map<std::string, std::string> &entries() const { return entries_; }

 private:
  // Raw lookup with the environment override applied; empty when unset.
  bool Lookup(const std::string &key, std::string *value) const;

  std::map<std::string, std::string> entries_;
};

}  // namespace sdsv

#endif  // SDSV_CONFIG_H_
