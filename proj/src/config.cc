// src/config.cc

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

#include "sdsv/config.h"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sdsv/common.h"

namespace sdsv {

namespace {

std::string Trim(const std::string &s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string EnvName(const std::string &key) {
  std::string name = "SDSV_";
  for (char c : key)
    name += (c == '.') ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return name;
}

void ParseInto(std::istream &is, const std::string &origin,
               std::map<std::string, std::string> *entries) {
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = Trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      SDSV_ERR << origin << ":" << line_no << ": expected 'key = value', got '" << line << "'";
    std::string key = Trim(line.substr(0, eq));
    std::string value = Trim(line.substr(eq + 1));
    if (key.empty())
      SDSV_ERR << origin << ":" << line_no << ": empty key";
    (*entries)[key] = value;
  }
}

}  // namespace

Config Config::FromFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw SdsvError("cannot open config file: " + path);
  Config cfg;
  ParseInto(is, path, &cfg.entries_);
  return cfg;
}

Config Config::FromString(const std::string &text, const std::string &origin) {
  std::istringstream is(text);
  Config cfg;
  ParseInto(is, origin, &cfg.entries_);
  return cfg;
}

void Config::Merge(const Config &other) {
  for (const auto &[k, v] : other.entries_) entries_[k] = v;
}

void Config::Set(const std::string &key, const std::string &value) {
  entries_[key] = value;
}

void Config::SetFromArg(const std::string &arg) {
  size_t eq = arg.find('=');
  if (eq == std::string::npos || eq == 0)
    SDSV_ERR << "--set expects key=value, got '" << arg << "'";
  entries_[Trim(arg.substr(0, eq))] = Trim(arg.substr(eq + 1));
}

bool Config::Lookup(const std::string &key, std::string *value) const {
  if (const char *env = std::getenv(EnvName(key).c_str())) {
    *value = env;
    return true;
  }
  auto it = entries_.find(key);
  if (it == entries_.end()) return false;
  *value = it->second;
  return true;
}

bool Config::Has(const std::string &key) const {
  std::string unused;
  return Lookup(key, &unused);
}

std::string Config::GetString(const std::string &key, const std::string &default_value) const {
  std::string v;
  return Lookup(key, &v) ? v : default_value;
}

std::string Config::GetRequiredString(const std::string &key) const {
  std::string v;
  if (!Lookup(key, &v)) throw SdsvError("missing required config key: " + key);
  return v;
}

double Config::GetDouble(const std::string &key, double default_value) const {
  std::string v;
  if (!Lookup(key, &v)) return default_value;
  try {
    size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception &) {
    throw SdsvError("config key " + key + ": expected a number, got '" + v + "'");
  }
}

int Config::GetInt(const std::string &key, int default_value) const {
  std::string v;
  if (!Lookup(key, &v)) return default_value;
  try {
    size_t pos = 0;
    long n = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return static_cast<int>(n);
  } catch (const std::exception &) {
    throw SdsvError("config key " + key + ": expected an integer, got '" + v + "'");
  }
}

uint64_t Config::GetSeed(const std::string &key, uint64_t default_value) const {
  std::string v;
  if (!Lookup(key, &v)) return default_value;
  try {
    size_t pos = 0;
    unsigned long long n = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return static_cast<uint64_t>(n);
  } catch (const std::exception &) {
    throw SdsvError("config key " + key + ": expected a seed integer, got '" + v + "'");
  }
}

bool Config::GetBool(const std::string &key, bool default_value) const {
  std::string v;
  if (!Lookup(key, &v)) return default_value;
  std::string low = v;
  std::transform(low.begin(), low.end(), low.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (low == "true" || low == "1" || low == "yes" || low == "on") return true;
  if (low == "false" || low == "0" || low == "no" || low == "off") return false;
  throw SdsvError("config key " + key + ": expected a boolean, got '" + v + "'");
}

std::vector<int> Config::GetIntList(const std::string &key,
                                    const std::vector<int> &default_value) const {
  std::string v;
  if (!Lookup(key, &v)) return default_value;
  std::vector<int> out;
  std::string item;
  std::istringstream ss(v);
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception &) {
      throw SdsvError("config key " + key + ": expected integers, got '" + v + "'");
    }
  }
  if (out.empty()) throw SdsvError("config key " + key + ": empty list");
  return out;
}

}  // namespace sdsv
