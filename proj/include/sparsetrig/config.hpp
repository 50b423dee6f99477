// Copyright 2026 The SparseTrig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Flat "key = value" run configuration. Flags override file entries; the
// effective configuration is echoed verbatim into every artifact so a run
// can be reproduced from any of its outputs.

#ifndef SPARSETRIG_CONFIG_HPP_
#define SPARSETRIG_CONFIG_HPP_

#include <cctype>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsetrig/spectrum.hpp"

namespace sparsetrig {

/// Parses "inf" (any case) or a plain number.
inline double parse_extended_real(const std::string& text) {
  std::string t = text;
  for (char& c : t) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "inf" || t == "infinity") return kInf;
  std::size_t pos = 0;
  const double v = std::stod(text, &pos);
  if (pos != text.size()) throw std::invalid_argument("not a number: " + text);
  return v;
}

class RunConfig {
 public:
  RunConfig() = default;

  static RunConfig from_stream(std::istream& is) {
    RunConfig cfg;
    std::string line;
    while (std::getline(is, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) {
          throw std::invalid_argument("config: expected 'key = value', got: " + line);
        }
        continue;
      }
      cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
  }

  static RunConfig from_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("config: cannot open " + path);
    return from_stream(is);
  }

  void set(const std::string& key, const std::string& value) {
    if (key.empty()) throw std::invalid_argument("config: empty key");
    kv_[key] = value;
  }

  bool has(const std::string& key) const { return kv_.count(key) > 0; }

  std::string get(const std::string& key, const std::string& fallback) const {
    const auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
  }

  std::string get_required(const std::string& key) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) throw std::invalid_argument("config: missing key '" + key + "'");
    return it->second;
  }

  double get_real(const std::string& key, double fallback) const {
    const auto it = kv_.find(key);
    return it == kv_.end() ? fallback : parse_extended_real(it->second);
  }

  Index get_index(const std::string& key, Index fallback) const {
    const auto it = kv_.find(key);
    return it == kv_.end() ? fallback : static_cast<Index>(std::stoll(it->second));
  }

  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const {
    const auto it = kv_.find(key);
    return it == kv_.end() ? fallback : std::stoull(it->second);
  }

  bool get_bool(const std::string& key, bool fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    const std::string& v = it->second;
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::invalid_argument("config: boolean expected for '" + key + "'");
  }

  /// Comma-separated integer list, e.g. "16,32,64,128".
  std::vector<Index> get_index_list(const std::string& key,
                                    const std::vector<Index>& fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    std::vector<Index> out;
    std::istringstream is(it->second);
    std::string piece;
    while (std::getline(is, piece, ',')) {
      const std::string t = trim(piece);
      if (!t.empty()) out.push_back(static_cast<Index>(std::stoll(t)));
    }
    if (out.empty()) throw std::invalid_argument("config: empty list for '" + key + "'");
    return out;
  }

  const std::map<std::string, std::string>& entries() const { return kv_; }

  /// Canonical sorted echo, suitable for artifact headers.
  std::string echo() const {
    std::ostringstream os;
    for (const auto& [key, value] : kv_) os << key << " = " << value << "\n";
    return os.str();
  }

 private:
  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  }

  std::map<std::string, std::string> kv_;
};

}  // namespace sparsetrig

#endif  // SPARSETRIG_CONFIG_HPP_
