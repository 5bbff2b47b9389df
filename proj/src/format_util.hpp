// Copyright 2026 The diaudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DIAUDIT_SRC_FORMAT_UTIL_HPP_
#define DIAUDIT_SRC_FORMAT_UTIL_HPP_

#include <array>
#include <charconv>
#include <cstdio>
#include <string>

namespace diaudit::internal {

// Shortest representation that parses back to the same double.
inline std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

inline std::string format_fixed6(double value) {
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.6f", value);
  return std::string(buf.data());
}

inline std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace diaudit::internal

#endif  // DIAUDIT_SRC_FORMAT_UTIL_HPP_
