// ltt/text/script.cc

// Copyright 2026  LTT Authors

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

#include "ltt/text/script.h"

#include <sstream>

#include "ltt/core/common.h"

namespace ltt {

namespace {

// Returns the code point and byte length at position i.
std::pair<char32_t, int> DecodeAt(const std::string& s, size_t i) {
  unsigned char c0 = static_cast<unsigned char>(s[i]);
  auto cont = [&](size_t k) -> unsigned {
    LTT_CHECK_DATA(i + k < s.size(), "utf8: truncated sequence");
    unsigned char c = static_cast<unsigned char>(s[i + k]);
    LTT_CHECK_DATA((c & 0xC0) == 0x80, "utf8: bad continuation byte");
    return c & 0x3F;
  };
  if (c0 < 0x80) return {c0, 1};
  if ((c0 & 0xE0) == 0xC0) return {((c0 & 0x1Fu) << 6) | cont(1), 2};
  if ((c0 & 0xF0) == 0xE0)
    return {((c0 & 0x0Fu) << 12) | (cont(1) << 6) | cont(2), 3};
  if ((c0 & 0xF8) == 0xF0)
    return {((c0 & 0x07u) << 18) | (cont(1) << 12) | (cont(2) << 6) | cont(3),
            4};
  throw DataError("utf8: invalid lead byte");
}

}  // namespace

std::vector<std::string> SplitUtf8Chars(const std::string& s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    auto [cp, len] = DecodeAt(s, i);
    (void)cp;
    out.push_back(s.substr(i, len));
    i += len;
  }
  return out;
}

bool IsHanCodepoint(char32_t cp) {
  return (cp >= 0x4E00 && cp <= 0x9FFF) || (cp >= 0x3400 && cp <= 0x4DBF);
}

bool IsHanChar(const std::string& utf8_char) {
  if (utf8_char.empty()) return false;
  return IsHanCodepoint(DecodeAt(utf8_char, 0).first);
}

bool TokenIsHan(const std::string& token) {
  size_t i = 0;
  while (i < token.size()) {
    auto [cp, len] = DecodeAt(token, i);
    if (IsHanCodepoint(cp)) return true;
    i += len;
  }
  return false;
}

std::vector<std::string> SplitWhitespace(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

}  // namespace ltt
