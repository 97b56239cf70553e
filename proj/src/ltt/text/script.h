// ltt/text/script.h

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

#ifndef LTT_TEXT_SCRIPT_H_
#define LTT_TEXT_SCRIPT_H_

#include <string>
#include <vector>

namespace ltt {

// Splits a UTF-8 string into one byte-string per code point. Malformed
// bytes raise DataError.
std::vector<std::string> SplitUtf8Chars(const std::string& s);

// CJK Unified Ideographs (U+4E00..U+9FFF) plus Extension A.
bool IsHanCodepoint(char32_t cp);
// True when the (single-code-point) UTF-8 chunk is a Han character.
bool IsHanChar(const std::string& utf8_char);
// Script classification of a whitespace token: Han if it contains any Han
// code point. Deterministic and locale-free.
bool TokenIsHan(const std::string& token);

std::vector<std::string> SplitWhitespace(const std::string& s);

}  // namespace ltt

#endif  // LTT_TEXT_SCRIPT_H_
