// ltt/text/vocab.h

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

#ifndef LTT_TEXT_VOCAB_H_
#define LTT_TEXT_VOCAB_H_

#include <string>
#include <unordered_map>
#include <vector>

#include "ltt/core/common.h"

namespace ltt {

// Per-token language mark. TAG only on <en>/<man>, MASK only on positions
// replaced by <mask>.
enum class LangMark { kEn, kMan, kTag, kMask };

struct TokenSequence {
  std::vector<int> ids;
  std::vector<LangMark> langs;

  int64_t Size() const { return static_cast<int64_t>(ids.size()); }
  void Push(int id, LangMark lang) {
    ids.push_back(id);
    langs.push_back(lang);
  }
};

// Bidirectional token<->id table. Reserved symbols occupy fixed low ids:
// blank 0, <unk> 1, <mask> 2, <en> 3, <man> 4. The blank never appears in
// target sequences; it exists for the joint/CTC output axes.
class Vocabulary {
 public:
  static constexpr int kBlankId = 0;
  static constexpr int kUnkId = 1;
  static constexpr int kMaskId = 2;
  static constexpr int kEnTagId = 3;
  static constexpr int kManTagId = 4;
  static constexpr int kNumReserved = 5;

  Vocabulary();

  // Returns the existing or freshly assigned id.
  int Add(const std::string& token);
  bool Has(const std::string& token) const;
  int64_t Size() const { return static_cast<int64_t>(tokens_.size()); }

  // Unknown tokens map to <unk>.
  int ToId(const std::string& token) const;
  const std::string& ToToken(int id) const;

  static bool IsReservedId(int id) { return id >= 0 && id < kNumReserved; }

  // One token per line; the line number is the id.
  void Save(const std::string& path) const;
  static Vocabulary Load(const std::string& path);

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> ids_;
};

}  // namespace ltt

#endif  // LTT_TEXT_VOCAB_H_
