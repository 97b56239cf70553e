// ltt/text/bpe.h

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

#ifndef LTT_TEXT_BPE_H_
#define LTT_TEXT_BPE_H_

#include <string>
#include <utility>
#include <vector>

namespace ltt {

// Byte-pair encoding restricted to non-Han words. Han tokens pass through
// as bare single-character pieces and contribute nothing to merge counts,
// so no merge can ever cross scripts. Words are split into UTF-8 characters
// with the end-of-word marker appended to the final character.
struct BpeModel {
  std::vector<std::pair<std::string, std::string>> merges;
  std::string end_marker = "</w>";

  // One merge per line: "left right". Order significant.
  void Save(const std::string& path) const;
  static BpeModel Load(const std::string& path);
};

BpeModel LearnBpe(const std::vector<std::string>& corpus, int64_t num_merges);

std::vector<std::string> ApplyBpe(const BpeModel& model,
                                  const std::string& utterance);

// Inverse of ApplyBpe on its output: non-Han pieces accumulate until an
// end-of-word marker, Han pieces and <...> specials stand alone.
std::string DetokenizePieces(const std::vector<std::string>& pieces,
                             const std::string& end_marker = "</w>");

}  // namespace ltt

#endif  // LTT_TEXT_BPE_H_
