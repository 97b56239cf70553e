// ltt/text/vocab.cc

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

#include "ltt/text/vocab.h"

#include <fstream>

namespace ltt {

Vocabulary::Vocabulary() {
  for (const char* t : {"<blank>", "<unk>", "<mask>", "<en>", "<man>"})
    Add(t);
}

int Vocabulary::Add(const std::string& token) {
  LTT_CHECK_DATA(!token.empty(), "vocab: empty token");
  auto it = ids_.find(token);
  if (it != ids_.end()) return it->second;
  int id = static_cast<int>(tokens_.size());
  tokens_.push_back(token);
  ids_.emplace(token, id);
  return id;
}

bool Vocabulary::Has(const std::string& token) const {
  return ids_.count(token) != 0;
}

int Vocabulary::ToId(const std::string& token) const {
  auto it = ids_.find(token);
  return it == ids_.end() ? kUnkId : it->second;
}

const std::string& Vocabulary::ToToken(int id) const {
  LTT_CHECK(id >= 0 && id < static_cast<int>(tokens_.size()),
            "vocab: id ", id, " out of range [0,", tokens_.size(), ")");
  return tokens_[id];
}

void Vocabulary::Save(const std::string& path) const {
  std::ofstream os(path);
  LTT_CHECK_DATA(os.good(), "vocab: cannot write '", path, "'");
  for (const auto& t : tokens_) os << t << "\n";
}

Vocabulary Vocabulary::Load(const std::string& path) {
  std::ifstream is(path);
  LTT_CHECK_DATA(is.good(), "vocab: cannot open '", path, "'");
  Vocabulary v;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    if (line_no < kNumReserved) {
      LTT_CHECK_DATA(line == v.tokens_[line_no],
                     "vocab: reserved line ", line_no, " is '", line,
                     "', expected '", v.tokens_[line_no], "'");
    } else {
      LTT_CHECK_DATA(!v.Has(line), "vocab: duplicate token '", line, "'");
      v.Add(line);
    }
    ++line_no;
  }
  LTT_CHECK_DATA(line_no >= kNumReserved, "vocab: '", path,
                 "' is missing reserved symbols");
  return v;
}

}  // namespace ltt
