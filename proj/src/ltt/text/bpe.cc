// ltt/text/bpe.cc

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

#include "ltt/text/bpe.h"

#include <fstream>
#include <map>

#include "ltt/core/common.h"
#include "ltt/text/script.h"

namespace ltt {

namespace {

std::vector<std::string> WordToSymbols(const std::string& word,
                                       const std::string& marker) {
  std::vector<std::string> syms = SplitUtf8Chars(word);
  LTT_CHECK_DATA(!syms.empty(), "bpe: empty word");
  syms.back() += marker;
  return syms;
}

// Merges every non-overlapping (left, right) occurrence, left to right.
void ApplyMerge(std::vector<std::string>* syms, const std::string& left,
                const std::string& right) {
  size_t i = 0;
  while (i + 1 < syms->size()) {
    if ((*syms)[i] == left && (*syms)[i + 1] == right) {
      (*syms)[i] = left + right;
      syms->erase(syms->begin() + static_cast<int64_t>(i) + 1);
    } else {
      ++i;
    }
  }
}

}  // namespace

void BpeModel::Save(const std::string& path) const {
  std::ofstream os(path);
  LTT_CHECK_DATA(os.good(), "bpe: cannot write '", path, "'");
  for (const auto& [l, r] : merges) os << l << " " << r << "\n";
}

BpeModel BpeModel::Load(const std::string& path) {
  std::ifstream is(path);
  LTT_CHECK_DATA(is.good(), "bpe: cannot open '", path, "'");
  BpeModel model;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    size_t sp = line.find(' ');
    LTT_CHECK_DATA(sp != std::string::npos && sp > 0 && sp + 1 < line.size(),
                   "bpe: malformed merge line '", line, "'");
    model.merges.emplace_back(line.substr(0, sp), line.substr(sp + 1));
  }
  return model;
}

BpeModel LearnBpe(const std::vector<std::string>& corpus, int64_t num_merges) {
  LTT_CHECK(num_merges >= 0, "learn_bpe: num_merges must be >= 0, got ",
            num_merges);
  BpeModel model;

  // Word frequency table over non-Han tokens only.
  std::map<std::string, int64_t> word_counts;
  for (const std::string& utt : corpus)
    for (const std::string& tok : SplitWhitespace(utt))
      if (!TokenIsHan(tok)) ++word_counts[tok];

  std::vector<std::pair<std::vector<std::string>, int64_t>> words;
  for (const auto& [w, c] : word_counts)
    words.emplace_back(WordToSymbols(w, model.end_marker), c);

  for (int64_t round = 0; round < num_merges; ++round) {
    std::map<std::pair<std::string, std::string>, int64_t> pair_counts;
    for (const auto& [syms, count] : words)
      for (size_t i = 0; i + 1 < syms.size(); ++i)
        pair_counts[{syms[i], syms[i + 1]}] += count;
    if (pair_counts.empty()) break;
    // Most frequent pair; ties resolve to the lexicographically smallest
    // (the map iterates in sorted order).
    std::pair<std::string, std::string> best;
    int64_t best_count = 0;
    for (const auto& [pair, count] : pair_counts)
      if (count > best_count) {
        best = pair;
        best_count = count;
      }
    model.merges.push_back(best);
    for (auto& [syms, count] : words) ApplyMerge(&syms, best.first,
                                                 best.second);
  }
  return model;
}

std::vector<std::string> ApplyBpe(const BpeModel& model,
                                  const std::string& utterance) {
  std::vector<std::string> out;
  for (const std::string& tok : SplitWhitespace(utterance)) {
    if (TokenIsHan(tok)) {
      for (const std::string& ch : SplitUtf8Chars(tok)) out.push_back(ch);
      continue;
    }
    std::vector<std::string> syms = WordToSymbols(tok, model.end_marker);
    for (const auto& [l, r] : model.merges) ApplyMerge(&syms, l, r);
    for (auto& s : syms) out.push_back(std::move(s));
  }
  return out;
}

std::string DetokenizePieces(const std::vector<std::string>& pieces,
                             const std::string& end_marker) {
  std::vector<std::string> words;
  std::string current;
  auto flush = [&]() {
    if (!current.empty()) {
      words.push_back(current);
      current.clear();
    }
  };
  for (const std::string& p : pieces) {
    if (IsHanChar(p) || (p.size() > 2 && p.front() == '<' && p.back() == '>')) {
      flush();
      words.push_back(p);
      continue;
    }
    if (p.size() >= end_marker.size() &&
        p.compare(p.size() - end_marker.size(), end_marker.size(),
                  end_marker) == 0) {
      current += p.substr(0, p.size() - end_marker.size());
      flush();
    } else {
      current += p;
    }
  }
  flush();
  std::string out;
  for (size_t i = 0; i < words.size(); ++i) {
    if (i) out += " ";
    out += words[i];
  }
  return out;
}

}  // namespace ltt
