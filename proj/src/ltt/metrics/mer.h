// ltt/metrics/mer.h

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

#ifndef LTT_METRICS_MER_H_
#define LTT_METRICS_MER_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ltt {

// Mixed scoring units: Han code points count as single-character units,
// maximal non-Han runs split on whitespace into word units.
std::vector<std::string> MixedTokenize(const std::string& utterance);

struct EditCounts {
  int64_t sub = 0;
  int64_t ins = 0;  // hypothesis has an extra unit
  int64_t del = 0;  // hypothesis is missing a unit
};

struct AlignStep {
  enum Op { kMatch, kSub, kIns, kDel } op;
  std::string ref;  // empty for insertions
  std::string hyp;  // empty for deletions
};

struct EditResult {
  int64_t distance = 0;
  EditCounts counts;
  std::vector<AlignStep> alignment;
};

// Unit-cost Levenshtein with one minimizing alignment; ties prefer
// substitution over insertion over deletion.
EditResult EditDistance(const std::vector<std::string>& ref,
                        const std::vector<std::string>& hyp);

struct MerReport {
  double mer_percent = 0.0;
  int64_t total_ref_units = 0;
  int64_t total_distance = 0;
  EditCounts counts;
  struct Utt {
    std::string id;
    int64_t ref_units = 0;
    int64_t distance = 0;
    EditCounts counts;
  };
  std::vector<Utt> utts;

  // sclite-flavoured one-liner plus the per-utterance table.
  std::string Summary() const;
  std::string PerUttTsv() const;
};

// Pooled edits over pooled reference lengths, sclite-style. Both maps must
// cover exactly the same utterance ids; mismatches fail listing the ids.
MerReport ComputeMer(const std::map<std::string, std::string>& refs,
                     const std::map<std::string, std::string>& hyps);

}  // namespace ltt

#endif  // LTT_METRICS_MER_H_
