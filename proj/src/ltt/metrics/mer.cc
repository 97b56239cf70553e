// ltt/metrics/mer.cc

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

#include "ltt/metrics/mer.h"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "ltt/core/common.h"
#include "ltt/text/script.h"

namespace ltt {

std::vector<std::string> MixedTokenize(const std::string& utterance) {
  std::vector<std::string> units;
  std::string word;
  auto flush = [&]() {
    if (!word.empty()) {
      units.push_back(word);
      word.clear();
    }
  };
  for (const std::string& ch : SplitUtf8Chars(utterance)) {
    if (ch.size() == 1 && std::isspace(static_cast<unsigned char>(ch[0]))) {
      flush();
    } else if (IsHanChar(ch)) {
      flush();
      units.push_back(ch);
    } else {
      word += ch;
    }
  }
  flush();
  return units;
}

EditResult EditDistance(const std::vector<std::string>& ref,
                        const std::vector<std::string>& hyp) {
  const int64_t R = static_cast<int64_t>(ref.size());
  const int64_t H = static_cast<int64_t>(hyp.size());
  std::vector<int64_t> d((R + 1) * (H + 1), 0);
  auto at = [&](int64_t i, int64_t j) -> int64_t& { return d[i * (H + 1) + j]; };
  for (int64_t i = 0; i <= R; ++i) at(i, 0) = i;
  for (int64_t j = 0; j <= H; ++j) at(0, j) = j;
  for (int64_t i = 1; i <= R; ++i)
    for (int64_t j = 1; j <= H; ++j) {
      int64_t sub = at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      int64_t ins = at(i, j - 1) + 1;
      int64_t del = at(i - 1, j) + 1;
      at(i, j) = std::min({sub, ins, del});
    }

  EditResult res;
  res.distance = at(R, H);

  // Backtrace; on ties prefer substitution, then insertion, then deletion.
  std::vector<AlignStep> steps;
  int64_t i = R, j = H;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 &&
        at(i, j) == at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1)) {
      bool match = ref[i - 1] == hyp[j - 1];
      steps.push_back({match ? AlignStep::kMatch : AlignStep::kSub,
                       ref[i - 1], hyp[j - 1]});
      if (!match) ++res.counts.sub;
      --i;
      --j;
    } else if (j > 0 && at(i, j) == at(i, j - 1) + 1) {
      steps.push_back({AlignStep::kIns, "", hyp[j - 1]});
      ++res.counts.ins;
      --j;
    } else {
      steps.push_back({AlignStep::kDel, ref[i - 1], ""});
      ++res.counts.del;
      --i;
    }
  }
  std::reverse(steps.begin(), steps.end());
  res.alignment = std::move(steps);
  return res;
}

MerReport ComputeMer(const std::map<std::string, std::string>& refs,
                     const std::map<std::string, std::string>& hyps) {
  std::string missing_in_hyps, missing_in_refs;
  for (const auto& [id, text] : refs)
    if (!hyps.count(id)) missing_in_hyps += " " + id;
  for (const auto& [id, text] : hyps)
    if (!refs.count(id)) missing_in_refs += " " + id;
  if (!missing_in_hyps.empty() || !missing_in_refs.empty()) {
    std::string msg = "mer: utterance id mismatch;";
    if (!missing_in_hyps.empty())
      msg += " missing from hyps:" + missing_in_hyps + ";";
    if (!missing_in_refs.empty())
      msg += " missing from refs:" + missing_in_refs + ";";
    throw DataError(msg);
  }

  MerReport report;
  for (const auto& [id, ref_text] : refs) {
    auto ref_units = MixedTokenize(ref_text);
    auto hyp_units = MixedTokenize(hyps.at(id));
    EditResult e = EditDistance(ref_units, hyp_units);
    MerReport::Utt utt;
    utt.id = id;
    utt.ref_units = static_cast<int64_t>(ref_units.size());
    utt.distance = e.distance;
    utt.counts = e.counts;
    report.total_ref_units += utt.ref_units;
    report.total_distance += e.distance;
    report.counts.sub += e.counts.sub;
    report.counts.ins += e.counts.ins;
    report.counts.del += e.counts.del;
    report.utts.push_back(std::move(utt));
  }
  report.mer_percent = 100.0 * static_cast<double>(report.total_distance) /
                       static_cast<double>(std::max<int64_t>(
                           1, report.total_ref_units));
  return report;
}

std::string MerReport::Summary() const {
  std::ostringstream os;
  os << "%MER " << std::fixed << std::setprecision(2) << mer_percent << " [ "
     << total_distance << " / " << total_ref_units << ", " << counts.ins
     << " ins, " << counts.del << " del, " << counts.sub << " sub ]";
  return os.str();
}

std::string MerReport::PerUttTsv() const {
  std::ostringstream os;
  os << "id\tref_units\tdistance\tsub\tins\tdel\tmer\n";
  for (const auto& u : utts) {
    double mer = 100.0 * static_cast<double>(u.distance) /
                 static_cast<double>(std::max<int64_t>(1, u.ref_units));
    os << u.id << "\t" << u.ref_units << "\t" << u.distance << "\t"
       << u.counts.sub << "\t" << u.counts.ins << "\t" << u.counts.del << "\t"
       << std::fixed << std::setprecision(2) << mer << "\n";
  }
  return os.str();
}

}  // namespace ltt
