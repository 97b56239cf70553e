// ltt/data/manifest.cc

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

#include "ltt/data/manifest.h"

#include <fstream>
#include <set>

#include "ltt/core/common.h"

namespace ltt {

namespace {

constexpr const char* kHeader = "id\tfeatures\ttranscript\truns";

std::vector<std::string> SplitTabs(const std::string& line) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

}  // namespace

void Manifest::Save(const std::string& path) const {
  std::ofstream os(path);
  LTT_CHECK_DATA(os.good(), "manifest: cannot write '", path, "'");
  os << kHeader << "\n";
  std::set<std::string> seen;
  for (const auto& r : rows) {
    LTT_CHECK_DATA(seen.insert(r.id).second, "manifest: duplicate id '", r.id,
                   "'");
    os << r.id << "\t" << r.feature_path << "\t" << r.transcript << "\t"
       << r.runs << "\n";
  }
}

Manifest Manifest::Load(const std::string& path) {
  std::ifstream is(path);
  LTT_CHECK_DATA(is.good(), "manifest: cannot open '", path, "'");
  std::string line;
  LTT_CHECK_DATA(std::getline(is, line) && line == kHeader,
                 "manifest: '", path, "' missing header '", kHeader, "'");
  Manifest m;
  std::set<std::string> seen;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto cols = SplitTabs(line);
    LTT_CHECK_DATA(cols.size() == 4, "manifest: bad row '", line, "'");
    LTT_CHECK_DATA(seen.insert(cols[0]).second, "manifest: duplicate id '",
                   cols[0], "'");
    m.rows.push_back({cols[0], cols[1], cols[2], cols[3]});
  }
  return m;
}

}  // namespace ltt
