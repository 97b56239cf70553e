// ltt/data/manifest.h

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

#ifndef LTT_DATA_MANIFEST_H_
#define LTT_DATA_MANIFEST_H_

#include <string>
#include <vector>

namespace ltt {

// One corpus row. feature_path is relative to the manifest's directory;
// runs is a human-readable language-run annotation like "man:2 en:3".
struct ManifestRow {
  std::string id;
  std::string feature_path;
  std::string transcript;
  std::string runs;
};

struct Manifest {
  std::vector<ManifestRow> rows;

  // UTF-8 TSV with the header "id\tfeatures\ttranscript\truns". Ids must be
  // unique.
  void Save(const std::string& path) const;
  static Manifest Load(const std::string& path);
};

}  // namespace ltt

#endif  // LTT_DATA_MANIFEST_H_
