// ltt/core/checkpoint.h

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

#ifndef LTT_CORE_CHECKPOINT_H_
#define LTT_CORE_CHECKPOINT_H_

#include <string>
#include <vector>

#include "ltt/core/param-store.h"

namespace ltt {

// Binary tensor container:
//   magic "LTCK", version u32, count u32, then per entry:
//   name_len u32, UTF-8 name, rank u32, dims u32 each, raw f32 data.
// All integers and floats little-endian.

struct CheckpointEntry {
  std::string name;
  Shape shape;
  std::vector<double> values;  // stored as f32 on disk
};

void SaveCheckpoint(const std::string& path,
                    const std::vector<CheckpointEntry>& entries);
std::vector<CheckpointEntry> LoadCheckpoint(const std::string& path);

// Parameter convenience wrappers. Loading requires an exact name/shape match
// with the store's contents.
void SaveParams(const std::string& path, const ParameterStore& store);
void LoadParamsInto(const std::string& path, ParameterStore* store);

}  // namespace ltt

#endif  // LTT_CORE_CHECKPOINT_H_
