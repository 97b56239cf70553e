// ltt/data/feature-io.h

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

#ifndef LTT_DATA_FEATURE_IO_H_
#define LTT_DATA_FEATURE_IO_H_

#include <cstdint>
#include <string>
#include <vector>

namespace ltt {

// T x d acoustic feature matrix, row-major.
struct FeatureSequence {
  int64_t num_frames = 0;
  int64_t dim = 0;
  std::vector<float> data;

  float At(int64_t t, int64_t d) const { return data[t * dim + d]; }
};

// Binary format: magic "LTFT", version u32, T u32, d u32, then T*d f32.
// Everything little-endian.
void WriteFeatureFile(const std::string& path, const FeatureSequence& feats);
FeatureSequence ReadFeatureFile(const std::string& path);

}  // namespace ltt

#endif  // LTT_DATA_FEATURE_IO_H_
