// ltt/data/spec-augment.cc

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

#include "ltt/data/spec-augment.h"

#include "ltt/core/common.h"

namespace ltt {

void SpecAugment(FeatureSequence* feats, int64_t num_freq_masks,
                 int64_t max_freq_width, int64_t num_time_masks,
                 int64_t max_time_width, Rng* rng) {
  const int64_t T = feats->num_frames;
  const int64_t d = feats->dim;
  LTT_CHECK(num_freq_masks >= 0 && num_time_masks >= 0,
            "spec_augment: negative mask count");
  LTT_CHECK(max_freq_width >= 0 && max_freq_width <= d,
            "spec_augment: freq width ", max_freq_width, " exceeds dim ", d);
  LTT_CHECK(max_time_width >= 0 && max_time_width <= T,
            "spec_augment: time width ", max_time_width, " exceeds frames ",
            T);
  for (int64_t m = 0; m < num_freq_masks; ++m) {
    int64_t w = rng->UniformInt(max_freq_width + 1);
    int64_t start = rng->UniformInt(d - w + 1);
    for (int64_t t = 0; t < T; ++t)
      for (int64_t c = start; c < start + w; ++c) feats->data[t * d + c] = 0.0f;
  }
  for (int64_t m = 0; m < num_time_masks; ++m) {
    int64_t w = rng->UniformInt(max_time_width + 1);
    int64_t start = rng->UniformInt(T - w + 1);
    for (int64_t t = start; t < start + w; ++t)
      for (int64_t c = 0; c < d; ++c) feats->data[t * d + c] = 0.0f;
  }
}

}  // namespace ltt
