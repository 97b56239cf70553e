// ltt/data/spec-augment.h

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

#ifndef LTT_DATA_SPEC_AUGMENT_H_
#define LTT_DATA_SPEC_AUGMENT_H_

#include "ltt/core/rng.h"
#include "ltt/data/feature-io.h"

namespace ltt {

// Train-time feature masking: zeroes num_freq_masks random contiguous
// feature bands (width uniform on [0, max_freq_width]) and num_time_masks
// random contiguous frame ranges (width uniform on [0, max_time_width]).
// Only masked coordinates change. Widths must not exceed the matching
// dimension.
void SpecAugment(FeatureSequence* feats, int64_t num_freq_masks,
                 int64_t max_freq_width, int64_t num_time_masks,
                 int64_t max_time_width, Rng* rng);

}  // namespace ltt

#endif  // LTT_DATA_SPEC_AUGMENT_H_
