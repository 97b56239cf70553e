// ltt/lattice/ctc-loss.h

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

#ifndef LTT_LATTICE_CTC_LOSS_H_
#define LTT_LATTICE_CTC_LOSS_H_

#include <cstdint>
#include <vector>

#include "ltt/core/tensor.h"

namespace ltt {

// Standard CTC forward-backward over the 2L+1 extended label sequence
// (blanks interleaved). Scores are per-frame raw logits or log-posteriors;
// log-softmax is applied internally, which is a no-op on inputs that are
// already normalized.
struct CtcResult {
  double loss = 0.0;
  std::vector<double> grad;  // d loss / d scores, T*K
};

// Minimum frame count for a target sequence: L plus one per adjacent repeat.
int64_t CtcMinFrames(const std::vector<int>& targets);

CtcResult CtcForwardBackward(const std::vector<double>& scores,
                             int64_t num_frames, int64_t num_classes,
                             const std::vector<int>& targets, int blank_id,
                             bool want_grad);

// Autodiff wrapper; scores is (T, K).
Tensor CtcLoss(const Tensor& scores, const std::vector<int>& targets,
               int blank_id);

}  // namespace ltt

#endif  // LTT_LATTICE_CTC_LOSS_H_
