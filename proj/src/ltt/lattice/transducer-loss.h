// ltt/lattice/transducer-loss.h

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

#ifndef LTT_LATTICE_TRANSDUCER_LOSS_H_
#define LTT_LATTICE_TRANSDUCER_LOSS_H_

#include <cstdint>
#include <vector>

#include "ltt/core/tensor.h"

namespace ltt {

// Alignment lattice over nodes (t, u): t frames consumed, u labels emitted,
// t in [0, T], u in [0, L]. A blank moves right using logits row (t, u); an
// emission moves up using logits row (min(t, T-1), u), so emissions are
// permitted after the final frame and are scored against the last frame's
// encodings. Every interleaving of T blanks and L emissions is a valid path:
//
//   alpha(t, u) = logadd(alpha(t-1, u) + blank(t-1, u),
//                        alpha(t, u-1) + emit(t, u-1))
//
// with alpha(0, 0) = 0 and total log-probability alpha(T, L) = beta(0, 0).
// Logits are raw scores; log-softmax over the K axis is applied internally.
struct TransducerResult {
  double loss = 0.0;               // -log P(y|x)
  std::vector<double> grad;        // d loss / d logits, T*(L+1)*K
  std::vector<double> alpha;       // (T+1)*(L+1)
  std::vector<double> beta;        // (T+1)*(L+1)
  int64_t num_frames = 0;
  int64_t num_labels = 0;
};

TransducerResult TransducerForwardBackward(const std::vector<double>& logits,
                                           int64_t num_frames,
                                           int64_t num_classes,
                                           const std::vector<int>& targets,
                                           int blank_id, bool want_grad);

// Autodiff wrapper. logits must be (T*(L+1), K) with pair (t, u) at row
// t*(L+1) + u. Returns the scalar loss.
Tensor TransducerLoss(const Tensor& logits, int64_t num_frames,
                      const std::vector<int>& targets, int blank_id);

}  // namespace ltt

#endif  // LTT_LATTICE_TRANSDUCER_LOSS_H_
