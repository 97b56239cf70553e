// ltt/model/transformer.h

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

#ifndef LTT_MODEL_TRANSFORMER_H_
#define LTT_MODEL_TRANSFORMER_H_

#include <string>

#include "ltt/core/param-store.h"

namespace ltt {

// Hands every dropout site its own derived stream, addressed by a counter.
// Rebuilding a forward pass with the same key reproduces every mask exactly,
// which is what makes finite-difference checks of a stochastic objective
// well-defined.
struct RngCtx {
  uint64_t key = 0;
  uint64_t counter = 0;

  Rng NextStream() { return Rng(Rng::Mix(key, counter++)); }
};

// Pre-norm transformer encoder stack with a final layer-norm:
//   x += Dropout(Attn(LN(x))); x += Dropout(FF(LN(x))); ...; LN(x).
// Causal instances mask attention so position u sees only positions <= u.
class TransformerEncoder {
 public:
  TransformerEncoder(const std::string& prefix, int64_t layers,
                     int64_t d_model, int64_t n_heads, int64_t ff_dim,
                     double dropout, double attn_dropout, bool causal,
                     ParameterStore* store, Rng* init);

  Tensor Forward(const Tensor& x, bool train, RngCtx* ctx) const;

  // Parameter tensor count and total element count of one such stack, from
  // shapes alone.
  static int64_t CountParams(int64_t layers, int64_t d_model, int64_t ff_dim);

 private:
  int64_t layers_;
  int64_t d_model_;
  int64_t n_heads_;
  double dropout_;
  double attn_dropout_;
  bool causal_;
  struct Layer {
    Tensor ln1_g, ln1_b, wq, bq, wk, bk, wv, bv, wo, bo;
    Tensor ln2_g, ln2_b, ff1_w, ff1_b, ff2_w, ff2_b;
  };
  std::vector<Layer> layers_params_;
  Tensor ln_out_g_, ln_out_b_;
};

// Sinusoidal absolute positions, shape (len, d_model); constant (no grad).
Tensor SinusoidalPositionalEncoding(int64_t len, int64_t d_model);

// Xavier-uniform init for a (fan_in, fan_out) matrix.
void InitXavier(Tensor w, Rng* rng);
// Layer-norm gains start at one.
void InitOnes(Tensor t);

}  // namespace ltt

#endif  // LTT_MODEL_TRANSFORMER_H_
