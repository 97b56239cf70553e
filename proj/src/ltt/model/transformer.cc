// ltt/model/transformer.cc

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

#include "ltt/model/transformer.h"

#include <cmath>

namespace ltt {

void InitXavier(Tensor w, Rng* rng) {
  double fan_in = static_cast<double>(w.Dim(0));
  double fan_out = static_cast<double>(w.Rank() == 2 ? w.Dim(1) : w.Dim(0));
  double limit = std::sqrt(6.0 / (fan_in + fan_out));
  InitUniform(w, limit, rng);
}

void InitOnes(Tensor t) {
  for (double& v : t.MutableData()) v = 1.0;
}

Tensor SinusoidalPositionalEncoding(int64_t len, int64_t d_model) {
  std::vector<double> pe(len * d_model);
  for (int64_t pos = 0; pos < len; ++pos)
    for (int64_t i = 0; i < d_model; i += 2) {
      double angle = static_cast<double>(pos) /
                     std::pow(10000.0, static_cast<double>(i) /
                                           static_cast<double>(d_model));
      pe[pos * d_model + i] = std::sin(angle);
      if (i + 1 < d_model) pe[pos * d_model + i + 1] = std::cos(angle);
    }
  return Tensor::FromData({len, d_model}, std::move(pe));
}

TransformerEncoder::TransformerEncoder(const std::string& prefix,
                                       int64_t layers, int64_t d_model,
                                       int64_t n_heads, int64_t ff_dim,
                                       double dropout, double attn_dropout,
                                       bool causal, ParameterStore* store,
                                       Rng* init)
    : layers_(layers),
      d_model_(d_model),
      n_heads_(n_heads),
      dropout_(dropout),
      attn_dropout_(attn_dropout),
      causal_(causal) {
  LTT_CHECK(d_model % n_heads == 0, "transformer: d_model ", d_model,
            " not divisible by n_heads ", n_heads);
  for (int64_t l = 0; l < layers; ++l) {
    std::string p = Str(prefix, ".l", l, ".");
    Layer layer;
    layer.ln1_g = store->Create(p + "ln1.gain", {d_model});
    layer.ln1_b = store->Create(p + "ln1.bias", {d_model});
    InitOnes(layer.ln1_g);
    layer.wq = store->Create(p + "attn.wq", {d_model, d_model});
    layer.bq = store->Create(p + "attn.bq", {d_model});
    layer.wk = store->Create(p + "attn.wk", {d_model, d_model});
    layer.bk = store->Create(p + "attn.bk", {d_model});
    layer.wv = store->Create(p + "attn.wv", {d_model, d_model});
    layer.bv = store->Create(p + "attn.bv", {d_model});
    layer.wo = store->Create(p + "attn.wo", {d_model, d_model});
    layer.bo = store->Create(p + "attn.bo", {d_model});
    for (Tensor w : {layer.wq, layer.wk, layer.wv, layer.wo})
      InitXavier(w, init);
    layer.ln2_g = store->Create(p + "ln2.gain", {d_model});
    layer.ln2_b = store->Create(p + "ln2.bias", {d_model});
    InitOnes(layer.ln2_g);
    layer.ff1_w = store->Create(p + "ff.w1", {d_model, ff_dim});
    layer.ff1_b = store->Create(p + "ff.b1", {ff_dim});
    layer.ff2_w = store->Create(p + "ff.w2", {ff_dim, d_model});
    layer.ff2_b = store->Create(p + "ff.b2", {d_model});
    InitXavier(layer.ff1_w, init);
    InitXavier(layer.ff2_w, init);
    layers_params_.push_back(std::move(layer));
  }
  ln_out_g_ = store->Create(Str(prefix, ".ln_out.gain"), {d_model});
  ln_out_b_ = store->Create(Str(prefix, ".ln_out.bias"), {d_model});
  InitOnes(ln_out_g_);
}

Tensor TransformerEncoder::Forward(const Tensor& x, bool train,
                                   RngCtx* ctx) const {
  const int64_t dh = d_model_ / n_heads_;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  Tensor h = x;
  for (const Layer& layer : layers_params_) {
    Tensor pre = LayerNorm(h, layer.ln1_g, layer.ln1_b);
    Tensor q = AddRowwise(MatMul(pre, layer.wq), layer.bq);
    Tensor k = AddRowwise(MatMul(pre, layer.wk), layer.bk);
    Tensor v = AddRowwise(MatMul(pre, layer.wv), layer.bv);
    std::vector<Tensor> heads;
    for (int64_t head = 0; head < n_heads_; ++head) {
      Tensor qh = Slice(q, 1, head * dh, dh);
      Tensor kh = Slice(k, 1, head * dh, dh);
      Tensor vh = Slice(v, 1, head * dh, dh);
      Tensor scores = Scale(MatMul(qh, Transpose(kh)), scale);
      if (causal_) scores = CausalMaskFill(scores, -1e30);
      Tensor attn = Softmax(scores);
      {
        Rng r = ctx->NextStream();
        attn = Dropout(attn, attn_dropout_, &r, train);
      }
      heads.push_back(MatMul(attn, vh));
    }
    Tensor ctx_out = AddRowwise(MatMul(Concat(heads, 1), layer.wo), layer.bo);
    {
      Rng r = ctx->NextStream();
      h = Add(h, Dropout(ctx_out, dropout_, &r, train));
    }
    Tensor pre2 = LayerNorm(h, layer.ln2_g, layer.ln2_b);
    Tensor ff = AddRowwise(
        MatMul(Relu(AddRowwise(MatMul(pre2, layer.ff1_w), layer.ff1_b)),
               layer.ff2_w),
        layer.ff2_b);
    {
      Rng r = ctx->NextStream();
      h = Add(h, Dropout(ff, dropout_, &r, train));
    }
  }
  return LayerNorm(h, ln_out_g_, ln_out_b_);
}

int64_t TransformerEncoder::CountParams(int64_t layers, int64_t d_model,
                                        int64_t ff_dim) {
  int64_t per_layer = 2 * d_model                      // ln1
                      + 4 * d_model * d_model + 4 * d_model  // attn
                      + 2 * d_model                    // ln2
                      + d_model * ff_dim + ff_dim      // ff1
                      + ff_dim * d_model + d_model;    // ff2
  return layers * per_layer + 2 * d_model;             // final ln
}

}  // namespace ltt
