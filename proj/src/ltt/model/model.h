// ltt/model/model.h

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

#ifndef LTT_MODEL_MODEL_H_
#define LTT_MODEL_MODEL_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ltt/data/feature-io.h"
#include "ltt/model/model-config.h"
#include "ltt/model/transformer.h"
#include "ltt/text/vocab.h"

namespace ltt {

// Which encoder branch a computation runs through. In single-encoder mode
// everything is kMan (the only branch).
enum class Branch { kMan, kEn };

// Batch-level gate forcing: monolingual batches pin the gate to the matching
// branch and propagate no gradient into the gate; code-switched batches
// learn it.
enum class ForceMode { kCs, kManOnly, kEnOnly };

struct BatchItem {
  std::string id;
  FeatureSequence feats;
  TokenSequence targets;  // LID-tagged BPE ids; never contains blank
};

struct GateStats {
  double min_alpha = 2.0;
  double max_alpha = -1.0;
  int64_t positions = 0;

  void Observe(const Tensor& alpha);
};

struct ObjectiveResult {
  Tensor total;
  double f_transducer = 0.0;
  double f_ctc = 0.0;
  double f_lm = 0.0;
  int64_t ctc_skipped = 0;  // utterances whose subsampled length was CTC-infeasible
  GateStats gate_audio;
  GateStats gate_label;
};

// The transformer-transducer: convolutionally subsampled audio encoder,
// causal label encoder with the phi start slot, additive tanh joint,
// auxiliary CTC and LM heads, and optional per-language dual encoders fused
// by a sigmoid gate.
class Model {
 public:
  Model(const ModelConfig& cfg, uint64_t init_seed);

  const ModelConfig& config() const { return cfg_; }
  ParameterStore* store() { return &store_; }
  const ParameterStore& store() const { return store_; }

  int64_t SubsampledLength(int64_t frames) const;

  // Frontend + encoder for one branch. T >= subsample_factor required.
  Tensor AudioEncode(const FeatureSequence& feats, bool train, RngCtx* ctx,
                     Branch branch = Branch::kMan) const;

  // Masks tokens at rate mask_rate in train mode (tags exempt), prepends the
  // phi start embedding, runs the causal stack. Output has Size()+1 rows.
  Tensor LabelEncode(const TokenSequence& tokens, bool train_mode, RngCtx* ctx,
                     Branch branch = Branch::kMan) const;
  // Same network on explicit ids with no masking (decode path).
  Tensor LabelEncodeIds(const std::vector<int>& ids, bool train, RngCtx* ctx,
                        Branch branch = Branch::kMan) const;

  // logits[t*(L+1) + u] = W_out tanh(W_a ah_t + W_l lh_u + b).
  Tensor JointLogits(const Tensor& ah, const Tensor& lh) const;

  // Gate fusion h = alpha*h_man + (1-alpha)*h_en. Forced modes return the
  // chosen branch tensor itself (bitwise) and a constant alpha of 1 or 0.
  // site true = audio gate, false = label gate.
  std::pair<Tensor, Tensor> FuseEncoders(const Tensor& h_man,
                                         const Tensor& h_en, bool audio_site,
                                         ForceMode force) const;

  Tensor CtcHead(const Tensor& ah) const;  // per-frame log-posteriors

  // Next-token cross entropy over the non-blank vocabulary; position u
  // predicts ids[u] thanks to the phi shift. Targets are the original
  // (unmasked) ids.
  Tensor LmLoss(const Tensor& lh, const std::vector<int>& target_ids) const;

  // F_obj = mean F_T + lambda_ctc * mean F_CTC + lambda_lm * mean F_LM over
  // the batch. rng_key addresses all masking/dropout streams.
  ObjectiveResult Objective(const std::vector<BatchItem>& batch,
                            ForceMode force, bool train,
                            uint64_t rng_key) const;

  // Eval-mode paths used by decoding: dual branches fuse with the learned
  // (CS) gate.
  Tensor DecodeAudio(const FeatureSequence& feats) const;
  Tensor DecodeLabelPrefix(const std::vector<int>& prefix_ids) const;

  // Element count from shapes alone; must equal store().TotalParams() of a
  // constructed model.
  static int64_t ParameterCount(const ModelConfig& cfg);

 private:
  struct Frontend {
    Tensor stack_w, stack_b;
    Tensor conv1_w, conv1_b, conv2_w, conv2_b;
    Tensor proj_w, proj_b;
  };
  struct Gate {
    Tensor w_man, w_en, w_alpha;
  };

  Tensor ApplyFrontend(const Frontend& fe, const Tensor& x) const;
  const Frontend& FrontendFor(Branch b) const;
  const TransformerEncoder& AudioEncoderFor(Branch b) const;
  const TransformerEncoder& LabelEncoderFor(Branch b) const;
  const Tensor& LabelEmbFor(Branch b) const;

  ModelConfig cfg_;
  ParameterStore store_;
  std::vector<Frontend> frontends_;                       // 1 or 2
  std::vector<std::unique_ptr<TransformerEncoder>> audio_encs_;
  std::vector<Tensor> label_embs_;
  std::vector<std::unique_ptr<TransformerEncoder>> label_encs_;
  std::optional<Gate> gate_audio_;
  std::optional<Gate> gate_label_;
  Tensor joint_wa_, joint_wl_, joint_b_, joint_wout_;
  Tensor ctc_w_, ctc_b_;
  Tensor lm_w_, lm_b_;
};

}  // namespace ltt

#endif  // LTT_MODEL_MODEL_H_
