// ltt/model/model.cc

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

#include "ltt/model/model.h"

#include <cmath>

#include "ltt/lattice/ctc-loss.h"
#include "ltt/lattice/transducer-loss.h"
#include "ltt/text/lid-mask.h"

namespace ltt {

namespace {

constexpr uint64_t kMaskStreamSalt = 0x3A5C0FFEULL;

Tensor FeatureTensor(const FeatureSequence& feats) {
  LTT_CHECK(feats.num_frames >= 1, "audio_encode: empty feature sequence");
  std::vector<double> v(feats.data.begin(), feats.data.end());
  return Tensor::FromData({feats.num_frames, feats.dim}, std::move(v));
}

}  // namespace

void GateStats::Observe(const Tensor& alpha) {
  for (double v : alpha.Data()) {
    min_alpha = std::min(min_alpha, v);
    max_alpha = std::max(max_alpha, v);
  }
  positions += alpha.NumEl();
}

Model::Model(const ModelConfig& cfg, uint64_t init_seed) : cfg_(cfg) {
  cfg_.Validate();
  LTT_CHECK(cfg_.vocab_size >= 2, "model: vocab_size must cover blank plus labels, got ",
            cfg_.vocab_size);
  Rng init(Rng::Mix(init_seed, 0x1417ULL));
  const int64_t d = cfg_.d_model;
  const int64_t df = cfg_.feature_dim;
  const int64_t v = cfg_.vocab_size;

  int audio_branches = cfg_.HasAudioBranches() ? 2 : 1;
  int label_branches = cfg_.HasLabelBranches() ? 2 : 1;
  auto branch_name = [](int n_branches, int b) {
    return n_branches == 1 ? std::string("")
                           : std::string(b == 0 ? ".man" : ".en");
  };

  for (int b = 0; b < audio_branches; ++b) {
    std::string bn = branch_name(audio_branches, b);
    Frontend fe;
    if (cfg_.frame_stack) {
      fe.stack_w = store_.Create(Str("audio_front", bn, ".stack.w"),
                                 {cfg_.subsample_factor * df, d});
      fe.stack_b = store_.Create(Str("audio_front", bn, ".stack.b"), {d});
      InitXavier(fe.stack_w, &init);
    } else if (cfg_.subsample_factor >= 2) {
      fe.conv1_w = store_.Create(Str("audio_front", bn, ".conv1.w"),
                                 {3 * df, d});
      fe.conv1_b = store_.Create(Str("audio_front", bn, ".conv1.b"), {d});
      InitXavier(fe.conv1_w, &init);
      if (cfg_.subsample_factor == 4) {
        fe.conv2_w = store_.Create(Str("audio_front", bn, ".conv2.w"),
                                   {3 * d, d});
        fe.conv2_b = store_.Create(Str("audio_front", bn, ".conv2.b"), {d});
        InitXavier(fe.conv2_w, &init);
      }
    }
    int64_t proj_in = (cfg_.frame_stack || cfg_.subsample_factor >= 2) ? d : df;
    fe.proj_w = store_.Create(Str("audio_front", bn, ".proj.w"), {proj_in, d});
    fe.proj_b = store_.Create(Str("audio_front", bn, ".proj.b"), {d});
    InitXavier(fe.proj_w, &init);
    frontends_.push_back(std::move(fe));

    audio_encs_.push_back(std::make_unique<TransformerEncoder>(
        Str("audio_enc", bn), cfg_.audio_layers, d, cfg_.n_heads, cfg_.ff_dim,
        cfg_.dropout, cfg_.dropout, /*causal=*/false, &store_, &init));
  }

  for (int b = 0; b < label_branches; ++b) {
    std::string bn = branch_name(label_branches, b);
    Tensor emb = store_.Create(Str("label_emb", bn), {v, d});
    InitXavier(emb, &init);
    label_embs_.push_back(emb);
    label_encs_.push_back(std::make_unique<TransformerEncoder>(
        Str("label_enc", bn), cfg_.label_layers, d, cfg_.n_heads, cfg_.ff_dim,
        cfg_.dropout, cfg_.label_attn_dropout, /*causal=*/true, &store_,
        &init));
  }

  if (cfg_.HasAudioBranches()) {
    Gate g;
    g.w_man = store_.Create("gate_audio.w_man", {d, d});
    g.w_en = store_.Create("gate_audio.w_en", {d, d});
    g.w_alpha = store_.Create("gate_audio.w_alpha", {d, 1});
    InitXavier(g.w_man, &init);
    InitXavier(g.w_en, &init);
    InitXavier(g.w_alpha, &init);
    gate_audio_ = g;
  }
  if (cfg_.HasLabelBranches()) {
    Gate g;
    g.w_man = store_.Create("gate_label.w_man", {d, d});
    g.w_en = store_.Create("gate_label.w_en", {d, d});
    g.w_alpha = store_.Create("gate_label.w_alpha", {d, 1});
    InitXavier(g.w_man, &init);
    InitXavier(g.w_en, &init);
    InitXavier(g.w_alpha, &init);
    gate_label_ = g;
  }

  joint_wa_ = store_.Create("joint.wa", {d, d});
  joint_wl_ = store_.Create("joint.wl", {d, d});
  joint_b_ = store_.Create("joint.b", {d});
  joint_wout_ = store_.Create("joint.wout", {d, v});
  InitXavier(joint_wa_, &init);
  InitXavier(joint_wl_, &init);
  InitXavier(joint_wout_, &init);

  ctc_w_ = store_.Create("ctc.w", {d, v});
  ctc_b_ = store_.Create("ctc.b", {v});
  InitXavier(ctc_w_, &init);

  lm_w_ = store_.Create("lm.w", {d, v - 1});
  lm_b_ = store_.Create("lm.b", {v - 1});
  InitXavier(lm_w_, &init);
}

const Model::Frontend& Model::FrontendFor(Branch b) const {
  return frontends_[frontends_.size() == 1 ? 0 : (b == Branch::kMan ? 0 : 1)];
}
const TransformerEncoder& Model::AudioEncoderFor(Branch b) const {
  return *audio_encs_[audio_encs_.size() == 1 ? 0
                                              : (b == Branch::kMan ? 0 : 1)];
}
const TransformerEncoder& Model::LabelEncoderFor(Branch b) const {
  return *label_encs_[label_encs_.size() == 1 ? 0
                                              : (b == Branch::kMan ? 0 : 1)];
}
const Tensor& Model::LabelEmbFor(Branch b) const {
  return label_embs_[label_embs_.size() == 1 ? 0
                                             : (b == Branch::kMan ? 0 : 1)];
}

int64_t Model::SubsampledLength(int64_t frames) const {
  int64_t f = cfg_.subsample_factor;
  return (frames + f - 1) / f;
}

Tensor Model::ApplyFrontend(const Frontend& fe, const Tensor& x) const {
  Tensor h = x;
  if (cfg_.frame_stack) {
    int64_t f = cfg_.subsample_factor;
    int64_t t = h.Dim(0);
    int64_t pad = (f - t % f) % f;
    Tensor g = FrameGather(h, f, f, 0, pad);
    h = AddRowwise(MatMul(g, fe.stack_w), fe.stack_b);
  } else if (cfg_.subsample_factor >= 2) {
    Tensor g = FrameGather(h, 3, 2, 1, 1);
    h = Relu(AddRowwise(MatMul(g, fe.conv1_w), fe.conv1_b));
    if (cfg_.subsample_factor == 4) {
      Tensor g2 = FrameGather(h, 3, 2, 1, 1);
      h = Relu(AddRowwise(MatMul(g2, fe.conv2_w), fe.conv2_b));
    }
  }
  return AddRowwise(MatMul(h, fe.proj_w), fe.proj_b);
}

Tensor Model::AudioEncode(const FeatureSequence& feats, bool train,
                          RngCtx* ctx, Branch branch) const {
  LTT_CHECK(feats.num_frames >= cfg_.subsample_factor,
            "audio_encode: ", feats.num_frames,
            " frames is shorter than subsample factor ",
            cfg_.subsample_factor);
  LTT_CHECK(feats.dim == cfg_.feature_dim, "audio_encode: feature dim ",
            feats.dim, " != configured ", cfg_.feature_dim);
  Tensor x = ApplyFrontend(FrontendFor(branch), FeatureTensor(feats));
  Tensor pe = SinusoidalPositionalEncoding(x.Dim(0), cfg_.d_model);
  x = Add(x, pe);
  {
    Rng r = ctx->NextStream();
    x = Dropout(x, cfg_.pos_dropout, &r, train);
  }
  return AudioEncoderFor(branch).Forward(x, train, ctx);
}

Tensor Model::LabelEncodeIds(const std::vector<int>& ids, bool train,
                             RngCtx* ctx, Branch branch) const {
  for (int id : ids)
    LTT_CHECK(id >= 1 && id < cfg_.vocab_size,
              "label_encode: invalid token id ", id);
  std::vector<int> with_start;
  with_start.reserve(ids.size() + 1);
  with_start.push_back(Vocabulary::kBlankId);  // the phi start slot
  with_start.insert(with_start.end(), ids.begin(), ids.end());
  Tensor x = Scale(EmbeddingLookup(LabelEmbFor(branch), with_start),
                   std::sqrt(static_cast<double>(cfg_.d_model)));
  Tensor pe = SinusoidalPositionalEncoding(x.Dim(0), cfg_.d_model);
  x = Add(x, pe);
  {
    Rng r = ctx->NextStream();
    x = Dropout(x, cfg_.pos_dropout, &r, train);
  }
  return LabelEncoderFor(branch).Forward(x, train, ctx);
}

Tensor Model::LabelEncode(const TokenSequence& tokens, bool train_mode,
                          RngCtx* ctx, Branch branch) const {
  if (!train_mode || cfg_.mask_rate == 0.0)
    return LabelEncodeIds(tokens.ids, train_mode, ctx, branch);
  Rng mask_rng = ctx->NextStream();
  TokenSequence masked = MaskTokens(tokens, cfg_.mask_rate, &mask_rng);
  return LabelEncodeIds(masked.ids, train_mode, ctx, branch);
}

Tensor Model::JointLogits(const Tensor& ah, const Tensor& lh) const {
  LTT_CHECK(ah.Rank() == 2 && ah.Dim(1) == cfg_.d_model &&
                lh.Rank() == 2 && lh.Dim(1) == cfg_.d_model,
            "joint: encodings must be (*, d_model)");
  Tensor au = MatMul(ah, joint_wa_);
  Tensor lu = MatMul(lh, joint_wl_);
  Tensor pre = AddRowwise(PairwiseSum(au, lu), joint_b_);
  return MatMul(Tanh(pre), joint_wout_);
}

std::pair<Tensor, Tensor> Model::FuseEncoders(const Tensor& h_man,
                                              const Tensor& h_en,
                                              bool audio_site,
                                              ForceMode force) const {
  const auto& gate = audio_site ? gate_audio_ : gate_label_;
  LTT_CHECK(gate.has_value(), "fuse_encoders: model has no ",
            audio_site ? "audio" : "label", " gate (single-encoder mode)");
  LTT_CHECK(h_man.GetShape() == h_en.GetShape(),
            "fuse_encoders: branch shapes differ: ", ShapeStr(h_man.GetShape()),
            " vs ", ShapeStr(h_en.GetShape()));
  if (force == ForceMode::kManOnly)
    return {h_man, Tensor::Full({h_man.Dim(0), 1}, 1.0)};
  if (force == ForceMode::kEnOnly)
    return {h_en, Tensor::Full({h_en.Dim(0), 1}, 0.0)};
  Tensor g = Tanh(Add(MatMul(h_man, gate->w_man), MatMul(h_en, gate->w_en)));
  Tensor alpha = Sigmoid(MatMul(g, gate->w_alpha));
  Tensor am = ExpandCols(alpha, h_man.Dim(1));
  Tensor one_minus = Sub(Tensor::Full(am.GetShape(), 1.0), am);
  Tensor fused = Add(Mul(am, h_man), Mul(one_minus, h_en));
  return {fused, alpha};
}

Tensor Model::CtcHead(const Tensor& ah) const {
  return LogSoftmax(AddRowwise(MatMul(ah, ctc_w_), ctc_b_));
}

Tensor Model::LmLoss(const Tensor& lh,
                     const std::vector<int>& target_ids) const {
  const int64_t L = static_cast<int64_t>(target_ids.size());
  if (L == 0) return Tensor::Scalar(0.0);
  LTT_CHECK(lh.Dim(0) == L + 1, "lm_loss: lh has ", lh.Dim(0),
            " positions for ", L, " targets");
  Tensor pred_in = Slice(lh, 0, 0, L);  // position u predicts ids[u]
  Tensor logits = AddRowwise(MatMul(pred_in, lm_w_), lm_b_);
  Tensor lsm = LogSoftmax(logits);
  std::vector<int> cols;
  cols.reserve(L);
  for (int id : target_ids) {
    LTT_CHECK(id >= 1 && id < cfg_.vocab_size, "lm_loss: invalid target id ",
              id);
    cols.push_back(id - 1);  // lm head has no blank column
  }
  return Neg(MeanAll(GatherCols(lsm, cols)));
}

ObjectiveResult Model::Objective(const std::vector<BatchItem>& batch,
                                 ForceMode force, bool train,
                                 uint64_t rng_key) const {
  LTT_CHECK(!batch.empty(), "objective: empty batch");
  const double inv_b = 1.0 / static_cast<double>(batch.size());
  ObjectiveResult res;
  Tensor ft_sum, fctc_sum, flm_sum;
  int64_t ctc_count = 0;

  auto accumulate = [](Tensor* acc, const Tensor& term) {
    *acc = acc->Defined() ? Add(*acc, term) : term;
  };

  for (size_t i = 0; i < batch.size(); ++i) {
    const BatchItem& item = batch[i];
    RngCtx ctx{Rng::Mix(rng_key, static_cast<uint64_t>(i))};

    // One corruption of the label-encoder input per utterance; when there
    // are two label branches both see the same masked sequence. Supervision
    // everywhere uses the original ids.
    std::vector<int> enc_ids = item.targets.ids;
    if (train && cfg_.mask_rate > 0.0) {
      Rng mask_rng(Rng::Mix(ctx.key, kMaskStreamSalt));
      enc_ids = MaskTokens(item.targets, cfg_.mask_rate, &mask_rng).ids;
    }

    Tensor ah, lh;
    if (cfg_.HasAudioBranches()) {
      Tensor man, en;
      if (force != ForceMode::kEnOnly)
        man = AudioEncode(item.feats, train, &ctx, Branch::kMan);
      if (force != ForceMode::kManOnly)
        en = AudioEncode(item.feats, train, &ctx, Branch::kEn);
      if (force == ForceMode::kManOnly) {
        ah = man;
        res.gate_audio.Observe(Tensor::Full({man.Dim(0), 1}, 1.0));
      } else if (force == ForceMode::kEnOnly) {
        ah = en;
        res.gate_audio.Observe(Tensor::Full({en.Dim(0), 1}, 0.0));
      } else {
        auto [fused, alpha] = FuseEncoders(man, en, /*audio_site=*/true,
                                           force);
        ah = fused;
        res.gate_audio.Observe(alpha);
      }
    } else {
      ah = AudioEncode(item.feats, train, &ctx, Branch::kMan);
    }
    if (cfg_.HasLabelBranches()) {
      Tensor man, en;
      if (force != ForceMode::kEnOnly)
        man = LabelEncodeIds(enc_ids, train, &ctx, Branch::kMan);
      if (force != ForceMode::kManOnly)
        en = LabelEncodeIds(enc_ids, train, &ctx, Branch::kEn);
      if (force == ForceMode::kManOnly) {
        lh = man;
        res.gate_label.Observe(Tensor::Full({man.Dim(0), 1}, 1.0));
      } else if (force == ForceMode::kEnOnly) {
        lh = en;
        res.gate_label.Observe(Tensor::Full({en.Dim(0), 1}, 0.0));
      } else {
        auto [fused, alpha] = FuseEncoders(man, en, /*audio_site=*/false,
                                           force);
        lh = fused;
        res.gate_label.Observe(alpha);
      }
    } else {
      lh = LabelEncodeIds(enc_ids, train, &ctx, Branch::kMan);
    }

    Tensor logits = JointLogits(ah, lh);
    accumulate(&ft_sum,
               TransducerLoss(logits, ah.Dim(0), item.targets.ids,
                              Vocabulary::kBlankId));

    if (cfg_.lambda_ctc > 0.0) {
      if (ah.Dim(0) >= CtcMinFrames(item.targets.ids)) {
        accumulate(&fctc_sum, CtcLoss(CtcHead(ah), item.targets.ids,
                                      Vocabulary::kBlankId));
        ++ctc_count;
      } else {
        ++res.ctc_skipped;
      }
    }
    if (cfg_.lambda_lm > 0.0)
      accumulate(&flm_sum, LmLoss(lh, item.targets.ids));
  }

  Tensor total = Scale(ft_sum, inv_b);
  res.f_transducer = total.Item();
  if (fctc_sum.Defined()) {
    Tensor mean_ctc = Scale(fctc_sum, 1.0 / static_cast<double>(ctc_count));
    res.f_ctc = mean_ctc.Item();
    total = Add(total, Scale(mean_ctc, cfg_.lambda_ctc));
  }
  if (flm_sum.Defined()) {
    Tensor mean_lm = Scale(flm_sum, inv_b);
    res.f_lm = mean_lm.Item();
    total = Add(total, Scale(mean_lm, cfg_.lambda_lm));
  }
  res.total = total;
  return res;
}

Tensor Model::DecodeAudio(const FeatureSequence& feats) const {
  RngCtx ctx{0};
  if (!cfg_.HasAudioBranches())
    return AudioEncode(feats, /*train=*/false, &ctx, Branch::kMan);
  Tensor man = AudioEncode(feats, false, &ctx, Branch::kMan);
  Tensor en = AudioEncode(feats, false, &ctx, Branch::kEn);
  return FuseEncoders(man, en, /*audio_site=*/true, ForceMode::kCs).first;
}

Tensor Model::DecodeLabelPrefix(const std::vector<int>& prefix_ids) const {
  RngCtx ctx{0};
  if (!cfg_.HasLabelBranches())
    return LabelEncodeIds(prefix_ids, /*train=*/false, &ctx, Branch::kMan);
  Tensor man = LabelEncodeIds(prefix_ids, false, &ctx, Branch::kMan);
  Tensor en = LabelEncodeIds(prefix_ids, false, &ctx, Branch::kEn);
  return FuseEncoders(man, en, /*audio_site=*/false, ForceMode::kCs).first;
}

int64_t Model::ParameterCount(const ModelConfig& cfg) {
  cfg.Validate();
  const int64_t d = cfg.d_model;
  const int64_t df = cfg.feature_dim;
  const int64_t v = cfg.vocab_size;
  int64_t frontend = 0;
  if (cfg.frame_stack) {
    frontend += cfg.subsample_factor * df * d + d;  // stack
    frontend += d * d + d;                          // proj
  } else if (cfg.subsample_factor >= 2) {
    frontend += 3 * df * d + d;                         // conv1
    if (cfg.subsample_factor == 4) frontend += 3 * d * d + d;  // conv2
    frontend += d * d + d;                              // proj
  } else {
    frontend += df * d + d;  // proj only
  }
  int64_t audio_stack =
      TransformerEncoder::CountParams(cfg.audio_layers, d, cfg.ff_dim);
  int64_t label_stack =
      TransformerEncoder::CountParams(cfg.label_layers, d, cfg.ff_dim);
  int64_t audio_branches = cfg.HasAudioBranches() ? 2 : 1;
  int64_t label_branches = cfg.HasLabelBranches() ? 2 : 1;
  int64_t total = audio_branches * (frontend + audio_stack) +
                  label_branches * (v * d + label_stack);
  int64_t gate = 2 * d * d + d;
  if (cfg.HasAudioBranches()) total += gate;
  if (cfg.HasLabelBranches()) total += gate;
  total += 2 * d * d + d + d * v;  // joint
  total += d * v + v;              // ctc head
  total += d * (v - 1) + (v - 1);  // lm head
  return total;
}

}  // namespace ltt
