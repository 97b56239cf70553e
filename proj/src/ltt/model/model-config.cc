// ltt/model/model-config.cc

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

#include "ltt/model/model-config.h"

#include <fstream>
#include <set>

#include "json.hpp"
#include "ltt/core/common.h"

namespace ltt {

using nlohmann::json;

const char* MultiEncoderModeName(MultiEncoderMode mode) {
  switch (mode) {
    case MultiEncoderMode::kSingle: return "single";
    case MultiEncoderMode::kMultiLabel: return "multi_label";
    case MultiEncoderMode::kMultiAudio: return "multi_audio";
    case MultiEncoderMode::kBoth: return "both";
  }
  return "?";
}

MultiEncoderMode MultiEncoderModeFromName(const std::string& name) {
  if (name == "single") return MultiEncoderMode::kSingle;
  if (name == "multi_label") return MultiEncoderMode::kMultiLabel;
  if (name == "multi_audio") return MultiEncoderMode::kMultiAudio;
  if (name == "both") return MultiEncoderMode::kBoth;
  throw DataError(Str("config: unknown multi_encoder mode '", name, "'"));
}

void ModelConfig::Validate() const {
  LTT_CHECK_DATA(d_model >= 1 && n_heads >= 1 && d_model % n_heads == 0,
                 "config: d_model (", d_model, ") must divide by n_heads (",
                 n_heads, ")");
  LTT_CHECK_DATA(ff_dim >= 1 && audio_layers >= 1 && label_layers >= 1,
                 "config: layer dims must be positive");
  LTT_CHECK_DATA(subsample_factor == 1 || subsample_factor == 2 ||
                     subsample_factor == 4,
                 "config: subsample_factor must be 1, 2 or 4, got ",
                 subsample_factor);
  LTT_CHECK_DATA(lambda_ctc >= 0.0 && lambda_lm >= 0.0,
                 "config: lambda weights must be >= 0");
  LTT_CHECK_DATA(mask_rate >= 0.0 && mask_rate <= 1.0,
                 "config: mask_rate must be in [0,1]");
  LTT_CHECK_DATA(feature_dim >= 1, "config: feature_dim must be positive");
  LTT_CHECK_DATA(max_symbols_per_frame >= 1,
                 "config: max_symbols_per_frame must be positive");
  for (double p : {dropout, label_attn_dropout, pos_dropout})
    LTT_CHECK_DATA(p >= 0.0 && p < 1.0, "config: dropout rates must be in [0,1)");
}

ModelConfig ModelConfig::TinyPreset() { return ModelConfig{}; }

ModelConfig ModelConfig::FullPreset() {
  ModelConfig c;
  c.d_model = 512;
  c.n_heads = 8;
  c.ff_dim = 1024;
  c.audio_layers = 12;
  c.label_layers = 4;
  c.dropout = 0.1;
  c.label_attn_dropout = 0.5;
  c.pos_dropout = 0.1;
  c.subsample_factor = 4;
  c.feature_dim = 83;
  c.vocab_size = 4000;
  return c;
}

void TrainConfig::Validate() const {
  LTT_CHECK_DATA(batch_size >= 1 && warmup_steps >= 1 && max_updates >= 1 &&
                     eval_interval >= 1 && patience >= 1,
                 "config: train counters must be positive");
  LTT_CHECK_DATA(lr_factor > 0.0, "config: lr_factor must be positive");
  LTT_CHECK_DATA(cs_only_final_updates >= 0,
                 "config: cs_only_final_updates must be >= 0");
  LTT_CHECK_DATA(mix_cs >= 0.0 && mix_mono_a >= 0.0 && mix_mono_b >= 0.0 &&
                     mix_cs + mix_mono_a + mix_mono_b > 0.0,
                 "config: corpus mix weights must be non-negative and not all zero");
  LTT_CHECK_DATA(freq_masks >= 0 && time_masks >= 0 && max_freq_width >= 0,
                 "config: spec-augment counts must be >= 0");
  LTT_CHECK_DATA(max_time_frac >= 0.0 && max_time_frac <= 1.0,
                 "config: max_time_frac must be in [0,1]");
  LTT_CHECK_DATA(beam_width >= 1, "config: beam_width must be >= 1");
}

TrainConfig TrainConfig::TinyPreset() { return TrainConfig{}; }

TrainConfig TrainConfig::FullPreset() {
  TrainConfig c;
  c.batch_size = 192;
  c.warmup_steps = 25000;
  c.lr_factor = 2.0;
  c.max_updates = 200000;
  c.eval_interval = 2000;
  c.beam_width = 20;
  return c;
}

void DataConfig::Validate() const {
  LTT_CHECK_DATA(vocab_a >= 1 && vocab_b >= 1, "config: data vocab sizes must be positive");
  LTT_CHECK_DATA(feature_dim >= 1, "config: data feature_dim must be positive");
  LTT_CHECK_DATA(frames_per_token_min >= 1 &&
                     frames_per_token_min <= frames_per_token_max,
                 "config: bad frames-per-token range");
  LTT_CHECK_DATA(p_switch >= 0.0 && p_switch <= 1.0,
                 "config: p_switch must be in [0,1]");
  LTT_CHECK_DATA(noise_sigma >= 0.0, "config: noise_sigma must be >= 0");
  LTT_CHECK_DATA(utt_len_min >= 1 && utt_len_min <= utt_len_max,
                 "config: bad utterance length range");
  LTT_CHECK_DATA(cs_train >= 1 && cs_dev >= 1 && mono_train >= 0,
                 "config: corpus sizes must be positive");
  LTT_CHECK_DATA(num_merges >= 0, "config: num_merges must be >= 0");
}

void RunConfig::Validate() const {
  model.Validate();
  train.Validate();
  data.Validate();
}

namespace {

void CheckKeys(const json& j, const std::set<std::string>& known,
               const char* section) {
  for (auto it = j.begin(); it != j.end(); ++it)
    LTT_CHECK_DATA(known.count(it.key()), "config: unknown key '", it.key(),
                   "' in ", section);
}

template <typename T>
void Maybe(const json& j, const char* key, T* out) {
  if (j.contains(key)) *out = j.at(key).get<T>();
}

}  // namespace

RunConfig RunConfig::FromJsonText(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(Str("config: JSON parse failure: ", e.what()));
  }
  CheckKeys(j, {"seed", "model", "train", "data"}, "top level");
  RunConfig cfg;
  Maybe(j, "seed", &cfg.seed);
  if (j.contains("model")) {
    const json& m = j.at("model");
    CheckKeys(m,
              {"d_model", "n_heads", "ff_dim", "audio_layers", "label_layers",
               "dropout", "label_attn_dropout", "pos_dropout",
               "subsample_factor", "frame_stack", "feature_dim", "vocab_size",
               "lambda_ctc", "lambda_lm", "mask_rate", "multi_encoder",
               "max_symbols_per_frame"},
              "model");
    auto& c = cfg.model;
    Maybe(m, "d_model", &c.d_model);
    Maybe(m, "n_heads", &c.n_heads);
    Maybe(m, "ff_dim", &c.ff_dim);
    Maybe(m, "audio_layers", &c.audio_layers);
    Maybe(m, "label_layers", &c.label_layers);
    Maybe(m, "dropout", &c.dropout);
    Maybe(m, "label_attn_dropout", &c.label_attn_dropout);
    Maybe(m, "pos_dropout", &c.pos_dropout);
    Maybe(m, "subsample_factor", &c.subsample_factor);
    Maybe(m, "frame_stack", &c.frame_stack);
    Maybe(m, "feature_dim", &c.feature_dim);
    Maybe(m, "vocab_size", &c.vocab_size);
    Maybe(m, "lambda_ctc", &c.lambda_ctc);
    Maybe(m, "lambda_lm", &c.lambda_lm);
    Maybe(m, "mask_rate", &c.mask_rate);
    Maybe(m, "max_symbols_per_frame", &c.max_symbols_per_frame);
    if (m.contains("multi_encoder"))
      c.multi_encoder =
          MultiEncoderModeFromName(m.at("multi_encoder").get<std::string>());
  }
  if (j.contains("train")) {
    const json& t = j.at("train");
    CheckKeys(t,
              {"batch_size", "warmup_steps", "lr_factor", "patience",
               "max_updates", "eval_interval", "cs_only_final_updates",
               "mix_cs", "mix_mono_a", "mix_mono_b", "beta1", "beta2", "eps",
               "freq_masks", "max_freq_width", "time_masks", "max_time_frac",
               "beam_width"},
              "train");
    auto& c = cfg.train;
    Maybe(t, "batch_size", &c.batch_size);
    Maybe(t, "warmup_steps", &c.warmup_steps);
    Maybe(t, "lr_factor", &c.lr_factor);
    Maybe(t, "patience", &c.patience);
    Maybe(t, "max_updates", &c.max_updates);
    Maybe(t, "eval_interval", &c.eval_interval);
    Maybe(t, "cs_only_final_updates", &c.cs_only_final_updates);
    Maybe(t, "mix_cs", &c.mix_cs);
    Maybe(t, "mix_mono_a", &c.mix_mono_a);
    Maybe(t, "mix_mono_b", &c.mix_mono_b);
    Maybe(t, "beta1", &c.beta1);
    Maybe(t, "beta2", &c.beta2);
    Maybe(t, "eps", &c.eps);
    Maybe(t, "freq_masks", &c.freq_masks);
    Maybe(t, "max_freq_width", &c.max_freq_width);
    Maybe(t, "time_masks", &c.time_masks);
    Maybe(t, "max_time_frac", &c.max_time_frac);
    Maybe(t, "beam_width", &c.beam_width);
  }
  if (j.contains("data")) {
    const json& d = j.at("data");
    CheckKeys(d,
              {"vocab_a", "vocab_b", "feature_dim", "frames_per_token_min",
               "frames_per_token_max", "noise_sigma", "p_switch",
               "utt_len_min", "utt_len_max", "cs_train", "cs_dev",
               "mono_train", "num_merges"},
              "data");
    auto& c = cfg.data;
    Maybe(d, "vocab_a", &c.vocab_a);
    Maybe(d, "vocab_b", &c.vocab_b);
    Maybe(d, "feature_dim", &c.feature_dim);
    Maybe(d, "frames_per_token_min", &c.frames_per_token_min);
    Maybe(d, "frames_per_token_max", &c.frames_per_token_max);
    Maybe(d, "noise_sigma", &c.noise_sigma);
    Maybe(d, "p_switch", &c.p_switch);
    Maybe(d, "utt_len_min", &c.utt_len_min);
    Maybe(d, "utt_len_max", &c.utt_len_max);
    Maybe(d, "cs_train", &c.cs_train);
    Maybe(d, "cs_dev", &c.cs_dev);
    Maybe(d, "mono_train", &c.mono_train);
    Maybe(d, "num_merges", &c.num_merges);
  }
  cfg.Validate();
  return cfg;
}

RunConfig RunConfig::FromJsonFile(const std::string& path) {
  std::ifstream is(path);
  LTT_CHECK_DATA(is.good(), "config: cannot open '", path, "'");
  std::string text((std::istreambuf_iterator<char>(is)),
                   std::istreambuf_iterator<char>());
  return FromJsonText(text);
}

std::string RunConfig::ToJsonText() const {
  json j;
  j["seed"] = seed;
  json m;
  m["d_model"] = model.d_model;
  m["n_heads"] = model.n_heads;
  m["ff_dim"] = model.ff_dim;
  m["audio_layers"] = model.audio_layers;
  m["label_layers"] = model.label_layers;
  m["dropout"] = model.dropout;
  m["label_attn_dropout"] = model.label_attn_dropout;
  m["pos_dropout"] = model.pos_dropout;
  m["subsample_factor"] = model.subsample_factor;
  m["frame_stack"] = model.frame_stack;
  m["feature_dim"] = model.feature_dim;
  m["vocab_size"] = model.vocab_size;
  m["lambda_ctc"] = model.lambda_ctc;
  m["lambda_lm"] = model.lambda_lm;
  m["mask_rate"] = model.mask_rate;
  m["multi_encoder"] = MultiEncoderModeName(model.multi_encoder);
  m["max_symbols_per_frame"] = model.max_symbols_per_frame;
  j["model"] = m;
  json t;
  t["batch_size"] = train.batch_size;
  t["warmup_steps"] = train.warmup_steps;
  t["lr_factor"] = train.lr_factor;
  t["patience"] = train.patience;
  t["max_updates"] = train.max_updates;
  t["eval_interval"] = train.eval_interval;
  t["cs_only_final_updates"] = train.cs_only_final_updates;
  t["mix_cs"] = train.mix_cs;
  t["mix_mono_a"] = train.mix_mono_a;
  t["mix_mono_b"] = train.mix_mono_b;
  t["beta1"] = train.beta1;
  t["beta2"] = train.beta2;
  t["eps"] = train.eps;
  t["freq_masks"] = train.freq_masks;
  t["max_freq_width"] = train.max_freq_width;
  t["time_masks"] = train.time_masks;
  t["max_time_frac"] = train.max_time_frac;
  t["beam_width"] = train.beam_width;
  j["train"] = t;
  json d;
  d["vocab_a"] = data.vocab_a;
  d["vocab_b"] = data.vocab_b;
  d["feature_dim"] = data.feature_dim;
  d["frames_per_token_min"] = data.frames_per_token_min;
  d["frames_per_token_max"] = data.frames_per_token_max;
  d["noise_sigma"] = data.noise_sigma;
  d["p_switch"] = data.p_switch;
  d["utt_len_min"] = data.utt_len_min;
  d["utt_len_max"] = data.utt_len_max;
  d["cs_train"] = data.cs_train;
  d["cs_dev"] = data.cs_dev;
  d["mono_train"] = data.mono_train;
  d["num_merges"] = data.num_merges;
  j["data"] = d;
  return j.dump(2) + "\n";
}

}  // namespace ltt
