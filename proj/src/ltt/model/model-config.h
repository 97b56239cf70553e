// ltt/model/model-config.h

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

#ifndef LTT_MODEL_MODEL_CONFIG_H_
#define LTT_MODEL_MODEL_CONFIG_H_

#include <cstdint>
#include <string>

namespace ltt {

enum class MultiEncoderMode { kSingle, kMultiLabel, kMultiAudio, kBoth };

const char* MultiEncoderModeName(MultiEncoderMode mode);
MultiEncoderMode MultiEncoderModeFromName(const std::string& name);

struct ModelConfig {
  int64_t d_model = 64;
  int64_t n_heads = 4;
  int64_t ff_dim = 128;
  int64_t audio_layers = 2;
  int64_t label_layers = 1;
  double dropout = 0.1;             // general (sublayer outputs, audio attn)
  double label_attn_dropout = 0.1;  // label-encoder attention weights
  double pos_dropout = 0.1;         // after positional encoding
  int64_t subsample_factor = 2;     // one of 1, 2, 4
  bool frame_stack = false;         // stacking fallback instead of convs
  int64_t feature_dim = 8;
  int64_t vocab_size = 0;           // includes blank; filled from the vocab
  double lambda_ctc = 0.5;
  double lambda_lm = 0.4;
  double mask_rate = 0.4;
  MultiEncoderMode multi_encoder = MultiEncoderMode::kSingle;
  int64_t max_symbols_per_frame = 5;

  bool HasAudioBranches() const {
    return multi_encoder == MultiEncoderMode::kMultiAudio ||
           multi_encoder == MultiEncoderMode::kBoth;
  }
  bool HasLabelBranches() const {
    return multi_encoder == MultiEncoderMode::kMultiLabel ||
           multi_encoder == MultiEncoderMode::kBoth;
  }

  void Validate() const;

  // Laptop-sized configuration; trains the synthetic task in minutes while
  // exercising every code path.
  static ModelConfig TinyPreset();
  // Published-scale configuration (12+4 blocks, 512 dims, 8 heads); kept as
  // a named preset for parameter-count regression and documentation.
  static ModelConfig FullPreset();
};

struct TrainConfig {
  int64_t batch_size = 8;
  int64_t warmup_steps = 200;
  double lr_factor = 1.0;
  int64_t patience = 5;
  int64_t max_updates = 3000;
  int64_t eval_interval = 100;
  int64_t cs_only_final_updates = 500;
  double mix_cs = 0.5;
  double mix_mono_a = 0.25;
  double mix_mono_b = 0.25;
  double beta1 = 0.9;
  double beta2 = 0.98;
  double eps = 1e-9;
  int64_t freq_masks = 2;
  int64_t max_freq_width = 2;
  int64_t time_masks = 2;
  double max_time_frac = 0.1;  // time-mask width cap as a fraction of T
  int64_t beam_width = 4;

  void Validate() const;

  static TrainConfig TinyPreset();
  static TrainConfig FullPreset();  // batch 192, 25K warmup, factor 2, beam 20
};

struct DataConfig {
  int64_t vocab_a = 10;
  int64_t vocab_b = 10;
  int64_t feature_dim = 8;
  int64_t frames_per_token_min = 3;
  int64_t frames_per_token_max = 6;
  double noise_sigma = 0.1;
  double p_switch = 0.3;
  int64_t utt_len_min = 3;
  int64_t utt_len_max = 8;
  int64_t cs_train = 500;
  int64_t cs_dev = 50;
  int64_t mono_train = 250;
  int64_t num_merges = 50;

  void Validate() const;
};

// The single JSON config document: {"seed": ..., "model": {...},
// "train": {...}, "data": {...}}. Every section is optional and defaults to
// the tiny preset; unknown keys anywhere are rejected.
struct RunConfig {
  uint64_t seed = 1234;
  ModelConfig model = ModelConfig::TinyPreset();
  TrainConfig train = TrainConfig::TinyPreset();
  DataConfig data;

  void Validate() const;

  static RunConfig FromJsonFile(const std::string& path);
  static RunConfig FromJsonText(const std::string& text);
  std::string ToJsonText() const;
};

}  // namespace ltt

#endif  // LTT_MODEL_MODEL_CONFIG_H_
