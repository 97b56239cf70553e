// ltt/data/synth-corpus.cc

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

#include "ltt/data/synth-corpus.h"

#include <filesystem>
#include <iomanip>
#include <sstream>

#include "ltt/core/common.h"

namespace ltt {

namespace {

constexpr uint64_t kRoleSalt = 0x5EEDC0DEULL;
constexpr uint64_t kProtoSalt = 0x9407057ULL;

const char* kSyllables[10] = {"ba", "de", "ki", "lo", "mu",
                              "na", "po", "ri", "su", "te"};

}  // namespace

const char* CorpusRoleName(CorpusRole role) {
  switch (role) {
    case CorpusRole::kCs: return "cs";
    case CorpusRole::kMonoA: return "mono_a";
    case CorpusRole::kMonoB: return "mono_b";
  }
  return "?";
}

void SynthSpec::Validate() const {
  LTT_CHECK_DATA(vocab_a >= 1 && vocab_b >= 1, "synth: empty vocabulary");
  LTT_CHECK_DATA(vocab_a <= 20000, "synth: vocab_a too large for the Han range");
  LTT_CHECK_DATA(vocab_b <= 100, "synth: vocab_b too large");
  LTT_CHECK_DATA(feature_dim >= 1, "synth: feature_dim must be positive");
  LTT_CHECK_DATA(frames_per_token_min >= 1 &&
                     frames_per_token_min <= frames_per_token_max,
                 "synth: bad frames-per-token range");
  LTT_CHECK_DATA(p_switch >= 0.0 && p_switch <= 1.0,
                 "synth: p_switch must be in [0,1]");
  LTT_CHECK_DATA(utt_len_min >= 1 && utt_len_min <= utt_len_max,
                 "synth: bad utterance length range");
  LTT_CHECK_DATA(num_utterances >= 0, "synth: negative utterance count");
  LTT_CHECK_DATA(first_index >= 0, "synth: negative first_index");
}

std::string SurfaceFormA(int64_t index) {
  // One Han character per word, starting at U+4E00.
  char32_t cp = 0x4E00 + static_cast<char32_t>(index);
  std::string s;
  s += static_cast<char>(0xE0 | (cp >> 12));
  s += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
  s += static_cast<char>(0x80 | (cp & 0x3F));
  return s;
}

std::string SurfaceFormB(int64_t index) {
  return std::string(kSyllables[(index / 10) % 10]) + kSyllables[index % 10];
}

std::vector<float> TokenPrototype(uint64_t seed, int lang, int64_t index,
                                  int64_t dim) {
  Rng rng(Rng::Mix(Rng::Mix(seed, kProtoSalt + static_cast<uint64_t>(lang)),
                   static_cast<uint64_t>(index)));
  std::vector<float> proto(dim);
  for (auto& v : proto) v = static_cast<float>(rng.Normal());
  return proto;
}

Manifest GenerateCorpus(const SynthSpec& spec, const std::string& out_dir) {
  spec.Validate();
  std::filesystem::create_directories(out_dir);
  uint64_t corpus_key =
      Rng::Mix(spec.seed, kRoleSalt + static_cast<uint64_t>(spec.role));

  Manifest manifest;
  for (int64_t row = 0; row < spec.num_utterances; ++row) {
    int64_t i = spec.first_index + row;
    Rng rng(Rng::Mix(corpus_key, static_cast<uint64_t>(i)));
    int64_t n = spec.utt_len_min +
                rng.UniformInt(spec.utt_len_max - spec.utt_len_min + 1);

    int lang;
    switch (spec.role) {
      case CorpusRole::kMonoA: lang = 0; break;
      case CorpusRole::kMonoB: lang = 1; break;
      default: lang = static_cast<int>(rng.UniformInt(2));
    }

    std::string transcript;
    std::vector<float> frames;
    int64_t num_frames = 0;
    std::ostringstream runs;
    int64_t run_len = 0;
    auto flush_run = [&](int run_lang) {
      if (run_len == 0) return;
      if (runs.tellp() > 0) runs << " ";
      runs << (run_lang == 0 ? "man" : "en") << ":" << run_len;
      run_len = 0;
    };

    int64_t prev_idx = -1;
    for (int64_t k = 0; k < n; ++k) {
      if (k > 0 && spec.role == CorpusRole::kCs &&
          rng.Uniform() < spec.p_switch) {
        flush_run(lang);
        lang = 1 - lang;
        prev_idx = -1;
      }
      ++run_len;
      int64_t vocab = lang == 0 ? spec.vocab_a : spec.vocab_b;
      // No immediate repetition within a run: two identical adjacent tokens
      // are acoustically a single longer token, which makes the transcript
      // unrecoverable. Tokens before and after a language switch may still
      // coincide.
      int64_t idx;
      if (prev_idx < 0 || vocab == 1) {
        idx = rng.UniformInt(vocab);
      } else {
        idx = rng.UniformInt(vocab - 1);
        if (idx >= prev_idx) ++idx;
      }
      prev_idx = idx;
      if (!transcript.empty()) transcript += " ";
      transcript += lang == 0 ? SurfaceFormA(idx) : SurfaceFormB(idx);

      auto proto = TokenPrototype(spec.seed, lang, idx, spec.feature_dim);
      int64_t reps = spec.frames_per_token_min +
                     rng.UniformInt(spec.frames_per_token_max -
                                    spec.frames_per_token_min + 1);
      for (int64_t r = 0; r < reps; ++r) {
        for (int64_t c = 0; c < spec.feature_dim; ++c)
          frames.push_back(static_cast<float>(
              proto[c] + spec.noise_sigma * rng.Normal()));
        ++num_frames;
      }
    }
    flush_run(lang);

    std::ostringstream id;
    id << CorpusRoleName(spec.role) << "_" << std::setw(6)
       << std::setfill('0') << i;
    std::string feature_path = id.str() + ".ltft";

    FeatureSequence feats;
    feats.num_frames = num_frames;
    feats.dim = spec.feature_dim;
    feats.data = std::move(frames);
    WriteFeatureFile(out_dir + "/" + feature_path, feats);

    manifest.rows.push_back({id.str(), feature_path, transcript, runs.str()});
  }
  return manifest;
}

}  // namespace ltt
