// ltt/data/synth-corpus.h

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

#ifndef LTT_DATA_SYNTH_CORPUS_H_
#define LTT_DATA_SYNTH_CORPUS_H_

#include <string>
#include <vector>

#include "ltt/core/rng.h"
#include "ltt/data/feature-io.h"
#include "ltt/data/manifest.h"

namespace ltt {

// Two synthetic "languages" with disjoint surface forms: language A uses
// Han characters (one character per word), language B uses latin
// pseudo-words. Script classification on the transcripts is therefore
// unambiguous, and every token owns a fixed seeded prototype vector that
// the feature frames are noisy copies of.
enum class CorpusRole { kCs, kMonoA, kMonoB };

const char* CorpusRoleName(CorpusRole role);

struct SynthSpec {
  int64_t vocab_a = 10;
  int64_t vocab_b = 10;
  int64_t feature_dim = 8;
  int64_t frames_per_token_min = 3;
  int64_t frames_per_token_max = 6;
  double noise_sigma = 0.1;
  double p_switch = 0.3;           // geometric language switching
  int64_t utt_len_min = 3;
  int64_t utt_len_max = 8;
  int64_t num_utterances = 100;
  // Index of the first utterance in the role's stream: lets disjoint splits
  // (train vs dev) share one seed, and with it the token prototypes.
  int64_t first_index = 0;
  uint64_t seed = 0;
  CorpusRole role = CorpusRole::kCs;

  void Validate() const;
};

std::string SurfaceFormA(int64_t index);  // Han character
std::string SurfaceFormB(int64_t index);  // latin pseudo-word

// Fixed prototype for (language, token); depends on the master seed only,
// so every corpus role generated from one seed shares prototypes.
std::vector<float> TokenPrototype(uint64_t seed, int lang, int64_t index,
                                  int64_t dim);

// Writes one .ltft file per utterance into out_dir and returns the manifest
// (not yet saved). Utterance i draws all its randomness from a stream keyed
// by (seed, role, i), so generation order or parallelism cannot change the
// output.
Manifest GenerateCorpus(const SynthSpec& spec, const std::string& out_dir);

}  // namespace ltt

#endif  // LTT_DATA_SYNTH_CORPUS_H_
