// ltt/decode/decoder.h

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

#ifndef LTT_DECODE_DECODER_H_
#define LTT_DECODE_DECODER_H_

#include <string>
#include <vector>

#include "ltt/model/model.h"
#include "ltt/text/vocab.h"

namespace ltt {

struct Hypothesis {
  std::vector<int> prefix;  // emitted token ids, no blanks
  double log_score = 0.0;   // mass of every explored alignment of the prefix
  Tensor label_state;       // cached label-encoder output for the prefix
};

// Greedy and best-first beam search over the transducer
// lattice. Within a frame, blank extensions compete with symbol extensions
// in one pruned pool; duplicate prefixes merge by log-sum-exp. A hypothesis
// may emit at most max_symbols_per_frame tokens per frame.
class Decoder {
 public:
  Decoder(const Model* model, const Vocabulary* vocab)
      : model_(model), vocab_(vocab) {}

  TokenSequence GreedyDecode(const FeatureSequence& feats) const;

  // Ranked by log_score descending; ties break lexicographically on the
  // prefix. beam_width >= 1.
  std::vector<Hypothesis> BeamSearch(const FeatureSequence& feats,
                                     int64_t beam_width) const;

  // Exact marginal of the prefix over all decodable alignments: emissions
  // anchored to frames, at most max_symbols per frame, final blank exits.
  // Rescoring surface for the beam's score-validity contract.
  double ScorePrefix(const FeatureSequence& feats,
                     const std::vector<int>& prefix) const;

 private:
  TokenSequence WithLangs(const std::vector<int>& ids) const;

  const Model* model_;
  const Vocabulary* vocab_;
};

// Removes <en>, <man> and <mask>; <unk> is dropped unless keep_unk.
TokenSequence StripSpecial(const TokenSequence& hyp, bool keep_unk = false);

// StripSpecial + BPE detokenization into plain text. keep_tags leaves the
// <en>/<man> tokens in place as standalone words (scoring-experiment flag;
// the default strips them before scoring).
std::string HypothesisText(const Vocabulary& vocab,
                           const std::vector<int>& ids, bool keep_unk = false,
                           bool keep_tags = false);

}  // namespace ltt

#endif  // LTT_DECODE_DECODER_H_
