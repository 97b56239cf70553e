// ltt/train/data-set.h

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

#ifndef LTT_TRAIN_DATA_SET_H_
#define LTT_TRAIN_DATA_SET_H_

#include <string>
#include <vector>

#include "ltt/model/model.h"
#include "ltt/text/bpe.h"
#include "ltt/text/vocab.h"

namespace ltt {

// Prepared data directory layout:
//   config.json  vocab.txt  bpe.txt
//   cs_train/manifest.tsv + *.ltft   cs_dev/...   mono_a/...   mono_b/...
// Mono corpora exist when data.mono_train > 0. BPE merges are learned on
// the training transcripts; the vocabulary holds the reserved symbols plus
// every piece observed in training text.
void PrepareData(const RunConfig& cfg, const std::string& out_dir,
                 bool force);

// Tagged BPE token sequence for a raw transcript: pieces, vocabulary ids,
// per-piece language marks, LID tags inserted at run boundaries.
TokenSequence TokenizeTranscript(const Vocabulary& vocab, const BpeModel& bpe,
                                 const std::string& transcript);

struct DataSet {
  RunConfig prepared_cfg;
  Vocabulary vocab;
  BpeModel bpe;
  std::vector<BatchItem> cs_train;
  std::vector<BatchItem> cs_dev;
  std::vector<BatchItem> mono_a;
  std::vector<BatchItem> mono_b;
};

DataSet LoadDataDir(const std::string& data_dir);

// Loads one split (manifest + features) with targets attached.
std::vector<BatchItem> LoadSplit(const std::string& split_dir,
                                 const Vocabulary& vocab, const BpeModel& bpe);

}  // namespace ltt

#endif  // LTT_TRAIN_DATA_SET_H_
