// ltt/train/trainer.h

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

#ifndef LTT_TRAIN_TRAINER_H_
#define LTT_TRAIN_TRAINER_H_

#include <fstream>
#include <memory>
#include <string>

#include "ltt/core/optim.h"
#include "ltt/train/data-set.h"

namespace ltt {

struct TrainerOptions {
  RunConfig cfg;
  std::string data_dir;
  std::string out_dir;
  bool resume = false;   // continue from out_dir/state.ltck
  bool quiet = false;    // suppress stdout logging (the log file always
                         // receives the records)
};

struct TrainResult {
  int64_t steps = 0;
  double best_val = 0.0;
  bool early_stopped = false;
  double first_f_transducer = 0.0;  // F_T of the very first forward pass
  int64_t batches_cs = 0;
  int64_t batches_mono_a = 0;
  int64_t batches_mono_b = 0;
  int64_t ctc_skipped = 0;
  // Forced-gate contract violations (mono batch with alpha != 0/1 or CS
  // batch with alpha on the boundary); stays 0 on a correct build.
  int64_t gate_violations = 0;
  std::string best_checkpoint;
  std::string final_checkpoint;
};

// Orchestrates the training loop: corpus mixing with forced gating per
// batch, SpecAugment + label masking in train mode, Adam with the Noam
// schedule, patience-based early stopping, and LTCK checkpointing. All
// randomness is keyed by (seed, purpose, step), so a resumed run replays
// exactly the stream an uninterrupted run would consume.
class Trainer {
 public:
  explicit Trainer(TrainerOptions opts);

  TrainResult Run();

  // Mean F_obj over the dev split, eval mode.
  double EvalDev();

  Model& model() { return *model_; }
  const DataSet& data() const { return data_; }

 private:
  enum class Corpus { kCs, kMonoA, kMonoB };
  Corpus PickCorpus(int64_t step) const;
  std::vector<BatchItem> SampleBatch(Corpus corpus, int64_t step) const;
  void SaveState(int64_t step, double best_val, int64_t bad_evals);
  void LoadState(int64_t* step, double* best_val, int64_t* bad_evals);
  void Log(const std::string& line);

  TrainerOptions opts_;
  DataSet data_;
  std::unique_ptr<Model> model_;
  AdamOptimizer adam_;
  std::unique_ptr<std::ofstream> log_file_;
};

}  // namespace ltt

#endif  // LTT_TRAIN_TRAINER_H_
