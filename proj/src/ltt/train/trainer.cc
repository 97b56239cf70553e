// ltt/train/trainer.cc

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

#include "ltt/train/trainer.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>

#include "json.hpp"
#include "ltt/core/checkpoint.h"
#include "ltt/data/spec-augment.h"

namespace ltt {

namespace fs = std::filesystem;

namespace {

constexpr uint64_t kSaltInit = 0x11D1ULL;
constexpr uint64_t kSaltCorpus = 0xC0BBULL;
constexpr uint64_t kSaltBatch = 0xBA7CULL;
constexpr uint64_t kSaltSpec = 0x5BECULL;
constexpr uint64_t kSaltFwd = 0xF11DULL;

const char* CorpusName(int c) {
  switch (c) {
    case 0: return "cs";
    case 1: return "mono_a";
    default: return "mono_b";
  }
}

}  // namespace

Trainer::Trainer(TrainerOptions opts)
    : opts_(std::move(opts)),
      data_(LoadDataDir(opts_.data_dir)),
      adam_({opts_.cfg.train.beta1, opts_.cfg.train.beta2,
             opts_.cfg.train.eps}) {
  RunConfig& cfg = opts_.cfg;
  cfg.model.vocab_size = data_.vocab.Size();
  cfg.model.feature_dim = data_.prepared_cfg.data.feature_dim;
  cfg.Validate();
  LTT_CHECK_DATA(!data_.cs_train.empty(), "trainer: empty cs_train split");
  if (cfg.model.multi_encoder != MultiEncoderMode::kSingle)
    LTT_CHECK_DATA(!data_.mono_a.empty() && !data_.mono_b.empty(),
                   "trainer: multi-encoder mode needs mono_a and mono_b "
                   "corpora (prepare with mono_train > 0)");
  model_ = std::make_unique<Model>(cfg.model, Rng::Mix(cfg.seed, kSaltInit));

  fs::create_directories(opts_.out_dir);
  log_file_ = std::make_unique<std::ofstream>(
      opts_.out_dir + "/train.log", opts_.resume ? std::ios::app
                                                 : std::ios::trunc);
  // Resolved config (vocab size filled in) rides with the checkpoints so
  // decoding can rebuild the exact model.
  std::ofstream cfg_os(opts_.out_dir + "/config.json");
  if (cfg_os.good()) cfg_os << cfg.ToJsonText();
}

void Trainer::Log(const std::string& line) {
  if (!opts_.quiet) std::cout << line << "\n";
  if (log_file_ && log_file_->good()) (*log_file_) << line << std::endl;
}

Trainer::Corpus Trainer::PickCorpus(int64_t step) const {
  const TrainConfig& t = opts_.cfg.train;
  bool has_mono = !data_.mono_a.empty() && !data_.mono_b.empty() &&
                  opts_.cfg.model.multi_encoder != MultiEncoderMode::kSingle;
  if (!has_mono) return Corpus::kCs;
  if (step > t.max_updates - t.cs_only_final_updates) return Corpus::kCs;
  Rng rng(Rng::Mix(Rng::Mix(opts_.cfg.seed, kSaltCorpus),
                   static_cast<uint64_t>(step)));
  double total = t.mix_cs + t.mix_mono_a + t.mix_mono_b;
  double u = rng.Uniform() * total;
  if (u < t.mix_cs) return Corpus::kCs;
  if (u < t.mix_cs + t.mix_mono_a) return Corpus::kMonoA;
  return Corpus::kMonoB;
}

std::vector<BatchItem> Trainer::SampleBatch(Corpus corpus,
                                            int64_t step) const {
  const std::vector<BatchItem>* pool = &data_.cs_train;
  if (corpus == Corpus::kMonoA) pool = &data_.mono_a;
  if (corpus == Corpus::kMonoB) pool = &data_.mono_b;
  const TrainConfig& t = opts_.cfg.train;
  Rng pick(Rng::Mix(Rng::Mix(opts_.cfg.seed, kSaltBatch),
                    static_cast<uint64_t>(step)));
  std::vector<BatchItem> batch;
  for (int64_t i = 0; i < t.batch_size; ++i) {
    BatchItem item = (*pool)[pick.UniformInt(pool->size())];
    if (t.freq_masks > 0 || t.time_masks > 0) {
      Rng aug(Rng::Mix(
          Rng::Mix(Rng::Mix(opts_.cfg.seed, kSaltSpec),
                   static_cast<uint64_t>(step)),
          static_cast<uint64_t>(i)));
      int64_t max_time = static_cast<int64_t>(
          t.max_time_frac * static_cast<double>(item.feats.num_frames));
      SpecAugment(&item.feats, t.freq_masks,
                  std::min(t.max_freq_width, item.feats.dim), t.time_masks,
                  max_time, &aug);
    }
    batch.push_back(std::move(item));
  }
  return batch;
}

double Trainer::EvalDev() {
  NoGradGuard guard;
  const int64_t chunk = opts_.cfg.train.batch_size;
  double sum = 0.0;
  int64_t count = 0;
  for (size_t start = 0; start < data_.cs_dev.size();
       start += static_cast<size_t>(chunk)) {
    std::vector<BatchItem> batch(
        data_.cs_dev.begin() + static_cast<int64_t>(start),
        data_.cs_dev.begin() +
            std::min<int64_t>(static_cast<int64_t>(start) + chunk,
                              static_cast<int64_t>(data_.cs_dev.size())));
    ObjectiveResult obj =
        model_->Objective(batch, ForceMode::kCs, /*train=*/false, 0);
    sum += obj.total.Item() * static_cast<double>(batch.size());
    count += static_cast<int64_t>(batch.size());
  }
  return sum / static_cast<double>(count);
}

void Trainer::SaveState(int64_t step, double best_val,
                        int64_t bad_evals) {
  std::vector<CheckpointEntry> entries;
  for (const std::string& name : model_->store()->Names()) {
    Tensor t = model_->store()->Get(name);
    entries.push_back({name, t.GetShape(), t.Data()});
  }
  for (const auto& [name, m] : adam_.first_moments())
    entries.push_back({"optim.m." + name,
                       {static_cast<int64_t>(m.size())}, m});
  for (const auto& [name, v] : adam_.second_moments())
    entries.push_back({"optim.v." + name,
                       {static_cast<int64_t>(v.size())}, v});
  SaveCheckpoint(opts_.out_dir + "/state.ltck", entries);

  nlohmann::json j;
  j["step"] = step;
  j["best_val"] = best_val;
  j["bad_evals"] = bad_evals;
  j["adam_steps"] = adam_.step_count();
  j["seed"] = opts_.cfg.seed;
  std::ofstream os(opts_.out_dir + "/state.json");
  LTT_CHECK_DATA(os.good(), "trainer: cannot write state.json");
  os << j.dump(2) << "\n";
}

void Trainer::LoadState(int64_t* step, double* best_val, int64_t* bad_evals) {
  auto entries = LoadCheckpoint(opts_.out_dir + "/state.ltck");
  for (const auto& e : entries) {
    if (e.name.rfind("optim.m.", 0) == 0) {
      adam_.first_moments()[e.name.substr(8)] = e.values;
    } else if (e.name.rfind("optim.v.", 0) == 0) {
      adam_.second_moments()[e.name.substr(8)] = e.values;
    } else {
      LTT_CHECK_DATA(model_->store()->Has(e.name),
                     "trainer: state holds unknown tensor '", e.name, "'");
      Tensor t = model_->store()->Get(e.name);
      LTT_CHECK_DATA(t.GetShape() == e.shape, "trainer: state tensor '",
                     e.name, "' has shape ", ShapeStr(e.shape),
                     ", model expects ", ShapeStr(t.GetShape()));
      auto& data = t.MutableData();
      for (size_t i = 0; i < data.size(); ++i) data[i] = e.values[i];
    }
  }
  std::ifstream is(opts_.out_dir + "/state.json");
  LTT_CHECK_DATA(is.good(), "trainer: cannot open state.json for resume");
  nlohmann::json j = nlohmann::json::parse(is);
  *step = j.at("step").get<int64_t>();
  *best_val = j.at("best_val").get<double>();
  *bad_evals = j.at("bad_evals").get<int64_t>();
  adam_.set_step_count(j.at("adam_steps").get<int64_t>());
}

TrainResult Trainer::Run() {
  const TrainConfig& t = opts_.cfg.train;
  int64_t step = 0;
  double best_val = std::numeric_limits<double>::infinity();
  int64_t bad_evals = 0;
  if (opts_.resume) LoadState(&step, &best_val, &bad_evals);

  TrainResult res;
  bool first_iteration = true;
  while (step < t.max_updates) {
    ++step;
    Corpus corpus = PickCorpus(step);
    std::vector<BatchItem> batch = SampleBatch(corpus, step);
    ForceMode force = ForceMode::kCs;
    if (corpus == Corpus::kMonoA) force = ForceMode::kManOnly;
    if (corpus == Corpus::kMonoB) force = ForceMode::kEnOnly;

    auto batch_ids = [&]() {
      std::string ids;
      for (const auto& item : batch) ids += " " + item.id;
      return ids;
    };

    model_->store()->ZeroGrad();
    ObjectiveResult obj;
    try {
      obj = model_->Objective(batch, force, /*train=*/true,
                              Rng::Mix(Rng::Mix(opts_.cfg.seed, kSaltFwd),
                                       static_cast<uint64_t>(step)));
    } catch (const NumericError& e) {
      throw NumericError(Str("train: step ", step, " failed on batch [",
                             batch_ids(), " ]: ", e.what()));
    }
    double loss = obj.total.Item();
    if (!std::isfinite(loss))
      throw NumericError(Str("train: non-finite loss at step ", step,
                             " on batch [", batch_ids(), " ]"));
    if (first_iteration) {
      res.first_f_transducer = obj.f_transducer;
      first_iteration = false;
    }

    Backward(obj.total);
    double lr = NoamLr(step, opts_.cfg.model.d_model, t.warmup_steps,
                       t.lr_factor);
    adam_.Step(model_->store(), lr);

    switch (corpus) {
      case Corpus::kCs: ++res.batches_cs; break;
      case Corpus::kMonoA: ++res.batches_mono_a; break;
      case Corpus::kMonoB: ++res.batches_mono_b; break;
    }
    res.ctc_skipped += obj.ctc_skipped;
    for (const GateStats* g : {&obj.gate_audio, &obj.gate_label}) {
      if (g->positions == 0) continue;
      bool ok = true;
      if (force == ForceMode::kManOnly)
        ok = g->min_alpha == 1.0 && g->max_alpha == 1.0;
      else if (force == ForceMode::kEnOnly)
        ok = g->min_alpha == 0.0 && g->max_alpha == 0.0;
      else
        ok = g->min_alpha > 0.0 && g->max_alpha < 1.0;
      if (!ok) ++res.gate_violations;
    }

    Log(Str("step=", step, " corpus=", CorpusName(static_cast<int>(corpus)),
            " lr=", lr, " f_obj=", loss, " f_t=", obj.f_transducer,
            " f_ctc=", obj.f_ctc, " f_lm=", obj.f_lm,
            " ctc_skip=", obj.ctc_skipped));

    if (step % t.eval_interval == 0) {
      double val = EvalDev();
      bool improved = val < best_val;
      Log(Str("eval step=", step, " val=", val, " best=",
              improved ? val : best_val, " bad_evals=",
              improved ? 0 : bad_evals + 1));
      if (improved) {
        best_val = val;
        bad_evals = 0;
        SaveParams(opts_.out_dir + "/best.ltck", *model_->store());
      } else {
        ++bad_evals;
        if (bad_evals >= t.patience) {
          res.early_stopped = true;
          Log(Str("early stop at step ", step, " after ", bad_evals,
                  " evaluations without improvement"));
          break;
        }
      }
    }
  }

  res.steps = step;
  res.best_val = best_val;
  SaveParams(opts_.out_dir + "/final.ltck", *model_->store());
  if (!fs::exists(opts_.out_dir + "/best.ltck"))
    SaveParams(opts_.out_dir + "/best.ltck", *model_->store());
  SaveState(step, best_val, bad_evals);
  res.best_checkpoint = opts_.out_dir + "/best.ltck";
  res.final_checkpoint = opts_.out_dir + "/final.ltck";
  return res;
}

}  // namespace ltt
