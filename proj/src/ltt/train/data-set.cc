// ltt/train/data-set.cc

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

#include "ltt/train/data-set.h"

#include <filesystem>
#include <fstream>

#include "ltt/data/synth-corpus.h"
#include "ltt/text/lid-mask.h"
#include "ltt/text/script.h"

namespace ltt {

namespace fs = std::filesystem;

namespace {

SynthSpec SpecFor(const DataConfig& d, uint64_t seed, CorpusRole role,
                  int64_t count, int64_t first_index) {
  SynthSpec s;
  s.vocab_a = d.vocab_a;
  s.vocab_b = d.vocab_b;
  s.feature_dim = d.feature_dim;
  s.frames_per_token_min = d.frames_per_token_min;
  s.frames_per_token_max = d.frames_per_token_max;
  s.noise_sigma = d.noise_sigma;
  s.p_switch = d.p_switch;
  s.utt_len_min = d.utt_len_min;
  s.utt_len_max = d.utt_len_max;
  s.num_utterances = count;
  s.first_index = first_index;
  s.seed = seed;
  s.role = role;
  return s;
}

void GenerateSplit(const SynthSpec& spec, const std::string& dir) {
  Manifest m = GenerateCorpus(spec, dir);
  m.Save(dir + "/manifest.tsv");
}

}  // namespace

void PrepareData(const RunConfig& cfg, const std::string& out_dir,
                 bool force) {
  cfg.Validate();
  if (fs::exists(out_dir) && !fs::is_empty(out_dir)) {
    LTT_CHECK_DATA(force, "prepare: output directory '", out_dir,
                   "' exists and is not empty (use --force)");
    fs::remove_all(out_dir);
  }
  fs::create_directories(out_dir);

  const DataConfig& d = cfg.data;
  GenerateSplit(SpecFor(d, cfg.seed, CorpusRole::kCs, d.cs_train, 0),
                out_dir + "/cs_train");
  GenerateSplit(
      SpecFor(d, cfg.seed, CorpusRole::kCs, d.cs_dev, d.cs_train),
      out_dir + "/cs_dev");
  if (d.mono_train > 0) {
    GenerateSplit(SpecFor(d, cfg.seed, CorpusRole::kMonoA, d.mono_train, 0),
                  out_dir + "/mono_a");
    GenerateSplit(SpecFor(d, cfg.seed, CorpusRole::kMonoB, d.mono_train, 0),
                  out_dir + "/mono_b");
  }

  // BPE merges from every training transcript; mono text included so the
  // vocabulary covers all corpora.
  std::vector<std::string> train_text;
  for (const char* split : {"cs_train", "mono_a", "mono_b"}) {
    std::string path = out_dir + "/" + split + "/manifest.tsv";
    if (!fs::exists(path)) continue;
    for (const auto& row : Manifest::Load(path).rows)
      train_text.push_back(row.transcript);
  }
  BpeModel bpe = LearnBpe(train_text, d.num_merges);
  bpe.Save(out_dir + "/bpe.txt");

  Vocabulary vocab;
  for (const std::string& utt : train_text)
    for (const std::string& piece : ApplyBpe(bpe, utt)) vocab.Add(piece);
  vocab.Save(out_dir + "/vocab.txt");

  std::ofstream os(out_dir + "/config.json");
  LTT_CHECK_DATA(os.good(), "prepare: cannot write config.json");
  os << cfg.ToJsonText();
}

TokenSequence TokenizeTranscript(const Vocabulary& vocab, const BpeModel& bpe,
                                 const std::string& transcript) {
  TokenSequence seq;
  for (const std::string& piece : ApplyBpe(bpe, transcript))
    seq.Push(vocab.ToId(piece),
             TokenIsHan(piece) ? LangMark::kMan : LangMark::kEn);
  return InsertLidTags(seq);
}

std::vector<BatchItem> LoadSplit(const std::string& split_dir,
                                 const Vocabulary& vocab,
                                 const BpeModel& bpe) {
  Manifest m = Manifest::Load(split_dir + "/manifest.tsv");
  std::vector<BatchItem> items;
  items.reserve(m.rows.size());
  for (const auto& row : m.rows) {
    BatchItem item;
    item.id = row.id;
    item.feats = ReadFeatureFile(split_dir + "/" + row.feature_path);
    item.targets = TokenizeTranscript(vocab, bpe, row.transcript);
    items.push_back(std::move(item));
  }
  return items;
}

DataSet LoadDataDir(const std::string& data_dir) {
  DataSet ds;
  ds.prepared_cfg = RunConfig::FromJsonFile(data_dir + "/config.json");
  ds.vocab = Vocabulary::Load(data_dir + "/vocab.txt");
  ds.bpe = BpeModel::Load(data_dir + "/bpe.txt");
  ds.cs_train = LoadSplit(data_dir + "/cs_train", ds.vocab, ds.bpe);
  ds.cs_dev = LoadSplit(data_dir + "/cs_dev", ds.vocab, ds.bpe);
  if (fs::exists(data_dir + "/mono_a"))
    ds.mono_a = LoadSplit(data_dir + "/mono_a", ds.vocab, ds.bpe);
  if (fs::exists(data_dir + "/mono_b"))
    ds.mono_b = LoadSplit(data_dir + "/mono_b", ds.vocab, ds.bpe);
  return ds;
}

}  // namespace ltt
