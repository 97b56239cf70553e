// ltt/tools/ltt-main.cc

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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "ltt/core/checkpoint.h"
#include "ltt/core/grad-check.h"
#include "ltt/data/manifest.h"
#include "ltt/decode/decoder.h"
#include "ltt/lattice/ctc-loss.h"
#include "ltt/lattice/enumerate-alignments.h"
#include "ltt/lattice/transducer-loss.h"
#include "ltt/metrics/mer.h"
#include "ltt/train/trainer.h"

namespace fs = std::filesystem;
using namespace ltt;

namespace {

struct GlobalArgs {
  std::string config_path;
  int64_t seed = -1;  // <0: keep the config's seed
  bool deterministic = false;
};

RunConfig ResolveConfig(const GlobalArgs& g, const std::string& fallback = "") {
  RunConfig cfg;
  if (!g.config_path.empty()) {
    cfg = RunConfig::FromJsonFile(g.config_path);
  } else if (!fallback.empty() && fs::exists(fallback)) {
    cfg = RunConfig::FromJsonFile(fallback);
  }
  if (g.seed >= 0) cfg.seed = static_cast<uint64_t>(g.seed);
  return cfg;
}

int CmdPrepare(const GlobalArgs& g, const std::string& out_dir, bool force) {
  RunConfig cfg = ResolveConfig(g);
  PrepareData(cfg, out_dir, force);
  std::cout << "prepared data directory: " << out_dir << "\n";
  return 0;
}

int CmdTrain(const GlobalArgs& g, const std::string& data_dir,
             const std::string& out_dir, bool resume) {
  SetNumericMode(NumericMode::kF32);
  RunConfig cfg = ResolveConfig(g, data_dir + "/config.json");
  TrainerOptions opts;
  opts.cfg = cfg;
  opts.data_dir = data_dir;
  opts.out_dir = out_dir;
  opts.resume = resume;
  Trainer trainer(std::move(opts));
  TrainResult res = trainer.Run();
  std::cout << "training done: steps=" << res.steps
            << " best_val=" << res.best_val
            << (res.early_stopped ? " (early stop)" : "") << "\n"
            << "best checkpoint:  " << res.best_checkpoint << "\n"
            << "final checkpoint: " << res.final_checkpoint << "\n";
  return 0;
}

int CmdDecode(const GlobalArgs& g, const std::string& data_dir,
              const std::string& checkpoint, const std::string& manifest_path,
              int64_t beam, bool greedy, const std::string& output,
              bool keep_unk, bool keep_tags) {
  SetNumericMode(NumericMode::kF32);
  std::string ckpt_cfg =
      (fs::path(checkpoint).parent_path() / "config.json").string();
  RunConfig cfg = ResolveConfig(g, ckpt_cfg);

  Vocabulary vocab = Vocabulary::Load(data_dir + "/vocab.txt");
  BpeModel bpe = BpeModel::Load(data_dir + "/bpe.txt");
  if (cfg.model.vocab_size == 0) cfg.model.vocab_size = vocab.Size();
  LTT_CHECK_DATA(cfg.model.vocab_size == vocab.Size(),
                 "decode: checkpoint vocabulary size ", cfg.model.vocab_size,
                 " does not match the data directory's ", vocab.Size());

  Model model(cfg.model, 0);
  try {
    LoadParamsInto(checkpoint, model.store());
  } catch (const DataError& e) {
    throw DataError(Str("decode: checkpoint does not match the model/vocab: ",
                        e.what()));
  }

  Manifest manifest = Manifest::Load(manifest_path);
  std::string manifest_dir = fs::path(manifest_path).parent_path().string();
  Decoder decoder(&model, &vocab);

  std::ostringstream tsv;
  tsv << "id\thyp\tlog_score\n";
  for (const auto& row : manifest.rows) {
    FeatureSequence feats =
        ReadFeatureFile(manifest_dir + "/" + row.feature_path);
    std::vector<int> prefix;
    double score = 0.0;
    if (greedy || beam == 1) {
      TokenSequence out = decoder.GreedyDecode(feats);
      prefix = out.ids;
      score = decoder.BeamSearch(feats, 1)[0].log_score;
    } else {
      auto hyps = decoder.BeamSearch(feats, beam);
      if (!hyps.empty()) {
        prefix = hyps[0].prefix;
        score = hyps[0].log_score;
      }
    }
    tsv << row.id << "\t" << HypothesisText(vocab, prefix, keep_unk, keep_tags)
        << "\t" << score << "\n";
  }
  if (output.empty()) {
    std::cout << tsv.str();
  } else {
    std::ofstream os(output);
    LTT_CHECK_DATA(os.good(), "decode: cannot write '", output, "'");
    os << tsv.str();
  }
  return 0;
}

// Accepts a corpus manifest, a decode TSV, or a bare "id<TAB>text" table.
std::map<std::string, std::string> LoadTextTable(const std::string& path) {
  std::ifstream is(path);
  LTT_CHECK_DATA(is.good(), "score: cannot open '", path, "'");
  std::map<std::string, std::string> table;
  std::string line;
  bool first = true;
  int text_col = 1;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    size_t start = 0;
    while (true) {
      size_t tab = line.find('\t', start);
      if (tab == std::string::npos) {
        cols.push_back(line.substr(start));
        break;
      }
      cols.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    if (first) {
      first = false;
      if (line == "id\tfeatures\ttranscript\truns") {
        text_col = 2;
        continue;
      }
      if (line == "id\thyp\tlog_score") {
        text_col = 1;
        continue;
      }
    }
    LTT_CHECK_DATA(static_cast<int>(cols.size()) > text_col,
                   "score: malformed row '", line, "' in ", path);
    LTT_CHECK_DATA(!table.count(cols[0]), "score: duplicate id '", cols[0],
                   "' in ", path);
    table[cols[0]] = cols[text_col];
  }
  return table;
}

int CmdScore(const std::string& refs_path, const std::string& hyps_path,
             const std::string& report_path) {
  auto refs = LoadTextTable(refs_path);
  auto hyps = LoadTextTable(hyps_path);
  MerReport report = ComputeMer(refs, hyps);
  std::cout << report.Summary() << "\n";
  if (!report_path.empty()) {
    std::ofstream os(report_path);
    LTT_CHECK_DATA(os.good(), "score: cannot write '", report_path, "'");
    os << report.Summary() << "\n\n" << report.PerUttTsv();
  }
  return 0;
}

int CmdCheckGrads(const GlobalArgs& g) {
  SetNumericMode(NumericMode::kF64);
  uint64_t seed = g.seed >= 0 ? static_cast<uint64_t>(g.seed) : 1234;
  Rng rng(seed);
  bool all_ok = true;

  auto report_line = [&](const std::string& name, bool ok,
                         const std::string& detail) {
    std::cout << (ok ? "PASS " : "FAIL ") << name
              << (detail.empty() ? "" : "  " + detail) << "\n";
    all_ok = all_ok && ok;
  };

  // Lattice losses against brute-force alignment enumeration.
  {
    double worst = 0.0;
    for (int64_t T = 1; T <= 3; ++T)
      for (int64_t L = 0; L <= 2; ++L)
        for (int draw = 0; draw < 5; ++draw) {
          int64_t K = 3;
          std::vector<int> targets;
          for (int64_t i = 0; i < L; ++i)
            targets.push_back(1 + static_cast<int>(rng.UniformInt(K - 1)));
          std::vector<double> logits(T * (L + 1) * K);
          for (auto& v : logits) v = rng.Normal();
          auto res =
              TransducerForwardBackward(logits, T, K, targets, 0, false);
          // Enumerate and rescore independently.
          auto paths =
              EnumerateAlignments(T, targets, AlignMode::kTransducer, 0);
          std::vector<double> ls(logits.size());
          for (int64_t r = 0; r < T * (L + 1); ++r) {
            double mx = -1e300, z = 0.0;
            for (int64_t k = 0; k < K; ++k)
              mx = std::max(mx, logits[r * K + k]);
            for (int64_t k = 0; k < K; ++k)
              z += std::exp(logits[r * K + k] - mx);
            for (int64_t k = 0; k < K; ++k)
              ls[r * K + k] = logits[r * K + k] - mx - std::log(z);
          }
          double acc = -1e300;
          for (const auto& path : paths) {
            int64_t t = 0, u = 0;
            double lp = 0.0;
            for (int sym : path) {
              int64_t row = sym == 0 ? t : std::min(t, T - 1);
              lp += ls[(row * (L + 1) + u) * K + sym];
              if (sym == 0) ++t;
              else ++u;
            }
            double hi = std::max(acc, lp);
            acc = hi + std::log1p(std::exp(std::min(acc, lp) - hi));
          }
          worst = std::max(worst, std::fabs(res.loss + acc));
        }
    report_line("transducer-loss vs enumeration", worst < 1e-10,
                Str("max abs err ", worst));
  }

  // CTC loss against its enumeration oracle.
  {
    double worst = 0.0;
    for (int64_t T = 1; T <= 4; ++T)
      for (int64_t L = 0; L <= 2; ++L)
        for (int draw = 0; draw < 5; ++draw) {
          int64_t K = 3;
          std::vector<int> targets;
          for (int64_t i = 0; i < L; ++i)
            targets.push_back(1 + static_cast<int>(rng.UniformInt(K - 1)));
          if (T < CtcMinFrames(targets)) continue;
          std::vector<double> scores(T * K);
          for (auto& v : scores) v = rng.Normal();
          auto res = CtcForwardBackward(scores, T, K, targets, 0, false);
          auto paths = EnumerateAlignments(T, targets, AlignMode::kCtc, 0);
          std::vector<double> ls(scores.size());
          for (int64_t t = 0; t < T; ++t) {
            double mx = -1e300, z = 0.0;
            for (int64_t k = 0; k < K; ++k)
              mx = std::max(mx, scores[t * K + k]);
            for (int64_t k = 0; k < K; ++k)
              z += std::exp(scores[t * K + k] - mx);
            for (int64_t k = 0; k < K; ++k)
              ls[t * K + k] = scores[t * K + k] - mx - std::log(z);
          }
          double acc = -1e300;
          for (const auto& path : paths) {
            double lp = 0.0;
            for (int64_t t = 0; t < T; ++t) lp += ls[t * K + path[t]];
            double hi = std::max(acc, lp);
            acc = hi + std::log1p(std::exp(std::min(acc, lp) - hi));
          }
          worst = std::max(worst, std::fabs(res.loss + acc));
        }
    report_line("ctc-loss vs enumeration", worst < 1e-10,
                Str("max abs err ", worst));
  }

  // Full-model finite differences on a small config.
  {
    ModelConfig c;
    c.d_model = 8;
    c.n_heads = 2;
    c.ff_dim = 16;
    c.audio_layers = 1;
    c.label_layers = 1;
    c.feature_dim = 4;
    c.vocab_size = 7;
    Model model(c, seed);
    std::vector<BatchItem> batch;
    for (int u = 0; u < 2; ++u) {
      BatchItem item;
      item.id = Str("g", u);
      item.feats.num_frames = 6;
      item.feats.dim = 4;
      for (int i = 0; i < 24; ++i)
        item.feats.data.push_back(static_cast<float>(rng.Normal()));
      for (int i = 0; i < 2 + u; ++i)
        item.targets.Push(1 + static_cast<int>(rng.UniformInt(6)),
                          LangMark::kEn);
      batch.push_back(std::move(item));
    }
    GradCheckOptions opts;
    opts.tol = 1e-3;
    opts.samples_per_param = 4;
    auto report = CheckGradients(
        [&]() {
          return model.Objective(batch, ForceMode::kCs, true, 99).total;
        },
        model.store(), opts);
    report_line("full-objective gradient check", report.pass,
                Str("max rel err ", report.max_rel_err));
  }

  if (!all_ok) throw NumericError("check-grads: at least one check failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"code-switching transformer-transducer workbench"};
  app.require_subcommand(1);

  GlobalArgs global;
  app.add_option("--config", global.config_path, "JSON config file");
  app.add_option("--seed", global.seed, "override the config seed");
  app.add_flag("--deterministic", global.deterministic,
               "single-threaded deterministic execution (always on; the "
               "flag documents intent for reproducibility runs)");

  auto* prepare = app.add_subcommand("prepare", "generate a data directory");
  std::string prep_out;
  bool prep_force = false;
  prepare->add_option("--out", prep_out, "output directory")->required();
  prepare->add_flag("--force", prep_force, "overwrite an existing directory");

  auto* train = app.add_subcommand("train", "train a model");
  std::string train_data, train_out;
  bool train_resume = false;
  train->add_option("--data", train_data, "prepared data directory")
      ->required();
  train->add_option("--out", train_out, "run output directory")->required();
  train->add_flag("--resume", train_resume, "resume from out/state.ltck");

  auto* decode = app.add_subcommand("decode", "decode a manifest");
  std::string dec_data, dec_ckpt, dec_manifest, dec_output;
  int64_t dec_beam = 0;
  bool dec_greedy = false, dec_keep_unk = false, dec_keep_tags = false;
  decode->add_option("--data", dec_data, "prepared data directory")
      ->required();
  decode->add_option("--checkpoint", dec_ckpt, "LTCK parameter file")
      ->required();
  decode->add_option("--manifest", dec_manifest, "manifest to decode")
      ->required();
  decode->add_option("--beam", dec_beam, "beam width (default from config)");
  decode->add_flag("--greedy", dec_greedy, "greedy decoding (beam 1)");
  decode->add_option("--output", dec_output, "hypotheses TSV (default stdout)");
  decode->add_flag("--keep-unk", dec_keep_unk, "keep <unk> in hypotheses");
  decode->add_flag("--keep-tags", dec_keep_tags,
                   "keep <en>/<man> tags in hypotheses");

  auto* score = app.add_subcommand("score", "mixed error rate scoring");
  std::string score_refs, score_hyps, score_report;
  score->add_option("--refs", score_refs, "references (manifest or id\\ttext)")
      ->required();
  score->add_option("--hyps", score_hyps, "hypotheses (decode TSV or id\\ttext)")
      ->required();
  score->add_option("--report", score_report, "per-utterance report file");

  auto* check = app.add_subcommand("check-grads",
                                   "run gradient and oracle self-checks");
  (void)check;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage errors exit 1
  }

  try {
    if (app.got_subcommand("prepare"))
      return CmdPrepare(global, prep_out, prep_force);
    if (app.got_subcommand("train"))
      return CmdTrain(global, train_data, train_out, train_resume);
    if (app.got_subcommand("decode")) {
      RunConfig defaults = ResolveConfig(
          global, (fs::path(dec_ckpt).parent_path() / "config.json").string());
      int64_t beam = dec_beam > 0 ? dec_beam : defaults.train.beam_width;
      return CmdDecode(global, dec_data, dec_ckpt, dec_manifest, beam,
                       dec_greedy, dec_output, dec_keep_unk, dec_keep_tags);
    }
    if (app.got_subcommand("score"))
      return CmdScore(score_refs, score_hyps, score_report);
    if (app.got_subcommand("check-grads")) return CmdCheckGrads(global);
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
