// ltt/tests/data-test.cc

// Copyright 2026  LTT Authors  (Apache 2.0)

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "ltt/core/common.h"
#include "ltt/data/manifest.h"
#include "ltt/data/spec-augment.h"
#include "ltt/data/synth-corpus.h"
#include "ltt/text/script.h"

using namespace ltt;
namespace fs = std::filesystem;

namespace {

fs::path TestDir(const std::string& leaf) {
  fs::path dir = fs::temp_directory_path() / "ltt-data-test" / leaf;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string Slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(is),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("feature file round-trip and format errors") {
  fs::path dir = TestDir("featio");
  FeatureSequence f;
  f.num_frames = 3;
  f.dim = 2;
  f.data = {0.5f, -1.25f, 3e-8f, 100.0f, -0.0f, 42.0f};
  std::string path = (dir / "x.ltft").string();
  WriteFeatureFile(path, f);
  FeatureSequence g = ReadFeatureFile(path);
  CHECK(g.num_frames == 3);
  CHECK(g.dim == 2);
  CHECK(g.data == f.data);

  std::string bad = (dir / "bad.ltft").string();
  {
    std::ofstream os(bad, std::ios::binary);
    os << "JUNKJUNK";
  }
  CHECK_THROWS_AS(ReadFeatureFile(bad), DataError);
}

TEST_CASE("manifest round-trip, header and duplicate ids") {
  fs::path dir = TestDir("manifest");
  Manifest m;
  m.rows.push_back({"cs_000000", "cs_000000.ltft", "读 baba", "man:1 en:1"});
  m.rows.push_back({"cs_000001", "cs_000001.ltft", "kilo", "en:1"});
  std::string path = (dir / "train.tsv").string();
  m.Save(path);
  Manifest l = Manifest::Load(path);
  REQUIRE(l.rows.size() == 2);
  CHECK(l.rows[0].transcript == "读 baba");
  CHECK(l.rows[1].runs == "en:1");

  m.rows.push_back({"cs_000000", "z.ltft", "x", "en:1"});
  CHECK_THROWS_AS(m.Save((dir / "dup.tsv").string()), DataError);

  std::ofstream os(dir / "nohdr.tsv");
  os << "a\tb\tc\td\n";
  os.close();
  CHECK_THROWS_AS(Manifest::Load((dir / "nohdr.tsv").string()), DataError);
}

TEST_CASE("generate_corpus: determinism is byte-identical") {
  SynthSpec spec;
  spec.num_utterances = 12;
  spec.seed = 77;
  fs::path d1 = TestDir("gen1");
  fs::path d2 = TestDir("gen2");
  Manifest m1 = GenerateCorpus(spec, d1.string());
  Manifest m2 = GenerateCorpus(spec, d2.string());
  m1.Save((d1 / "manifest.tsv").string());
  m2.Save((d2 / "manifest.tsv").string());
  CHECK(Slurp(d1 / "manifest.tsv") == Slurp(d2 / "manifest.tsv"));
  for (const auto& row : m1.rows)
    CHECK(Slurp(d1 / row.feature_path) == Slurp(d2 / row.feature_path));
  // Every referenced feature file exists and parses.
  for (const auto& row : m1.rows) {
    FeatureSequence f = ReadFeatureFile((d1 / row.feature_path).string());
    CHECK(f.dim == spec.feature_dim);
    CHECK(f.num_frames >= spec.utt_len_min * spec.frames_per_token_min);
  }
}

TEST_CASE("generate_corpus: noiseless degenerate repeats the prototype") {
  SynthSpec spec;
  spec.num_utterances = 1;
  spec.noise_sigma = 0.0;
  spec.utt_len_min = spec.utt_len_max = 1;
  spec.frames_per_token_min = spec.frames_per_token_max = 4;
  spec.vocab_a = 1;
  spec.vocab_b = 1;
  spec.role = CorpusRole::kMonoA;
  spec.seed = 5;
  fs::path dir = TestDir("noiseless");
  Manifest m = GenerateCorpus(spec, dir.string());
  REQUIRE(m.rows.size() == 1);
  CHECK(m.rows[0].transcript == SurfaceFormA(0));
  FeatureSequence f = ReadFeatureFile((dir / m.rows[0].feature_path).string());
  REQUIRE(f.num_frames == 4);
  auto proto = TokenPrototype(spec.seed, 0, 0, spec.feature_dim);
  for (int64_t t = 0; t < 4; ++t)
    for (int64_t c = 0; c < spec.feature_dim; ++c)
      CHECK(f.At(t, c) == proto[c]);
}

TEST_CASE("generate_corpus: p_switch = 0 gives monolingual utterances") {
  SynthSpec spec;
  spec.num_utterances = 40;
  spec.p_switch = 0.0;
  spec.seed = 3;
  fs::path dir = TestDir("noswitch");
  Manifest m = GenerateCorpus(spec, dir.string());
  for (const auto& row : m.rows)
    CHECK(row.runs.find(' ') == std::string::npos);  // single run
}

TEST_CASE("generate_corpus: mono roles force one language") {
  SynthSpec spec;
  spec.num_utterances = 20;
  spec.seed = 9;
  spec.role = CorpusRole::kMonoB;
  fs::path dir = TestDir("monob");
  Manifest m = GenerateCorpus(spec, dir.string());
  for (const auto& row : m.rows) {
    CHECK(row.runs.rfind("en:", 0) == 0);
    for (const auto& tok : SplitWhitespace(row.transcript))
      CHECK(!TokenIsHan(tok));
  }
}

TEST_CASE("generate_corpus: run statistics match a simulation oracle") {
  SynthSpec spec;
  spec.num_utterances = 1000;
  spec.p_switch = 0.5;
  spec.utt_len_min = spec.utt_len_max = 6;
  spec.frames_per_token_min = spec.frames_per_token_max = 3;
  spec.seed = 123;
  fs::path dir = TestDir("runs");
  Manifest m = GenerateCorpus(spec, dir.string());

  double mean_runs = 0.0;
  for (const auto& row : m.rows) {
    int64_t runs = 1;
    for (char c : row.runs)
      if (c == ' ') ++runs;
    mean_runs += static_cast<double>(runs);
  }
  mean_runs /= static_cast<double>(m.rows.size());

  // Monte-Carlo oracle of the same geometric switching process.
  Rng sim(8888);
  double oracle_mean = 0.0;
  const int64_t kSim = 200000;
  for (int64_t i = 0; i < kSim; ++i) {
    int64_t runs = 1;
    for (int64_t k = 1; k < 6; ++k)
      if (sim.Uniform() < 0.5) ++runs;
    oracle_mean += static_cast<double>(runs);
  }
  oracle_mean /= static_cast<double>(kSim);

  // 3 sigma of the mean of 1000 draws; per-utterance variance of runs is
  // Var(1 + Binomial(5, 0.5)) = 1.25.
  double sigma = std::sqrt(1.25 / 1000.0);
  CHECK(std::fabs(mean_runs - oracle_mean) <= 3.0 * sigma);
}

TEST_CASE("prototype separability floor") {
  // Noiseless frames classify to their own prototype with sigma <= 0.1 and
  // d >= 8: verify the prototypes are pairwise well separated.
  const int64_t d = 8;
  std::vector<std::vector<float>> protos;
  for (int lang = 0; lang < 2; ++lang)
    for (int64_t i = 0; i < 10; ++i)
      protos.push_back(TokenPrototype(42, lang, i, d));
  for (size_t i = 0; i < protos.size(); ++i)
    for (size_t j = i + 1; j < protos.size(); ++j) {
      double dist2 = 0.0;
      for (int64_t c = 0; c < d; ++c) {
        double diff = protos[i][c] - protos[j][c];
        dist2 += diff * diff;
      }
      // Nearest-prototype stays exact for noise well beyond sigma = 0.1.
      CHECK(std::sqrt(dist2) > 1.0);
    }
}

TEST_CASE("spec_augment: identity, boundary, and locality") {
  FeatureSequence f;
  f.num_frames = 10;
  f.dim = 4;
  f.data.assign(40, 1.0f);

  Rng rng(1);
  FeatureSequence same = f;
  SpecAugment(&same, 2, 0, 2, 0, &rng);
  CHECK(same.data == f.data);

  // Max widths can zero everything; masked entries are exactly zero.
  FeatureSequence wide = f;
  Rng rng2(2);
  SpecAugment(&wide, 4, 4, 4, 10, &rng2);
  for (float v : wide.data) CHECK((v == 0.0f || v == 1.0f));

  // Only masked coordinates change: unmasked stay bitwise intact.
  FeatureSequence one = f;
  for (size_t i = 0; i < one.data.size(); ++i)
    one.data[i] = static_cast<float>(i) * 0.25f;
  FeatureSequence masked = one;
  Rng rng3(3);
  SpecAugment(&masked, 1, 2, 1, 3, &rng3);
  for (size_t i = 0; i < one.data.size(); ++i)
    CHECK((masked.data[i] == 0.0f || masked.data[i] == one.data[i]));

  CHECK_THROWS_AS(SpecAugment(&f, 1, 5, 0, 0, &rng), Error);
  CHECK_THROWS_AS(SpecAugment(&f, 0, 0, 1, 11, &rng), Error);
}

TEST_CASE("spec_augment: expected masked fraction of one bounded time mask") {
  // One time mask of width uniform on [0, 20] over T=100 frames: expected
  // masked fraction is 10%.
  const int64_t kDraws = 1000;
  double frac = 0.0;
  for (int64_t i = 0; i < kDraws; ++i) {
    FeatureSequence f;
    f.num_frames = 100;
    f.dim = 8;
    f.data.assign(800, 1.0f);
    Rng rng(Rng::Mix(99, i));
    SpecAugment(&f, 0, 0, 1, 20, &rng);
    int64_t zero_frames = 0;
    for (int64_t t = 0; t < 100; ++t)
      if (f.data[t * 8] == 0.0f) ++zero_frames;
    frac += static_cast<double>(zero_frames) / 100.0;
  }
  frac /= static_cast<double>(kDraws);
  // Width mean 10; sd of the estimate ~ 0.06/sqrt(1000).
  CHECK(frac == doctest::Approx(0.10).epsilon(0.08));
}
