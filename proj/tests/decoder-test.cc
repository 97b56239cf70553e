// ltt/tests/decoder-test.cc

// Copyright 2026  LTT Authors  (Apache 2.0)

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "ltt/decode/decoder.h"

using namespace ltt;

namespace {

struct ModeGuard {
  NumericMode prev;
  explicit ModeGuard(NumericMode m) : prev(GetNumericMode()) {
    SetNumericMode(m);
  }
  ~ModeGuard() { SetNumericMode(prev); }
};

ModelConfig TinyDecodeConfig(int64_t vocab_size) {
  ModelConfig c;
  c.d_model = 8;
  c.n_heads = 2;
  c.ff_dim = 16;
  c.audio_layers = 1;
  c.label_layers = 1;
  c.feature_dim = 4;
  c.vocab_size = vocab_size;
  c.subsample_factor = 2;
  return c;
}

FeatureSequence RandomFeats(int64_t t, int64_t d, uint64_t seed) {
  FeatureSequence f;
  f.num_frames = t;
  f.dim = d;
  Rng rng(seed);
  for (int64_t i = 0; i < t * d; ++i)
    f.data.push_back(static_cast<float>(rng.Normal()));
  return f;
}

Vocabulary TinyVocab(int64_t size) {
  Vocabulary v;
  int64_t i = 0;
  while (v.Size() < size) v.Add("tok" + std::to_string(i++));
  return v;
}

void ZeroAllButLayerNorm(ParameterStore* store) {
  for (const auto& name : store->Names()) {
    if (name.find("ln") != std::string::npos) continue;
    for (double& v : store->Get(name).MutableData()) v = 0.0;
  }
}

}  // namespace

TEST_CASE("greedy: all-blank model emits nothing") {
  ModeGuard mode(NumericMode::kF64);
  Model m(TinyDecodeConfig(6), 1);
  ZeroAllButLayerNorm(m.store());  // all logits 0 -> argmax is blank (id 0)
  Vocabulary v = TinyVocab(6);
  Decoder dec(&m, &v);
  CHECK(dec.GreedyDecode(RandomFeats(8, 4, 5)).Size() == 0);
}

TEST_CASE("greedy: planted two-step argmax trace emits one token") {
  ModeGuard mode(NumericMode::kF64);
  const int kTok = 2;
  ModelConfig c = TinyDecodeConfig(4);
  Model m(c, 2);
  ZeroAllButLayerNorm(m.store());
  // Joint reduces to tanh(lh_last) . wout with wl = identity; the label
  // state for a prefix of length u is LN(posenc_u), independent of the
  // emitted ids (embeddings are zero). Solve for wout columns so that the
  // empty prefix scores kTok highest and the length-1 prefix scores blank
  // highest.
  auto& wl = m.store()->Get("joint.wl").MutableData();
  for (int64_t i = 0; i < c.d_model; ++i) wl[i * c.d_model + i] = 1.0;

  Tensor lh0 = m.DecodeLabelPrefix({});
  Tensor lh1 = m.DecodeLabelPrefix({kTok});
  std::vector<double> v0(c.d_model), v1(c.d_model);
  for (int64_t i = 0; i < c.d_model; ++i) {
    v0[i] = std::tanh(lh0.At(0, i));
    v1[i] = std::tanh(lh1.At(1, i));
  }
  // Least-squares in span{v0, v1}: want col_k . v0 = 1, col_k . v1 = 0 and
  // col_blank . v0 = 0, col_blank . v1 = 1.
  double g00 = 0, g01 = 0, g11 = 0;
  for (int64_t i = 0; i < c.d_model; ++i) {
    g00 += v0[i] * v0[i];
    g01 += v0[i] * v1[i];
    g11 += v1[i] * v1[i];
  }
  double det = g00 * g11 - g01 * g01;
  REQUIRE(std::fabs(det) > 1e-9);
  auto set_col = [&](int col, double want0, double want1) {
    double a = (want0 * g11 - want1 * g01) / det;
    double b = (want1 * g00 - want0 * g01) / det;
    auto& wout = m.store()->Get("joint.wout").MutableData();
    for (int64_t i = 0; i < c.d_model; ++i)
      wout[i * c.vocab_size + col] = a * v0[i] + b * v1[i];
  };
  set_col(kTok, 1.0, 0.0);
  set_col(Vocabulary::kBlankId, 0.0, 1.0);

  Vocabulary v = TinyVocab(4);
  Decoder dec(&m, &v);
  // Two input frames subsample to a single joint frame.
  TokenSequence out = dec.GreedyDecode(RandomFeats(2, 4, 9));
  REQUIRE(out.Size() == 1);
  CHECK(out.ids[0] == kTok);
}

TEST_CASE("beam width 1 equals greedy on 20 random models") {
  ModeGuard mode(NumericMode::kF64);
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Model m(TinyDecodeConfig(5), seed);
    Vocabulary v = TinyVocab(5);
    Decoder dec(&m, &v);
    FeatureSequence feats = RandomFeats(6 + (seed % 5), 4, seed * 31 + 7);
    TokenSequence greedy = dec.GreedyDecode(feats);
    auto beam = dec.BeamSearch(feats, 1);
    REQUIRE(!beam.empty());
    CHECK(beam[0].prefix == greedy.ids);
  }
}

TEST_CASE("beam: top score is non-decreasing in width") {
  ModeGuard mode(NumericMode::kF64);
  for (uint64_t seed = 100; seed < 120; ++seed) {
    Model m(TinyDecodeConfig(5), seed);
    Vocabulary v = TinyVocab(5);
    Decoder dec(&m, &v);
    FeatureSequence feats = RandomFeats(8, 4, seed);
    double prev = -1e300;
    for (int64_t width : {1, 2, 4, 8}) {
      auto beam = dec.BeamSearch(feats, width);
      REQUIRE(!beam.empty());
      CHECK(beam[0].log_score >= prev - 1e-12);
      prev = beam[0].log_score;
    }
  }
}

TEST_CASE("beam: width 64 finds the exhaustive optimum on tiny models") {
  ModeGuard mode(NumericMode::kF64);
  for (uint64_t seed = 200; seed < 206; ++seed) {
    ModelConfig c = TinyDecodeConfig(3);  // blank + 2 symbols
    c.max_symbols_per_frame = 2;
    Model m(c, seed);
    Vocabulary v = TinyVocab(3);
    Decoder dec(&m, &v);
    FeatureSequence feats = RandomFeats(6, 4, seed * 13 + 1);  // T' = 3

    // Every output sequence up to length cap * T' = 6 over symbols {1, 2}.
    std::vector<std::vector<int>> outputs = {{}};
    for (int len = 1; len <= 6; ++len) {
      std::vector<std::vector<int>> next;
      for (const auto& o : outputs)
        if (static_cast<int>(o.size()) == len - 1)
          for (int k = 1; k <= 2; ++k) {
            auto e = o;
            e.push_back(k);
            next.push_back(e);
          }
      outputs.insert(outputs.end(), next.begin(), next.end());
    }
    std::vector<int> best;
    double best_score = -1e300;
    for (const auto& o : outputs) {
      double s = dec.ScorePrefix(feats, o);
      if (s > best_score) {
        best_score = s;
        best = o;
      }
    }
    auto beam = dec.BeamSearch(feats, 64);
    REQUIRE(!beam.empty());
    CHECK(beam[0].prefix == best);
    // Beam mass is a lower bound of the full marginal (sums only explored
    // alignments) and must be close at this width.
    CHECK(beam[0].log_score <= best_score + 1e-9);
    CHECK(beam[0].log_score >= best_score - 0.05);
  }
}

TEST_CASE("beam: unpruned scores equal the prefix marginal") {
  ModeGuard mode(NumericMode::kF64);
  ModelConfig c = TinyDecodeConfig(3);
  c.max_symbols_per_frame = 2;
  Model m(c, 42);
  Vocabulary v = TinyVocab(3);
  Decoder dec(&m, &v);
  FeatureSequence feats = RandomFeats(4, 4, 3);  // T' = 2, <= 31 prefixes
  auto beam = dec.BeamSearch(feats, 64);
  REQUIRE(!beam.empty());
  for (const auto& h : beam) {
    CHECK(h.log_score <= 0.0);
    CHECK(std::fabs(h.log_score - dec.ScorePrefix(feats, h.prefix)) <= 1e-6);
  }
}

TEST_CASE("beam: structural invariants and determinism") {
  ModeGuard mode(NumericMode::kF64);
  ModelConfig c = TinyDecodeConfig(5);
  Model m(c, 7);
  Vocabulary v = TinyVocab(5);
  Decoder dec(&m, &v);
  FeatureSequence feats = RandomFeats(10, 4, 11);
  auto beam = dec.BeamSearch(feats, 6);
  REQUIRE(!beam.empty());
  int64_t t_out = m.SubsampledLength(10);
  for (size_t i = 0; i < beam.size(); ++i) {
    for (int id : beam[i].prefix) CHECK(id != Vocabulary::kBlankId);
    CHECK(static_cast<int64_t>(beam[i].prefix.size()) <=
          c.max_symbols_per_frame * t_out);
    CHECK(beam[i].log_score <= 0.0);
    if (i > 0) {
      CHECK(beam[i - 1].log_score >= beam[i].log_score);
      CHECK(beam[i - 1].prefix != beam[i].prefix);
    }
  }
  auto again = dec.BeamSearch(feats, 6);
  REQUIRE(again.size() == beam.size());
  for (size_t i = 0; i < beam.size(); ++i) {
    CHECK(again[i].prefix == beam[i].prefix);
    CHECK(again[i].log_score == beam[i].log_score);
  }
  CHECK_THROWS_AS(dec.BeamSearch(feats, 0), Error);
}

TEST_CASE("strip_special and hypothesis text") {
  Vocabulary v;
  int han = v.Add("读");
  int hi = v.Add("hi</w>");
  int ab = v.Add("ab");
  int cw = v.Add("c</w>");

  TokenSequence hyp;
  hyp.Push(Vocabulary::kManTagId, LangMark::kTag);
  hyp.Push(han, LangMark::kMan);
  hyp.Push(Vocabulary::kEnTagId, LangMark::kTag);
  hyp.Push(hi, LangMark::kEn);
  TokenSequence stripped = StripSpecial(hyp);
  CHECK(stripped.ids == std::vector<int>{han, hi});

  // Tag-free input is unchanged.
  TokenSequence plain;
  plain.Push(han, LangMark::kMan);
  CHECK(StripSpecial(plain).ids == plain.ids);

  // <unk> policy.
  TokenSequence with_unk;
  with_unk.Push(Vocabulary::kUnkId, LangMark::kEn);
  with_unk.Push(hi, LangMark::kEn);
  CHECK(StripSpecial(with_unk).Size() == 1);
  CHECK(StripSpecial(with_unk, /*keep_unk=*/true).Size() == 2);

  CHECK(HypothesisText(v, {Vocabulary::kManTagId, han, Vocabulary::kEnTagId,
                           hi}) == "读 hi");
  // BPE pieces join into one word.
  CHECK(HypothesisText(v, {ab, cw}) == "abc");
}
