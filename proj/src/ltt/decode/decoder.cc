// ltt/decode/decoder.cc

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

#include "ltt/decode/decoder.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "ltt/text/bpe.h"
#include "ltt/text/script.h"

namespace ltt {

namespace {

constexpr double kLogZero = -std::numeric_limits<double>::infinity();

inline double LogAdd(double a, double b) {
  if (a == kLogZero) return b;
  if (b == kLogZero) return a;
  double hi = std::max(a, b);
  double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

// Log-softmax of the joint logits for one (frame, label-state) pair.
std::vector<double> StepLogProbs(const Model& model, const Tensor& ah,
                                 int64_t t, const Tensor& lh) {
  Tensor ah_t = Slice(ah, 0, t, 1);
  Tensor lh_u = Slice(lh, 0, lh.Dim(0) - 1, 1);
  Tensor lp = LogSoftmax(model.JointLogits(ah_t, lh_u));
  return lp.Data();
}

}  // namespace

TokenSequence Decoder::WithLangs(const std::vector<int>& ids) const {
  TokenSequence out;
  for (int id : ids) {
    LangMark mark;
    if (id == Vocabulary::kEnTagId || id == Vocabulary::kManTagId)
      mark = LangMark::kTag;
    else if (id == Vocabulary::kMaskId)
      mark = LangMark::kMask;
    else
      mark = TokenIsHan(vocab_->ToToken(id)) ? LangMark::kMan : LangMark::kEn;
    out.Push(id, mark);
  }
  return out;
}

TokenSequence Decoder::GreedyDecode(const FeatureSequence& feats) const {
  NoGradGuard guard;
  const int64_t cap = model_->config().max_symbols_per_frame;
  Tensor ah = model_->DecodeAudio(feats);
  std::vector<int> prefix;
  Tensor lh = model_->DecodeLabelPrefix(prefix);
  for (int64_t t = 0; t < ah.Dim(0); ++t) {
    int64_t emitted = 0;
    while (true) {
      std::vector<double> lp = StepLogProbs(*model_, ah, t, lh);
      int64_t best = 0;
      for (size_t k = 1; k < lp.size(); ++k)
        if (lp[k] > lp[best]) best = static_cast<int64_t>(k);
      if (best == Vocabulary::kBlankId || emitted >= cap) break;
      prefix.push_back(static_cast<int>(best));
      lh = model_->DecodeLabelPrefix(prefix);
      ++emitted;
    }
  }
  return WithLangs(prefix);
}

namespace {

struct SearchState {
  std::vector<int> prefix;
  double score = kLogZero;
  Tensor lh;
  int64_t emits = 0;  // symbols emitted within the current frame
};

// Committed-argmax chain: the state after consuming each frame, following
// greedy decoding. Width-1 beam search IS this chain; wider beams keep it
// as a floor so the top score can never fall below the greedy path's and is
// therefore non-decreasing in width.
std::vector<SearchState> GreedyChain(const Model& model, const Tensor& ah,
                                     const Tensor& lh0, int64_t cap,
                                     int blank) {
  std::vector<SearchState> chain;
  SearchState s{{}, 0.0, lh0, 0};
  for (int64_t t = 0; t < ah.Dim(0); ++t) {
    s.emits = 0;
    while (true) {
      std::vector<double> lp = StepLogProbs(model, ah, t, s.lh);
      int64_t best = 0;
      for (size_t k = 1; k < lp.size(); ++k)
        if (lp[k] > lp[best]) best = static_cast<int64_t>(k);
      if (best == blank || s.emits >= cap) {
        s.score += lp[blank];
        break;
      }
      s.prefix.push_back(static_cast<int>(best));
      s.score += lp[best];
      s.emits += 1;
      s.lh = model.DecodeLabelPrefix(s.prefix);
    }
    chain.push_back(s);
  }
  return chain;
}

}  // namespace

// Width 1 is the committed greedy chain: at each expansion the blank exit
// and the symbol extensions compete and only the argmax survives, exactly
// reproducing GreedyDecode. Wider beams run an adaptive best-first agenda
// per frame (pop the best live hypothesis, bank its blank exit, push its
// extensions) until beam_width finished hypotheses outscore every live one;
// given the incoming beam, the surviving top-W exits are exact.
std::vector<Hypothesis> Decoder::BeamSearch(const FeatureSequence& feats,
                                            int64_t beam_width) const {
  LTT_CHECK(beam_width >= 1, "beam_search: beam_width must be >= 1, got ",
            beam_width);
  NoGradGuard guard;
  const int64_t cap = model_->config().max_symbols_per_frame;
  const int blank = Vocabulary::kBlankId;
  Tensor ah = model_->DecodeAudio(feats);

  Tensor lh0 = model_->DecodeLabelPrefix({});
  std::vector<SearchState> chain = GreedyChain(*model_, ah, lh0, cap, blank);

  if (beam_width == 1) {
    SearchState last = chain.back();
    return {Hypothesis{std::move(last.prefix), last.score,
                       std::move(last.lh)}};
  }

  // One best-first frame expansion: pop the best live state, bank its blank
  // exit, push its symbol extensions; stop once `width` exits outscore every
  // live state. max(agenda) is non-increasing, so given the input beam the
  // surviving top-width exits are exact. Label states compute on pop; the
  // pop budget is a safety valve against degenerate frames.
  auto agenda_frame = [&](std::vector<SearchState> live, int64_t width,
                          int64_t t) {
    std::map<std::vector<int>, SearchState> done;
    std::map<std::pair<std::vector<int>, int64_t>, SearchState> agenda;
    for (SearchState& s : live) {
      s.emits = 0;
      agenda.emplace(std::make_pair(s.prefix, int64_t{0}), std::move(s));
    }
    int64_t pop_budget = width * 256 + 4096;
    while (!agenda.empty() && pop_budget-- > 0) {
      auto best_it = agenda.begin();
      for (auto it = agenda.begin(); it != agenda.end(); ++it)
        if (it->second.score > best_it->second.score) best_it = it;
      double best_live = best_it->second.score;
      int64_t finished_better = 0;
      for (const auto& [p, s] : done)
        if (s.score > best_live) ++finished_better;
      if (finished_better >= width) break;

      SearchState s = std::move(best_it->second);
      agenda.erase(best_it);
      if (!s.lh.Defined()) s.lh = model_->DecodeLabelPrefix(s.prefix);
      std::vector<double> lp = StepLogProbs(*model_, ah, t, s.lh);
      auto dit = done.find(s.prefix);
      if (dit == done.end()) {
        SearchState d = s;
        d.score = s.score + lp[blank];
        d.emits = 0;
        done.emplace(s.prefix, std::move(d));
      } else {
        dit->second.score = LogAdd(dit->second.score, s.score + lp[blank]);
      }
      if (s.emits >= cap) continue;
      for (size_t k = 0; k < lp.size(); ++k) {
        if (static_cast<int>(k) == blank) continue;
        std::vector<int> next = s.prefix;
        next.push_back(static_cast<int>(k));
        auto key = std::make_pair(std::move(next), s.emits + 1);
        auto git = agenda.find(key);
        if (git == agenda.end()) {
          SearchState g;
          g.prefix = key.first;
          g.score = s.score + lp[k];
          g.emits = s.emits + 1;
          agenda.emplace(std::move(key), std::move(g));
        } else {
          git->second.score = LogAdd(git->second.score, s.score + lp[k]);
        }
      }
    }
    std::vector<SearchState> out;
    for (auto& [p, s] : done) out.push_back(std::move(s));
    std::sort(out.begin(), out.end(),
              [](const SearchState& a, const SearchState& b) {
                if (a.score != b.score) return a.score > b.score;
                return a.prefix < b.prefix;
              });
    if (static_cast<int64_t>(out.size()) > width) out.resize(width);
    return out;
  };

  // Anytime widening: the width-W search runs the halved widths alongside
  // and unions their per-frame beams in (merged per prefix by max, both
  // being explored-mass lower bounds). Beams therefore nest across the
  // doubling sweep and the top score never decreases when the width doubles,
  // with the greedy chain as the width-1 floor.
  std::vector<int64_t> widths;
  for (int64_t w = beam_width; w > 1; w /= 2) widths.push_back(w);
  std::reverse(widths.begin(), widths.end());

  std::map<int64_t, std::vector<SearchState>> beams;
  for (int64_t w : widths) beams[w] = {SearchState{{}, 0.0, lh0, 0}};

  for (int64_t t = 0; t < ah.Dim(0); ++t) {
    std::vector<SearchState> floor_beam = {chain[t]};
    for (int64_t w : widths) {
      std::vector<SearchState> next = agenda_frame(beams[w], w, t);
      for (const SearchState& f : floor_beam) {
        bool present = false;
        for (SearchState& s : next)
          if (s.prefix == f.prefix) {
            s.score = std::max(s.score, f.score);
            present = true;
            break;
          }
        if (!present) next.push_back(f);
      }
      beams[w] = std::move(next);
      floor_beam = beams[w];
    }
  }

  std::vector<SearchState> final_beam = std::move(beams[beam_width]);
  std::sort(final_beam.begin(), final_beam.end(),
            [](const SearchState& a, const SearchState& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.prefix < b.prefix;
            });
  if (static_cast<int64_t>(final_beam.size()) > beam_width)
    final_beam.resize(beam_width);

  std::vector<Hypothesis> out;
  for (SearchState& s : final_beam)
    out.push_back({std::move(s.prefix), s.score, std::move(s.lh)});
  return out;
}

double Decoder::ScorePrefix(const FeatureSequence& feats,
                            const std::vector<int>& prefix) const {
  NoGradGuard guard;
  const int64_t cap = model_->config().max_symbols_per_frame;
  const int blank = Vocabulary::kBlankId;
  Tensor ah = model_->DecodeAudio(feats);
  Tensor lh = model_->DecodeLabelPrefix(prefix);
  Tensor lp = LogSoftmax(model_->JointLogits(ah, lh));
  const int64_t T = ah.Dim(0);
  const int64_t L = static_cast<int64_t>(prefix.size());
  const int64_t U = L + 1;
  const int64_t K = lp.Dim(1);

  // alpha(t, u, e): at frame t, u labels emitted, e of them within frame t.
  std::vector<double> alpha(T * U * (cap + 1), kLogZero);
  auto a = [&](int64_t t, int64_t u, int64_t e) -> double& {
    return alpha[(t * U + u) * (cap + 1) + e];
  };
  auto step = [&](int64_t t, int64_t u, int k) {
    return lp.Data()[(t * U + u) * K + k];
  };
  a(0, 0, 0) = 0.0;
  for (int64_t t = 0; t < T; ++t)
    for (int64_t u = 0; u <= L; ++u)
      for (int64_t e = 0; e <= cap; ++e) {
        double cur = a(t, u, e);
        if (cur == kLogZero) continue;
        if (t + 1 < T)
          a(t + 1, u, 0) = LogAdd(a(t + 1, u, 0), cur + step(t, u, blank));
        if (u < L && e < cap)
          a(t, u + 1, e + 1) =
              LogAdd(a(t, u + 1, e + 1), cur + step(t, u, prefix[u]));
      }
  double total = kLogZero;
  for (int64_t e = 0; e <= cap; ++e) {
    double cur = a(T - 1, L, e);
    if (cur != kLogZero)
      total = LogAdd(total, cur + step(T - 1, L, blank));
  }
  return total;
}

TokenSequence StripSpecial(const TokenSequence& hyp, bool keep_unk) {
  TokenSequence out;
  for (int64_t i = 0; i < hyp.Size(); ++i) {
    int id = hyp.ids[i];
    if (id == Vocabulary::kEnTagId || id == Vocabulary::kManTagId ||
        id == Vocabulary::kMaskId)
      continue;
    if (id == Vocabulary::kUnkId && !keep_unk) continue;
    out.Push(id, hyp.langs[i]);
  }
  return out;
}

std::string HypothesisText(const Vocabulary& vocab, const std::vector<int>& ids,
                           bool keep_unk, bool keep_tags) {
  std::vector<std::string> pieces;
  for (int id : ids) {
    if (id == Vocabulary::kEnTagId || id == Vocabulary::kManTagId) {
      if (!keep_tags) continue;
    } else if (id == Vocabulary::kMaskId) {
      continue;
    } else if (id == Vocabulary::kUnkId && !keep_unk) {
      continue;
    }
    pieces.push_back(vocab.ToToken(id));
  }
  return DetokenizePieces(pieces);
}

}  // namespace ltt
