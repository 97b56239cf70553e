// ltt/text/lid-mask.cc

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

#include "ltt/text/lid-mask.h"

namespace ltt {

TokenSequence InsertLidTags(const TokenSequence& in) {
  TokenSequence out;
  LangMark prev = LangMark::kTag;  // sentinel: first token always opens a run
  for (int64_t i = 0; i < in.Size(); ++i) {
    LangMark lang = in.langs[i];
    LTT_CHECK(lang != LangMark::kTag,
              "insert_lid_tags: double tagging (input already tagged)");
    LTT_CHECK(lang != LangMark::kMask,
              "insert_lid_tags: input contains mask positions");
    if (lang != prev) {
      out.Push(lang == LangMark::kMan ? Vocabulary::kManTagId
                                      : Vocabulary::kEnTagId,
               LangMark::kTag);
      prev = lang;
    }
    out.Push(in.ids[i], lang);
  }
  return out;
}

TokenSequence StripLidTags(const TokenSequence& in) {
  TokenSequence out;
  for (int64_t i = 0; i < in.Size(); ++i)
    if (in.langs[i] != LangMark::kTag) out.Push(in.ids[i], in.langs[i]);
  return out;
}

int64_t CountLanguageRuns(const TokenSequence& in) {
  int64_t runs = 0;
  LangMark prev = LangMark::kTag;
  for (int64_t i = 0; i < in.Size(); ++i) {
    if (in.langs[i] != prev) {
      ++runs;
      prev = in.langs[i];
    }
  }
  return runs;
}

TokenSequence MaskTokens(const TokenSequence& in, double rate, Rng* rng) {
  LTT_CHECK(rate >= 0.0 && rate <= 1.0, "mask_tokens: rate must be in [0,1], got ",
            rate);
  TokenSequence out;
  for (int64_t i = 0; i < in.Size(); ++i) {
    if (in.langs[i] == LangMark::kTag) {
      out.Push(in.ids[i], in.langs[i]);
      continue;
    }
    if (rng->Uniform() < rate) {
      out.Push(Vocabulary::kMaskId, LangMark::kMask);
    } else {
      out.Push(in.ids[i], in.langs[i]);
    }
  }
  return out;
}

}  // namespace ltt
