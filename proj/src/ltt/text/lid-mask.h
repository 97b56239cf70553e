// ltt/text/lid-mask.h

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

#ifndef LTT_TEXT_LID_MASK_H_
#define LTT_TEXT_LID_MASK_H_

#include "ltt/core/rng.h"
#include "ltt/text/vocab.h"

namespace ltt {

// Inserts one <en>/<man> tag before each maximal same-language run. Input
// must be untagged (EN/MAN marks only); stripping the tags recovers the
// input exactly.
TokenSequence InsertLidTags(const TokenSequence& in);

// Removes TAG positions.
TokenSequence StripLidTags(const TokenSequence& in);

// Language runs of an untagged sequence (run count == tag count after
// InsertLidTags).
int64_t CountLanguageRuns(const TokenSequence& in);

// Independently replaces each non-TAG token by <mask> with probability
// rate. TAG positions are never masked and are excluded from the rate's
// denominator. Label-encoder input only: transducer and LM supervision keep
// the original tokens.
TokenSequence MaskTokens(const TokenSequence& in, double rate, Rng* rng);

}  // namespace ltt

#endif  // LTT_TEXT_LID_MASK_H_
