// ltt/lattice/enumerate-alignments.h

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

#ifndef LTT_LATTICE_ENUMERATE_ALIGNMENTS_H_
#define LTT_LATTICE_ENUMERATE_ALIGNMENTS_H_

#include <cstdint>
#include <vector>

namespace ltt {

enum class AlignMode { kTransducer, kCtc };

// Exhaustively lists the valid alignment paths for small lattices; the DP
// losses are tested against sums over these paths.
//
// Transducer mode: every interleaving of T blanks and the L target emissions,
// C(T+L, L) paths of length T+L. Ctc mode: every length-T symbol sequence
// that collapses (merge adjacent repeats, then drop blanks) to the targets.
// Throws once the path count exceeds cap.
std::vector<std::vector<int>> EnumerateAlignments(
    int64_t num_frames, const std::vector<int>& targets, AlignMode mode,
    int blank_id, int64_t cap = 1000000);

// Collapses an alignment path back to a label sequence under the given
// mode's semantics (test helper for the round-trip property).
std::vector<int> CollapseAlignment(const std::vector<int>& path,
                                   AlignMode mode, int blank_id);

}  // namespace ltt

#endif  // LTT_LATTICE_ENUMERATE_ALIGNMENTS_H_
