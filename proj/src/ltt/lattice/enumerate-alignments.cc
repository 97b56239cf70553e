// ltt/lattice/enumerate-alignments.cc

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

#include "ltt/lattice/enumerate-alignments.h"

#include "ltt/core/common.h"

namespace ltt {

namespace {

struct Enumerator {
  int64_t num_frames;
  const std::vector<int>* targets;
  int blank_id;
  int64_t cap;
  std::vector<std::vector<int>>* out;
  std::vector<int> path;

  void Emit() {
    LTT_CHECK(static_cast<int64_t>(out->size()) < cap,
              "enumerate_alignments: path count exceeds cap ", cap);
    out->push_back(path);
  }

  // Transducer: from (t, u) either consume a frame with a blank or emit the
  // next target label.
  void Transducer(int64_t t, int64_t u) {
    int64_t L = static_cast<int64_t>(targets->size());
    if (t == num_frames && u == L) {
      Emit();
      return;
    }
    if (t < num_frames) {
      path.push_back(blank_id);
      Transducer(t + 1, u);
      path.pop_back();
    }
    if (u < L) {
      path.push_back((*targets)[u]);
      Transducer(t, u + 1);
      path.pop_back();
    }
  }

  // Ctc: one symbol per frame; adjacent repeats collapse, so a fresh
  // emission of the next label is only legal when it differs from the
  // previous symbol.
  void Ctc(int64_t frames_left, int64_t u, int last) {
    int64_t L = static_cast<int64_t>(targets->size());
    if (frames_left == 0) {
      if (u == L) Emit();
      return;
    }
    path.push_back(blank_id);
    Ctc(frames_left - 1, u, blank_id);
    path.pop_back();
    if (last != blank_id) {
      path.push_back(last);
      Ctc(frames_left - 1, u, last);
      path.pop_back();
    }
    if (u < L && (*targets)[u] != last) {
      path.push_back((*targets)[u]);
      Ctc(frames_left - 1, u + 1, (*targets)[u]);
      path.pop_back();
    }
  }
};

}  // namespace

std::vector<std::vector<int>> EnumerateAlignments(
    int64_t num_frames, const std::vector<int>& targets, AlignMode mode,
    int blank_id, int64_t cap) {
  LTT_CHECK(num_frames >= 0, "enumerate_alignments: negative frame count");
  for (int id : targets)
    LTT_CHECK(id != blank_id,
              "enumerate_alignments: blank in target sequence");
  std::vector<std::vector<int>> out;
  Enumerator e{num_frames, &targets, blank_id, cap, &out, {}};
  if (mode == AlignMode::kTransducer) {
    e.Transducer(0, 0);
  } else {
    e.Ctc(num_frames, 0, blank_id);
  }
  return out;
}

std::vector<int> CollapseAlignment(const std::vector<int>& path,
                                   AlignMode mode, int blank_id) {
  std::vector<int> out;
  if (mode == AlignMode::kTransducer) {
    for (int s : path)
      if (s != blank_id) out.push_back(s);
    return out;
  }
  int last = blank_id;
  for (int s : path) {
    if (s != blank_id && s != last) out.push_back(s);
    last = s;
  }
  return out;
}

}  // namespace ltt
