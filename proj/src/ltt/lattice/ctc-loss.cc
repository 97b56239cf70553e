// ltt/lattice/ctc-loss.cc

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

#include "ltt/lattice/ctc-loss.h"

#include <algorithm>
#include <cmath>
#include <limits>

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

}  // namespace

int64_t CtcMinFrames(const std::vector<int>& targets) {
  int64_t repeats = 0;
  for (size_t i = 1; i < targets.size(); ++i)
    if (targets[i] == targets[i - 1]) ++repeats;
  return static_cast<int64_t>(targets.size()) + repeats;
}

CtcResult CtcForwardBackward(const std::vector<double>& scores,
                             int64_t num_frames, int64_t num_classes,
                             const std::vector<int>& targets, int blank_id,
                             bool want_grad) {
  const int64_t T = num_frames;
  const int64_t K = num_classes;
  const int64_t L = static_cast<int64_t>(targets.size());
  LTT_CHECK(T >= 1, "ctc_loss: need at least one frame");
  LTT_CHECK(static_cast<int64_t>(scores.size()) == T * K,
            "ctc_loss: scores size ", scores.size(), ", expected ", T, "x", K);
  LTT_CHECK(blank_id >= 0 && blank_id < K, "ctc_loss: blank id ", blank_id,
            " outside [0,", K, ")");
  for (int id : targets) {
    LTT_CHECK(id != blank_id, "ctc_loss: blank in target sequence");
    LTT_CHECK(id >= 0 && id < K, "ctc_loss: target id ", id, " outside [0,",
              K, ")");
  }
  LTT_CHECK(T >= CtcMinFrames(targets),
            "ctc_loss: sequence too short for CTC (", T, " frames for ", L,
            " labels with repeats)");

  // Per-frame log-softmax; idempotent on already-normalized rows.
  std::vector<double> ls(scores.size());
  for (int64_t t = 0; t < T; ++t) {
    const double* in = scores.data() + t * K;
    double* o = ls.data() + t * K;
    double mx = in[0];
    for (int64_t k = 1; k < K; ++k) mx = std::max(mx, in[k]);
    double z = 0.0;
    for (int64_t k = 0; k < K; ++k) z += std::exp(in[k] - mx);
    double lse = mx + std::log(z);
    for (int64_t k = 0; k < K; ++k) o[k] = in[k] - lse;
  }

  // Extended sequence: blank, y1, blank, y2, ..., yL, blank.
  const int64_t S = 2 * L + 1;
  auto label_at = [&](int64_t s) {
    return (s % 2 == 0) ? blank_id : targets[s / 2];
  };
  auto can_skip = [&](int64_t s) {
    // Entering state s from s-2 skips a blank; legal when s is a label that
    // differs from the label two states back.
    return s % 2 == 1 && s >= 2 && targets[s / 2] != targets[s / 2 - 1];
  };

  std::vector<double> alpha(T * S, kLogZero);
  std::vector<double> beta(T * S, kLogZero);

  alpha[0 * S + 0] = ls[0 * K + blank_id];
  if (S > 1) alpha[0 * S + 1] = ls[0 * K + label_at(1)];
  for (int64_t t = 1; t < T; ++t)
    for (int64_t s = 0; s < S; ++s) {
      double acc = alpha[(t - 1) * S + s];
      if (s >= 1) acc = LogAdd(acc, alpha[(t - 1) * S + s - 1]);
      if (can_skip(s)) acc = LogAdd(acc, alpha[(t - 1) * S + s - 2]);
      alpha[t * S + s] = acc == kLogZero ? kLogZero
                                         : acc + ls[t * K + label_at(s)];
    }

  double total = alpha[(T - 1) * S + S - 1];
  if (S > 1) total = LogAdd(total, alpha[(T - 1) * S + S - 2]);
  LTT_CHECK(std::isfinite(total),
            "ctc_loss: non-finite total log-probability");

  CtcResult res;
  res.loss = -total;
  if (!want_grad) return res;

  // beta(t, s) excludes the emission at frame t, so alpha + beta is the full
  // mass of paths through (t, s).
  beta[(T - 1) * S + S - 1] = 0.0;
  if (S > 1) beta[(T - 1) * S + S - 2] = 0.0;
  for (int64_t t = T - 2; t >= 0; --t)
    for (int64_t s = 0; s < S; ++s) {
      double acc = beta[(t + 1) * S + s] == kLogZero
                       ? kLogZero
                       : beta[(t + 1) * S + s] + ls[(t + 1) * K + label_at(s)];
      if (s + 1 < S && beta[(t + 1) * S + s + 1] != kLogZero)
        acc = LogAdd(acc, beta[(t + 1) * S + s + 1] +
                              ls[(t + 1) * K + label_at(s + 1)]);
      if (s + 2 < S && can_skip(s + 2) &&
          beta[(t + 1) * S + s + 2] != kLogZero)
        acc = LogAdd(acc, beta[(t + 1) * S + s + 2] +
                              ls[(t + 1) * K + label_at(s + 2)]);
      beta[t * S + s] = acc;
    }

  // Every path emits exactly one symbol per frame, so the per-frame state
  // posteriors sum to one and d loss / d score = softmax - occupancy.
  res.grad.assign(T * K, 0.0);
  for (int64_t t = 0; t < T; ++t) {
    double* g = res.grad.data() + t * K;
    for (int64_t k = 0; k < K; ++k) g[k] = std::exp(ls[t * K + k]);
    for (int64_t s = 0; s < S; ++s) {
      double a = alpha[t * S + s];
      double b = beta[t * S + s];
      if (a == kLogZero || b == kLogZero) continue;
      g[label_at(s)] -= std::exp(a + b - total);
    }
  }
  return res;
}

Tensor CtcLoss(const Tensor& scores, const std::vector<int>& targets,
               int blank_id) {
  LTT_CHECK(scores.Rank() == 2, "ctc_loss: scores must be 2-D (T, K), got ",
            ShapeStr(scores.GetShape()));
  bool want_grad = GradEnabled() && scores.RequiresGrad();
  auto res = std::make_shared<CtcResult>(
      CtcForwardBackward(scores.Data(), scores.Dim(0), scores.Dim(1), targets,
                         blank_id, want_grad));
  return MakeOp({1}, {res->loss}, {scores},
                [scores, res](const TensorNode& self) {
                  scores.Node()->EnsureGrad();
                  auto& g = scores.Node()->grad;
                  double up = self.grad[0];
                  for (size_t i = 0; i < g.size(); ++i)
                    g[i] = Quantize(g[i] + up * res->grad[i]);
                });
}

}  // namespace ltt
