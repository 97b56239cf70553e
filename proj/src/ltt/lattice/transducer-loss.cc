// ltt/lattice/transducer-loss.cc

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

#include "ltt/lattice/transducer-loss.h"

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

TransducerResult TransducerForwardBackward(const std::vector<double>& logits,
                                           int64_t num_frames,
                                           int64_t num_classes,
                                           const std::vector<int>& targets,
                                           int blank_id, bool want_grad) {
  const int64_t T = num_frames;
  const int64_t L = static_cast<int64_t>(targets.size());
  const int64_t U = L + 1;  // label-position axis, with the phi start slot
  const int64_t K = num_classes;
  LTT_CHECK(T >= 1, "transducer_loss: no valid alignment (", L,
            " labels but ", T, " frames)");
  LTT_CHECK(K >= 2, "transducer_loss: need at least blank plus one label");
  LTT_CHECK(blank_id >= 0 && blank_id < K, "transducer_loss: blank id ",
            blank_id, " outside [0,", K, ")");
  LTT_CHECK(static_cast<int64_t>(logits.size()) == T * U * K,
            "transducer_loss: logits size ", logits.size(), ", expected ",
            T * U * K, " = ", T, "x", U, "x", K);
  for (int id : targets) {
    LTT_CHECK(id != blank_id, "transducer_loss: blank in target sequence");
    LTT_CHECK(id >= 0 && id < K, "transducer_loss: target id ", id,
              " outside [0,", K, ")");
  }

  // Log-softmax over the class axis, once per lattice node.
  std::vector<double> ls(logits.size());
  for (int64_t r = 0; r < T * U; ++r) {
    const double* in = logits.data() + r * K;
    double* o = ls.data() + r * K;
    double mx = in[0];
    for (int64_t k = 1; k < K; ++k) mx = std::max(mx, in[k]);
    double z = 0.0;
    for (int64_t k = 0; k < K; ++k) z += std::exp(in[k] - mx);
    double lse = mx + std::log(z);
    for (int64_t k = 0; k < K; ++k) o[k] = in[k] - lse;
  }
  auto blank_lp = [&](int64_t t, int64_t u) {
    return ls[(t * U + u) * K + blank_id];
  };
  // Emission from node (t, u); row index clamps to the final frame so that
  // labels may still be emitted once all frames are consumed.
  auto emit_lp = [&](int64_t t, int64_t u) {
    int64_t row = std::min(t, T - 1);
    return ls[(row * U + u) * K + targets[u]];
  };

  TransducerResult res;
  res.num_frames = T;
  res.num_labels = L;
  res.alpha.assign((T + 1) * U, kLogZero);
  res.beta.assign((T + 1) * U, kLogZero);
  auto a = [&](int64_t t, int64_t u) -> double& { return res.alpha[t * U + u]; };
  auto b = [&](int64_t t, int64_t u) -> double& { return res.beta[t * U + u]; };

  a(0, 0) = 0.0;
  for (int64_t t = 0; t <= T; ++t)
    for (int64_t u = 0; u <= L; ++u) {
      if (t == 0 && u == 0) continue;
      double acc = kLogZero;
      if (t > 0) acc = LogAdd(acc, a(t - 1, u) + blank_lp(t - 1, u));
      if (u > 0) acc = LogAdd(acc, a(t, u - 1) + emit_lp(t, u - 1));
      a(t, u) = acc;
    }

  b(T, L) = 0.0;
  for (int64_t t = T; t >= 0; --t)
    for (int64_t u = L; u >= 0; --u) {
      if (t == T && u == L) continue;
      double acc = kLogZero;
      if (t < T) acc = LogAdd(acc, b(t + 1, u) + blank_lp(t, u));
      if (u < L) acc = LogAdd(acc, b(t, u + 1) + emit_lp(t, u));
      b(t, u) = acc;
    }

  double total = a(T, L);
  LTT_CHECK(std::isfinite(total),
            "transducer_loss: non-finite total log-probability");
  res.loss = -total;

  if (!want_grad) return res;

  // d loss / d logits = occupancy * softmax - emitted mass, accumulated per
  // transition posterior gamma = exp(alpha_src + step + beta_dst - total).
  std::vector<double> occ(T * U, 0.0);
  res.grad.assign(T * U * K, 0.0);
  for (int64_t t = 0; t < T; ++t)
    for (int64_t u = 0; u <= L; ++u) {
      double g = std::exp(a(t, u) + blank_lp(t, u) + b(t + 1, u) - total);
      occ[t * U + u] += g;
      res.grad[(t * U + u) * K + blank_id] -= g;
    }
  for (int64_t t = 0; t <= T; ++t)
    for (int64_t u = 0; u < L; ++u) {
      double g = std::exp(a(t, u) + emit_lp(t, u) + b(t, u + 1) - total);
      int64_t row = std::min(t, T - 1);
      occ[row * U + u] += g;
      res.grad[(row * U + u) * K + targets[u]] -= g;
    }
  for (int64_t r = 0; r < T * U; ++r) {
    const double* lsp = ls.data() + r * K;
    double* gp = res.grad.data() + r * K;
    double o = occ[r];
    if (o == 0.0) continue;
    for (int64_t k = 0; k < K; ++k) gp[k] += o * std::exp(lsp[k]);
  }
  return res;
}

Tensor TransducerLoss(const Tensor& logits, int64_t num_frames,
                      const std::vector<int>& targets, int blank_id) {
  const int64_t L = static_cast<int64_t>(targets.size());
  LTT_CHECK(logits.Rank() == 2, "transducer_loss: logits must be 2-D (T*(L+1), K), got ",
            ShapeStr(logits.GetShape()));
  LTT_CHECK(logits.Dim(0) == num_frames * (L + 1),
            "transducer_loss: logits rows ", logits.Dim(0), " != T*(L+1) = ",
            num_frames * (L + 1));
  bool want_grad = GradEnabled() && logits.RequiresGrad();
  auto res = std::make_shared<TransducerResult>(TransducerForwardBackward(
      logits.Data(), num_frames, logits.Dim(1), targets, blank_id,
      want_grad));
  return MakeOp({1}, {res->loss}, {logits},
                [logits, res](const TensorNode& self) {
                  logits.Node()->EnsureGrad();
                  auto& g = logits.Node()->grad;
                  double up = self.grad[0];
                  for (size_t i = 0; i < g.size(); ++i)
                    g[i] = Quantize(g[i] + up * res->grad[i]);
                });
}

}  // namespace ltt
