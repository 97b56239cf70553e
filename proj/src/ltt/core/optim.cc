// ltt/core/optim.cc

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

#include "ltt/core/optim.h"

#include <cmath>

namespace ltt {

double NoamLr(int64_t step, int64_t d_model, int64_t warmup, double factor) {
  LTT_CHECK(step >= 1, "noam_lr: step must be >= 1, got ", step);
  LTT_CHECK(d_model >= 1 && warmup >= 1, "noam_lr: bad d_model/warmup");
  double s = static_cast<double>(step);
  double decay = std::min(1.0 / std::sqrt(s),
                          s * std::pow(static_cast<double>(warmup), -1.5));
  return factor / std::sqrt(static_cast<double>(d_model)) * decay;
}

void AdamOptimizer::Step(ParameterStore* store, double lr) {
  ++step_;
  double bc1 = 1.0 - std::pow(opts_.beta1, static_cast<double>(step_));
  double bc2 = 1.0 - std::pow(opts_.beta2, static_cast<double>(step_));
  for (const std::string& name : store->Names()) {
    Tensor param = store->Get(name);
    const std::vector<double>& grad = param.Grad();
    bool finite = true;
    for (double g : grad)
      if (!std::isfinite(g)) {
        finite = false;
        break;
      }
    if (!finite) {
      ++skipped_;
      continue;
    }
    auto& m = m_[name];
    auto& v = v_[name];
    if (m.empty()) {
      m.assign(grad.size(), 0.0);
      v.assign(grad.size(), 0.0);
    }
    auto& data = param.MutableData();
    for (size_t i = 0; i < grad.size(); ++i) {
      double g = grad[i];
      m[i] = Quantize(opts_.beta1 * m[i] + (1.0 - opts_.beta1) * g);
      v[i] = Quantize(opts_.beta2 * v[i] + (1.0 - opts_.beta2) * g * g);
      double mhat = m[i] / bc1;
      double vhat = v[i] / bc2;
      data[i] = Quantize(data[i] - lr * mhat / (std::sqrt(vhat) + opts_.eps));
    }
  }
}

}  // namespace ltt
