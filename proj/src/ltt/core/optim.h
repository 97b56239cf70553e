// ltt/core/optim.h

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

#ifndef LTT_CORE_OPTIM_H_
#define LTT_CORE_OPTIM_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ltt/core/param-store.h"

namespace ltt {

// Inverse square root decay with linear warmup:
//   factor * d_model^-0.5 * min(step^-0.5, step * warmup^-1.5)
double NoamLr(int64_t step, int64_t d_model, int64_t warmup, double factor);

struct AdamOptions {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Adam with bias correction. Moment buffers are allocated lazily per
// parameter; a parameter whose gradient contains a non-finite value keeps
// its old value for that step and bumps the skip counter.
class AdamOptimizer {
 public:
  explicit AdamOptimizer(AdamOptions opts = {}) : opts_(opts) {}

  void Step(ParameterStore* store, double lr);

  int64_t step_count() const { return step_; }
  void set_step_count(int64_t t) { step_ = t; }
  int64_t skipped_params() const { return skipped_; }

  // Moment buffers, exposed for checkpointing (keys are parameter names).
  std::map<std::string, std::vector<double>>& first_moments() { return m_; }
  std::map<std::string, std::vector<double>>& second_moments() { return v_; }

 private:
  AdamOptions opts_;
  int64_t step_ = 0;
  int64_t skipped_ = 0;
  std::map<std::string, std::vector<double>> m_;
  std::map<std::string, std::vector<double>> v_;
};

}  // namespace ltt

#endif  // LTT_CORE_OPTIM_H_
