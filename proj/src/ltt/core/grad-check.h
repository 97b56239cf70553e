// ltt/core/grad-check.h

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

#ifndef LTT_CORE_GRAD_CHECK_H_
#define LTT_CORE_GRAD_CHECK_H_

#include <functional>
#include <string>
#include <vector>

#include "ltt/core/param-store.h"

namespace ltt {

struct GradCheckOptions {
  double h = 1e-6;       // central difference step
  double tol = 1e-5;     // max relative error allowed
  // Coordinates probed per parameter tensor; 0 checks every element. When
  // sampling, the element with the largest analytic gradient is always
  // included.
  int64_t samples_per_param = 0;
  uint64_t sample_seed = 0;
  // Relative error denominator floor; keeps central-difference roundoff on
  // near-zero gradients from reading as a mismatch.
  double denom_floor = 1e-3;
};

struct GradCheckEntry {
  std::string name;
  double max_rel_err = 0.0;
  int64_t checked = 0;
};

struct GradCheckReport {
  std::vector<GradCheckEntry> entries;
  double max_rel_err = 0.0;
  bool pass = false;
  std::string Summary() const;
};

// f must rebuild the forward graph from the current parameter values and be
// deterministic given its own (fixed) rng seeding. The analytic gradient of
// each parameter is compared against central differences coordinate by
// coordinate.
GradCheckReport CheckGradients(const std::function<Tensor()>& f,
                               ParameterStore* store,
                               const GradCheckOptions& opts = {});

}  // namespace ltt

#endif  // LTT_CORE_GRAD_CHECK_H_
