// ltt/core/common.cc

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

#include "ltt/core/common.h"

namespace ltt {

namespace internal {
bool g_quantize_f32 = false;
bool g_grad_enabled = true;
}  // namespace internal

static NumericMode g_mode = NumericMode::kF64;

NumericMode GetNumericMode() { return g_mode; }

void SetNumericMode(NumericMode mode) {
  g_mode = mode;
  internal::g_quantize_f32 = (mode == NumericMode::kF32);
}

NoGradGuard::NoGradGuard() : prev_(internal::g_grad_enabled) {
  internal::g_grad_enabled = false;
}

NoGradGuard::~NoGradGuard() { internal::g_grad_enabled = prev_; }

}  // namespace ltt
