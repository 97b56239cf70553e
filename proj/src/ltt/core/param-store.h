// ltt/core/param-store.h

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

#ifndef LTT_CORE_PARAM_STORE_H_
#define LTT_CORE_PARAM_STORE_H_

#include <string>
#include <unordered_map>
#include <vector>

#include "ltt/core/tensor.h"

namespace ltt {

// Ordered map of dotted names to trainable tensors. Iteration order is
// insertion order, so parameter traversal (optimizer, checkpoints, gradient
// reduction) is deterministic across runs.
class ParameterStore {
 public:
  Tensor Create(const std::string& name, Shape shape);
  Tensor Get(const std::string& name) const;
  bool Has(const std::string& name) const;

  const std::vector<std::string>& Names() const { return names_; }
  int64_t TotalParams() const;
  void ZeroGrad();

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Tensor> params_;
};

// Fills a parameter uniformly on [-limit, limit].
void InitUniform(Tensor param, double limit, Rng* rng);

}  // namespace ltt

#endif  // LTT_CORE_PARAM_STORE_H_
