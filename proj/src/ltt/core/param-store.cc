// ltt/core/param-store.cc

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

#include "ltt/core/param-store.h"

namespace ltt {

Tensor ParameterStore::Create(const std::string& name, Shape shape) {
  LTT_CHECK(!params_.count(name), "ParameterStore: duplicate parameter '",
            name, "'");
  Tensor t = Tensor::Zeros(std::move(shape), /*requires_grad=*/true);
  names_.push_back(name);
  params_.emplace(name, t);
  return t;
}

Tensor ParameterStore::Get(const std::string& name) const {
  auto it = params_.find(name);
  LTT_CHECK(it != params_.end(), "ParameterStore: unknown parameter '", name,
            "'");
  return it->second;
}

bool ParameterStore::Has(const std::string& name) const {
  return params_.count(name) != 0;
}

int64_t ParameterStore::TotalParams() const {
  int64_t n = 0;
  for (const auto& name : names_) n += params_.at(name).NumEl();
  return n;
}

void ParameterStore::ZeroGrad() {
  for (const auto& name : names_) params_.at(name).ZeroGrad();
}

void InitUniform(Tensor param, double limit, Rng* rng) {
  for (double& v : param.MutableData())
    v = Quantize((rng->Uniform() * 2.0 - 1.0) * limit);
}

}  // namespace ltt
