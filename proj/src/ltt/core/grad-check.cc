// ltt/core/grad-check.cc

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

#include "ltt/core/grad-check.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "ltt/core/rng.h"

namespace ltt {

std::string GradCheckReport::Summary() const {
  std::string s = Str("gradient check: ", pass ? "PASS" : "FAIL",
                      " (max rel err ", max_rel_err, ")\n");
  for (const auto& e : entries)
    s += Str("  ", e.name, "  checked=", e.checked, "  max_rel_err=",
             e.max_rel_err, "\n");
  return s;
}

GradCheckReport CheckGradients(const std::function<Tensor()>& f,
                               ParameterStore* store,
                               const GradCheckOptions& opts) {
  // Analytic pass.
  store->ZeroGrad();
  Tensor loss = f();
  Backward(loss);

  std::vector<std::vector<double>> analytic;
  for (const std::string& name : store->Names())
    analytic.push_back(store->Get(name).Grad());

  GradCheckReport report;
  report.pass = true;
  Rng pick(opts.sample_seed);

  auto eval = [&]() {
    NoGradGuard guard;
    return f().Item();
  };

  for (size_t pi = 0; pi < store->Names().size(); ++pi) {
    const std::string& name = store->Names()[pi];
    Tensor param = store->Get(name);
    int64_t n = param.NumEl();

    std::vector<int64_t> coords;
    if (opts.samples_per_param <= 0 || opts.samples_per_param >= n) {
      for (int64_t i = 0; i < n; ++i) coords.push_back(i);
    } else {
      std::set<int64_t> chosen;
      int64_t arg_max = 0;
      for (int64_t i = 1; i < n; ++i)
        if (std::fabs(analytic[pi][i]) > std::fabs(analytic[pi][arg_max]))
          arg_max = i;
      chosen.insert(arg_max);
      while (static_cast<int64_t>(chosen.size()) < opts.samples_per_param)
        chosen.insert(pick.UniformInt(n));
      coords.assign(chosen.begin(), chosen.end());
    }

    GradCheckEntry entry;
    entry.name = name;
    entry.checked = static_cast<int64_t>(coords.size());
    auto& data = param.MutableData();
    for (int64_t i : coords) {
      double orig = data[i];
      data[i] = orig + opts.h;
      double plus = eval();
      data[i] = orig - opts.h;
      double minus = eval();
      data[i] = orig;
      double numeric = (plus - minus) / (2.0 * opts.h);
      double a = analytic[pi][i];
      double denom = std::max({std::fabs(a), std::fabs(numeric),
                               opts.denom_floor});
      double rel = std::fabs(a - numeric) / denom;
      entry.max_rel_err = std::max(entry.max_rel_err, rel);
    }
    report.max_rel_err = std::max(report.max_rel_err, entry.max_rel_err);
    if (entry.max_rel_err > opts.tol) report.pass = false;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace ltt
