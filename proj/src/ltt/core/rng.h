// ltt/core/rng.h

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

#ifndef LTT_CORE_RNG_H_
#define LTT_CORE_RNG_H_

#include <cstdint>

namespace ltt {

// Counter-based stream: state is (key, counter), output i is a splitmix64
// finalizer applied to key + i * golden. Identical seed + identical call
// sequence gives identical integer output on every platform, and the state
// serializes as two u64.
//
// Derived streams (Derive / Mix) are the backbone of reproducibility: all
// training randomness is keyed functionally by (seed, purpose, step, ...)
// so a resumed run consumes exactly the streams the uninterrupted run would.
class Rng {
 public:
  explicit Rng(uint64_t seed) : key_(seed), counter_(0) {}

  uint64_t NextU64();

  // Uniform on [0, 1), 53 random bits.
  double Uniform();

  // Uniform integer on [0, n), n > 0.
  int64_t UniformInt(int64_t n);

  // Standard normal via the Acklam inverse-CDF approximation (rational
  // polynomials; tails use log/sqrt). Deterministic for a given libm.
  double Normal();

  // Independent stream addressed by (this stream's key, salt).
  Rng Derive(uint64_t salt) const { return Rng(Mix(key_, salt)); }

  static uint64_t Mix(uint64_t a, uint64_t b);

  uint64_t key() const { return key_; }
  uint64_t counter() const { return counter_; }
  void SetState(uint64_t key, uint64_t counter) {
    key_ = key;
    counter_ = counter;
  }

 private:
  uint64_t key_;
  uint64_t counter_;
};

}  // namespace ltt

#endif  // LTT_CORE_RNG_H_
